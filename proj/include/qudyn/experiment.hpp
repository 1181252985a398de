// Copyright 2026 The qudyn authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qudyn/hamiltonians.hpp"
#include "qudyn/montecarlo.hpp"
#include "qudyn/witnesses.hpp"

namespace qudyn {

/// Invalid configuration or usage; mapped to exit code 2 by the CLI.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Engine { closed_form, series, quadrature, mc };

std::string engine_name(Engine e);
Engine engine_from_name(const std::string& name);

/// Batch experiment description (JSON-loadable): Hamiltonian family,
/// disorder distribution, time grid, initial state, engines to run, and the
/// witness/observable outputs to emit.
struct ExperimentConfig {
  hamiltonians::HamiltonianSpec hamiltonian;
  DisorderDistribution distribution = DisorderDistribution::gaussian(1.0);
  double t_start = 0.0;
  double t_stop = 5.0;
  int t_points = 501;
  std::string named_state = "up";  // up | down | sz_plus1 | sz_minus1 | bell_probe; empty for custom
  ComplexMatrix custom_state;
  std::vector<Engine> engines;
  int series_order = 40;
  int quadrature_nodes = 64;
  long mc_samples = 10000;
  std::uint64_t mc_seed = 1;
  int mc_shards = 1;
  std::vector<std::string> outputs;

  static ExperimentConfig parse(const nlohmann::json& j);
  static ExperimentConfig load(const std::string& path);

  std::vector<double> grid() const;
  ComplexMatrix initial_state(const PotentHamiltonian& pot) const;
  /// Orthogonal partner state for the trace-distance pair.
  ComplexMatrix partner_state(const PotentHamiltonian& pot) const;
};

namespace cli {

/// Named observable for dimension d: "sz" is sigma_z (d = 2), S_z (d = 3),
/// or sigma_z on the first qubit (d = 2^N).
ComplexMatrix named_observable(const std::string& name, Eigen::Index d);

/// Evaluates the requested outputs for one engine over the config grid.
std::vector<WitnessSeries> compute_series(const ExperimentConfig& cfg, Engine engine);

void write_witness_csv(const std::string& path, const std::vector<WitnessSeries>& series,
                       const PotentHamiltonian& pot, const DisorderDistribution& dist,
                       const std::string& params);

/// Result CSV with columns t, observable, value, stderr, n_samples, seed.
void write_mc_csv(const std::string& path, const McResult& result,
                  const std::vector<WitnessSeries>& series);

struct SeriesComparison {
  std::string left;
  std::string right;
  std::string kind;
  double max_deviation = 0.0;
  bool pass = false;
  bool skipped = false;  // MC pair with no standard errors to form a band
};

/// Pairwise per-time comparison of engine outputs. Deterministic-engine
/// pairs are held to `tolerance`; any pair involving the Monte-Carlo engine
/// is held to a +-4 standard-error band instead. MC rows without standard
/// errors (nonlinear witnesses of the averaged state) are reported but
/// skipped from the verdict.
std::vector<SeriesComparison> compare_engines(const ExperimentConfig& cfg, double tolerance);

int cmd_evolve(const ExperimentConfig& cfg, const std::string& out_dir);
int cmd_compare(const ExperimentConfig& cfg, double tolerance, const std::string& out_dir);
int cmd_channel(const DisorderDistribution& dist, const std::vector<double>& grid,
                const std::string& out_dir);
int cmd_figures(const std::string& figure_id, const std::string& out_dir, std::uint64_t seed);

}  // namespace cli
}  // namespace qudyn
