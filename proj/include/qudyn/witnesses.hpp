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

#include <optional>
#include <string>
#include <vector>

#include "qudyn/disorder.hpp"
#include "qudyn/linalg.hpp"
#include "qudyn/maps.hpp"

namespace qudyn {

enum class WitnessKind {
  purity,
  normalized_purity,
  trace_distance,
  log_negativity,
  observable,
  decay_rate,
};

std::string witness_kind_name(WitnessKind kind);
WitnessKind witness_kind_from_name(const std::string& name);

/// Time-indexed witness record; stderrs are present only for Monte-Carlo
/// provenance.
struct WitnessSeries {
  WitnessKind kind = WitnessKind::purity;
  std::string observable_name;  // observable kind only
  std::vector<double> times;
  std::vector<double> values;
  std::vector<double> stderrs;
};

namespace witnesses {

double purity(const ComplexMatrix& rho);
/// Tr[rho^2] / (Tr rho)^2, the ratio form used whenever the evolution does
/// not preserve the trace.
double normalized_purity(const ComplexMatrix& rho);

/// D = |rho1 - rho2|_1 / 2.
double trace_distance(const ComplexMatrix& rho1, const ComplexMatrix& rho2);

/// E_N = log2 |rho_SA^(T_S)|_1 for the maximally entangled probe
/// (1/sqrt(d)) sum_i |ii> evolved on the system factor. The joint state is
/// normalized by its trace first, which is a no-op for trace-preserving
/// maps.
double log_negativity(const DynamicalMap& map);

/// Tr[O rho], or Tr[O rho]/Tr[rho] with `normalize`. The imaginary residue
/// must stay below 1e-10 relative to scale.
double observable(const ComplexMatrix& rho, const ComplexMatrix& obs, bool normalize);

/// Dephasing-channel mixing probability p_d = (1 - G(t)) / 2.
double dephasing_probability(const DisorderDistribution& dist, double t);

struct RevivalStats {
  int count = 0;
  double total_increase = 0.0;
};

/// Counts maximal runs of consecutive increases above +1e-9 on a uniform
/// grid and accumulates the positive increments.
RevivalStats revival_count(const WitnessSeries& series);

/// Time at which the first revival begins (the grid point before the first
/// increasing step, i.e. the local minimum).
std::optional<double> first_revival_onset(const WitnessSeries& series);

struct PurityCoefficients {
  double constant = 0.0;  // c0
  double g2 = 0.0;        // c2, with purity(t) = c0 + c2 G(t)^2
};

/// Decomposes the N-qubit purity under the tensor-power Hamiltonian with
/// initial |up>^N by evaluating the map at G in {1, 0} and checks the
/// quadratic model at a third point.
PurityCoefficients multiqubit_purity_coefficients(int n_qubits);

}  // namespace witnesses
}  // namespace qudyn
