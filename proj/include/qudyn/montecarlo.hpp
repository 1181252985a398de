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

#include <cstdint>
#include <vector>

#include "qudyn/disorder.hpp"
#include "qudyn/hamiltonians.hpp"
#include "qudyn/maps.hpp"

namespace qudyn {

/// Sampling-oracle run configuration. `shards` is the worker-thread count;
/// the sample stream and the summation structure are fixed by (seed,
/// n_samples) alone, so results are bit-identical for every shard count.
struct McRunConfig {
  PotentHamiltonian pot;
  DisorderDistribution dist = DisorderDistribution::gaussian(1.0);
  ComplexMatrix rho0;
  std::vector<double> time_grid;
  long n_samples = 1000;
  std::uint64_t seed = 0;
  int shards = 1;
};

struct ValueSe {
  double value = 0.0;
  double se = 0.0;
};

/// Disorder-averaged per-time statistics. Internally the run accumulates,
/// per time point, the first and second moments of the propagator
/// coefficient products m_jk = conj(a_j(ht)) a_k(ht); every reported
/// quantity (averaged state, MC superoperator, observables and their
/// standard errors) derives from those moments.
class McResult {
 public:
  McResult(PotentHamiltonian pot, ComplexMatrix rho0, std::vector<double> times,
           long n_samples, std::uint64_t seed,
           std::vector<Eigen::MatrixXcd> mean, std::vector<Eigen::MatrixXcd> second);

  const std::vector<double>& times() const { return times_; }
  long n_samples() const { return n_samples_; }
  std::uint64_t seed() const { return seed_; }
  Eigen::Index dim() const { return rho0_.rows(); }

  /// Averaged state rho_bar(t_i) (Hermitian up to accumulation roundoff).
  ComplexMatrix rho_bar(std::size_t ti) const;

  /// MC estimate of the dynamical map at t_i.
  DynamicalMap superoperator(std::size_t ti) const;

  /// Per-entry standard error of the MC superoperator (total complex
  /// spread, sqrt(Var Re + Var Im) scale).
  Eigen::MatrixXd superop_entry_se(std::size_t ti) const;

  /// Tr[O rho_bar]; with `normalize`, the ratio Tr[O rho_bar]/Tr[rho_bar]
  /// (averaging precedes normalization). SE via the per-sample scalar
  /// spread; ratio SEs by delta-method linearization.
  ValueSe observable(std::size_t ti, const ComplexMatrix& obs, bool normalize) const;

  /// Tr[rho_bar^2], or Tr[rho_bar^2]/(Tr rho_bar)^2 with `normalized`.
  /// SE from the delta-method influence values.
  ValueSe purity(std::size_t ti, bool normalized) const;

  const Eigen::MatrixXcd& coefficient_mean(std::size_t ti) const { return mean_.at(ti); }

 private:
  ValueSe linear_stat(std::size_t ti, const Eigen::MatrixXcd& weights) const;
  double variance_of(std::size_t ti, const Eigen::MatrixXcd& weights) const;
  Eigen::MatrixXcd trace_weights(const ComplexMatrix& obs) const;

  PotentHamiltonian pot_;
  ComplexMatrix rho0_;
  std::vector<double> times_;
  long n_samples_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<Eigen::MatrixXcd> mean_;    // p x p,   E[m_jk]
  std::vector<Eigen::MatrixXcd> second_;  // p^2 x p^2, E[m_jk conj(m_lm)]
  std::vector<ComplexMatrix> kmats_;      // K_jk = H^k rho0 (H^dag)^j
};

namespace montecarlo {

/// Exact single-realization evolution U rho0 U^dag with U = sum_j a_j(ht) H^j.
ComplexMatrix evolve_single(const PotentHamiltonian& pot, double h, double t, const ComplexMatrix& rho0);

McResult run(const McRunConfig& cfg);

struct ConvergenceRow {
  long n_samples = 0;
  double error = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  double fitted_exponent = 0.0;  // slope of log(error) vs log(N)
};

/// Least-squares fit of the error-vs-N scaling; rows must cover at least
/// two sample sizes.
ConvergenceReport convergence_report(const std::vector<ConvergenceRow>& rows);

}  // namespace montecarlo
}  // namespace qudyn
