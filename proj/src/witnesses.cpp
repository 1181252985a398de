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

#include "qudyn/witnesses.hpp"

#include <cmath>
#include <stdexcept>

namespace qudyn {

std::string witness_kind_name(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::purity: return "purity";
    case WitnessKind::normalized_purity: return "normalized_purity";
    case WitnessKind::trace_distance: return "trace_distance";
    case WitnessKind::log_negativity: return "log_negativity";
    case WitnessKind::observable: return "observable";
    case WitnessKind::decay_rate: return "decay_rate";
  }
  return "unknown";
}

WitnessKind witness_kind_from_name(const std::string& name) {
  if (name == "purity") return WitnessKind::purity;
  if (name == "normalized_purity") return WitnessKind::normalized_purity;
  if (name == "trace_distance") return WitnessKind::trace_distance;
  if (name == "log_negativity") return WitnessKind::log_negativity;
  if (name == "observable") return WitnessKind::observable;
  if (name == "decay_rate") return WitnessKind::decay_rate;
  throw std::invalid_argument("unknown witness kind \"" + name + "\"");
}

namespace witnesses {

namespace {

double real_with_residue_check(Complex z, const char* who, double scale) {
  if (std::abs(z.imag()) > 1e-10 * std::max(1.0, scale)) {
    throw std::runtime_error(std::string(who) + ": imaginary residue above tolerance");
  }
  return z.real();
}

}  // namespace

double purity(const ComplexMatrix& rho) {
  if (!linalg::is_hermitian(rho, 1e-10 * std::max(1.0, linalg::max_abs(rho)))) {
    throw std::invalid_argument("purity: Hermitian state required");
  }
  return real_with_residue_check((rho * rho).trace(), "purity", linalg::max_abs(rho));
}

double normalized_purity(const ComplexMatrix& rho) {
  const double tr = real_with_residue_check(rho.trace(), "normalized_purity", linalg::max_abs(rho));
  if (!(std::abs(tr) > 0.0)) {
    throw std::domain_error("normalized_purity: zero trace");
  }
  return purity(rho) / (tr * tr);
}

double trace_distance(const ComplexMatrix& rho1, const ComplexMatrix& rho2) {
  if (rho1.rows() != rho2.rows() || rho1.cols() != rho2.cols()) {
    throw std::invalid_argument("trace_distance: dimension mismatch");
  }
  return 0.5 * linalg::trace_norm(rho1 - rho2);
}

double log_negativity(const DynamicalMap& map) {
  const Eigen::Index d = map.system_dim;
  ComplexVector phi = ComplexVector::Zero(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index i = 0; i < d; ++i) phi(i * d + i) = amp;
  const ComplexMatrix probe = phi * phi.adjoint();
  ComplexMatrix joint = maps::evolve_system_factor(map, probe, d);
  const double tr = joint.trace().real();
  if (!(std::abs(tr) > 0.0)) {
    throw std::domain_error("log_negativity: evolved probe has zero trace");
  }
  joint /= tr;
  return std::log2(linalg::trace_norm(linalg::partial_transpose_system(joint, d, d)));
}

double observable(const ComplexMatrix& rho, const ComplexMatrix& obs, bool normalize) {
  if (!linalg::is_hermitian(obs, 1e-10)) {
    throw std::invalid_argument("observable: Hermitian operator required");
  }
  const double scale = linalg::max_abs(rho);
  const double val = real_with_residue_check((obs * rho).trace(), "observable", scale);
  if (!normalize) return val;
  const double tr = real_with_residue_check(rho.trace(), "observable", scale);
  if (!(std::abs(tr) > 0.0)) {
    throw std::domain_error("observable: zero trace with normalization on");
  }
  return val / tr;
}

double dephasing_probability(const DisorderDistribution& dist, double t) {
  if (t < 0.0) throw std::invalid_argument("dephasing_probability: t must be >= 0");
  return 0.5 * (1.0 - disorder::G(dist, t));
}

namespace {

void require_uniform_grid(const WitnessSeries& s) {
  if (s.times.size() < 3 || s.times.size() != s.values.size()) {
    throw std::invalid_argument("revival_count: uniform grid with >= 3 points required");
  }
  const double step = s.times[1] - s.times[0];
  for (size_t i = 1; i < s.times.size(); ++i) {
    if (std::abs((s.times[i] - s.times[i - 1]) - step) > 1e-9 * std::max(1.0, std::abs(step))) {
      throw std::invalid_argument("revival_count: grid is not uniform");
    }
  }
}

constexpr double kRevivalThreshold = 1e-9;

}  // namespace

RevivalStats revival_count(const WitnessSeries& series) {
  require_uniform_grid(series);
  RevivalStats stats;
  bool in_run = false;
  for (size_t i = 1; i < series.values.size(); ++i) {
    const double diff = series.values[i] - series.values[i - 1];
    if (diff > kRevivalThreshold) {
      if (!in_run) {
        ++stats.count;
        in_run = true;
      }
      stats.total_increase += diff;
    } else {
      in_run = false;
    }
  }
  return stats;
}

std::optional<double> first_revival_onset(const WitnessSeries& series) {
  require_uniform_grid(series);
  for (size_t i = 1; i < series.values.size(); ++i) {
    if (series.values[i] - series.values[i - 1] > kRevivalThreshold) {
      return series.times[i - 1];
    }
  }
  return std::nullopt;
}

PurityCoefficients multiqubit_purity_coefficients(int n_qubits) {
  if (n_qubits < 1 || n_qubits > hamiltonians::kMaxQubits) {
    throw std::invalid_argument("multiqubit_purity_coefficients: N out of range [1, 6]");
  }
  const PotentHamiltonian pot =
      hamiltonians::build_pauli_tensor_power(hamiltonians::default_axis(), n_qubits);
  ComplexMatrix up = ComplexMatrix::Zero(2, 2);
  up(0, 0) = 1.0;
  ComplexMatrix rho0 = up;
  for (int i = 1; i < n_qubits; ++i) rho0 = linalg::kron(rho0, up);

  // purity(G) = c0 + c2 G^2; solve at G = 0 and G = 1.
  const double p0 = purity(maps::evolve(maps::map_case1(pot, 0.0), rho0));
  const double p1 = purity(maps::evolve(maps::map_case1(pot, 1.0), rho0));
  PurityCoefficients c{p0, p1 - p0};
  // Cross-check the quadratic model at a third point.
  const double p_half = purity(maps::evolve(maps::map_case1(pot, 0.5), rho0));
  if (std::abs(p_half - (c.constant + 0.25 * c.g2)) > 1e-10) {
    throw std::runtime_error("multiqubit_purity_coefficients: purity is not quadratic in G");
  }
  return c;
}

}  // namespace witnesses
}  // namespace qudyn
