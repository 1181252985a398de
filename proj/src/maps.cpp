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

#include "qudyn/maps.hpp"

#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

namespace qudyn {

std::string MapProvenance::label() const {
  char buf[96];
  switch (kind) {
    case Kind::closed_form:
      return "closed_form";
    case Kind::series:
      std::snprintf(buf, sizeof(buf), "series(order=%d)", detail);
      return buf;
    case Kind::quadrature:
      std::snprintf(buf, sizeof(buf), "quadrature(nodes=%d)", detail);
      return buf;
    case Kind::monte_carlo:
      std::snprintf(buf, sizeof(buf), "monte_carlo(samples=%ld,seed=%llu)", n_samples,
                    static_cast<unsigned long long>(seed));
      return buf;
  }
  return "unknown";
}

namespace maps {

namespace {

using linalg::devectorize;
using linalg::identity;
using linalg::kron;
using linalg::max_abs;
using linalg::vectorize;

constexpr Complex kImag(0.0, 1.0);

// Powers Htilde^0 .. Htilde^(p-1); everything higher reduces onto these.
std::vector<ComplexMatrix> reduced_basis(const PotentHamiltonian& pot) {
  std::vector<ComplexMatrix> powers;
  powers.reserve(static_cast<size_t>(pot.p));
  powers.push_back(identity(pot.dim()));
  for (int j = 1; j < pot.p; ++j) powers.push_back(powers.back() * pot.generator);
  return powers;
}

// Kron table K[j][k] = conj(Htilde^j) (x) Htilde^k.
std::vector<std::vector<ComplexMatrix>> kron_table(const std::vector<ComplexMatrix>& powers) {
  const int p = static_cast<int>(powers.size());
  std::vector<std::vector<ComplexMatrix>> table(p);
  for (int j = 0; j < p; ++j) {
    table[j].reserve(p);
    for (int k = 0; k < p; ++k) {
      table[j].push_back(kron(powers[static_cast<size_t>(j)].conjugate(), powers[static_cast<size_t>(k)]));
    }
  }
  return table;
}

void require_class(const PotentHamiltonian& pot, int p, int q, const char* who) {
  if (pot.p != p || pot.q != q) {
    throw std::invalid_argument(std::string(who) + ": wrong potency class");
  }
}

DynamicalMap make_map(ComplexMatrix superop, double t, Eigen::Index d, MapProvenance prov) {
  DynamicalMap map;
  map.superop = std::move(superop);
  map.time = t;
  map.system_dim = d;
  map.provenance = prov;
  return map;
}

// Assemble Lambda = sum_jk M(j,k) conj(H^j) (x) H^k.
ComplexMatrix assemble(const Eigen::MatrixXcd& coeff, const std::vector<std::vector<ComplexMatrix>>& table) {
  const int p = static_cast<int>(table.size());
  const Eigen::Index dims = table[0][0].rows();
  ComplexMatrix out = ComplexMatrix::Zero(dims, dims);
  for (int j = 0; j < p; ++j) {
    for (int k = 0; k < p; ++k) {
      out += coeff(j, k) * table[static_cast<size_t>(j)][static_cast<size_t>(k)];
    }
  }
  return out;
}

// Gauss rules by Newton iteration on the orthonormal recurrences. Eigenvalue
// (Golub-Welsch) construction is not good enough here: the extreme Hermite
// weights are ~1e-46 and must be relatively accurate, because the (3,0)-class
// integrand grows like exp(sqrt(3) |h| t) and magnifies any absolute noise.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Weight exp(-x^2) on (-inf, inf); roots stored largest-first, mirrored.
GaussRule gauss_hermite(int n) {
  GaussRule rule;
  rule.nodes.resize(static_cast<size_t>(n));
  rule.weights.resize(static_cast<size_t>(n));
  const double pim4 = 0.7511255444649425;  // pi^(-1/4)
  const int m = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * rule.nodes[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * rule.nodes[1];
    } else {
      z = 2.0 * z - rule.nodes[static_cast<size_t>(i - 2)];
    }
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = pim4;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    rule.nodes[static_cast<size_t>(i)] = z;
    rule.nodes[static_cast<size_t>(n - 1 - i)] = -z;
    rule.weights[static_cast<size_t>(i)] = 2.0 / (pp * pp);
    rule.weights[static_cast<size_t>(n - 1 - i)] = rule.weights[static_cast<size_t>(i)];
  }
  return rule;
}

// Weight 1 on [-1, 1].
GaussRule gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(static_cast<size_t>(n));
  rule.weights.resize(static_cast<size_t>(n));
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) <= 1e-15) break;
    }
    rule.nodes[static_cast<size_t>(i)] = -z;
    rule.nodes[static_cast<size_t>(n - 1 - i)] = z;
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[static_cast<size_t>(i)] = w;
    rule.weights[static_cast<size_t>(n - 1 - i)] = w;
  }
  return rule;
}

}  // namespace

int reduced_power(const PotentHamiltonian& pot, long m) {
  if (m < pot.p) return static_cast<int>(m);
  const long period = pot.p - pot.q;
  return static_cast<int>(pot.q + (m - pot.q) % period);
}

std::vector<Complex> propagator_coefficients(const PotentHamiltonian& pot, double x) {
  if (pot.p < 1 || pot.q < 0 || pot.q >= pot.p) {
    throw std::invalid_argument("propagator_coefficients: not a potent Hamiltonian");
  }
  if (pot.p == 2 && pot.q == 0) {
    return {Complex(std::cos(x), 0.0), -kImag * std::sin(x)};
  }
  if (pot.p == 3 && pot.q == 0) {
    // sum_n x^(3n+j)/(3n+j)! = (e^x + w^(2j) e^(wx) + w^(4j) e^(w^2 x)) / 3
    // evaluated at -ix.
    const Complex w = std::polar(1.0, 2.0 * M_PI / 3.0);
    const Complex w2 = w * w;
    const Complex e0 = std::exp(-kImag * x);
    const Complex e1 = std::exp(-kImag * w * x);
    const Complex e2 = std::exp(-kImag * w2 * x);
    return {(e0 + e1 + e2) / 3.0, (e0 + w2 * e1 + w * e2) / 3.0, (e0 + w * e1 + w2 * e2) / 3.0};
  }
  if (pot.p == 3 && pot.q == 1) {
    return {Complex(1.0, 0.0), -kImag * std::sin(x), Complex(std::cos(x) - 1.0, 0.0)};
  }
  // Generic class: accumulate the Taylor series of exp(-ix H) over the
  // reduced power basis until terms drop below 1e-16 relative.
  std::vector<Complex> coeffs(static_cast<size_t>(pot.p), Complex(0.0, 0.0));
  Complex term(1.0, 0.0);
  coeffs[0] = term;
  for (long m = 1; m <= 4096; ++m) {
    term *= -kImag * x / static_cast<double>(m);
    coeffs[static_cast<size_t>(reduced_power(pot, m))] += term;
    if (std::abs(term) < 1e-16 && m > static_cast<long>(std::abs(x)) + pot.p) break;
  }
  return coeffs;
}

DynamicalMap map_case1(const PotentHamiltonian& pot, double G) {
  require_class(pot, 2, 0, "map_case1");
  const auto table = kron_table(reduced_basis(pot));
  Eigen::MatrixXcd coeff(2, 2);
  coeff << 0.5 * (1.0 + G), 0.0, 0.0, 0.5 * (1.0 - G);
  return make_map(assemble(coeff, table), 0.0, pot.dim(), {MapProvenance::Kind::closed_form});
}

DynamicalMap map_case2(const PotentHamiltonian& pot, Complex G1, Complex G2, Complex G3) {
  require_class(pot, 3, 0, "map_case2");
  const auto table = kron_table(reduced_basis(pot));
  Eigen::MatrixXcd coeff(3, 3);
  coeff << 3.0 + 2.0 * G1, -G3, -G2,
           -G3, 2.0 * G2, 3.0 - G1,
           -G2, 3.0 - G1, 2.0 * G3;
  coeff /= 9.0;
  return make_map(assemble(coeff, table), 0.0, pot.dim(), {MapProvenance::Kind::closed_form});
}

DynamicalMap map_case3(const PotentHamiltonian& pot, double G, double G_prime) {
  require_class(pot, 3, 1, "map_case3");
  if (!pot.hermitian) {
    throw std::invalid_argument("map_case3: Hermitian generator required");
  }
  const auto table = kron_table(reduced_basis(pot));
  Eigen::MatrixXcd coeff = Eigen::MatrixXcd::Zero(3, 3);
  coeff(0, 0) = 1.0;
  coeff(2, 0) = G_prime - 1.0;
  coeff(0, 2) = G_prime - 1.0;
  coeff(1, 1) = 0.5 * (1.0 - G);
  coeff(2, 2) = 0.5 * (3.0 + G - 4.0 * G_prime);
  return make_map(assemble(coeff, table), 0.0, pot.dim(), {MapProvenance::Kind::closed_form});
}

DynamicalMap closed_form_map(const PotentHamiltonian& pot, const DisorderDistribution& dist, double t) {
  DynamicalMap map;
  if (pot.p == 2 && pot.q == 0) {
    map = map_case1(pot, disorder::G(dist, t));
  } else if (pot.p == 3 && pot.q == 0) {
    const auto g = disorder::G123(dist, t);  // throws for uniform disorder
    map = map_case2(pot, g[0], g[1], g[2]);
  } else if (pot.p == 3 && pot.q == 1) {
    map = map_case3(pot, disorder::G(dist, t), disorder::G_prime(dist, t));
  } else {
    throw std::invalid_argument("closed_form_map: no closed form for this potency class");
  }
  map.time = t;
  return map;
}

DynamicalMap map_series(const PotentHamiltonian& pot, const DisorderDistribution& dist, double t, int order) {
  if (order < 0 || order > 200 || order % 2 != 0) {
    throw std::invalid_argument("map_series: order must be even and in [0, 200]");
  }
  const auto powers = reduced_basis(pot);
  const auto table = kron_table(powers);
  const int p = pot.p;

  Eigen::MatrixXcd coeff = Eigen::MatrixXcd::Zero(p, p);
  coeff(0, 0) = 1.0;

  // c_n = (-it)^n / n! * E[h^n] for even n, built by recurrence on even
  // moment ratios.
  const bool gaussian = dist.kind == DisorderDistribution::Kind::gaussian;
  const double w2 = dist.width * dist.width;
  auto bound_step = [&](int n) {
    // ratio T_n / T_(n-2) of the truncation certificate T_n = (2t)^n E[h^n]/n!
    const double moment_ratio =
        gaussian ? w2 * static_cast<double>(n - 1)
                 : w2 * static_cast<double>(n - 1) / static_cast<double>(n + 1);
    return 4.0 * t * t * moment_ratio / (static_cast<double>(n) * (n - 1.0));
  };
  Complex c(1.0, 0.0);
  double term_bound = 1.0;
  for (int n = 2; n <= order; n += 2) {
    c *= -0.25 * bound_step(n);  // (-it)^2 / (2t)^2 = -1/4 per recurrence step
    term_bound *= bound_step(n);

    // Binomial row: sum_k C(n,k) (-1)^(n-k) K[r(n-k)][r(k)], n even.
    double binom = 1.0;
    for (int k = 0; k <= n; ++k) {
      const int j1 = reduced_power(pot, n - k);
      const int j2 = reduced_power(pot, k);
      const double sign = ((n - k) % 2 == 0) ? 1.0 : -1.0;
      coeff(j1, j2) += c * sign * binom;
      binom = binom * (n - k) / (k + 1.0);
    }
  }
  // The convergence certificate is the first omitted term.
  term_bound *= bound_step(order + 2);
  if (!(term_bound < 1e-16)) {
    throw TruncationError("map_series: truncation insufficient at this order and time");
  }
  return make_map(assemble(coeff, table), t, pot.dim(), {MapProvenance::Kind::series, order});
}

DynamicalMap map_quadrature(const PotentHamiltonian& pot, const DisorderDistribution& dist, double t, int nodes) {
  if (nodes < 32) throw std::invalid_argument("map_quadrature: at least 32 nodes required");
  const auto powers = reduced_basis(pot);
  const auto table = kron_table(powers);
  const int p = pot.p;

  GaussRule rule;
  std::vector<double> hs(static_cast<size_t>(nodes));
  if (dist.kind == DisorderDistribution::Kind::gaussian) {
    rule = gauss_hermite(nodes);
    const double inv_sqrt_pi = 1.0 / std::sqrt(M_PI);
    for (int i = 0; i < nodes; ++i) {
      hs[static_cast<size_t>(i)] = std::sqrt(2.0) * dist.width * rule.nodes[static_cast<size_t>(i)];
      rule.weights[static_cast<size_t>(i)] *= inv_sqrt_pi;
    }
  } else {
    rule = gauss_legendre(nodes);
    for (int i = 0; i < nodes; ++i) {
      hs[static_cast<size_t>(i)] = dist.width * rule.nodes[static_cast<size_t>(i)];
      rule.weights[static_cast<size_t>(i)] *= 0.5;
    }
  }

  // M_jk = E[conj(a_j(ht)) a_k(ht)]
  Eigen::MatrixXcd coeff = Eigen::MatrixXcd::Zero(p, p);
  for (int i = 0; i < nodes; ++i) {
    const auto a = propagator_coefficients(pot, hs[static_cast<size_t>(i)] * t);
    const double wt = rule.weights[static_cast<size_t>(i)];
    for (int j = 0; j < p; ++j) {
      for (int k = 0; k < p; ++k) {
        coeff(j, k) += wt * std::conj(a[static_cast<size_t>(j)]) * a[static_cast<size_t>(k)];
      }
    }
  }
  return make_map(assemble(coeff, table), t, pot.dim(), {MapProvenance::Kind::quadrature, nodes});
}

ComplexMatrix apply(const DynamicalMap& map, const ComplexMatrix& m) {
  if (m.rows() != map.system_dim || m.cols() != map.system_dim) {
    throw std::invalid_argument("apply: dimension mismatch with map");
  }
  return devectorize(map.superop * vectorize(m), map.system_dim);
}

ComplexMatrix evolve(const DynamicalMap& map, const ComplexMatrix& rho0) {
  if (rho0.rows() != map.system_dim || rho0.cols() != map.system_dim) {
    throw std::invalid_argument("evolve: state dimension does not match map");
  }
  if (!linalg::is_hermitian(rho0, 1e-10)) {
    throw std::invalid_argument("evolve: initial state must be Hermitian");
  }
  if (std::abs(rho0.trace().real() - 1.0) > 1e-10 || std::abs(rho0.trace().imag()) > 1e-10) {
    throw std::invalid_argument("evolve: initial state must have unit trace");
  }
  const auto evs = linalg::hermitian_eigenvalues(rho0);
  if (evs.front() < -1e-10) {
    throw std::invalid_argument("evolve: initial state must be positive semidefinite");
  }
  ComplexMatrix out = apply(map, rho0);
  const double defect = max_abs(ComplexMatrix(out - out.adjoint()));
  if (defect > 1e-10 * std::max(1.0, max_abs(out))) {
    throw std::runtime_error("evolve: non-Hermitian output, map is broken");
  }
  return linalg::hermitize(out);
}

ComplexMatrix evolve_system_factor(const DynamicalMap& map, const ComplexMatrix& rho_sa, Eigen::Index d_a) {
  const Eigen::Index d = map.system_dim;
  if (rho_sa.rows() != d * d_a || rho_sa.cols() != d * d_a) {
    throw std::invalid_argument("evolve_system_factor: joint dimension mismatch");
  }
  const ComplexMatrix& L = map.superop;
  ComplexMatrix out = ComplexMatrix::Zero(rho_sa.rows(), rho_sa.cols());
  // out_{(i,a),(j,b)} = sum_{k,l} L[(j d + i), (l d + k)] rho_{(k,a),(l,b)}
  // in the column-stacking convention vec(rho)_{col*d + row}.
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index l = 0; l < d; ++l) {
          const Complex c = L(j * d + i, l * d + k);
          if (c == Complex(0.0, 0.0)) continue;
          out.block(i * d_a, j * d_a, d_a, d_a) += c * rho_sa.block(k * d_a, l * d_a, d_a, d_a);
        }
      }
    }
  }
  return out;
}

Lindblad1 lindblad_generator_case1(const PotentHamiltonian& pot, const DisorderDistribution& dist, double t) {
  require_class(pot, 2, 0, "lindblad_generator_case1");
  const double g = disorder::G(dist, t);
  if (std::abs(g) <= 1e-12) {
    throw std::domain_error("lindblad_generator_case1: gamma pole, G(t) vanishes");
  }
  const auto rate = disorder::decay_rate_gamma(dist, t);
  if (rate.pole) {
    throw std::domain_error("lindblad_generator_case1: gamma pole, G(t) vanishes");
  }
  return {rate.value, pot.generator};
}

Unitality unitality_check(const DynamicalMap& map) {
  const ComplexMatrix eye = identity(map.system_dim);
  const double dev = linalg::max_abs_diff(apply(map, eye), eye);
  return {dev <= 1e-10, dev};
}

nlohmann::json to_json(const DynamicalMap& map) {
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index i = 0; i < map.superop.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < map.superop.cols(); ++j) {
      row.push_back({map.superop(i, j).real(), map.superop(i, j).imag()});
    }
    entries.push_back(std::move(row));
  }
  return {{"dim", map.system_dim},
          {"time", map.time},
          {"provenance", map.provenance.label()},
          {"entries", std::move(entries)}};
}

DynamicalMap from_json(const nlohmann::json& j) {
  DynamicalMap map;
  map.system_dim = j.at("dim").get<Eigen::Index>();
  map.time = j.at("time").get<double>();
  const auto& entries = j.at("entries");
  const Eigen::Index dims = map.system_dim * map.system_dim;
  if (static_cast<Eigen::Index>(entries.size()) != dims) {
    throw std::invalid_argument("map from_json: entry count does not match dim^2");
  }
  map.superop.resize(dims, dims);
  for (Eigen::Index i = 0; i < dims; ++i) {
    for (Eigen::Index jx = 0; jx < dims; ++jx) {
      const auto& e = entries.at(i).at(jx);
      map.superop(i, jx) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return map;
}

}  // namespace maps
}  // namespace qudyn
