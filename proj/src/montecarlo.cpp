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

#include "qudyn/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace qudyn {

namespace {

using linalg::kron;

// Samples per summation block. The block decomposition (not the shard
// count) fixes the reduction order, so results are invariant under the
// execution parallelism.
constexpr long kBlock = 4096;

struct KahanC {
  Complex sum{0.0, 0.0};
  Complex comp{0.0, 0.0};

  void add(Complex v) {
    const Complex y = v - comp;
    const Complex t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

// Per-time accumulator of coefficient-product moments over one block.
struct BlockAccum {
  std::vector<Eigen::MatrixXcd> mean;    // p x p sums of m_jk
  std::vector<Eigen::MatrixXcd> second;  // p^2 x p^2 sums of m_jk conj(m_lm)
};

std::vector<ComplexMatrix> k_matrices(const PotentHamiltonian& pot, const ComplexMatrix& rho0) {
  std::vector<ComplexMatrix> powers{linalg::identity(pot.dim())};
  for (int j = 1; j < pot.p; ++j) powers.push_back(powers.back() * pot.generator);
  std::vector<ComplexMatrix> k;
  k.reserve(static_cast<size_t>(pot.p) * pot.p);
  for (int j = 0; j < pot.p; ++j) {
    for (int kk = 0; kk < pot.p; ++kk) {
      k.push_back(powers[static_cast<size_t>(kk)] * rho0 * powers[static_cast<size_t>(j)].adjoint());
    }
  }
  return k;
}

void validate(const McRunConfig& cfg) {
  if (cfg.n_samples < 1) throw std::invalid_argument("mc: n_samples must be >= 1");
  if (cfg.shards < 1) throw std::invalid_argument("mc: shards must be >= 1");
  if (cfg.time_grid.empty()) throw std::invalid_argument("mc: empty time grid");
  for (size_t i = 0; i < cfg.time_grid.size(); ++i) {
    if (cfg.time_grid[i] < 0.0 || (i > 0 && cfg.time_grid[i] <= cfg.time_grid[i - 1])) {
      throw std::invalid_argument("mc: time grid must be ascending and nonnegative");
    }
  }
  if (cfg.rho0.rows() != cfg.pot.dim() || !linalg::is_hermitian(cfg.rho0, 1e-10) ||
      std::abs(cfg.rho0.trace().real() - 1.0) > 1e-10) {
    throw std::invalid_argument("mc: rho0 must be a valid state of the Hamiltonian dimension");
  }
  const auto evs = linalg::hermitian_eigenvalues(cfg.rho0);
  if (evs.front() < -1e-10) {
    throw std::invalid_argument("mc: rho0 must be positive semidefinite");
  }
}

}  // namespace

McResult::McResult(PotentHamiltonian pot, ComplexMatrix rho0, std::vector<double> times,
                   long n_samples, std::uint64_t seed,
                   std::vector<Eigen::MatrixXcd> mean, std::vector<Eigen::MatrixXcd> second)
    : pot_(std::move(pot)),
      rho0_(std::move(rho0)),
      times_(std::move(times)),
      n_samples_(n_samples),
      seed_(seed),
      mean_(std::move(mean)),
      second_(std::move(second)),
      kmats_(k_matrices(pot_, rho0_)) {}

ComplexMatrix McResult::rho_bar(std::size_t ti) const {
  const auto& m = mean_.at(ti);
  ComplexMatrix out = ComplexMatrix::Zero(dim(), dim());
  for (int j = 0; j < pot_.p; ++j) {
    for (int k = 0; k < pot_.p; ++k) {
      out += m(j, k) * kmats_[static_cast<size_t>(j * pot_.p + k)];
    }
  }
  return out;
}

DynamicalMap McResult::superoperator(std::size_t ti) const {
  std::vector<ComplexMatrix> powers{linalg::identity(dim())};
  for (int j = 1; j < pot_.p; ++j) powers.push_back(powers.back() * pot_.generator);
  const auto& m = mean_.at(ti);
  ComplexMatrix super = ComplexMatrix::Zero(dim() * dim(), dim() * dim());
  for (int j = 0; j < pot_.p; ++j) {
    for (int k = 0; k < pot_.p; ++k) {
      super += m(j, k) * kron(powers[static_cast<size_t>(j)].conjugate(), powers[static_cast<size_t>(k)]);
    }
  }
  DynamicalMap map;
  map.superop = std::move(super);
  map.time = times_.at(ti);
  map.system_dim = dim();
  map.provenance = {MapProvenance::Kind::monte_carlo, 0, n_samples_, seed_};
  return map;
}

double McResult::variance_of(std::size_t ti, const Eigen::MatrixXcd& weights) const {
  // Var(sum_jk q_jk m_jk) = q^dag S q - |q . mean|^2 over the sample index.
  const int p = pot_.p;
  const auto& s = second_.at(ti);
  const auto& m = mean_.at(ti);
  Complex quad(0.0, 0.0);
  for (int a = 0; a < p * p; ++a) {
    for (int b = 0; b < p * p; ++b) {
      quad += weights(a / p, a % p) * std::conj(weights(b / p, b % p)) * s(a, b);
    }
  }
  const Complex mean_val = (weights.array() * m.array()).sum();
  const double var = quad.real() - std::norm(mean_val);
  return std::max(0.0, var);
}

ValueSe McResult::linear_stat(std::size_t ti, const Eigen::MatrixXcd& weights) const {
  const Complex mean_val = (weights.array() * mean_.at(ti).array()).sum();
  const double n = static_cast<double>(n_samples_);
  double var = variance_of(ti, weights);
  if (n_samples_ > 1) var *= n / (n - 1.0);
  return {mean_val.real(), std::sqrt(var / n)};
}

Eigen::MatrixXcd McResult::trace_weights(const ComplexMatrix& obs) const {
  const int p = pot_.p;
  Eigen::MatrixXcd q(p, p);
  for (int j = 0; j < p; ++j) {
    for (int k = 0; k < p; ++k) {
      q(j, k) = (obs * kmats_[static_cast<size_t>(j * p + k)]).trace();
    }
  }
  return q;
}

ValueSe McResult::observable(std::size_t ti, const ComplexMatrix& obs, bool normalize) const {
  if (!linalg::is_hermitian(obs, 1e-10)) {
    throw std::invalid_argument("mc observable: Hermitian operator required");
  }
  const Eigen::MatrixXcd qx = trace_weights(obs);
  if (!normalize) return linear_stat(ti, qx);

  const Eigen::MatrixXcd qy = trace_weights(linalg::identity(dim()));
  const double x = ((qx.array() * mean_.at(ti).array()).sum()).real();
  const double y = ((qy.array() * mean_.at(ti).array()).sum()).real();
  if (std::abs(y) < 1e-300) throw std::domain_error("mc observable: zero averaged trace");
  const double ratio = x / y;
  // Delta method for the ratio of means: Var(x - R y) / (y^2 n).
  const Eigen::MatrixXcd resid = qx - ratio * qy;
  double var = variance_of(ti, resid);
  const double n = static_cast<double>(n_samples_);
  if (n_samples_ > 1) var *= n / (n - 1.0);
  return {ratio, std::sqrt(var / n) / std::abs(y)};
}

ValueSe McResult::purity(std::size_t ti, bool normalized) const {
  const ComplexMatrix rbar = linalg::hermitize(rho_bar(ti));
  const double tr = rbar.trace().real();
  const double tr2 = (rbar * rbar).trace().real();
  double value;
  ComplexMatrix grad;  // d purity / d rho at rho_bar
  if (normalized) {
    if (std::abs(tr) < 1e-300) throw std::domain_error("mc purity: zero averaged trace");
    value = tr2 / (tr * tr);
    grad = 2.0 * rbar / (tr * tr) - (2.0 * tr2 / (tr * tr * tr)) * linalg::identity(dim());
  } else {
    value = tr2;
    grad = 2.0 * rbar;
  }
  // Delta method: SE of the linearized influence Tr[grad rho_i].
  const Eigen::MatrixXcd q = trace_weights(grad);
  double var = variance_of(ti, q);
  const double n = static_cast<double>(n_samples_);
  if (n_samples_ > 1) var *= n / (n - 1.0);
  return {value, std::sqrt(var / n)};
}

Eigen::MatrixXd McResult::superop_entry_se(std::size_t ti) const {
  const int p = pot_.p;
  const Eigen::Index dims = dim() * dim();
  std::vector<ComplexMatrix> powers{linalg::identity(dim())};
  for (int j = 1; j < p; ++j) powers.push_back(powers.back() * pot_.generator);
  std::vector<ComplexMatrix> kr;
  for (int j = 0; j < p; ++j) {
    for (int k = 0; k < p; ++k) {
      kr.push_back(kron(powers[static_cast<size_t>(j)].conjugate(), powers[static_cast<size_t>(k)]));
    }
  }
  const double n = static_cast<double>(n_samples_);
  const double bessel = n_samples_ > 1 ? n / (n - 1.0) : 1.0;
  Eigen::MatrixXd out(dims, dims);
  Eigen::MatrixXcd q(p, p);
  for (Eigen::Index r = 0; r < dims; ++r) {
    for (Eigen::Index c = 0; c < dims; ++c) {
      for (int j = 0; j < p; ++j) {
        for (int k = 0; k < p; ++k) {
          q(j, k) = kr[static_cast<size_t>(j * p + k)](r, c);
        }
      }
      out(r, c) = std::sqrt(variance_of(ti, q) * bessel / n);
    }
  }
  return out;
}

namespace montecarlo {

ComplexMatrix evolve_single(const PotentHamiltonian& pot, double h, double t, const ComplexMatrix& rho0) {
  if (rho0.rows() != pot.dim() || rho0.cols() != pot.dim()) {
    throw std::invalid_argument("evolve_single: state dimension mismatch");
  }
  const auto a = maps::propagator_coefficients(pot, h * t);
  ComplexMatrix u = ComplexMatrix::Zero(pot.dim(), pot.dim());
  ComplexMatrix power = linalg::identity(pot.dim());
  for (int j = 0; j < pot.p; ++j) {
    u += a[static_cast<size_t>(j)] * power;
    if (j + 1 < pot.p) power = power * pot.generator;
  }
  return u * rho0 * u.adjoint();
}

McResult run(const McRunConfig& cfg) {
  validate(cfg);
  const int p = cfg.pot.p;
  const size_t nt = cfg.time_grid.size();
  const long n_blocks = (cfg.n_samples + kBlock - 1) / kBlock;

  std::vector<BlockAccum> blocks(static_cast<size_t>(n_blocks));

  auto run_block = [&](long bi) {
    BlockAccum acc;
    acc.mean.assign(nt, Eigen::MatrixXcd::Zero(p, p));
    acc.second.assign(nt, Eigen::MatrixXcd::Zero(p * p, p * p));
    const long lo = bi * kBlock;
    const long hi = std::min(cfg.n_samples, lo + kBlock);
    Eigen::MatrixXcd m(p, p);
    for (long i = lo; i < hi; ++i) {
      const double h = disorder::sample_at(cfg.dist, cfg.seed, static_cast<std::uint64_t>(i));
      for (size_t ti = 0; ti < nt; ++ti) {
        const auto a = maps::propagator_coefficients(cfg.pot, h * cfg.time_grid[ti]);
        for (int j = 0; j < p; ++j) {
          for (int k = 0; k < p; ++k) {
            m(j, k) = std::conj(a[static_cast<size_t>(j)]) * a[static_cast<size_t>(k)];
          }
        }
        acc.mean[ti] += m;
        auto& s = acc.second[ti];
        for (int aa = 0; aa < p * p; ++aa) {
          const Complex va = m(aa / p, aa % p);
          for (int bb = 0; bb < p * p; ++bb) {
            s(aa, bb) += va * std::conj(m(bb / p, bb % p));
          }
        }
      }
    }
    blocks[static_cast<size_t>(bi)] = std::move(acc);
  };

  const int workers = static_cast<int>(std::min<long>(cfg.shards, n_blocks));
  if (workers <= 1) {
    for (long bi = 0; bi < n_blocks; ++bi) run_block(bi);
  } else {
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int wi = 0; wi < workers; ++wi) {
      pool.emplace_back([&] {
        for (long bi = next.fetch_add(1); bi < n_blocks; bi = next.fetch_add(1)) run_block(bi);
      });
    }
    for (auto& th : pool) th.join();
  }

  // Deterministic reduction: block index ascending, compensated per entry.
  std::vector<Eigen::MatrixXcd> mean(nt, Eigen::MatrixXcd::Zero(p, p));
  std::vector<Eigen::MatrixXcd> second(nt, Eigen::MatrixXcd::Zero(p * p, p * p));
  for (size_t ti = 0; ti < nt; ++ti) {
    std::vector<KahanC> mk(static_cast<size_t>(p * p));
    std::vector<KahanC> sk(static_cast<size_t>(p * p * p * p));
    for (long bi = 0; bi < n_blocks; ++bi) {
      const auto& acc = blocks[static_cast<size_t>(bi)];
      for (int a = 0; a < p * p; ++a) {
        mk[static_cast<size_t>(a)].add(acc.mean[ti](a / p, a % p));
        for (int b = 0; b < p * p; ++b) {
          sk[static_cast<size_t>(a * p * p + b)].add(acc.second[ti](a, b));
        }
      }
    }
    const double inv_n = 1.0 / static_cast<double>(cfg.n_samples);
    for (int a = 0; a < p * p; ++a) {
      mean[ti](a / p, a % p) = mk[static_cast<size_t>(a)].sum * inv_n;
      for (int b = 0; b < p * p; ++b) {
        second[ti](a, b) = sk[static_cast<size_t>(a * p * p + b)].sum * inv_n;
      }
    }
  }
  return McResult(cfg.pot, cfg.rho0, cfg.time_grid, cfg.n_samples, cfg.seed,
                  std::move(mean), std::move(second));
}

ConvergenceReport convergence_report(const std::vector<ConvergenceRow>& rows) {
  if (rows.size() < 2) {
    throw std::invalid_argument("convergence_report: at least two sample sizes required");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    if (r.n_samples < 1 || !(r.error > 0.0)) {
      throw std::invalid_argument("convergence_report: rows need positive N and error");
    }
    const double x = std::log(static_cast<double>(r.n_samples));
    const double y = std::log(r.error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(rows.size());
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-12) {
    throw std::invalid_argument("convergence_report: sample sizes must differ");
  }
  ConvergenceReport rep;
  rep.rows = rows;
  rep.fitted_exponent = (n * sxy - sx * sy) / denom;
  return rep;
}

}  // namespace montecarlo
}  // namespace qudyn
