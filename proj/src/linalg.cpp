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

#include "qudyn/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace qudyn::linalg {

namespace {

void require_square(const ComplexMatrix& m, const char* who) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(who) + ": square matrix required");
  }
}

Eigen::VectorXd solve_hermitized(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian eigensolver failed");
  }
  return solver.eigenvalues();
}

}  // namespace

ComplexMatrix identity(Eigen::Index d) {
  return ComplexMatrix::Identity(d, d);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.size() == 0 || b.size() == 0) {
    throw std::invalid_argument("kron: empty factor");
  }
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector vectorize(const ComplexMatrix& rho) {
  require_square(rho, "vectorize");
  // Eigen stores column-major, so the raw data already is the
  // column-stacked vector.
  return Eigen::Map<const ComplexVector>(rho.data(), rho.size());
}

ComplexMatrix devectorize(const ComplexVector& v, Eigen::Index d) {
  if (d <= 0 || v.size() != d * d) {
    throw std::invalid_argument("devectorize: length must equal d*d");
  }
  return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

ComplexMatrix expm(const ComplexMatrix& m) {
  require_square(m, "expm");
  if (!m.allFinite()) {
    throw std::invalid_argument("expm: non-finite entries");
  }
  // Induced infinity norm controls the scaling step count.
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  if (norm > 350.0) {
    throw std::overflow_error("expm: matrix norm too large to exponentiate");
  }
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  }
  const double scale = std::ldexp(1.0, -squarings);
  const ComplexMatrix a = m * scale;

  const Eigen::Index d = m.rows();
  ComplexMatrix term = identity(d);
  ComplexMatrix sum = identity(d);
  for (int k = 1; k <= 64; ++k) {
    term = (term * a) / static_cast<double>(k);
    sum += term;
    if (max_abs(term) <= 1e-18 * std::max(1.0, max_abs(sum))) {
      break;
    }
  }
  for (int i = 0; i < squarings; ++i) {
    sum = (sum * sum).eval();
  }
  if (!sum.allFinite()) {
    throw std::overflow_error("expm: overflow while squaring");
  }
  return sum;
}

double trace_norm(const ComplexMatrix& m) {
  require_square(m, "trace_norm");
  // Hermitian inputs (state differences, partial transposes) take the exact
  // branch: singular values are |eigenvalues|, with no squared conditioning.
  if (is_hermitian(m, 1e-12 * std::max(1.0, max_abs(m)))) {
    return solve_hermitized(m).cwiseAbs().sum();
  }
  const ComplexMatrix gram = m.adjoint() * m;
  const Eigen::VectorXd evs = solve_hermitized(gram);
  double scale = 1.0;
  for (double ev : evs) scale = std::max(scale, std::abs(ev));
  double out = 0.0;
  for (double ev : evs) {
    if (ev < 0.0) {
      if (ev < -1e-12 * scale) {
        throw std::runtime_error("trace_norm: M^dag M produced a genuinely negative eigenvalue");
      }
      ev = 0.0;
    }
    out += std::sqrt(ev);
  }
  return out;
}

ComplexMatrix partial_transpose_system(const ComplexMatrix& rho_sa,
                                       Eigen::Index d_s, Eigen::Index d_a) {
  require_square(rho_sa, "partial_transpose_system");
  if (d_s <= 0 || d_a <= 0 || rho_sa.rows() != d_s * d_a) {
    throw std::invalid_argument("partial_transpose_system: dimension is not d_s*d_a");
  }
  ComplexMatrix out(rho_sa.rows(), rho_sa.cols());
  for (Eigen::Index i = 0; i < d_s; ++i) {
    for (Eigen::Index j = 0; j < d_s; ++j) {
      out.block(j * d_a, i * d_a, d_a, d_a) = rho_sa.block(i * d_a, j * d_a, d_a, d_a);
    }
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  require_square(m, "hermitian_eigenvalues");
  if (!is_hermitian(m, 1e-10)) {
    throw std::invalid_argument("hermitian_eigenvalues: input is not Hermitian within 1e-10");
  }
  const Eigen::VectorXd evs = solve_hermitized(m);
  return std::vector<double>(evs.data(), evs.data() + evs.size());
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: dimension mismatch");
  }
  return max_abs(a - b);
}

double scaled_deviation(const ComplexMatrix& a, const ComplexMatrix& b) {
  const double scale = std::max({1.0, max_abs(a), max_abs(b)});
  return max_abs_diff(a, b) / scale;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(ComplexMatrix(m - m.adjoint())) <= tol;
}

ComplexMatrix hermitize(const ComplexMatrix& m) {
  return 0.5 * (m + m.adjoint());
}

}  // namespace qudyn::linalg
