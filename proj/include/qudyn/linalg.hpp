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

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qudyn {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
// Vectorized density matrices. Column stacking throughout: vec(A rho B) =
// (B^T kron A) vec(rho), so "A rho" maps to (I kron A) and "rho B" to
// (B^T kron I).
using ComplexVector = Eigen::VectorXcd;

namespace linalg {

ComplexMatrix identity(Eigen::Index d);

/// Kronecker product, dimensions multiply.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexVector vectorize(const ComplexMatrix& rho);
ComplexMatrix devectorize(const ComplexVector& v, Eigen::Index d);

/// Matrix exponential by scaling-and-squaring with a truncated Taylor
/// series. Throws std::overflow_error for extreme norms instead of
/// returning non-finite entries.
ComplexMatrix expm(const ComplexMatrix& m);

/// Trace norm Tr[sqrt(M^dag M)], i.e. the sum of singular values, computed
/// from the eigenvalues of the Hermitian matrix M^dag M. Roundoff
/// eigenvalues in [-1e-12, 0) are clamped to zero before the square root.
double trace_norm(const ComplexMatrix& m);

/// Transpose of the system (first) tensor factor of a (d_s*d_a)-dimensional
/// bipartite matrix. Involutory and trace preserving.
ComplexMatrix partial_transpose_system(const ComplexMatrix& rho_sa,
                                       Eigen::Index d_s, Eigen::Index d_a);

/// Eigenvalues of a Hermitian matrix, ascending. The input is symmetrized
/// before solving; deviations from Hermiticity beyond 1e-10 are an error.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

double max_abs(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Max-abs difference divided by max(1, |a|_max, |b|_max). Superoperator
/// entries for the non-Hermitian qutrit case grow like exp(3 sigma^2 t^2 / 2),
/// so map comparisons are made on this scale-free deviation.
double scaled_deviation(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_hermitian(const ComplexMatrix& m, double tol);
ComplexMatrix hermitize(const ComplexMatrix& m);

}  // namespace linalg
}  // namespace qudyn
