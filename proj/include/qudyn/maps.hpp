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
#include <stdexcept>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qudyn/disorder.hpp"
#include "qudyn/hamiltonians.hpp"
#include "qudyn/linalg.hpp"

namespace qudyn {

struct MapProvenance {
  enum class Kind { closed_form, series, quadrature, monte_carlo };

  Kind kind = Kind::closed_form;
  int detail = 0;               // series order / quadrature node count
  long n_samples = 0;           // monte_carlo only
  std::uint64_t seed = 0;       // monte_carlo only

  std::string label() const;
};

/// Disorder-averaged dynamical map Lambda_t at a fixed time: a d^2 x d^2
/// superoperator acting on column-stacked density matrices.
struct DynamicalMap {
  ComplexMatrix superop;
  double time = 0.0;
  Eigen::Index system_dim = 0;
  MapProvenance provenance;
};

/// Thrown by the series engine when the requested order cannot certify the
/// truncation error below 1e-16 at the requested time.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace maps {

/// Coefficients a_0 .. a_{p-1} with exp(-i x Htilde) = sum_j a_j Htilde^j
/// under the potency reduction. Closed forms for the (2,0), (3,0) and (3,1)
/// classes; any other class is accumulated term by term from the Taylor
/// series with powers reduced modulo the potency relation.
std::vector<Complex> propagator_coefficients(const PotentHamiltonian& pot, double x);

/// Reduced power index: m -> m for m < p, else q + (m - q) mod (p - q).
int reduced_power(const PotentHamiltonian& pot, long m);

/// Lambda = (1+G)/2 I (x) I + (1-G)/2 H* (x) H   [(2,0)-potent]
DynamicalMap map_case1(const PotentHamiltonian& pot, double G);

/// Nine-operator qutrit map with weights {3, G1, G2, G3}/9  [(3,0)-potent]
DynamicalMap map_case2(const PotentHamiltonian& pot, Complex G1, Complex G2, Complex G3);

/// Spin-1 style map driven by G and G'  [(3,1)-potent, Hermitian]
DynamicalMap map_case3(const PotentHamiltonian& pot, double G, double G_prime);

/// Dispatches to the closed form matching the potency class, evaluating the
/// decoherence functions for `dist` at time t. Throws std::invalid_argument
/// for the (3,0) class with uniform disorder (no closed form; use
/// map_quadrature).
DynamicalMap closed_form_map(const PotentHamiltonian& pot, const DisorderDistribution& dist, double t);

/// Moment series: Lambda ~= sum_n ((-it)^n / n!) E[h^n] sum_k C(n,k)
/// (-H*)^(n-k) (x) H^k with powers reduced by potency. Odd moments vanish.
/// `order` must be even and <= 200.
DynamicalMap map_series(const PotentHamiltonian& pot, const DisorderDistribution& dist, double t, int order);

/// Deterministic engine of record: Lambda = sum_jk M_jk (H*)^j (x) H^k with
/// M_jk = E[conj(a_j(ht)) a_k(ht)] integrated by Gauss-Hermite (Gaussian) or
/// Gauss-Legendre (uniform) quadrature. Valid at all t. `nodes` >= 32.
DynamicalMap map_quadrature(const PotentHamiltonian& pot, const DisorderDistribution& dist, double t, int nodes);

/// Applies the map to a validated state (Hermitian, unit trace, positive
/// semidefinite within 1e-10). The output is symmetrized; a Hermiticity
/// defect above 1e-10 (relative to the output scale) signals a broken map
/// and throws. For non-Hermitian generators the output trace drifts from 1
/// on purpose; normalization happens at observable formation.
ComplexMatrix evolve(const DynamicalMap& map, const ComplexMatrix& rho0);

/// Applies the map to the system factor of a (d * d_a)-dimensional joint
/// state, i.e. (Lambda (x) id)[rho_sa].
ComplexMatrix evolve_system_factor(const DynamicalMap& map, const ComplexMatrix& rho_sa, Eigen::Index d_a);

/// Raw application to an arbitrary matrix (no state validation).
ComplexMatrix apply(const DynamicalMap& map, const ComplexMatrix& m);

struct Lindblad1 {
  double gamma = 0.0;
  ComplexMatrix jump;
};

/// Case-I master-equation generator: gamma(t) = -dG/dt / (2G) with jump
/// operator Htilde, valid away from zeros of G.
Lindblad1 lindblad_generator_case1(const PotentHamiltonian& pot, const DisorderDistribution& dist, double t);

struct Unitality {
  bool unital = false;
  double deviation = 0.0;  // |Lambda[I] - I|_max
};

Unitality unitality_check(const DynamicalMap& map);

nlohmann::json to_json(const DynamicalMap& map);
DynamicalMap from_json(const nlohmann::json& j);

}  // namespace maps
}  // namespace qudyn
