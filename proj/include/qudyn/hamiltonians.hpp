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
#include <utility>

#include <nlohmann/json_fwd.hpp>

#include "qudyn/linalg.hpp"

namespace qudyn {

/// A Hamiltonian family H = h * generator, where h is the scalar random
/// coupling and the dimensionless generator satisfies generator^p =
/// generator^q with q < p (so H^p = h^(p-q) H^q).
struct PotentHamiltonian {
  ComplexMatrix generator;
  int p = 0;
  int q = 0;
  bool hermitian = false;

  Eigen::Index dim() const { return generator.rows(); }
  int period() const { return p - q; }
};

namespace hamiltonians {

inline constexpr double kPotencyTol = 1e-10;
inline constexpr int kMaxQubits = 6;  // dimension cap 64

ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
ComplexMatrix sigma_z();
ComplexMatrix spin1_x();
ComplexMatrix spin1_y();
ComplexMatrix spin1_z();
/// Generalized Pauli phase operator diag(1, w, w^2) with w = exp(2 pi i / 3).
ComplexMatrix clock_phase();
/// Generalized Pauli shift operator |i> -> |i-1> (cyclic).
ComplexMatrix clock_shift();
Complex omega3();

Eigen::Vector3d default_axis();  // (1,1,1)/sqrt(3)

/// n . sigma for a unit 3-vector n; (2,0)-potent, Hermitian.
PotentHamiltonian build_qubit(const Eigen::Vector3d& axis);
PotentHamiltonian build_qubit();

/// N-fold tensor power of n . sigma; (2,0)-potent on 2^N dimensions.
PotentHamiltonian build_pauli_tensor_power(const Eigen::Vector3d& axis, int n_qubits);

/// Kronecker product of single-site Paulis given as a label string over
/// {I, X, Y, Z}, e.g. "XIY". At least one site must be non-identity.
PotentHamiltonian build_pauli_string(const std::string& labels);

/// (phase + shift) / 2^(1/3); (3,0)-potent and non-Hermitian. The 2^(-1/3)
/// normalization makes the cube exactly the identity.
PotentHamiltonian build_clock_qutrit();

/// n . S for spin-1 matrices; (3,1)-potent, Hermitian.
PotentHamiltonian build_spin1(const Eigen::Vector3d& axis);
PotentHamiltonian build_spin1();

/// Wraps a user matrix after verifying the declared potency class holds and
/// is minimal.
PotentHamiltonian build_custom(const ComplexMatrix& m, int p, int q);

/// Smallest p <= p_max (then smallest q < p) with |m^p - m^q|_max <= 1e-10.
std::optional<std::pair<int, int>> detect_potency(const ComplexMatrix& m, int p_max);

/// Tagged Hamiltonian description, mirrored one-to-one by the JSON config
/// schema ("type": qubit_axis | pauli_tensor_power | pauli_string |
/// clock_qutrit | spin1_axis | custom).
struct HamiltonianSpec {
  enum class Type { qubit_axis, pauli_tensor_power, pauli_string, clock_qutrit, spin1_axis, custom };

  Type type = Type::qubit_axis;
  Eigen::Vector3d axis = default_axis();
  int n_qubits = 1;
  std::string labels;
  ComplexMatrix matrix;  // custom only, row-major [[re,im],...] lists in JSON
  int p = 0;
  int q = 0;

  static HamiltonianSpec parse(const nlohmann::json& j);
  nlohmann::json to_json() const;
  PotentHamiltonian build() const;
};

}  // namespace hamiltonians
}  // namespace qudyn
