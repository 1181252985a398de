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

#include "qudyn/hamiltonians.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qudyn::hamiltonians {

namespace {

using linalg::kron;
using linalg::max_abs;
using linalg::max_abs_diff;

Eigen::Vector3d normalized_axis(const Eigen::Vector3d& axis) {
  const double len = axis.norm();
  if (len < 1e-14) {
    throw std::invalid_argument("hamiltonians: axis must be a nonzero 3-vector");
  }
  if (std::abs(len - 1.0) <= 1e-12) return axis;
  return axis / len;
}

void verify_potency(const PotentHamiltonian& pot, const char* who) {
  const auto found = detect_potency(pot.generator, std::max(pot.p, 4));
  if (!found || found->first != pot.p || found->second != pot.q) {
    throw std::runtime_error(std::string(who) + ": potency self-check failed");
  }
}

PotentHamiltonian finish(ComplexMatrix generator, int p, int q, const char* who) {
  PotentHamiltonian pot;
  pot.generator = std::move(generator);
  pot.p = p;
  pot.q = q;
  pot.hermitian = linalg::is_hermitian(pot.generator, 1e-12);
  verify_potency(pot, who);
  return pot;
}

ComplexMatrix matrix_from_json(const nlohmann::json& rows) {
  if (!rows.is_array() || rows.empty()) {
    throw std::invalid_argument("hamiltonians: custom matrix must be a non-empty array of rows");
  }
  const Eigen::Index d = static_cast<Eigen::Index>(rows.size());
  ComplexMatrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto& row = rows.at(i);
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
      throw std::invalid_argument("hamiltonians: custom matrix must be square");
    }
    for (Eigen::Index j = 0; j < d; ++j) {
      const auto& e = row.at(j);
      if (!e.is_array() || e.size() != 2) {
        throw std::invalid_argument("hamiltonians: matrix entries must be [re, im] pairs");
      }
      m(i, j) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return m;
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

ComplexMatrix sigma_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix sigma_y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

ComplexMatrix sigma_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix spin1_x() {
  ComplexMatrix m(3, 3);
  m << 0, 1, 0, 1, 0, 1, 0, 1, 0;
  return m / std::sqrt(2.0);
}

ComplexMatrix spin1_y() {
  const Complex i(0, 1);
  ComplexMatrix m(3, 3);
  m << 0, -i, 0, i, 0, -i, 0, i, 0;
  return m / std::sqrt(2.0);
}

ComplexMatrix spin1_z() {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = 1;
  m(2, 2) = -1;
  return m;
}

Complex omega3() { return std::polar(1.0, 2.0 * M_PI / 3.0); }

ComplexMatrix clock_phase() {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = 1;
  m(1, 1) = omega3();
  m(2, 2) = omega3() * omega3();
  return m;
}

ComplexMatrix clock_shift() {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 2) = 1;
  m(1, 0) = 1;
  m(2, 1) = 1;
  return m;
}

Eigen::Vector3d default_axis() {
  return Eigen::Vector3d(1, 1, 1) / std::sqrt(3.0);
}

PotentHamiltonian build_qubit(const Eigen::Vector3d& axis) {
  const Eigen::Vector3d n = normalized_axis(axis);
  return finish(n.x() * sigma_x() + n.y() * sigma_y() + n.z() * sigma_z(), 2, 0, "build_qubit");
}

PotentHamiltonian build_qubit() { return build_qubit(default_axis()); }

PotentHamiltonian build_pauli_tensor_power(const Eigen::Vector3d& axis, int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("build_pauli_tensor_power: qubit count out of range [1, 6]");
  }
  const ComplexMatrix site = build_qubit(axis).generator;
  ComplexMatrix m = site;
  for (int i = 1; i < n_qubits; ++i) m = kron(m, site);
  return finish(std::move(m), 2, 0, "build_pauli_tensor_power");
}

PotentHamiltonian build_pauli_string(const std::string& labels) {
  if (labels.empty()) {
    throw std::invalid_argument("build_pauli_string: empty label string");
  }
  if (labels.size() > static_cast<size_t>(kMaxQubits)) {
    throw std::invalid_argument("build_pauli_string: more than 6 sites");
  }
  bool nontrivial = false;
  ComplexMatrix m = linalg::identity(1);
  for (char c : labels) {
    ComplexMatrix site;
    switch (c) {
      case 'I': site = linalg::identity(2); break;
      case 'X': site = sigma_x(); nontrivial = true; break;
      case 'Y': site = sigma_y(); nontrivial = true; break;
      case 'Z': site = sigma_z(); nontrivial = true; break;
      default:
        throw std::invalid_argument("build_pauli_string: labels must be over {I, X, Y, Z}");
    }
    m = kron(m, site);
  }
  if (!nontrivial) {
    // An all-identity string degenerates to potency (1,0).
    throw std::invalid_argument("build_pauli_string: at least one non-identity label required");
  }
  return finish(std::move(m), 2, 0, "build_pauli_string");
}

PotentHamiltonian build_clock_qutrit() {
  const ComplexMatrix phase = clock_phase();
  const ComplexMatrix shift = clock_shift();
  const ComplexMatrix eye = linalg::identity(3);
  // Construction self-checks: phase^3 = shift^3 = I and the commutation
  // relation phase*shift = w shift*phase.
  if (max_abs_diff(phase * phase * phase, eye) > 1e-14 ||
      max_abs_diff(shift * shift * shift, eye) > 1e-14 ||
      max_abs(ComplexMatrix(phase * shift - omega3() * shift * phase)) > 1e-14) {
    throw std::runtime_error("build_clock_qutrit: clock algebra self-check failed");
  }
  return finish((phase + shift) / std::cbrt(2.0), 3, 0, "build_clock_qutrit");
}

PotentHamiltonian build_spin1(const Eigen::Vector3d& axis) {
  const Eigen::Vector3d n = normalized_axis(axis);
  return finish(n.x() * spin1_x() + n.y() * spin1_y() + n.z() * spin1_z(), 3, 1, "build_spin1");
}

PotentHamiltonian build_spin1() { return build_spin1(default_axis()); }

PotentHamiltonian build_custom(const ComplexMatrix& m, int p, int q) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw std::invalid_argument("build_custom: square matrix required");
  }
  if (m.rows() > 64) {
    throw std::invalid_argument("build_custom: dimension cap is 64");
  }
  if (p < 1 || q < 0 || q >= p) {
    throw std::invalid_argument("build_custom: potency must satisfy p >= 1, 0 <= q < p");
  }
  const auto found = detect_potency(m, p);
  if (!found || found->first != p || found->second != q) {
    throw std::invalid_argument("build_custom: declared potency class does not hold or is not minimal");
  }
  PotentHamiltonian pot;
  pot.generator = m;
  pot.p = p;
  pot.q = q;
  pot.hermitian = linalg::is_hermitian(m, 1e-12);
  return pot;
}

std::optional<std::pair<int, int>> detect_potency(const ComplexMatrix& m, int p_max) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw std::invalid_argument("detect_potency: square matrix required");
  }
  if (max_abs(m) == 0.0) {
    throw std::invalid_argument("detect_potency: zero matrix");
  }
  if (p_max < 1) {
    throw std::invalid_argument("detect_potency: p_max must be >= 1");
  }
  // powers[k] = m^k, k = 0 .. p_max
  std::vector<ComplexMatrix> powers;
  powers.reserve(static_cast<size_t>(p_max) + 1);
  powers.push_back(linalg::identity(m.rows()));
  for (int k = 1; k <= p_max; ++k) {
    powers.push_back(powers.back() * m);
    if (!powers.back().allFinite()) return std::nullopt;
  }
  // Scan p ascending, then q ascending, so the minimal class wins.
  for (int p = 1; p <= p_max; ++p) {
    for (int q = 0; q < p; ++q) {
      if (max_abs_diff(powers[static_cast<size_t>(p)], powers[static_cast<size_t>(q)]) <= kPotencyTol) {
        return std::make_pair(p, q);
      }
    }
  }
  return std::nullopt;
}

HamiltonianSpec HamiltonianSpec::parse(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type")) {
    throw std::invalid_argument("hamiltonian spec: expected an object with a \"type\" field");
  }
  const std::string type = j.at("type").get<std::string>();
  HamiltonianSpec spec;
  auto read_axis = [&j, &spec]() {
    if (j.contains("axis")) {
      const auto& a = j.at("axis");
      if (!a.is_array() || a.size() != 3) {
        throw std::invalid_argument("hamiltonian spec: axis must be a 3-vector");
      }
      spec.axis = normalized_axis(
          Eigen::Vector3d(a.at(0).get<double>(), a.at(1).get<double>(), a.at(2).get<double>()));
    }
  };
  if (type == "qubit_axis") {
    spec.type = Type::qubit_axis;
    read_axis();
  } else if (type == "pauli_tensor_power") {
    spec.type = Type::pauli_tensor_power;
    read_axis();
    spec.n_qubits = j.at("n_qubits").get<int>();
  } else if (type == "pauli_string") {
    spec.type = Type::pauli_string;
    spec.labels = j.at("labels").get<std::string>();
  } else if (type == "clock_qutrit") {
    spec.type = Type::clock_qutrit;
  } else if (type == "spin1_axis") {
    spec.type = Type::spin1_axis;
    read_axis();
  } else if (type == "custom") {
    spec.type = Type::custom;
    spec.matrix = matrix_from_json(j.at("matrix"));
    spec.p = j.at("p").get<int>();
    spec.q = j.at("q").get<int>();
  } else {
    throw std::invalid_argument("hamiltonian spec: unknown type \"" + type + "\"");
  }
  return spec;
}

nlohmann::json HamiltonianSpec::to_json() const {
  nlohmann::json j;
  switch (type) {
    case Type::qubit_axis:
      j = {{"type", "qubit_axis"}, {"axis", {axis.x(), axis.y(), axis.z()}}};
      break;
    case Type::pauli_tensor_power:
      j = {{"type", "pauli_tensor_power"}, {"axis", {axis.x(), axis.y(), axis.z()}}, {"n_qubits", n_qubits}};
      break;
    case Type::pauli_string:
      j = {{"type", "pauli_string"}, {"labels", labels}};
      break;
    case Type::clock_qutrit:
      j = {{"type", "clock_qutrit"}};
      break;
    case Type::spin1_axis:
      j = {{"type", "spin1_axis"}, {"axis", {axis.x(), axis.y(), axis.z()}}};
      break;
    case Type::custom:
      j = {{"type", "custom"}, {"matrix", matrix_to_json(matrix)}, {"p", p}, {"q", q}};
      break;
  }
  return j;
}

PotentHamiltonian HamiltonianSpec::build() const {
  switch (type) {
    case Type::qubit_axis: return build_qubit(axis);
    case Type::pauli_tensor_power: return build_pauli_tensor_power(axis, n_qubits);
    case Type::pauli_string: return build_pauli_string(labels);
    case Type::clock_qutrit: return build_clock_qutrit();
    case Type::spin1_axis: return build_spin1(axis);
    case Type::custom: return build_custom(matrix, p, q);
  }
  throw std::logic_error("HamiltonianSpec::build: unreachable");
}

}  // namespace qudyn::hamiltonians
