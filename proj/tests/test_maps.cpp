#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "qudyn/maps.hpp"
#include "test_support.hpp"

using namespace qudyn;
using namespace qudyn::maps;
namespace ham = qudyn::hamiltonians;
namespace qt = qudyn::testing;
using linalg::identity;
using linalg::kron;
using linalg::max_abs;
using linalg::max_abs_diff;
using linalg::scaled_deviation;

namespace {

const auto kGauss = DisorderDistribution::gaussian(1.0);
const auto kUnif = DisorderDistribution::uniform(std::sqrt(3.0));

ComplexMatrix reconstruct(const PotentHamiltonian& pot, double x) {
  const auto a = propagator_coefficients(pot, x);
  ComplexMatrix u = ComplexMatrix::Zero(pot.dim(), pot.dim());
  ComplexMatrix power = identity(pot.dim());
  for (size_t j = 0; j < a.size(); ++j) {
    u += a[j] * power;
    power = power * pot.generator;
  }
  return u;
}

}  // namespace

TEST_CASE("propagator coefficients: closed values") {
  const auto qubit = ham::build_qubit();
  const auto at0 = propagator_coefficients(qubit, 0.0);
  CHECK(at0[0] == Complex(1.0, 0.0));
  CHECK(at0[1] == Complex(0.0, 0.0));

  const auto half_pi = propagator_coefficients(qubit, M_PI / 2);
  CHECK(std::abs(half_pi[0]) <= 1e-16);
  CHECK(std::abs(half_pi[1] - Complex(0.0, -1.0)) <= 1e-15);

  // (3,1) at x = pi: (1, 0, -2), i.e. exp(-i pi H) = I - 2 H^2.
  const auto spin = ham::build_spin1();
  const auto at_pi = propagator_coefficients(spin, M_PI);
  CHECK(std::abs(at_pi[0] - Complex(1.0, 0.0)) <= 1e-15);
  CHECK(std::abs(at_pi[1]) <= 1e-15);
  CHECK(std::abs(at_pi[2] - Complex(-2.0, 0.0)) <= 1e-15);
  const auto sz = ham::build_spin1(Eigen::Vector3d(0, 0, 1));
  const ComplexMatrix direct = linalg::expm(Complex(0, -M_PI) * sz.generator);
  CHECK(max_abs_diff(reconstruct(sz, M_PI), direct) <= 1e-13);
}

TEST_CASE("propagator coefficients match expm for |x| <= 20") {
  auto rng = qt::make_rng(99);
  std::uniform_real_distribution<double> xdist(-20.0, 20.0);
  const PotentHamiltonian pots[] = {ham::build_qubit(), ham::build_clock_qutrit(), ham::build_spin1()};
  for (const auto& pot : pots) {
    for (int trial = 0; trial < 12; ++trial) {
      const double x = xdist(rng);
      const ComplexMatrix u = reconstruct(pot, x);
      const ComplexMatrix e = linalg::expm(Complex(0, -x) * pot.generator);
      CHECK(scaled_deviation(u, e) <= 1e-10);
    }
    // a_0(0) = 1, a_{j>0}(0) = 0.
    const auto a0 = propagator_coefficients(pot, 0.0);
    CHECK(std::abs(a0[0] - Complex(1.0, 0.0)) <= 1e-15);
    for (size_t j = 1; j < a0.size(); ++j) CHECK(std::abs(a0[j]) <= 1e-15);
  }
}

TEST_CASE("propagator coefficients: generic potency path") {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = Complex(0, 1);
  m(2, 2) = -1;
  m(3, 3) = Complex(0, -1);
  const auto pot = ham::build_custom(m, 4, 0);
  auto rng = qt::make_rng(123);
  std::uniform_real_distribution<double> xdist(-15.0, 15.0);
  for (int trial = 0; trial < 8; ++trial) {
    const double x = xdist(rng);
    CHECK(scaled_deviation(reconstruct(pot, x), linalg::expm(Complex(0, -x) * m)) <= 1e-10);
  }
}

TEST_CASE("case I map basics and the dephasing channel") {
  const auto pot = ham::build_qubit();
  CHECK(max_abs_diff(map_case1(pot, 1.0).superop, identity(4)) == 0.0);

  const ComplexMatrix hh = kron(pot.generator.conjugate(), pot.generator);
  CHECK(max_abs_diff(map_case1(pot, 0.0).superop, ComplexMatrix(0.5 * (identity(4) + hh))) <= 1e-15);

  // With Htilde = sigma_z the map is the dephasing channel with
  // p_d = (1 - G)/2.
  const auto z = ham::build_pauli_string("Z");
  auto rng = qt::make_rng(7);
  for (double g : {0.9, 0.3, -0.4}) {
    DynamicalMap map = map_case1(z, g);
    const ComplexMatrix rho = qt::random_state(rng, 2);
    const double pd = 0.5 * (1.0 - g);
    const ComplexMatrix expected =
        (1.0 - pd) * rho + pd * ham::sigma_z() * rho * ham::sigma_z();
    CHECK(max_abs_diff(maps::evolve(map, rho), expected) <= 1e-13);
  }

  CHECK_THROWS_AS(map_case1(ham::build_spin1(), 0.5), std::invalid_argument);
}

TEST_CASE("case II map basics") {
  const auto pot = ham::build_clock_qutrit();
  CHECK(max_abs_diff(map_case2(pot, {3.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}).superop, identity(9)) <= 1e-15);
  CHECK_THROWS_AS(map_case2(ham::build_qubit(), {3, 0}, {0, 0}, {0, 0}), std::invalid_argument);

  // Trace grows for t > 0 (non-Hermitian generator).
  const auto g = disorder::G123(kGauss, 0.5);
  DynamicalMap map = map_case2(pot, g[0], g[1], g[2]);
  map.time = 0.5;
  const ComplexMatrix rho0 = qt::basis_state(3, 0);
  const ComplexMatrix rho_t = maps::evolve(map, rho0);
  CHECK(rho_t.trace().real() > 1.0 + 1e-3);
}

TEST_CASE("case III map basics") {
  const auto pot = ham::build_spin1();
  CHECK(max_abs_diff(map_case3(pot, 1.0, 1.0).superop, identity(9)) <= 1e-15);
  CHECK_THROWS_AS(map_case3(ham::build_clock_qutrit(), 1.0, 1.0), std::invalid_argument);

  // Long-time Gaussian limit G = G' = 0 is unital.
  const auto longtime = map_case3(pot, 0.0, 0.0);
  const auto verdict = unitality_check(longtime);
  CHECK(verdict.unital);
}

TEST_CASE("closed-form dispatch") {
  CHECK(closed_form_map(ham::build_qubit(), kUnif, 0.7).system_dim == 2);
  CHECK(closed_form_map(ham::build_spin1(), kUnif, 0.7).system_dim == 3);
  CHECK(closed_form_map(ham::build_clock_qutrit(), kGauss, 0.7).system_dim == 3);
  CHECK_THROWS_WITH_AS(closed_form_map(ham::build_clock_qutrit(), kUnif, 0.7),
                       doctest::Contains("quadrature"), std::invalid_argument);
}

TEST_CASE("series engine against closed forms inside its certified radius") {
  const auto qubit = ham::build_qubit();
  const auto clock = ham::build_clock_qutrit();
  const auto spin = ham::build_spin1();
  for (double t : {0.1, 0.25, 0.5}) {
    CHECK(scaled_deviation(map_series(qubit, kGauss, t, 40).superop,
                           closed_form_map(qubit, kGauss, t).superop) <= 1e-10);
    CHECK(scaled_deviation(map_series(clock, kGauss, t, 40).superop,
                           closed_form_map(clock, kGauss, t).superop) <= 1e-10);
    CHECK(scaled_deviation(map_series(spin, kGauss, t, 40).superop,
                           closed_form_map(spin, kGauss, t).superop) <= 1e-10);
    CHECK(scaled_deviation(map_series(qubit, kUnif, t, 40).superop,
                           closed_form_map(qubit, kUnif, t).superop) <= 1e-10);
    CHECK(scaled_deviation(map_series(spin, kUnif, t, 40).superop,
                           closed_form_map(spin, kUnif, t).superop) <= 1e-10);
  }
}

TEST_CASE("series engine validation and truncation gate") {
  const auto qubit = ham::build_qubit();
  CHECK(max_abs_diff(map_series(qubit, kGauss, 0.0, 0).superop, identity(4)) == 0.0);
  CHECK_THROWS_AS(map_series(qubit, kGauss, 0.5, 41), std::invalid_argument);
  CHECK_THROWS_AS(map_series(qubit, kGauss, 0.5, 202), std::invalid_argument);
  CHECK_THROWS_AS(map_series(qubit, kGauss, 3.0, 12), TruncationError);
  CHECK_THROWS_AS(map_series(qubit, kGauss, 0.5, 0), TruncationError);
}

TEST_CASE("quadrature engine agreement across cases and distributions") {
  const auto qubit = ham::build_qubit();
  const auto clock = ham::build_clock_qutrit();
  const auto spin = ham::build_spin1();
  for (double t : {0.1, 0.5, 1.0}) {
    CHECK(scaled_deviation(map_quadrature(qubit, kGauss, t, 64).superop,
                           closed_form_map(qubit, kGauss, t).superop) <= 1e-8);
    CHECK(scaled_deviation(map_quadrature(clock, kGauss, t, 64).superop,
                           closed_form_map(clock, kGauss, t).superop) <= 1e-8);
    CHECK(scaled_deviation(map_quadrature(spin, kGauss, t, 64).superop,
                           closed_form_map(spin, kGauss, t).superop) <= 1e-8);
    CHECK(scaled_deviation(map_quadrature(qubit, kUnif, t, 64).superop,
                           closed_form_map(qubit, kUnif, t).superop) <= 1e-8);
    CHECK(scaled_deviation(map_quadrature(spin, kUnif, t, 64).superop,
                           closed_form_map(spin, kUnif, t).superop) <= 1e-8);
    // (3,0) with uniform disorder has no closed form; the series engine is
    // the independent check for the quadrature route.
    CHECK(scaled_deviation(map_quadrature(clock, kUnif, t, 64).superop,
                           map_series(clock, kUnif, t, 60).superop) <= 1e-8);
  }
  CHECK(max_abs_diff(map_quadrature(qubit, kGauss, 0.0, 64).superop, identity(4)) <= 1e-12);
  CHECK_THROWS_AS(map_quadrature(qubit, kGauss, 1.0, 16), std::invalid_argument);
}

TEST_CASE("evolve validates states and reproduces the known magnetization curves") {
  const auto qubit = ham::build_qubit();
  const ComplexMatrix up = qt::basis_state(2, 0);

  DynamicalMap id_map = map_case1(qubit, 1.0);
  CHECK(max_abs_diff(maps::evolve(id_map, up), up) == 0.0);

  // Tr[sigma_z rho(t)] = (1 + 2 G)/3 for the (1,1,1)/sqrt(3) axis.
  for (double t : {0.3, 1.0, 2.7}) {
    const ComplexMatrix rho = maps::evolve(closed_form_map(qubit, kGauss, t), up);
    const double mag = (ham::sigma_z() * rho).trace().real();
    CHECK(mag == doctest::Approx((1.0 + 2.0 * disorder::G(kGauss, t)) / 3.0).epsilon(1e-12));
  }

  // Tr[S_z rho(t)] = (1 + 2 G')/3 for spin-1 from |S_z,+1>.
  const auto spin = ham::build_spin1();
  const ComplexMatrix plus1 = qt::basis_state(3, 0);
  for (double t : {0.3, 1.0, 2.7}) {
    const ComplexMatrix rho = maps::evolve(closed_form_map(spin, kUnif, t), plus1);
    const double mag = (ham::spin1_z() * rho).trace().real();
    CHECK(mag == doctest::Approx((1.0 + 2.0 * disorder::G_prime(kUnif, t)) / 3.0).epsilon(1e-12));
  }

  ComplexMatrix bad = up;
  bad(0, 1) = 0.5;  // not Hermitian
  CHECK_THROWS_AS(maps::evolve(id_map, bad), std::invalid_argument);
  CHECK_THROWS_AS(maps::evolve(id_map, ComplexMatrix(2.0 * up)), std::invalid_argument);
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(maps::evolve(id_map, neg), std::invalid_argument);
}

TEST_CASE("case I projector algebra") {
  const auto pot = ham::build_qubit();
  const ComplexMatrix hh = kron(pot.generator.conjugate(), pot.generator);
  const ComplexMatrix a = identity(4) + hh;
  const ComplexMatrix b = identity(4) - hh;
  CHECK(max_abs_diff(ComplexMatrix(a * a), ComplexMatrix(2.0 * a)) <= 1e-12);
  CHECK(max_abs_diff(ComplexMatrix(b * b), ComplexMatrix(2.0 * b)) <= 1e-12);
  CHECK(max_abs(ComplexMatrix(a * b)) <= 1e-12);
  CHECK(max_abs(ComplexMatrix(b * a)) <= 1e-12);
}

TEST_CASE("hermiticity preservation for 100 random states") {
  auto rng = qt::make_rng(2718);
  const PotentHamiltonian pots[] = {ham::build_qubit(), ham::build_clock_qutrit(), ham::build_spin1()};
  for (int trial = 0; trial < 100; ++trial) {
    const auto& pot = pots[trial % 3];
    const ComplexMatrix rho0 = qt::random_state(rng, pot.dim());
    const DynamicalMap map =
        pot.q == 0 && pot.p == 3 ? closed_form_map(pot, kGauss, 0.7) : closed_form_map(pot, kUnif, 0.7);
    const ComplexMatrix rho_t = maps::evolve(map, rho0);  // throws on defect > 1e-10
    CHECK(linalg::is_hermitian(rho_t, 1e-10 * std::max(1.0, max_abs(rho_t))));
  }
}

TEST_CASE("trace behavior: preserved for Hermitian cases, growing for case II") {
  auto rng = qt::make_rng(314);
  const auto qubit = ham::build_qubit();
  const auto spin = ham::build_spin1();
  for (double t : {0.3, 1.1, 2.9}) {
    for (const auto& dist : {kGauss, kUnif}) {
      const ComplexMatrix r1 = maps::evolve(closed_form_map(qubit, dist, t), qt::random_state(rng, 2));
      CHECK(std::abs(r1.trace().real() - 1.0) <= 1e-10);
      const ComplexMatrix r3 = maps::evolve(closed_form_map(spin, dist, t), qt::random_state(rng, 3));
      CHECK(std::abs(r3.trace().real() - 1.0) <= 1e-10);
    }
  }
  const auto clock = ham::build_clock_qutrit();
  double prev = 1.0;
  for (double t = 0.0; t <= 3.0; t += 0.05) {
    const ComplexMatrix r = maps::evolve(closed_form_map(clock, kGauss, t), qt::basis_state(3, 0));
    const double tr = r.trace().real();
    CHECK(tr >= prev - 1e-12);
    prev = tr;
  }
}

TEST_CASE("positivity of evolved states for the Hermitian cases") {
  const auto qubit = ham::build_qubit();
  const auto spin = ham::build_spin1();
  for (const auto& dist : {kGauss, kUnif}) {
    for (double t = 0.0; t <= 5.0; t += 0.25) {
      const auto e2 = linalg::hermitian_eigenvalues(
          maps::evolve(closed_form_map(qubit, dist, t), qt::basis_state(2, 0)));
      CHECK(e2.front() >= -1e-10);
      const auto e3 = linalg::hermitian_eigenvalues(
          maps::evolve(closed_form_map(spin, dist, t), qt::basis_state(3, 0)));
      CHECK(e3.front() >= -1e-10);
    }
  }
}

TEST_CASE("case I master-equation generator") {
  const auto pot = ham::build_qubit();
  CHECK(lindblad_generator_case1(pot, kGauss, 0.5).gamma == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(lindblad_generator_case1(pot, kGauss, 1e-12).gamma == doctest::Approx(0.0));

  auto rng = qt::make_rng(1618);
  std::uniform_real_distribution<double> tdist(0.05, 3.0);
  for (const auto& dist : {kGauss, kUnif}) {
    int done = 0;
    while (done < 20) {
      const double t = tdist(rng);
      if (std::abs(disorder::G(dist, t)) < 1e-3) continue;  // stay clear of poles
      ++done;
      const ComplexMatrix rho0 = qt::random_state(rng, 2);
      const auto lind = lindblad_generator_case1(pot, dist, t);
      const ComplexMatrix rho_t = maps::evolve(closed_form_map(pot, dist, t), rho0);
      // gamma [H rho H - rho] because H^dag H = I for the involutary class.
      const ComplexMatrix rhs = lind.gamma * (lind.jump * rho_t * lind.jump.adjoint() - rho_t);
      const double dt = 1e-5 * std::max(1.0, t);
      const ComplexMatrix diff =
          (maps::apply(closed_form_map(pot, dist, t + dt), rho0) -
           maps::apply(closed_form_map(pot, dist, t - dt), rho0)) /
          (2.0 * dt);
      CHECK(max_abs_diff(diff, rhs) <= 1e-6);
    }
  }

  const double pole_t = M_PI / (2.0 * kUnif.width);
  CHECK_THROWS_AS(lindblad_generator_case1(pot, kUnif, pole_t), std::domain_error);
}

TEST_CASE("unitality verdicts") {
  const auto qubit = ham::build_qubit();
  const auto clock = ham::build_clock_qutrit();
  const auto spin = ham::build_spin1();
  for (double t : {0.5, 1.0, 2.0}) {
    CHECK(unitality_check(closed_form_map(qubit, kGauss, t)).unital);
    CHECK(unitality_check(closed_form_map(qubit, kUnif, t)).unital);
    CHECK(unitality_check(closed_form_map(spin, kGauss, t)).unital);
    CHECK(unitality_check(closed_form_map(spin, kUnif, t)).unital);
    CHECK(!unitality_check(closed_form_map(clock, kGauss, t)).unital);
  }
  CHECK(unitality_check(closed_form_map(clock, kGauss, 1.0)).deviation > 1e-3);
}

TEST_CASE("map JSON round trip") {
  const auto pot = ham::build_qubit();
  const DynamicalMap map = closed_form_map(pot, kGauss, 0.8);
  const DynamicalMap back = from_json(to_json(map));
  CHECK(back.system_dim == map.system_dim);
  CHECK(back.time == map.time);
  CHECK(max_abs_diff(back.superop, map.superop) == 0.0);
}
