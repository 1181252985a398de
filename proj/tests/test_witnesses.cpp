#include <doctest.h>

#include <cmath>

#include "qudyn/witnesses.hpp"
#include "test_support.hpp"

using namespace qudyn;
using namespace qudyn::witnesses;
namespace ham = qudyn::hamiltonians;
namespace qt = qudyn::testing;

namespace {

const auto kGauss = DisorderDistribution::gaussian(1.0);
const auto kUnif = DisorderDistribution::uniform(std::sqrt(3.0));

WitnessSeries make_series(WitnessKind kind, const std::vector<double>& ts,
                          const std::vector<double>& vals) {
  WitnessSeries s;
  s.kind = kind;
  s.times = ts;
  s.values = vals;
  return s;
}

}  // namespace

TEST_CASE("purity basics") {
  CHECK(purity(qt::basis_state(2, 0)) == doctest::Approx(1.0));
  CHECK(purity(0.5 * linalg::identity(2)) == doctest::Approx(0.5));
  auto rng = qt::make_rng(1);
  const ComplexMatrix rho = qt::random_state(rng, 3);
  CHECK(normalized_purity(3.7 * rho) == doctest::Approx(purity(rho)).epsilon(1e-12));
  CHECK_THROWS_AS(normalized_purity(ComplexMatrix::Zero(2, 2)), std::domain_error);
}

TEST_CASE("case I purity follows (2 + G^2)/3") {
  const auto pot = ham::build_qubit();
  const ComplexMatrix up = qt::basis_state(2, 0);
  for (double t = 0.0; t <= 5.0; t += 0.25) {
    const double g = disorder::G(kGauss, t);
    const double p = purity(maps::evolve(maps::closed_form_map(pot, kGauss, t), up));
    CHECK(p == doctest::Approx((2.0 + g * g) / 3.0).epsilon(1e-11));
  }
}

TEST_CASE("trace distance basics and golden forms") {
  const ComplexMatrix up = qt::basis_state(2, 0);
  const ComplexMatrix dn = qt::basis_state(2, 1);
  CHECK(trace_distance(up, up) == doctest::Approx(0.0));
  CHECK(trace_distance(up, dn) == doctest::Approx(1.0));
  CHECK_THROWS_AS(trace_distance(up, qt::basis_state(3, 0)), std::invalid_argument);

  const auto qubit = ham::build_qubit();
  for (double t : {0.2, 0.9, 2.4}) {
    const auto map = maps::closed_form_map(qubit, kUnif, t);
    const double d = trace_distance(maps::evolve(map, up), maps::evolve(map, dn));
    const double g = disorder::G(kUnif, t);
    CHECK(d == doctest::Approx(std::sqrt((1.0 + 2.0 * g * g) / 3.0)).epsilon(1e-11));
  }

  const auto spin = ham::build_spin1();
  for (double t : {0.2, 0.9, 2.4}) {
    const auto map = maps::closed_form_map(spin, kGauss, t);
    const double d = trace_distance(maps::evolve(map, qt::basis_state(3, 0)),
                                    maps::evolve(map, qt::basis_state(3, 2)));
    const double gp = disorder::G_prime(kGauss, t);
    CHECK(d == doctest::Approx(std::sqrt((1.0 + 2.0 * gp * gp) / 3.0)).epsilon(1e-11));
  }
}

TEST_CASE("log negativity of the qubit map") {
  const auto pot = ham::build_qubit();
  CHECK(log_negativity(maps::map_case1(pot, 1.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(log_negativity(maps::map_case1(pot, 0.0)) == doctest::Approx(0.0).epsilon(1e-11));
  for (double t : {0.2, 0.7, 1.5}) {
    const double g = disorder::G(kGauss, t);
    const double en = log_negativity(maps::closed_form_map(pot, kGauss, t));
    CHECK(en == doctest::Approx(std::log2(1.0 + std::abs(g))).epsilon(1e-11));
  }
}

TEST_CASE("observable expectations") {
  CHECK(observable(qt::basis_state(2, 0), ham::sigma_z(), false) == doctest::Approx(1.0));

  const auto qubit = ham::build_qubit();
  const ComplexMatrix rho_late = maps::evolve(maps::closed_form_map(qubit, kGauss, 5.0),
                                              qt::basis_state(2, 0));
  CHECK(std::abs(observable(rho_late, ham::sigma_z(), false) - 1.0 / 3.0) <= 1e-6);

  // Spin-1 decays slower: it is governed by G'(t) >= G(t).
  const auto spin = ham::build_spin1();
  for (double t : {0.4, 0.8, 1.2}) {
    const double mag_spin = observable(
        maps::evolve(maps::closed_form_map(spin, kGauss, t), qt::basis_state(3, 0)),
        ham::spin1_z(), false);
    const double mag_qubit = observable(
        maps::evolve(maps::closed_form_map(qubit, kGauss, t), qt::basis_state(2, 0)),
        ham::sigma_z(), false);
    CHECK(mag_spin > mag_qubit);
    CHECK(mag_spin == doctest::Approx((1.0 + 2.0 * disorder::G_prime(kGauss, t)) / 3.0).epsilon(1e-12));
  }

  CHECK_THROWS_AS(observable(qt::basis_state(2, 0), ham::clock_shift().topLeftCorner(2, 2).eval(), false),
                  std::invalid_argument);
  CHECK_THROWS_AS(observable(ComplexMatrix::Zero(2, 2), ham::sigma_z(), true), std::domain_error);
}

TEST_CASE("dephasing probability") {
  CHECK(dephasing_probability(kGauss, 0.0) == doctest::Approx(0.0));
  const double first_zero = M_PI / (2.0 * kUnif.width);
  CHECK(dephasing_probability(kUnif, first_zero) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(dephasing_probability(kGauss, 1.0) == doctest::Approx(0.5 * (1.0 - std::exp(-2.0))).epsilon(1e-13));
}

TEST_CASE("revival counting") {
  const std::vector<double> ts{0.0, 0.1, 0.2, 0.3, 0.4};
  const auto monotone = make_series(WitnessKind::purity, ts, {1.0, 0.9, 0.8, 0.7, 0.6});
  CHECK(revival_count(monotone).count == 0);
  CHECK(revival_count(monotone).total_increase == 0.0);
  CHECK(!first_revival_onset(monotone).has_value());

  const auto bumpy = make_series(WitnessKind::purity, ts, {1.0, 0.8, 0.9, 0.7, 0.8});
  CHECK(revival_count(bumpy).count == 2);
  CHECK(revival_count(bumpy).total_increase == doctest::Approx(0.2));
  CHECK(first_revival_onset(bumpy).value() == doctest::Approx(0.1));

  CHECK_THROWS_AS(revival_count(make_series(WitnessKind::purity, {0.0, 0.1}, {1.0, 0.9})),
                  std::invalid_argument);
  CHECK_THROWS_AS(revival_count(make_series(WitnessKind::purity, {0.0, 0.1, 0.5}, {1.0, 0.9, 0.8})),
                  std::invalid_argument);
}

TEST_CASE("uniform-disorder revivals on the analytic witness curves") {
  const auto pot = ham::build_qubit();
  const ComplexMatrix up = qt::basis_state(2, 0);
  const ComplexMatrix dn = qt::basis_state(2, 1);

  WitnessSeries pu, td, en, pu_gauss;
  pu.kind = WitnessKind::purity;
  td.kind = WitnessKind::trace_distance;
  en.kind = WitnessKind::log_negativity;
  pu_gauss.kind = WitnessKind::purity;
  for (int i = 0; i <= 500; ++i) {
    const double t = 0.01 * i;
    pu.times.push_back(t);
    td.times.push_back(t);
    en.times.push_back(t);
    pu_gauss.times.push_back(t);
    const auto map_u = maps::closed_form_map(pot, kUnif, t);
    pu.values.push_back(purity(maps::evolve(map_u, up)));
    td.values.push_back(trace_distance(maps::evolve(map_u, up), maps::evolve(map_u, dn)));
    en.values.push_back(log_negativity(map_u));
    pu_gauss.values.push_back(purity(maps::evolve(maps::closed_form_map(pot, kGauss, t), up)));
  }

  CHECK(revival_count(pu).count >= 2);
  CHECK(revival_count(td).count >= 2);
  CHECK(revival_count(en).count >= 2);
  CHECK(revival_count(pu_gauss).count == 0);

  const double onset = first_revival_onset(pu).value();
  CHECK(std::abs(onset - M_PI / (2.0 * kUnif.width)) <= 0.01 + 1e-12);
}

TEST_CASE("maximally entangled probe carries log2(d) at t = 0") {
  CHECK(log_negativity(maps::map_case1(ham::build_qubit(), 1.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(log_negativity(maps::map_case3(ham::build_spin1(), 1.0, 1.0)) ==
        doctest::Approx(std::log2(3.0)).epsilon(1e-12));
}

TEST_CASE("spin-1 witnesses: Gaussian monotone, uniform revivals at twice the qubit spacing") {
  const auto spin = ham::build_spin1();
  const auto qubit = ham::build_qubit();
  const ComplexMatrix p1 = qt::basis_state(3, 0);
  const ComplexMatrix m1 = qt::basis_state(3, 2);
  const ComplexMatrix up = qt::basis_state(2, 0);
  const ComplexMatrix dn = qt::basis_state(2, 1);

  WitnessSeries pu_g, td_g, pu_u, td_u, pu_qubit_u;
  pu_g.kind = pu_u.kind = pu_qubit_u.kind = WitnessKind::purity;
  td_g.kind = td_u.kind = WitnessKind::trace_distance;
  for (int i = 0; i <= 500; ++i) {
    const double t = 0.01 * i;
    for (WitnessSeries* s : {&pu_g, &td_g, &pu_u, &td_u, &pu_qubit_u}) s->times.push_back(t);
    const auto mg = maps::closed_form_map(spin, kGauss, t);
    pu_g.values.push_back(purity(maps::evolve(mg, p1)));
    td_g.values.push_back(trace_distance(maps::evolve(mg, p1), maps::evolve(mg, m1)));
    const auto mu = maps::closed_form_map(spin, kUnif, t);
    pu_u.values.push_back(purity(maps::evolve(mu, p1)));
    td_u.values.push_back(trace_distance(maps::evolve(mu, p1), maps::evolve(mu, m1)));
    const auto mq = maps::closed_form_map(qubit, kUnif, t);
    pu_qubit_u.values.push_back(purity(maps::evolve(mq, up)));
  }
  CHECK(revival_count(pu_g).count == 0);
  CHECK(revival_count(td_g).count == 0);
  CHECK(revival_count(pu_u).count >= 2);
  CHECK(revival_count(td_u).count >= 2);
  const double spin_onset = first_revival_onset(pu_u).value();
  const double qubit_onset = first_revival_onset(pu_qubit_u).value();
  CHECK(spin_onset / qubit_onset == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("long-time limits of the qubit witnesses") {
  const auto pot = ham::build_qubit();
  const auto map = maps::closed_form_map(pot, kGauss, 6.0);
  const ComplexMatrix up = qt::basis_state(2, 0);
  const ComplexMatrix dn = qt::basis_state(2, 1);
  CHECK(std::abs(purity(maps::evolve(map, up)) - 2.0 / 3.0) <= 1e-10);
  CHECK(std::abs(trace_distance(maps::evolve(map, up), maps::evolve(map, dn)) -
                 1.0 / std::sqrt(3.0)) <= 1e-10);
  CHECK(log_negativity(map) <= 1e-10);
}

TEST_CASE("multiqubit purity coefficients") {
  const auto c1 = multiqubit_purity_coefficients(1);
  CHECK(c1.constant == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(c1.g2 == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(c1.constant / c1.g2 == doctest::Approx(2.0).epsilon(1e-11));

  const auto c2 = multiqubit_purity_coefficients(2);
  CHECK(c2.constant / c2.g2 == doctest::Approx(1.25).epsilon(1e-11));

  double prev = 1.0;
  for (int n = 1; n <= 4; ++n) {
    const auto c = multiqubit_purity_coefficients(n);
    const double expected = (std::pow(3.0, n) + 1.0) / (std::pow(3.0, n) - 1.0);
    CHECK(c.constant / c.g2 == doctest::Approx(expected).epsilon(1e-10));
    CHECK(c.constant < prev);
    CHECK(c.constant > 0.5);
    prev = c.constant;
  }

  CHECK_THROWS_AS(multiqubit_purity_coefficients(0), std::invalid_argument);
  CHECK_THROWS_AS(multiqubit_purity_coefficients(7), std::invalid_argument);
}

TEST_CASE("witness kind names round trip") {
  for (WitnessKind k : {WitnessKind::purity, WitnessKind::normalized_purity, WitnessKind::trace_distance,
                        WitnessKind::log_negativity, WitnessKind::observable, WitnessKind::decay_rate}) {
    CHECK(witness_kind_from_name(witness_kind_name(k)) == k);
  }
  CHECK_THROWS_AS(witness_kind_from_name("entropy"), std::invalid_argument);
}
