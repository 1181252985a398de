#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "qudyn/disorder.hpp"

using namespace qudyn;
using namespace qudyn::disorder;

namespace {

const auto kGauss = DisorderDistribution::gaussian(1.0);
const auto kUnif = DisorderDistribution::uniform(std::sqrt(3.0));

// Composite-Simpson oracle for E[exp(-i h t')] = integral P(h) cos(h t') dh,
// independent of the closed forms under test.
double char_fn_oracle(const DisorderDistribution& dist, double t_prime) {
  const double lo = dist.kind == DisorderDistribution::Kind::gaussian ? -12.0 * dist.width : -dist.width;
  const double hi = -lo;
  const int panels = 20000;  // even
  const double h_step = (hi - lo) / panels;
  double acc = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double h = lo + i * h_step;
    const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    acc += w * pdf(dist, h) * std::cos(h * t_prime);
  }
  return acc * h_step / 3.0;
}

}  // namespace

TEST_CASE("moments match the closed-form expressions") {
  CHECK(moment(kGauss, 0) == 1.0);
  CHECK(moment(kGauss, 2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(moment(kGauss, 4) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(moment(kGauss, 3) == 0.0);
  CHECK(moment(kUnif, 2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(moment(kUnif, 4) == doctest::Approx(9.0 / 5.0).epsilon(1e-14));
  CHECK(moment(kUnif, 7) == 0.0);
  CHECK(moment(DisorderDistribution::gaussian(2.0), 2) == doctest::Approx(4.0));

  CHECK_THROWS_AS(moment(kGauss, -2), std::invalid_argument);
  CHECK_THROWS_AS(moment(DisorderDistribution::gaussian(10.0), 400), std::overflow_error);
}

TEST_CASE("variance convention") {
  CHECK(kGauss.variance() == doctest::Approx(1.0));
  CHECK(kUnif.variance() == doctest::Approx(1.0));  // b^2/3 with b = sqrt(3)
}

TEST_CASE("characteristic function values and quadrature oracle") {
  CHECK(characteristic_fn(kGauss, 0.0) == Complex(1.0, 0.0));
  CHECK(characteristic_fn(kUnif, 0.0) == Complex(1.0, 0.0));
  CHECK(characteristic_fn(kGauss, 2.0).real() == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK(std::abs(characteristic_fn(DisorderDistribution::uniform(1.0), M_PI).real()) <= 1e-15);

  for (double tp = 0.0; tp <= 10.0; tp += 0.5) {
    CHECK(characteristic_fn(kGauss, tp).real() == doctest::Approx(char_fn_oracle(kGauss, tp)).epsilon(1e-8));
    CHECK(characteristic_fn(kUnif, tp).real() == doctest::Approx(char_fn_oracle(kUnif, tp)).epsilon(1e-8));
    CHECK(characteristic_fn(kGauss, tp).imag() == 0.0);
  }
}

TEST_CASE("sample moments over 1e6 draws match analytic moments within 5 SE") {
  for (const auto& dist : {kGauss, kUnif}) {
    const long n = 1000000;
    double s2 = 0.0, s4 = 0.0, s8 = 0.0, s1 = 0.0;
    CounterRng rng(424242);
    for (long i = 0; i < n; ++i) {
      const double h = sample(dist, rng);
      const double h2 = h * h;
      s1 += h;
      s2 += h2;
      s4 += h2 * h2;
      s8 += h2 * h2 * h2 * h2;
    }
    s1 /= n;
    s2 /= n;
    s4 /= n;
    s8 /= n;
    const double se2 = std::sqrt((moment(dist, 4) - moment(dist, 2) * moment(dist, 2)) / n);
    const double se4 = std::sqrt((moment(dist, 8) - moment(dist, 4) * moment(dist, 4)) / n);
    CHECK(std::abs(s2 - moment(dist, 2)) <= 5.0 * se2);
    CHECK(std::abs(s4 - moment(dist, 4)) <= 5.0 * se4);
    CHECK(std::abs(s1) <= 5.0 * std::sqrt(moment(dist, 2) / n));
    (void)s8;
  }
}

TEST_CASE("counter rng is index-addressable") {
  CounterRng a(7);
  const double x0 = sample(kGauss, a);
  const double x1 = sample(kGauss, a);
  CHECK(sample_at(kGauss, 7, 0) == x0);
  CHECK(sample_at(kGauss, 7, 1) == x1);
  CHECK(sample_at(kGauss, 8, 0) != x0);
  CHECK(CounterRng::unit(7, 0) > 0.0);
  CHECK(CounterRng::unit(7, 0) < 1.0);
}

TEST_CASE("G and G_prime") {
  CHECK(G(kGauss, 0.0) == 1.0);
  CHECK(G_prime(kGauss, 0.0) == 1.0);
  CHECK(G(kGauss, 1.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK(G_prime(kGauss, 1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
  const double first_zero = M_PI / (2.0 * std::sqrt(3.0));
  CHECK(std::abs(G(kUnif, first_zero)) <= 1e-15);
  CHECK(G_prime(kUnif, first_zero) == doctest::Approx(std::sin(M_PI / 2) / (M_PI / 2)).epsilon(1e-13));
  CHECK_THROWS_AS(G(kGauss, -0.1), std::invalid_argument);
}

TEST_CASE("G123 structure") {
  const auto g0 = G123(kGauss, 0.0);
  CHECK(std::abs(g0[0] - Complex(3.0, 0.0)) <= 1e-14);
  CHECK(std::abs(g0[1]) <= 1e-14);
  CHECK(std::abs(g0[2]) <= 1e-14);

  // Direct complex evaluation at sigma = 1, t = 1: G1 = e^{3/2} + 2 Re e^{3w/2}.
  const Complex w = std::polar(1.0, 2.0 * M_PI / 3.0);
  const auto g1 = G123(kGauss, 1.0);
  const double expected = std::exp(1.5) + 2.0 * std::exp(1.5 * w).real();
  CHECK(g1[0].real() == doctest::Approx(expected).epsilon(1e-14));

  for (double t = 0.0; t <= 3.0; t += 0.25) {
    const auto g = G123(kGauss, t);
    CHECK(std::abs(g[0].imag()) <= 1e-12);
    CHECK(std::abs(g[1].imag()) <= 1e-12);
    CHECK(std::abs(g[2].imag()) <= 1e-12);
  }

  // The dominant branch wins at large t: G1 / e^{3 sigma^2 t^2 / 2} -> 1.
  const double t_large = 4.0;
  const auto gl = G123(kGauss, t_large);
  CHECK(gl[0].real() / std::exp(1.5 * t_large * t_large) == doctest::Approx(1.0).epsilon(1e-10));

  CHECK_THROWS_AS(G123(kUnif, 1.0), std::invalid_argument);
}

TEST_CASE("decay rate gamma") {
  CHECK(decay_rate_gamma(kGauss, 0.5).value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(decay_rate_gamma(kGauss, 0.0).value == 0.0);
  CHECK(decay_rate_gamma(kUnif, 1e-9).value == doctest::Approx(0.0).epsilon(1e-7));

  // Small-t series agrees with the closed form just above the crossover.
  const double t_near = 2.0e-5;  // 2bt just below 1e-4 for b = sqrt(3)... use both sides
  const double left = decay_rate_gamma(kUnif, t_near).value;
  const double right = decay_rate_gamma(kUnif, 4.0e-5).value;
  CHECK(left == doctest::Approx(4.0 * 3.0 * t_near / 6.0).epsilon(1e-6));
  CHECK(right / left == doctest::Approx(2.0).epsilon(1e-4));

  // Gaussian rate is nonnegative everywhere.
  for (double t = 0.0; t <= 5.0; t += 0.05) {
    CHECK(decay_rate_gamma(kGauss, t).value >= 0.0);
  }

  // Uniform rate changes sign within each period pi/(2b) and reports the
  // pole at the G zeros.
  const double b = kUnif.width;
  const double period = M_PI / (2.0 * b);
  CHECK(decay_rate_gamma(kUnif, period).pole);
  for (int k = 1; k <= 3; ++k) {
    bool negative_seen = false;
    bool positive_seen = false;
    for (double t = k * period * 1.002; t < (k + 1) * period * 0.998; t += period / 200.0) {
      const auto r = decay_rate_gamma(kUnif, t);
      if (r.pole) continue;
      negative_seen |= r.value < 0.0;
      positive_seen |= r.value > 0.0;
    }
    CHECK(negative_seen);
    CHECK(positive_seen);
  }
}

TEST_CASE("distribution JSON") {
  const auto g = DisorderDistribution::parse(nlohmann::json{{"kind", "gaussian"}, {"sigma", 1.0}});
  CHECK(g.kind == DisorderDistribution::Kind::gaussian);
  const auto u = DisorderDistribution::parse(nlohmann::json{{"kind", "uniform"}, {"b", 1.7320508}});
  CHECK(u.width == doctest::Approx(1.7320508));
  CHECK(DisorderDistribution::parse(g.to_json()).width == g.width);
  CHECK_THROWS_AS(DisorderDistribution::parse(nlohmann::json{{"kind", "poisson"}}), std::invalid_argument);
  CHECK_THROWS_AS(DisorderDistribution::gaussian(-1.0), std::invalid_argument);
}
