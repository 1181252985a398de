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

#include "qudyn/disorder.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qudyn {

DisorderDistribution DisorderDistribution::gaussian(double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian: sigma must be > 0");
  return {Kind::gaussian, sigma};
}

DisorderDistribution DisorderDistribution::uniform(double b) {
  if (!(b > 0.0)) throw std::invalid_argument("uniform: b must be > 0");
  return {Kind::uniform, b};
}

DisorderDistribution DisorderDistribution::parse(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) {
    throw std::invalid_argument("distribution: expected {\"kind\": ...}");
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "gaussian") return gaussian(j.at("sigma").get<double>());
  if (kind == "uniform") return uniform(j.at("b").get<double>());
  throw std::invalid_argument("distribution: unknown kind \"" + kind + "\"");
}

nlohmann::json DisorderDistribution::to_json() const {
  if (kind == Kind::gaussian) return {{"kind", "gaussian"}, {"sigma", width}};
  return {{"kind", "uniform"}, {"b", width}};
}

double DisorderDistribution::variance() const {
  return kind == Kind::gaussian ? width * width : width * width / 3.0;
}

std::string DisorderDistribution::label() const {
  char buf[64];
  if (kind == Kind::gaussian) {
    std::snprintf(buf, sizeof(buf), "gaussian(sigma=%g)", width);
  } else {
    std::snprintf(buf, sizeof(buf), "uniform(b=%g)", width);
  }
  return buf;
}

std::uint64_t CounterRng::word(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 with the golden-gamma increment, evaluated at stream
  // position `index`.
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double CounterRng::unit(std::uint64_t seed, std::uint64_t index) {
  return (static_cast<double>(word(seed, index) >> 11) + 0.5) * 0x1.0p-53;
}

namespace disorder {

namespace {

// sin(x)/x with the removable singularity handled by series below 1e-4.
double sinc(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

}  // namespace

double pdf(const DisorderDistribution& dist, double h) {
  if (dist.kind == DisorderDistribution::Kind::gaussian) {
    const double s = dist.width;
    return std::exp(-0.5 * h * h / (s * s)) / (s * std::sqrt(2.0 * M_PI));
  }
  return std::abs(h) <= dist.width ? 0.5 / dist.width : 0.0;
}

double sample(const DisorderDistribution& dist, CounterRng& rng) {
  const double u1 = rng.next_unit();
  const double u2 = rng.next_unit();
  if (dist.kind == DisorderDistribution::Kind::gaussian) {
    return dist.width * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }
  return dist.width * (2.0 * u1 - 1.0);
}

double sample_at(const DisorderDistribution& dist, std::uint64_t seed, std::uint64_t index) {
  CounterRng rng(seed, 2 * index);
  return sample(dist, rng);
}

double moment(const DisorderDistribution& dist, int n) {
  if (n < 0) throw std::invalid_argument("moment: n must be >= 0");
  if (n % 2 == 1) return 0.0;
  double m = 1.0;
  if (dist.kind == DisorderDistribution::Kind::gaussian) {
    // sigma^(2n) (2n-1)!!, built up iteratively to catch overflow early.
    const double s2 = dist.width * dist.width;
    for (int k = 2; k <= n; k += 2) {
      m *= s2 * static_cast<double>(k - 1);
      if (std::isinf(m)) throw std::overflow_error("moment: gaussian moment overflows double range");
    }
    return m;
  }
  const double b2 = dist.width * dist.width;
  for (int k = 2; k <= n; k += 2) {
    m *= b2;
    if (std::isinf(m)) throw std::overflow_error("moment: uniform moment overflows double range");
  }
  return m / static_cast<double>(n + 1);
}

Complex characteristic_fn(const DisorderDistribution& dist, double t_prime) {
  if (dist.kind == DisorderDistribution::Kind::gaussian) {
    const double st = dist.width * t_prime;
    return Complex(std::exp(-0.5 * st * st), 0.0);
  }
  return Complex(sinc(dist.width * t_prime), 0.0);
}

double G(const DisorderDistribution& dist, double t) {
  if (t < 0.0) throw std::invalid_argument("G: t must be >= 0");
  return characteristic_fn(dist, 2.0 * t).real();
}

double G_prime(const DisorderDistribution& dist, double t) {
  if (t < 0.0) throw std::invalid_argument("G_prime: t must be >= 0");
  return characteristic_fn(dist, t).real();
}

std::array<Complex, 3> G123(const DisorderDistribution& dist, double t) {
  if (dist.kind != DisorderDistribution::Kind::gaussian) {
    throw std::invalid_argument(
        "G123: closed form only exists for Gaussian disorder; use the quadrature map engine");
  }
  const Complex w = std::polar(1.0, 2.0 * M_PI / 3.0);
  const Complex w2 = w * w;
  const double y = 1.5 * dist.width * dist.width * t * t;
  const Complex v0 = std::exp(Complex(y, 0.0));
  const Complex v1 = std::exp(w * y);
  const Complex v2 = std::exp(w2 * y);
  return {v0 + v1 + v2, v0 + w2 * v1 + w * v2, v0 + w * v1 + w2 * v2};
}

DecayRate decay_rate_gamma(const DisorderDistribution& dist, double t) {
  if (t < 0.0) throw std::invalid_argument("decay_rate_gamma: t must be >= 0");
  if (dist.kind == DisorderDistribution::Kind::gaussian) {
    return {2.0 * dist.width * dist.width * t, false};
  }
  const double b = dist.width;
  const double x = 2.0 * b * t;
  if (x < 1e-4) {
    // gamma = (2b)^2 t / 6 + (2b)^4 t^3 / 90 + O(t^5)
    return {4.0 * b * b * t / 6.0 + 16.0 * b * b * b * b * t * t * t / 90.0, false};
  }
  if (std::abs(G(dist, t)) <= 1e-12) {
    return {std::numeric_limits<double>::quiet_NaN(), true};
  }
  return {0.5 * (1.0 / t - 2.0 * b / std::tan(x)), false};
}

}  // namespace disorder
}  // namespace qudyn
