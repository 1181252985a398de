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

#include <array>
#include <cstdint>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "qudyn/linalg.hpp"

namespace qudyn {

/// Mean-zero disorder distribution P(h) of the random coupling h (units of
/// inverse time, hbar = 1). Gaussian N(0, sigma^2) or uniform on [-b, b].
struct DisorderDistribution {
  enum class Kind { gaussian, uniform };

  Kind kind = Kind::gaussian;
  double width = 1.0;  // sigma for gaussian, half-width b for uniform

  static DisorderDistribution gaussian(double sigma);
  static DisorderDistribution uniform(double b);
  static DisorderDistribution parse(const nlohmann::json& j);
  nlohmann::json to_json() const;

  double variance() const;
  std::string label() const;
};

/// Counter-addressed deterministic random stream (splitmix64 outputs).
/// word(seed, i) is the i-th output of the stream and costs O(1), so any
/// sample index can be drawn independently of execution order.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t start = 0)
      : seed_(seed), counter_(start) {}

  std::uint64_t next_u64() { return word(seed_, counter_++); }
  /// Uniform double in (0, 1), 53 significant bits.
  double next_unit() { return unit(seed_, counter_++); }

  static std::uint64_t word(std::uint64_t seed, std::uint64_t index);
  static double unit(std::uint64_t seed, std::uint64_t index);

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

namespace disorder {

double pdf(const DisorderDistribution& dist, double h);

/// Draws one realization, consuming exactly two stream words (Box-Muller for
/// Gaussian), so sample i always maps to words (2i, 2i+1).
double sample(const DisorderDistribution& dist, CounterRng& rng);
/// Index-addressed draw: the i-th sample of the stream keyed by seed.
double sample_at(const DisorderDistribution& dist, std::uint64_t seed, std::uint64_t index);

/// E[h^n]; odd moments are exactly zero. Throws std::overflow_error when the
/// value exceeds the floating range.
double moment(const DisorderDistribution& dist, int n);

/// E[exp(-i h t')]; real-valued for these even distributions.
Complex characteristic_fn(const DisorderDistribution& dist, double t_prime);

/// Decoherence functions G(t) = E[exp(-2 i h t)] and G'(t) = E[exp(-i h t)].
double G(const DisorderDistribution& dist, double t);
double G_prime(const DisorderDistribution& dist, double t);

/// (G1, G2, G3) for the (3,0)-potent case, from v(t) = (e^y, e^(w y),
/// e^(w^2 y)) with y = 3 sigma^2 t^2 / 2 contracted against (1,1,1),
/// (1,w^2,w), (1,w,w^2). Gaussian only; the uniform counterpart has no
/// handy closed form and is served by the quadrature map engine.
std::array<Complex, 3> G123(const DisorderDistribution& dist, double t);

struct DecayRate {
  double value = 0.0;
  bool pole = false;  // |G(t)| below 1e-12: value is meaningless, caller decides
};

/// Effective decay rate gamma(t) = -dG/dt / (2 G). Gaussian: 2 sigma^2 t;
/// uniform: (1/t - 2b cot(2bt)) / 2 with the t -> 0 limit taken by series.
DecayRate decay_rate_gamma(const DisorderDistribution& dist, double t);

}  // namespace disorder
}  // namespace qudyn
