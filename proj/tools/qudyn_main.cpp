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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qudyn/experiment.hpp"

namespace {

using qudyn::ConfigError;

int thread_cap(int requested) {
  const char* env = std::getenv("QUDYN_THREADS");
  if (env == nullptr) return requested;
  const int cap = std::atoi(env);
  if (cap < 1) return requested;
  return std::min(requested, cap);
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& ex) {
    throw ConfigError(std::string("config is not valid JSON: ") + ex.what());
  }
  return j;
}

std::vector<double> parse_grid(const nlohmann::json& j) {
  const double start = j.at("start").get<double>();
  const double stop = j.at("stop").get<double>();
  const int points = j.at("points").get<int>();
  if (points < 2 || !(stop > start) || start < 0.0) {
    throw ConfigError("grid must satisfy 0 <= start < stop with >= 2 points");
  }
  std::vector<double> ts(static_cast<size_t>(points));
  const double step = (stop - start) / (points - 1);
  for (int i = 0; i < points; ++i) ts[static_cast<size_t>(i)] = start + step * i;
  return ts;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qudyn: exact disorder-averaged qudit dynamics"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool seed_set = false;
  double tolerance = 1e-8;
  std::string figure_id;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", config_path, "experiment config JSON");
    if (config_required) opt->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "Monte-Carlo seed override")->each([&](const std::string&) {
      seed_set = true;
    });
  };

  auto* evolve = app.add_subcommand("evolve", "per-engine witness/observable time series");
  add_common(evolve, true);

  auto* compare = app.add_subcommand("compare", "cross-engine agreement report");
  add_common(compare, true);
  compare->add_option("--tolerance", tolerance, "deterministic-engine tolerance");

  auto* channel = app.add_subcommand("channel", "dephasing-channel table: G, p_d, gamma");
  add_common(channel, true);

  auto* figures = app.add_subcommand("figures", "emit plot-ready data for fig1..fig5");
  figures->add_option("figure", figure_id, "figure id (fig1..fig5)")->required();
  add_common(figures, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (evolve->parsed() || compare->parsed()) {
      qudyn::ExperimentConfig cfg = qudyn::ExperimentConfig::load(config_path);
      if (seed_set) cfg.mc_seed = seed;
      cfg.mc_shards = thread_cap(cfg.mc_shards);
      return evolve->parsed() ? qudyn::cli::cmd_evolve(cfg, out_dir)
                              : qudyn::cli::cmd_compare(cfg, tolerance, out_dir);
    }
    if (channel->parsed()) {
      const nlohmann::json j = load_json(config_path);
      const auto dist = qudyn::DisorderDistribution::parse(j.at("distribution"));
      return qudyn::cli::cmd_channel(dist, parse_grid(j.at("grid")), out_dir);
    }
    return qudyn::cli::cmd_figures(figure_id, out_dir, seed_set ? seed : 1);
  } catch (const ConfigError& ex) {
    std::cerr << "config error: " << ex.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "config error: " << ex.what() << '\n';
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
}
