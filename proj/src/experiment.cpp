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

#include "qudyn/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

#include <nlohmann/json.hpp>

namespace qudyn {

std::string engine_name(Engine e) {
  switch (e) {
    case Engine::closed_form: return "closed_form";
    case Engine::series: return "series";
    case Engine::quadrature: return "quadrature";
    case Engine::mc: return "mc";
  }
  return "unknown";
}

Engine engine_from_name(const std::string& name) {
  if (name == "closed_form") return Engine::closed_form;
  if (name == "series") return Engine::series;
  if (name == "quadrature") return Engine::quadrature;
  if (name == "mc") return Engine::mc;
  throw ConfigError("unknown engine \"" + name + "\"");
}

ExperimentConfig ExperimentConfig::parse(const nlohmann::json& j) {
  ExperimentConfig cfg;
  try {
    cfg.hamiltonian = hamiltonians::HamiltonianSpec::parse(j.at("hamiltonian"));
    cfg.distribution = DisorderDistribution::parse(j.at("distribution"));
    const auto& grid = j.at("grid");
    cfg.t_start = grid.at("start").get<double>();
    cfg.t_stop = grid.at("stop").get<double>();
    cfg.t_points = grid.at("points").get<int>();

    if (j.contains("initial_state")) {
      const auto& st = j.at("initial_state");
      if (st.contains("named")) {
        cfg.named_state = st.at("named").get<std::string>();
      } else if (st.contains("matrix")) {
        cfg.named_state.clear();
        const auto& rows = st.at("matrix");
        const Eigen::Index d = static_cast<Eigen::Index>(rows.size());
        cfg.custom_state.resize(d, d);
        for (Eigen::Index r = 0; r < d; ++r) {
          for (Eigen::Index c = 0; c < d; ++c) {
            const auto& e = rows.at(r).at(c);
            cfg.custom_state(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
          }
        }
      } else {
        throw ConfigError("initial_state: expected \"named\" or \"matrix\"");
      }
    }

    if (!j.contains("engines") || !j.at("engines").is_array() || j.at("engines").empty()) {
      throw ConfigError("at least one engine must be selected");
    }
    for (const auto& e : j.at("engines")) cfg.engines.push_back(engine_from_name(e.get<std::string>()));

    cfg.series_order = j.value("series_order", 40);
    cfg.quadrature_nodes = j.value("quadrature_nodes", 64);
    if (j.contains("mc")) {
      const auto& mc = j.at("mc");
      cfg.mc_samples = mc.value("n_samples", 10000L);
      cfg.mc_seed = mc.value("seed", static_cast<std::uint64_t>(1));
      cfg.mc_shards = mc.value("shards", 1);
    }

    if (!j.contains("outputs") || !j.at("outputs").is_array() || j.at("outputs").empty()) {
      throw ConfigError("at least one output must be requested");
    }
    for (const auto& o : j.at("outputs")) cfg.outputs.push_back(o.get<std::string>());
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& ex) {
    throw ConfigError(std::string("invalid config: ") + ex.what());
  }
  if (cfg.t_points < 2) throw ConfigError("grid must have at least 2 points");
  if (!(cfg.t_stop > cfg.t_start) || cfg.t_start < 0.0) {
    throw ConfigError("grid must satisfy 0 <= start < stop");
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& ex) {
    throw ConfigError(std::string("config is not valid JSON: ") + ex.what());
  }
  return parse(j);
}

std::vector<double> ExperimentConfig::grid() const {
  std::vector<double> ts(static_cast<size_t>(t_points));
  const double step = (t_stop - t_start) / (t_points - 1);
  for (int i = 0; i < t_points; ++i) ts[static_cast<size_t>(i)] = t_start + step * i;
  return ts;
}

namespace {

ComplexMatrix basis_projector(Eigen::Index d, Eigen::Index k) {
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m(k, k) = 1.0;
  return m;
}

ComplexMatrix bell_probe(Eigen::Index d) {
  ComplexVector phi = ComplexVector::Zero(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index i = 0; i < d; ++i) phi(i * d + i) = amp;
  return phi * phi.adjoint();
}

}  // namespace

ComplexMatrix ExperimentConfig::initial_state(const PotentHamiltonian& pot) const {
  const Eigen::Index d = pot.dim();
  if (named_state.empty()) {
    if (custom_state.rows() != d) {
      throw ConfigError("custom initial state dimension does not match the Hamiltonian");
    }
    return custom_state;
  }
  if (named_state == "up") return basis_projector(d, 0);
  if (named_state == "down") return basis_projector(d, d - 1);
  if (named_state == "sz_plus1") {
    if (d != 3) throw ConfigError("sz_plus1 requires a 3-dimensional system");
    return basis_projector(3, 0);
  }
  if (named_state == "sz_minus1") {
    if (d != 3) throw ConfigError("sz_minus1 requires a 3-dimensional system");
    return basis_projector(3, 2);
  }
  if (named_state == "bell_probe") return bell_probe(d);
  throw ConfigError("unknown named initial state \"" + named_state + "\"");
}

ComplexMatrix ExperimentConfig::partner_state(const PotentHamiltonian& pot) const {
  const Eigen::Index d = pot.dim();
  if (named_state == "up" || named_state == "sz_plus1") return basis_projector(d, d - 1);
  if (named_state == "down" || named_state == "sz_minus1") return basis_projector(d, 0);
  throw ConfigError("trace_distance needs a named basis initial state to derive its pair");
}

namespace cli {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string case_label(const PotentHamiltonian& pot) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "p%dq%d", pot.p, pot.q);
  return buf;
}

struct OutputSpec {
  WitnessKind kind;
  std::string obs_name;
};

std::vector<OutputSpec> parse_outputs(const ExperimentConfig& cfg, const PotentHamiltonian& pot) {
  std::vector<OutputSpec> out;
  for (const auto& name : cfg.outputs) {
    OutputSpec spec;
    const auto colon = name.find(':');
    if (colon != std::string::npos) {
      spec.kind = witness_kind_from_name(name.substr(0, colon));
      spec.obs_name = name.substr(colon + 1);
      if (spec.kind != WitnessKind::observable || spec.obs_name.empty()) {
        throw ConfigError("malformed output \"" + name + "\"");
      }
    } else {
      try {
        spec.kind = witness_kind_from_name(name);
      } catch (const std::exception& ex) {
        throw ConfigError(ex.what());
      }
      if (spec.kind == WitnessKind::observable) {
        throw ConfigError("observable outputs need a name, e.g. \"observable:sz\"");
      }
    }
    if (spec.kind == WitnessKind::purity && !pot.hermitian) {
      throw ConfigError(
          "purity is not defined under trace-growing evolution; request normalized_purity");
    }
    if (spec.kind == WitnessKind::trace_distance && cfg.named_state == "bell_probe") {
      throw ConfigError("trace_distance is not available for the bell_probe state");
    }
    out.push_back(std::move(spec));
  }
  return out;
}

DynamicalMap build_map(const ExperimentConfig& cfg, const PotentHamiltonian& pot, Engine engine, double t) {
  switch (engine) {
    case Engine::closed_form:
      return maps::closed_form_map(pot, cfg.distribution, t);
    case Engine::series:
      return maps::map_series(pot, cfg.distribution, t, cfg.series_order);
    case Engine::quadrature:
      return maps::map_quadrature(pot, cfg.distribution, t, cfg.quadrature_nodes);
    case Engine::mc:
      break;
  }
  throw std::logic_error("build_map: mc engine has no per-time map builder");
}

std::vector<WitnessSeries> mc_series(const ExperimentConfig& cfg, const PotentHamiltonian& pot,
                                     const std::vector<OutputSpec>& specs) {
  if (cfg.named_state == "bell_probe") {
    throw ConfigError("the mc engine does not support the bell_probe state; use a map engine");
  }
  McRunConfig run_cfg;
  run_cfg.pot = pot;
  run_cfg.dist = cfg.distribution;
  run_cfg.rho0 = cfg.initial_state(pot);
  run_cfg.time_grid = cfg.grid();
  run_cfg.n_samples = cfg.mc_samples;
  run_cfg.seed = cfg.mc_seed;
  run_cfg.shards = cfg.mc_shards;
  const McResult result = montecarlo::run(run_cfg);

  bool need_partner = false;
  for (const auto& s : specs) need_partner |= s.kind == WitnessKind::trace_distance;
  std::unique_ptr<McResult> partner;
  if (need_partner) {
    McRunConfig partner_cfg = run_cfg;
    partner_cfg.rho0 = cfg.partner_state(pot);
    partner = std::make_unique<McResult>(montecarlo::run(partner_cfg));
  }

  const auto& ts = result.times();
  std::vector<WitnessSeries> out;
  for (const auto& spec : specs) {
    WitnessSeries series;
    series.kind = spec.kind;
    series.observable_name = spec.obs_name;
    series.times = ts;
    for (size_t ti = 0; ti < ts.size(); ++ti) {
      switch (spec.kind) {
        case WitnessKind::observable: {
          const auto obs = named_observable(spec.obs_name, pot.dim());
          const ValueSe v = result.observable(ti, obs, !pot.hermitian);
          series.values.push_back(v.value);
          series.stderrs.push_back(v.se);
          break;
        }
        case WitnessKind::purity: {
          const ValueSe v = result.purity(ti, false);
          series.values.push_back(v.value);
          series.stderrs.push_back(v.se);
          break;
        }
        case WitnessKind::normalized_purity: {
          const ValueSe v = result.purity(ti, true);
          series.values.push_back(v.value);
          series.stderrs.push_back(v.se);
          break;
        }
        case WitnessKind::trace_distance: {
          ComplexMatrix a = result.rho_bar(ti);
          ComplexMatrix b = partner->rho_bar(ti);
          a /= a.trace().real();
          b /= b.trace().real();
          series.values.push_back(witnesses::trace_distance(a, b));
          break;
        }
        case WitnessKind::log_negativity:
          series.values.push_back(witnesses::log_negativity(result.superoperator(ti)));
          break;
        case WitnessKind::decay_rate:
          series.values.push_back(disorder::decay_rate_gamma(cfg.distribution, ts[ti]).value);
          break;
      }
    }
    out.push_back(std::move(series));
  }
  return out;
}

}  // namespace

ComplexMatrix named_observable(const std::string& name, Eigen::Index d) {
  if (name == "sz") {
    if (d == 2) return hamiltonians::sigma_z();
    if (d == 3) return hamiltonians::spin1_z();
    // 2^N qubits: sigma_z on the first site.
    Eigen::Index rest = d / 2;
    if (rest * 2 == d) return linalg::kron(hamiltonians::sigma_z(), linalg::identity(rest));
  }
  throw ConfigError("unknown observable \"" + name + "\" for dimension " + std::to_string(d));
}

std::vector<WitnessSeries> compute_series(const ExperimentConfig& cfg, Engine engine) {
  const PotentHamiltonian pot = cfg.hamiltonian.build();
  const auto specs = parse_outputs(cfg, pot);
  if (engine == Engine::closed_form && pot.p == 3 && pot.q == 0 &&
      cfg.distribution.kind == DisorderDistribution::Kind::uniform) {
    throw ConfigError(
        "no closed form exists for uniform disorder on the (3,0) class; use the quadrature engine");
  }
  if (engine == Engine::mc) return mc_series(cfg, pot, specs);

  const auto ts = cfg.grid();
  const bool probe = cfg.named_state == "bell_probe";
  const ComplexMatrix rho0 = cfg.initial_state(pot);

  bool need_partner = false;
  for (const auto& s : specs) need_partner |= s.kind == WitnessKind::trace_distance;
  const ComplexMatrix rho0_partner = need_partner ? cfg.partner_state(pot) : ComplexMatrix();

  std::vector<WitnessSeries> out(specs.size());
  for (size_t si = 0; si < specs.size(); ++si) {
    out[si].kind = specs[si].kind;
    out[si].observable_name = specs[si].obs_name;
    out[si].times = ts;
    out[si].values.reserve(ts.size());
  }

  for (double t : ts) {
    const DynamicalMap map = build_map(cfg, pot, engine, t);
    ComplexMatrix rho_t;
    bool have_rho = false;
    auto evolved = [&]() -> const ComplexMatrix& {
      if (!have_rho) {
        rho_t = probe ? maps::evolve_system_factor(map, rho0, pot.dim()) : maps::evolve(map, rho0);
        have_rho = true;
      }
      return rho_t;
    };
    for (size_t si = 0; si < specs.size(); ++si) {
      switch (specs[si].kind) {
        case WitnessKind::observable: {
          const auto obs = named_observable(specs[si].obs_name, pot.dim());
          out[si].values.push_back(witnesses::observable(evolved(), obs, !pot.hermitian));
          break;
        }
        case WitnessKind::purity:
          out[si].values.push_back(witnesses::purity(evolved()));
          break;
        case WitnessKind::normalized_purity:
          out[si].values.push_back(witnesses::normalized_purity(evolved()));
          break;
        case WitnessKind::trace_distance: {
          ComplexMatrix a = evolved();
          ComplexMatrix b = maps::evolve(map, rho0_partner);
          a /= a.trace().real();
          b /= b.trace().real();
          out[si].values.push_back(witnesses::trace_distance(a, b));
          break;
        }
        case WitnessKind::log_negativity:
          out[si].values.push_back(witnesses::log_negativity(map));
          break;
        case WitnessKind::decay_rate:
          out[si].values.push_back(disorder::decay_rate_gamma(cfg.distribution, t).value);
          break;
      }
    }
  }
  return out;
}

void write_witness_csv(const std::string& path, const std::vector<WitnessSeries>& series,
                       const PotentHamiltonian& pot, const DisorderDistribution& dist,
                       const std::string& params) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "# schema=qudyn.witness.v1\n";
  out << "t,kind,value,stderr,case,distribution,params\n";
  for (const auto& s : series) {
    std::string kind = witness_kind_name(s.kind);
    if (s.kind == WitnessKind::observable) kind += ":" + s.observable_name;
    for (size_t i = 0; i < s.times.size(); ++i) {
      out << fmt(s.times[i]) << ',' << kind << ',' << fmt(s.values[i]) << ',';
      if (!s.stderrs.empty()) out << fmt(s.stderrs[i]);
      out << ',' << case_label(pot) << ',' << dist.label() << ',' << params << '\n';
    }
  }
}

void write_mc_csv(const std::string& path, const McResult& result,
                  const std::vector<WitnessSeries>& series) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "# schema=qudyn.mcresult.v1\n";
  out << "t,observable,value,stderr,n_samples,seed\n";
  for (const auto& s : series) {
    std::string kind = witness_kind_name(s.kind);
    if (s.kind == WitnessKind::observable) kind += ":" + s.observable_name;
    for (size_t i = 0; i < s.times.size(); ++i) {
      out << fmt(s.times[i]) << ',' << kind << ',' << fmt(s.values[i]) << ',';
      if (!s.stderrs.empty()) out << fmt(s.stderrs[i]);
      out << ',' << result.n_samples() << ',' << result.seed() << '\n';
    }
  }
}

std::vector<SeriesComparison> compare_engines(const ExperimentConfig& cfg, double tolerance) {
  if (cfg.engines.size() < 2) {
    throw ConfigError("compare needs at least two engines");
  }
  std::vector<std::vector<WitnessSeries>> all;
  all.reserve(cfg.engines.size());
  for (Engine e : cfg.engines) all.push_back(compute_series(cfg, e));

  std::vector<SeriesComparison> rows;
  for (size_t a = 0; a < cfg.engines.size(); ++a) {
    for (size_t b = a + 1; b < cfg.engines.size(); ++b) {
      const bool has_mc = cfg.engines[a] == Engine::mc || cfg.engines[b] == Engine::mc;
      for (size_t si = 0; si < all[a].size(); ++si) {
        const auto& sa = all[a][si];
        const auto& sb = all[b][si];
        SeriesComparison cmp;
        cmp.left = engine_name(cfg.engines[a]);
        cmp.right = engine_name(cfg.engines[b]);
        cmp.kind = witness_kind_name(sa.kind);
        if (sa.kind == WitnessKind::observable) cmp.kind += ":" + sa.observable_name;
        cmp.pass = true;
        cmp.skipped = has_mc && sa.stderrs.empty() && sb.stderrs.empty();
        for (size_t i = 0; i < sa.values.size(); ++i) {
          const double va = sa.values[i];
          const double vb = sb.values[i];
          if (std::isnan(va) && std::isnan(vb)) continue;
          const double dev = std::abs(va - vb);
          cmp.max_deviation = std::max(cmp.max_deviation, dev);
          if (cmp.skipped) continue;
          if (has_mc) {
            double se = 0.0;
            if (!sa.stderrs.empty()) se = std::hypot(se, sa.stderrs[i]);
            if (!sb.stderrs.empty()) se = std::hypot(se, sb.stderrs[i]);
            if (dev > std::max(4.0 * se, 1e-9)) cmp.pass = false;
          } else if (dev > tolerance) {
            cmp.pass = false;
          }
        }
        rows.push_back(std::move(cmp));
      }
    }
  }
  return rows;
}

int cmd_evolve(const ExperimentConfig& cfg, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const PotentHamiltonian pot = cfg.hamiltonian.build();
  for (Engine e : cfg.engines) {
    const auto series = compute_series(cfg, e);
    std::string params = "engine=" + engine_name(e);
    if (e == Engine::series) params += ";order=" + std::to_string(cfg.series_order);
    if (e == Engine::quadrature) params += ";nodes=" + std::to_string(cfg.quadrature_nodes);
    if (e == Engine::mc) {
      params += ";samples=" + std::to_string(cfg.mc_samples) + ";seed=" + std::to_string(cfg.mc_seed);
    }
    write_witness_csv(out_dir + "/evolve_" + engine_name(e) + ".csv", series, pot,
                      cfg.distribution, params);
  }
  return 0;
}

int cmd_compare(const ExperimentConfig& cfg, double tolerance, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const auto rows = compare_engines(cfg, tolerance);
  std::ofstream report(out_dir + "/compare_report.csv");
  report << "# schema=qudyn.compare.v1\n";
  report << "left,right,kind,max_deviation,tolerance,verdict\n";
  bool all_pass = true;
  for (const auto& r : rows) {
    const bool mc_pair = r.left == "mc" || r.right == "mc";
    const char* verdict = r.skipped ? "SKIP" : (r.pass ? "PASS" : "FAIL");
    report << r.left << ',' << r.right << ',' << r.kind << ',' << fmt(r.max_deviation) << ','
           << (r.skipped ? "no-stderr" : (mc_pair ? "4*SE" : fmt(tolerance))) << ',' << verdict << '\n';
    std::cout << verdict << ' ' << r.left << " vs " << r.right << " [" << r.kind
              << "] max deviation " << fmt(r.max_deviation) << '\n';
    all_pass &= r.pass;
  }
  return all_pass ? 0 : 1;
}

int cmd_channel(const DisorderDistribution& dist, const std::vector<double>& grid,
                const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::ofstream out(out_dir + "/channel.csv");
  if (!out) throw std::runtime_error("cannot write channel.csv");
  out << "# schema=qudyn.channel.v1\n";
  out << "t,G,p_d,gamma,gamma_pole\n";
  for (double t : grid) {
    const double g = disorder::G(dist, t);
    const double pd = witnesses::dephasing_probability(dist, t);
    const auto rate = disorder::decay_rate_gamma(dist, t);
    out << fmt(t) << ',' << fmt(g) << ',' << fmt(pd) << ',' << fmt(rate.value) << ','
        << (rate.pole ? 1 : 0) << '\n';
  }
  return 0;
}

namespace {

ExperimentConfig figure_base(const std::string& ham_type, const DisorderDistribution& dist,
                             double stop, int points) {
  ExperimentConfig cfg;
  cfg.hamiltonian.type = ham_type == "clock" ? hamiltonians::HamiltonianSpec::Type::clock_qutrit
                         : ham_type == "spin1" ? hamiltonians::HamiltonianSpec::Type::spin1_axis
                                               : hamiltonians::HamiltonianSpec::Type::qubit_axis;
  cfg.distribution = dist;
  cfg.t_start = 0.0;
  cfg.t_stop = stop;
  cfg.t_points = points;
  cfg.named_state = ham_type == "qubit" ? "up" : "sz_plus1";
  return cfg;
}

void run_panel(const ExperimentConfig& cfg, const std::string& dir, const std::string& prefix) {
  const PotentHamiltonian pot = cfg.hamiltonian.build();
  for (Engine e : cfg.engines) {
    const auto series = compute_series(cfg, e);
    std::string params = "engine=" + engine_name(e);
    if (e == Engine::mc) {
      params += ";samples=" + std::to_string(cfg.mc_samples) + ";seed=" + std::to_string(cfg.mc_seed);
    }
    write_witness_csv(dir + "/" + prefix + "_" + engine_name(e) + ".csv", series, pot,
                      cfg.distribution, params);
  }
}

}  // namespace

int cmd_figures(const std::string& figure_id, const std::string& out_dir, std::uint64_t seed) {
  const auto gaussian = DisorderDistribution::gaussian(1.0);
  const auto uniform = DisorderDistribution::uniform(std::sqrt(3.0));
  const std::string dir = out_dir + "/" + figure_id;

  if (figure_id == "fig1") {
    std::filesystem::create_directories(dir);
    for (const std::string ham : {"qubit", "spin1"}) {
      for (const auto& dist : {gaussian, uniform}) {
        ExperimentConfig cfg = figure_base(ham, dist, 3.0, 61);
        cfg.engines = {Engine::closed_form, Engine::mc};
        cfg.outputs = {"observable:sz"};
        cfg.mc_samples = 1000;
        cfg.mc_seed = seed;
        const std::string kind = dist.kind == DisorderDistribution::Kind::gaussian ? "gaussian" : "uniform";
        run_panel(cfg, dir, ham + "_" + kind);
      }
    }
    return 0;
  }
  if (figure_id == "fig2") {
    std::filesystem::create_directories(dir);
    for (const auto& dist : {gaussian, uniform}) {
      ExperimentConfig cfg = figure_base("qubit", dist, 5.0, 501);
      cfg.engines = {Engine::closed_form};
      cfg.outputs = {"purity", "trace_distance", "log_negativity", "decay_rate"};
      const std::string kind = dist.kind == DisorderDistribution::Kind::gaussian ? "gaussian" : "uniform";
      run_panel(cfg, dir, "qubit_" + kind);
    }
    return 0;
  }
  if (figure_id == "fig3") {
    std::filesystem::create_directories(dir);
    for (int n = 1; n <= 4; ++n) {
      ExperimentConfig cfg = figure_base("qubit", gaussian, 3.0, 301);
      cfg.hamiltonian.type = hamiltonians::HamiltonianSpec::Type::pauli_tensor_power;
      cfg.hamiltonian.n_qubits = n;
      cfg.engines = {Engine::closed_form};
      cfg.outputs = {"purity"};
      run_panel(cfg, dir, "n" + std::to_string(n));
    }
    return 0;
  }
  if (figure_id == "fig4") {
    std::filesystem::create_directories(dir);
    ExperimentConfig cfg = figure_base("clock", gaussian, 3.0, 61);
    cfg.engines = {Engine::closed_form, Engine::mc};
    cfg.outputs = {"observable:sz", "normalized_purity", "trace_distance"};
    cfg.mc_samples = 100000;
    cfg.mc_seed = seed;
    cfg.mc_shards = 4;
    run_panel(cfg, dir, "clock_gaussian");
    return 0;
  }
  if (figure_id == "fig5") {
    std::filesystem::create_directories(dir);
    for (const auto& dist : {gaussian, uniform}) {
      ExperimentConfig cfg = figure_base("spin1", dist, 5.0, 501);
      cfg.engines = {Engine::closed_form};
      cfg.outputs = {"purity", "trace_distance"};
      const std::string kind = dist.kind == DisorderDistribution::Kind::gaussian ? "gaussian" : "uniform";
      run_panel(cfg, dir, "spin1_" + kind);
    }
    return 0;
  }
  throw ConfigError("unknown figure id \"" + figure_id + "\" (expected fig1..fig5)");
}

}  // namespace cli
}  // namespace qudyn
