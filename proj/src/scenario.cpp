#include "fragsim/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "fragsim/observables.hpp"
#include "fragsim/spectral.hpp"

namespace fragsim {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

RateFamily parse_family(const json& j, const std::string& field) {
  if (!j.is_object() || !j.contains("kind")) {
    throw ScenarioError(field + ": expected object with a \"kind\" field");
  }
  const std::string kind = j.at("kind").get<std::string>();
  auto num = [&](const char* key) -> double {
    if (!j.contains(key) || !j.at(key).is_number()) {
      throw ScenarioError(field + ": \"" + key + "\" must be a number for kind " + kind);
    }
    return j.at(key).get<double>();
  };
  if (kind == "constant") return RateFamily::constant(num("c"));
  if (kind == "linear") return RateFamily::linear(num("c"));
  if (kind == "power-law") return RateFamily::power_law(num("c"), num("p"));
  if (kind == "tabulated") {
    if (!j.contains("values") || !j.at("values").is_array()) {
      throw ScenarioError(field + ": tabulated family needs a \"values\" array");
    }
    return RateFamily::tabulated(j.at("values").get<std::vector<double>>());
  }
  throw ScenarioError(field + ": unknown kind \"" + kind + "\"");
}

KernelSpec parse_kernel(const json& j) {
  if (!j.is_object() || !j.contains("kind")) {
    throw ScenarioError("kernel: expected object with a \"kind\" field");
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "uniform-binary") return KernelSpec::uniform_binary();
  if (kind == "tabulated") {
    if (!j.contains("rows") || !j.at("rows").is_array()) {
      throw ScenarioError("kernel: tabulated kernel needs a \"rows\" array (row for j = 2, 3, ...)");
    }
    return KernelSpec::tabulated(j.at("rows").get<std::vector<std::vector<double>>>());
  }
  throw ScenarioError("kernel: unknown kind \"" + kind + "\"");
}

Scenario parse_scenario(const json& j) {
  Scenario sc;
  if (!j.is_object()) throw ScenarioError("top level: expected a JSON object");
  if (!j.contains("name") || !j.at("name").is_string()) {
    throw ScenarioError("name: required string field");
  }
  sc.name = j.at("name").get<std::string>();
  if (!j.contains("rates") || !j.at("rates").is_object()) {
    throw ScenarioError("rates: required object field");
  }
  const auto& rates = j.at("rates");
  for (const char* k : {"decay", "death", "frag"}) {
    if (!rates.contains(k)) throw ScenarioError(std::string("rates.") + k + ": missing");
  }
  sc.rates.decay_family = parse_family(rates.at("decay"), "rates.decay");
  sc.rates.death_family = parse_family(rates.at("death"), "rates.death");
  sc.rates.frag_family = parse_family(rates.at("frag"), "rates.frag");
  sc.kernel = j.contains("kernel") ? parse_kernel(j.at("kernel")) : KernelSpec::uniform_binary();

  if (!j.contains("N") || !j.at("N").is_number_unsigned() || j.at("N").get<std::size_t>() < 1) {
    throw ScenarioError("N: required positive integer");
  }
  sc.N = j.at("N").get<std::size_t>();

  if (!j.contains("initial")) throw ScenarioError("initial: missing");
  const auto& init = j.at("initial");
  if (init.is_object() && init.contains("monodisperse")) {
    const auto& m = init.at("monodisperse");
    if (!m.contains("size") || !m.contains("amount")) {
      throw ScenarioError("initial.monodisperse: needs \"size\" and \"amount\"");
    }
    const std::size_t size = m.at("size").get<std::size_t>();
    const double amount = m.at("amount").get<double>();
    if (size < 1 || size > sc.N) {
      throw ScenarioError("initial.monodisperse.size: must be in 1.." + std::to_string(sc.N));
    }
    sc.initial.assign(sc.N, 0.0);
    sc.initial[size - 1] = amount;
  } else if (init.is_object() && init.contains("vector")) {
    sc.initial = init.at("vector").get<std::vector<double>>();
    if (sc.initial.size() != sc.N) {
      throw ScenarioError("initial.vector: length must equal N");
    }
  } else {
    throw ScenarioError("initial: expected {\"monodisperse\": {...}} or {\"vector\": [...]}");
  }

  if (j.contains("integrator")) {
    const auto& ji = j.at("integrator");
    auto opt = [&](const char* key, double& dst) {
      if (ji.contains(key)) {
        if (!ji.at(key).is_number()) {
          throw ScenarioError(std::string("integrator.") + key + ": must be a number");
        }
        dst = ji.at(key).get<double>();
      }
    };
    opt("t_end", sc.integrator.t_end);
    opt("dt_init", sc.integrator.dt_init);
    opt("rtol", sc.integrator.rtol);
    opt("atol", sc.integrator.atol);
    opt("dt_min", sc.integrator.dt_min);
    opt("dt_max", sc.integrator.dt_max);
    opt("sample_every", sc.integrator.sample_every);
  }
  if (j.contains("spectral")) {
    const auto& js = j.at("spectral");
    if (js.contains("enabled")) sc.spectral_enabled = js.at("enabled").get<bool>();
    if (js.contains("fit_window")) {
      const auto w = js.at("fit_window").get<std::vector<double>>();
      if (w.size() != 2 || !(w[0] < w[1])) {
        throw ScenarioError("spectral.fit_window: expected [t_lo, t_hi] with t_lo < t_hi");
      }
      sc.fit_window = std::make_pair(w[0], w[1]);
    }
  }
  try {
    sc.integrator.validate();
    sc.rates.validate(sc.N);
  } catch (const std::exception& e) {
    throw ScenarioError(e.what());
  }
  return sc;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "t";
  const std::size_t N = traj.samples.empty() ? 0 : traj.samples.front().f.size();
  for (std::size_t i = 1; i <= N; ++i) out += ",f" + std::to_string(i);
  out += '\n';
  char buf[40];
  for (const auto& s : traj.samples) {
    std::snprintf(buf, sizeof(buf), "%.12g", s.t);
    out += buf;
    for (double v : s.f) {
      std::snprintf(buf, sizeof(buf), ",%.12g", v);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::string gap_csv(const GapSeries& gs) {
  std::string out = "t,gap_norm\n";
  char buf[80];
  for (const auto& [t, g] : gs.points) {
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", t, g);
    out += buf;
  }
  return out;
}

}  // namespace

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot read scenario file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("JSON parse error: ") + e.what());
  }
  return parse_scenario(j);
}

ScenarioOutcome run_scenario(const std::string& path, const RunOptions& opts) {
  ScenarioOutcome out;
  const auto t_start = std::chrono::steady_clock::now();

  Scenario sc;
  json scenario_echo;
  try {
    {
      std::ifstream in(path);
      if (!in) throw ScenarioError("cannot read scenario file: " + path);
      try {
        scenario_echo = json::parse(in);
      } catch (const json::parse_error& e) {
        throw ScenarioError(std::string("JSON parse error: ") + e.what());
      }
    }
    sc = parse_scenario(scenario_echo);
  } catch (const ScenarioError& e) {
    out.status = kExitSchema;
    out.error = e.what();
    return out;
  }
  out.name = sc.name;
  if (opts.rtol) sc.integrator.rtol = *opts.rtol;
  if (opts.atol) sc.integrator.atol = *opts.atol;
  if (opts.t_end) sc.integrator.t_end = *opts.t_end;

  const fs::path out_dir = opts.out_dir ? fs::path(*opts.out_dir)
                                        : fs::path("results") / sc.name;
  fs::create_directories(out_dir);
  out.out_dir = out_dir.string();

  const auto G = TruncatedGenerator::build(sc.rates, sc.kernel, sc.N);
  const auto regime = classify_regime(sc.rates, std::max<std::size_t>(sc.N, 2));

  json manifest;
  manifest["scenario"] = scenario_echo;
  manifest["classification"] = {
      {"analytic_domination", regime.analytic_domination},
      {"domination_constant", regime.domination_constant},
      {"frag_death_ratio_bounded", regime.frag_death_ratio_bounded},
      {"theta_divergent", regime.theta_divergent},
      {"strict_min_unique", regime.strict_min_unique},
      {"argmin_index", regime.argmin_index},
      {"heuristic", regime.heuristic},
  };

  if (opts.dump_generator) {
    write_file(out_dir / "generator.txt", G.dense_dump());
  }

  Trajectory traj;
  try {
    traj = integrate(G, {sc.initial, 0.0}, sc.integrator);
  } catch (const IntegrationError& e) {
    out.status = kExitIntegration;
    out.error = e.what();
    manifest["integration_error"] = e.what();
    write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
    return out;
  }

  write_file(out_dir / "trajectory.csv", trajectory_csv(traj));
  const auto series = extract_series(traj, sc.rates);
  write_file(out_dir / "mass.csv", to_csv(series.mass));
  write_file(out_dir / "count.csv", to_csv(series.count));
  out.final_mass = series.mass.points.back().second;

  json spectral_summary;
  const bool growth_hypotheses = regime.analytic_domination &&
                                 regime.frag_death_ratio_bounded && regime.theta_divergent;
  if (!sc.spectral_enabled) {
    spectral_summary["skipped"] = "spectral analysis disabled in scenario";
  } else if (!regime.strict_min_unique) {
    spectral_summary["skipped"] =
        "minimum of theta is not strict (multiplicity); eigenpair computation refused";
  } else if (!growth_hypotheses) {
    spectral_summary["skipped"] =
        "asynchronous-growth hypotheses unmet (see classification flags)";
  } else {
    const auto sd = compute_spectral(sc.rates, sc.kernel, sc.N);
    out.lambda1 = sd.lambda1;
    const auto gs = gap_series(traj, sd, sc.initial, sc.fit_window);
    out.fitted_rate = gs.fitted_rate;
    write_file(out_dir / "gap.csv", gap_csv(gs));
    spectral_summary["lambda1"] = sd.lambda1;
    spectral_summary["N0"] = sd.N0;
    spectral_summary["gap"] = sd.gap;
    if (gs.fitted_rate) {
      spectral_summary["fitted_rate"] = *gs.fitted_rate;
    } else {
      spectral_summary["fitted_rate"] = nullptr;
      spectral_summary["fit_note"] = "fewer than 4 usable points in the fit window";
    }
    spectral_summary["fit_window"] = {gs.fit_t_lo, gs.fit_t_hi};
    if (sd.ill_conditioned_index) {
      spectral_summary["ill_conditioned_index"] = *sd.ill_conditioned_index;
    }
  }
  manifest["spectral"] = spectral_summary;
  write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");

  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return out;
}

int run_all(const std::string& directory, const RunOptions& opts, std::ostream& table) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  std::size_t max_threads = files.size();
  if (const char* env = std::getenv("FRAGSIM_THREADS")) {
    const long v = std::atol(env);
    if (v > 0) max_threads = static_cast<std::size_t>(v);
  }
  max_threads = std::max<std::size_t>(1, std::min(max_threads, files.size()));

  std::vector<ScenarioOutcome> outcomes(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= files.size()) return;
      RunOptions per = opts;
      if (opts.out_dir) {
        per.out_dir = (fs::path(*opts.out_dir) / files[idx].stem()).string();
      }
      outcomes[idx] = run_scenario(files[idx].string(), per);
      if (outcomes[idx].name.empty()) outcomes[idx].name = files[idx].stem().string();
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < max_threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  table << std::left << std::setw(16) << "scenario" << std::setw(12) << "lambda1"
        << std::setw(14) << "final_mass" << std::setw(14) << "gap_rate" << std::setw(10)
        << "wall_s" << "status\n";
  bool any_failed = false;
  for (const auto& o : outcomes) {
    std::ostringstream l1, fr, fm, ws;
    if (o.lambda1) l1 << std::setprecision(6) << *o.lambda1; else l1 << "n/a";
    if (o.fitted_rate) fr << std::setprecision(6) << *o.fitted_rate; else fr << "n/a";
    fm << std::setprecision(6) << o.final_mass;
    ws << std::fixed << std::setprecision(2) << o.wall_seconds;
    table << std::left << std::setw(16) << o.name << std::setw(12) << l1.str()
          << std::setw(14) << fm.str() << std::setw(14) << fr.str() << std::setw(10)
          << ws.str() << (o.status == kExitOk ? "ok" : ("FAILED: " + o.error)) << '\n';
    if (o.status != kExitOk) any_failed = true;
  }
  return any_failed ? 1 : 0;
}

}  // namespace fragsim
