#pragma once

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mpmdl/mpmdl.hpp"

namespace mpmdl::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kUsage = 2, kValidation = 3, kRuntime = 4 };

// ---------------------------------------------------------------------------
// Formatting and files

/// Whole numbers print without a fraction; everything else uses the shortest
/// round-trip form.
inline std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == std::floor(v) && std::abs(v) < 1e15) return std::to_string(static_cast<long long>(v));
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

inline void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::Io, "cannot write " + tmp.string());
    out << text;
    if (!out) throw Error(Errc::Io, "write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

inline std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string front_csv(const ParetoArchive& a) {
  std::string s = "id,f1,f2,f3\n";
  std::size_t id = 1;
  for (const auto& e : a.entries()) {
    s += std::to_string(id++) + "," + num(e.objectives.f1) + "," + num(e.objectives.f2) + "," + num(e.objectives.f3) + "\n";
  }
  return s;
}

/// Start times inside a station are prefix sums of its task order.
inline std::string gantt_csv(const Schedule& s, const Instance& inst) {
  std::string out = "row,station,line,task,start_s,end_s\n";
  for (int r = 0; r < kRowCount; ++r) {
    for (std::size_t d = 0; d < s.rows[r].size(); ++d) {
      double t = 0.0;
      for (const auto& ref : s.rows[r][d].tasks) {
        const double end = t + inst.line(ref.line).task(ref.task).time_s;
        out += std::to_string(r + 1) + "," + std::to_string(d + 1) + "," + std::to_string(ref.line) + "," +
               std::to_string(ref.task) + "," + num(t) + "," + num(end) + "\n";
        t = end;
      }
    }
  }
  return out;
}

/// Archive entry with the smallest value of objective k; ties keep archive order.
inline const ArchiveEntry& best_for(const ParetoArchive& a, int k) {
  const ArchiveEntry* best = &a.entries().front();
  for (const auto& e : a.entries()) {
    if (e.objectives.as_point()[static_cast<std::size_t>(k)] < best->objectives.as_point()[static_cast<std::size_t>(k)]) {
      best = &e;
    }
  }
  return *best;
}

inline double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline Json manifest(const std::string& command, const std::vector<std::string>& argv) {
  Json m;
  m["tool"] = "mpmdl";
  m["command"] = command;
  m["argv"] = argv;
  return m;
}

// ---------------------------------------------------------------------------
// Commands

struct GenOptions {
  std::string size = "small";
  std::uint64_t seed = 1;
  std::string out;
  double takt = 650.0;
};

inline std::vector<std::string> gen_argv(const GenOptions& o) {
  return {"gen", "--size", o.size, "--seed", std::to_string(o.seed), "--takt", num(o.takt)};
}

inline int cmd_gen(const GenOptions& o, std::ostream& out) {
  const auto scale = parse_scale(o.size);
  if (!scale) throw CLI::ValidationError("--size", "must be small, medium or large");
  auto cfg = generator_preset(*scale);
  cfg.takt_s = o.takt;
  const Instance inst = generate_instance(cfg, o.seed);
  const fs::path path(o.out);
  write_text(path, instance_to_string(inst));

  Json m = manifest("gen", gen_argv(o));
  m["instance_hash"] = hex64(instance_hash(inst));
  m["seed"] = o.seed;
  m["config"] = {{"size", o.size}, {"takt_s", o.takt}};
  m["artifacts"] = {path.filename().string()};
  write_text(path.string() + ".manifest.json", m.dump(2) + "\n");

  const auto s = instance_stats(inst);
  out << "instance " << path.string() << " hash " << hex64(instance_hash(inst)) << "\n";
  out << "takt_s " << num(inst.takt_s) << "\n";
  for (int o2 = 0; o2 < kLineCount; ++o2) {
    out << "line " << o2 + 1 << " model " << vehicle_model_name(inst.lines[static_cast<std::size_t>(o2)].vehicle_model)
        << " tasks " << s.task_count[o2] << " work_s " << num(s.work_content_s[o2]) << "\n";
  }
  out << "station lower bound row1 " << s.row_lower_bound[0] << " row2 " << s.row_lower_bound[1] << " total "
      << s.total_lower_bound << "\n";
  return kOk;
}

struct SolverOptions {
  std::string preset = "medium";
  std::optional<std::size_t> pop;
  std::optional<std::size_t> gens;
  std::optional<double> pc;
  std::optional<double> pm;
  std::optional<double> c1;
  std::optional<double> c2;
  std::optional<double> inertia;
  std::optional<std::size_t> divisions;
  unsigned workers = 1;

  AlgorithmParams params() const {
    const auto scale = parse_scale(preset);
    if (!scale) throw CLI::ValidationError("--preset", "must be small, medium or large");
    AlgorithmParams p = algorithm_preset(*scale);
    if (pop) p.population = *pop;
    if (gens) p.iterations = *gens;
    if (pc) p.pc = *pc;
    if (pm) p.pm = *pm;
    if (c1) p.c1 = *c1;
    if (c2) p.c2 = *c2;
    if (inertia) p.inertia = *inertia;
    if (divisions) p.divisions = *divisions;
    p.workers = workers;
    if (p.population == 0 || p.iterations == 0) throw CLI::ValidationError("--pop/--gens", "must be positive");
    return p;
  }

  void add_to(CLI::App* app) {
    app->add_option("--preset", preset, "parameter preset: small, medium, large")->capture_default_str();
    app->add_option("--pop", pop, "population size");
    app->add_option("--gens", gens, "generations / iterations");
    app->add_option("--pc", pc, "crossover probability")->check(CLI::Range(0.0, 1.0));
    app->add_option("--pm", pm, "mutation probability")->check(CLI::Range(0.0, 1.0));
    app->add_option("--c1", c1, "swarm individual learning factor");
    app->add_option("--c2", c2, "swarm group learning factor");
    app->add_option("--inertia", inertia, "swarm inertia weight");
    app->add_option("--divisions", divisions, "reference point divisions")->check(CLI::PositiveNumber);
    app->add_option("--workers", workers, "evaluation threads (results do not depend on it)");
  }
};

inline std::vector<std::string> params_argv(const AlgorithmParams& p) {
  return {"--pop", std::to_string(p.population), "--gens", std::to_string(p.iterations), "--pc", num(p.pc), "--pm",
          num(p.pm), "--c1", num(p.c1), "--c2", num(p.c2), "--inertia", num(p.inertia), "--divisions",
          std::to_string(p.divisions)};
}

inline Json params_json(const AlgorithmParams& p) {
  return {{"population", p.population}, {"iterations", p.iterations}, {"pc", p.pc}, {"pm", p.pm}, {"c1", p.c1},
          {"c2", p.c2}, {"inertia", p.inertia}, {"divisions", p.divisions}};
}

struct SolveOptions {
  std::string instance;
  std::string algo = "insga3";
  std::uint64_t seed = 1;
  std::string out_dir;
  SolverOptions solver;
};

inline int cmd_solve(const SolveOptions& o, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto algo = parse_algorithm(o.algo);
  if (!algo) throw CLI::ValidationError("--algo", "must be insga3, nsga3, mopso or nswoa");
  const AlgorithmParams p = o.solver.params();
  const Instance inst = read_instance(o.instance);
  const ParetoArchive archive = run_algorithm(*algo, inst, p, o.seed);
  if (archive.empty()) throw Error(Errc::EmptyFront, "solver returned an empty archive");

  const fs::path dir(o.out_dir);
  std::vector<std::string> artifacts{"front.csv", "gantt_f1.csv", "gantt_f2.csv", "gantt_f3.csv"};
  write_text(dir / "front.csv", front_csv(archive));
  for (int k = 0; k < 3; ++k) write_text(dir / artifacts[static_cast<std::size_t>(k) + 1], gantt_csv(best_for(archive, k).schedule, inst));

  std::vector<std::string> argv{"solve", "--instance", fs::absolute(o.instance).string(), "--algo", o.algo, "--seed",
                                std::to_string(o.seed), "--workers", std::to_string(o.solver.workers)};
  for (auto& a : params_argv(p)) argv.push_back(std::move(a));
  Json m = manifest("solve", argv);
  m["instance_hash"] = hex64(instance_hash(inst));
  m["algorithm"] = o.algo;
  m["seed"] = o.seed;
  m["config"] = params_json(p);
  m["wall_clock_s"] = elapsed_s(t0);
  m["artifacts"] = artifacts;
  write_text(dir / "manifest.json", m.dump(2) + "\n");

  out << o.algo << " seed " << o.seed << ": " << archive.size() << " non-dominated solutions\n";
  for (const auto& e : archive.entries()) {
    out << "  f1 " << e.objectives.f1 << " f2 " << num(e.objectives.f2) << " f3 " << num(e.objectives.f3) << "\n";
  }
  return kOk;
}

struct CompareOptions {
  std::string instance;
  std::vector<std::string> algos{"insga3", "nsga3", "mopso", "nswoa"};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::string out_dir;
  SolverOptions solver;
};

inline std::string indicators_csv(const IndicatorReport& r) {
  std::string s = "Algorithm,metric,Max,Min,Ave\n";
  const char* names[3] = {"f1", "f2", "f3"};
  for (const auto& a : r.algorithms) {
    for (int k = 0; k < 3; ++k) {
      const auto& st = a.objectives[static_cast<std::size_t>(k)];
      s += a.algorithm + "," + names[k] + "," + num(st.max) + "," + num(st.min) + "," + num(st.ave) + "\n";
    }
    s += a.algorithm + ",hv," + num(a.hv.max) + "," + num(a.hv.min) + "," + num(a.hv.ave) + "\n";
    s += a.algorithm + ",igd," + num(a.igd.max) + "," + num(a.igd.min) + "," + num(a.igd.ave) + "\n";
  }
  return s;
}

inline int cmd_compare(const CompareOptions& o, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Algorithm> algos;
  for (const auto& name : o.algos) {
    const auto a = parse_algorithm(name);
    if (!a) throw CLI::ValidationError("--algos", "unknown algorithm " + name);
    algos.push_back(*a);
  }
  if (o.seeds.empty()) throw CLI::ValidationError("--seeds", "needs at least one seed");
  const AlgorithmParams p = o.solver.params();
  const Instance inst = read_instance(o.instance);
  const fs::path dir(o.out_dir);

  std::vector<ParetoArchive> runs;
  std::vector<std::string> artifacts;
  for (Algorithm a : algos) {
    for (std::uint64_t seed : o.seeds) {
      try {
        runs.push_back(run_algorithm(a, inst, p, seed));
      } catch (const Error& e) {
        err << "compare: " << algorithm_name(a) << " seed " << seed << " failed: " << e.what() << "\n";
        err << "compare: " << runs.size() << " runs completed before the failure\n";
        throw;
      }
      const std::string name = std::string("fronts/") + algorithm_name(a) + "_seed" + std::to_string(seed) + ".csv";
      write_text(dir / name, front_csv(runs.back()));
      artifacts.push_back(name);
    }
  }
  const IndicatorReport report = summarize(runs);

  std::string runs_csv = "algorithm,seed,front_size,hv,igd\n";
  for (const auto& r : report.runs) {
    runs_csv += r.algorithm + "," + std::to_string(r.seed) + "," + std::to_string(r.front_size) + "," + num(r.hv) + "," +
                num(r.igd) + "\n";
  }
  std::string ref_csv = "id,f1,f2,f3\n";
  for (std::size_t i = 0; i < report.reference_front.size(); ++i) {
    const auto& q = report.reference_front[i];
    ref_csv += std::to_string(i + 1) + "," + num(q[0]) + "," + num(q[1]) + "," + num(q[2]) + "\n";
  }
  write_text(dir / "indicators.csv", indicators_csv(report));
  write_text(dir / "runs.csv", runs_csv);
  write_text(dir / "reference_front.csv", ref_csv);
  artifacts.insert(artifacts.begin(), {"indicators.csv", "runs.csv", "reference_front.csv"});

  std::string algos_arg, seeds_arg;
  for (const auto& a : o.algos) algos_arg += (algos_arg.empty() ? "" : ",") + a;
  for (auto s : o.seeds) seeds_arg += (seeds_arg.empty() ? "" : ",") + std::to_string(s);
  std::vector<std::string> argv{"compare", "--instance", fs::absolute(o.instance).string(), "--algos", algos_arg,
                                "--seeds", seeds_arg, "--workers", std::to_string(o.solver.workers)};
  for (auto& a : params_argv(p)) argv.push_back(std::move(a));
  Json m = manifest("compare", argv);
  m["instance_hash"] = hex64(instance_hash(inst));
  m["algorithm"] = o.algos;
  m["seed"] = o.seeds;
  m["config"] = params_json(p);
  m["normalization"] = {{"lo", report.normalization.lo}, {"hi", report.normalization.hi}};
  m["hv_reference"] = report.hv_reference;
  m["wall_clock_s"] = elapsed_s(t0);
  m["artifacts"] = artifacts;
  write_text(dir / "manifest.json", m.dump(2) + "\n");

  out << "Algorithm  HV median  IGD median\n";
  for (const auto& a : report.algorithms) {
    out << a.algorithm << "  " << num(a.hv_median) << "  " << num(a.igd_median) << "\n";
  }
  return kOk;
}

struct AdjustOptions {
  std::string scenario;
  std::string instance;
  std::string size = "small";
  std::uint64_t seed = 1;
  std::size_t replan_interval = 1;
  double available_s = kDefaultAvailableSeconds;
  std::size_t pop = 40;
  std::size_t gens = 20;
  std::string out_dir;
};

struct ScenarioMonth {
  int month = 0;
  double da_fv = 0.0;
  double da_pev = 0.0;
};

struct Scenario {
  double da_sl = 0.0;
  std::vector<ScenarioMonth> months;
};

inline Scenario read_scenario(const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("scenario: malformed JSON: ") + e.what());
  }
  Scenario s;
  try {
    s.da_sl = doc.at("da_sl").get<double>();
    for (const auto& m : doc.at("months")) {
      s.months.push_back({m.at("month").get<int>(), m.at("da_fv").get<double>(), m.at("da_pev").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  if (s.months.empty()) throw ParseError("scenario: months is empty");
  return s;
}

/// Side-line task templates per vehicle model plus the mixed middle line.
struct LineTemplates {
  LineSpec fuel;
  LineSpec electric;
  LineSpec middle;
  EnergyRates rates;
};

inline LineTemplates templates_from(const AdjustOptions& o) {
  LineTemplates t;
  if (!o.instance.empty()) {
    const Instance base = read_instance(o.instance);
    t.middle = base.lines[1];
    t.rates = base.rates;
    t.fuel = base.lines[0].vehicle_model == VehicleModel::Fuel ? base.lines[0] : base.lines[2];
    t.electric = base.lines[2].vehicle_model == VehicleModel::PureElectric ? base.lines[2] : base.lines[0];
    return t;
  }
  const auto scale = parse_scale(o.size);
  if (!scale) throw CLI::ValidationError("--size", "must be small, medium or large");
  const auto cfg = generator_preset(*scale);
  const Instance base = generate_instance(cfg, o.seed);
  t.middle = base.lines[1];
  t.rates = base.rates;
  t.fuel = generate_line(cfg, VehicleModel::Fuel, 1, o.seed);
  t.electric = generate_line(cfg, VehicleModel::PureElectric, 1, o.seed);
  return t;
}

inline Instance month_instance(const LineTemplates& t, const LineAssignment& a, double takt) {
  Instance inst;
  inst.takt_s = takt;
  inst.rates = t.rates;
  auto side = [&](VehicleModel m, int index) {
    LineSpec l = m == VehicleModel::Fuel ? t.fuel : t.electric;
    l.line_index = index;
    l.vehicle_model = m;
    return l;
  };
  LineSpec mid = t.middle;
  mid.line_index = 2;
  mid.vehicle_model = VehicleModel::Mixed;
  inst.lines = {side(a.line1, 1), std::move(mid), side(a.line3, 3)};
  return validate_instance(std::move(inst));
}

inline int cmd_adjust(const AdjustOptions& o, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  if (o.replan_interval == 0) throw CLI::ValidationError("--replan-interval", "must be >= 1");
  const Scenario sc = read_scenario(o.scenario);
  const LineTemplates templates = templates_from(o);
  const fs::path dir(o.out_dir);

  std::string timeline = "month,da_fv,da_pev,stage,line1,line2,line3,units,takt_s,action,front_size,f1_min,status\n";
  std::vector<std::string> artifacts{"timeline.csv"};
  std::optional<LineAssignment> current;
  std::optional<RecyclingVolumes> planned;
  std::optional<VisitLedger> ledger;
  std::size_t months_since_plan = 0;
  bool failed = false;

  for (const auto& month : sc.months) {
    const RecyclingVolumes v{month.da_fv, month.da_pev, sc.da_sl};
    std::string row = std::to_string(month.month) + "," + num(v.fuel) + "," + num(v.electric) + ",";
    LineAssignment a;
    double units = 0.0, takt = 0.0;
    try {
      units = units_per_line(v);
      a = assign_line_models(v, current);
      takt = takt_time(o.available_s, units);
    } catch (const Error& e) {
      failed = true;
      const std::string status = e.code() == Errc::Overload ? "overload" : errc_name(e.code());
      err << "adjust: month " << month.month << " skipped: " << e.what() << "\n";
      timeline += row + ",,,," + num(units) + ",,skip,,," + status + "\n";
      continue;
    }
    // stage one needs unchanged models and a forecast inside the drift band
    const int stage = current && a.stage == 1 && planned && within_stage_one_band(*planned, v) ? 1 : 2;
    row += std::to_string(stage) + "," + vehicle_model_name(a.line1) + ",mixed," + vehicle_model_name(a.line3) + "," +
           num(units) + "," + num(takt) + ",";

    const bool replan = stage == 2 || ++months_since_plan >= o.replan_interval;
    if (!replan) {
      current = a;
      timeline += row + "hold,,,ok\n";
      continue;
    }
    try {
      const Instance inst = month_instance(templates, a, takt);
      ReplanConfig cfg;
      cfg.available_s = o.available_s;
      cfg.evo.population = o.pop;
      cfg.evo.generations = o.gens;
      cfg.evo.seed = stream_seed(o.seed, static_cast<std::uint64_t>(month.month), 0);
      InsgaRun run = stage == 1 ? stage1_replan(*planned, v, inst, cfg, ledger)
                                : run_insga3_with_ledger(inst, cfg.evo);
      const std::string name = "front_month_" + std::to_string(month.month) + ".csv";
      write_text(dir / name, front_csv(run.archive));
      artifacts.push_back(name);
      timeline += row + (stage == 1 ? "replan-warm," : "replan-cold,") + std::to_string(run.archive.size()) + "," +
                  (run.archive.empty() ? "" : std::to_string(run.archive.entries().front().objectives.f1)) + ",ok\n";
      ledger = std::move(run.ledger);
      current = a;
      planned = v;
      months_since_plan = 0;
    } catch (const Error& e) {
      failed = true;
      err << "adjust: month " << month.month << " failed: " << e.what() << "\n";
      timeline += row + "replan,,," + errc_name(e.code()) + "\n";
    }
  }
  write_text(dir / "timeline.csv", timeline);

  std::vector<std::string> argv{"adjust", "--scenario", fs::absolute(o.scenario).string(), "--seed", std::to_string(o.seed),
                                "--replan-interval", std::to_string(o.replan_interval), "--available-s",
                                num(o.available_s), "--pop", std::to_string(o.pop), "--gens", std::to_string(o.gens)};
  if (o.instance.empty()) {
    argv.insert(argv.end(), {"--size", o.size});
  } else {
    argv.insert(argv.end(), {"--instance", fs::absolute(o.instance).string()});
  }
  Json m = manifest("adjust", argv);
  m["algorithm"] = "insga3";
  m["seed"] = o.seed;
  m["config"] = {{"population", o.pop}, {"generations", o.gens}, {"replan_interval", o.replan_interval},
                 {"available_s", o.available_s}, {"da_sl", sc.da_sl}};
  m["wall_clock_s"] = elapsed_s(t0);
  m["artifacts"] = artifacts;
  write_text(dir / "manifest.json", m.dump(2) + "\n");

  out << timeline;
  return failed ? kRuntime : kOk;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

inline int cmd_replay(const std::string& manifest_path, const std::string& out_dir, std::ostream& out, std::ostream& err) {
  Json m;
  try {
    m = Json::parse(read_text(manifest_path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("manifest: malformed JSON: ") + e.what());
  }
  if (!m.contains("argv") || !m.contains("command")) throw ParseError("manifest: missing argv or command");
  auto argv = m["argv"].get<std::vector<std::string>>();
  if (m["command"] == "gen") {
    const std::string name = m.at("artifacts").at(0).get<std::string>();
    argv.insert(argv.end(), {"--out", (fs::path(out_dir) / name).string()});
  } else {
    argv.insert(argv.end(), {"--out-dir", out_dir});
  }
  if (m.contains("instance_hash") && m["command"] != "gen") {
    for (std::size_t i = 0; i + 1 < argv.size(); ++i) {
      if (argv[i] == "--instance" && hex64(instance_hash(read_instance(argv[i + 1]))) != m["instance_hash"]) {
        throw Error(Errc::InvalidConfig, "instance " + argv[i + 1] + " no longer matches the manifest hash");
      }
    }
  }
  return run_cli(argv, out, err);
}

// ---------------------------------------------------------------------------

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-parallel mixed-model disassembly line balancing", "mpmdl"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* g = app.add_subcommand("gen", "generate a synthetic instance");
  g->add_option("--size", gen.size, "small, medium or large")->capture_default_str();
  g->add_option("--seed", gen.seed, "generator seed")->capture_default_str();
  g->add_option("--out", gen.out, "instance JSON path")->required();
  g->add_option("--takt", gen.takt, "takt time in seconds")->capture_default_str()->check(CLI::PositiveNumber);

  SolveOptions solve;
  auto* s = app.add_subcommand("solve", "optimize one instance with one algorithm");
  s->add_option("--instance", solve.instance, "instance JSON")->required();
  s->add_option("--algo", solve.algo, "insga3, nsga3, mopso or nswoa")->capture_default_str();
  s->add_option("--seed", solve.seed, "run seed")->capture_default_str();
  s->add_option("--out-dir", solve.out_dir, "output directory")->required();
  solve.solver.add_to(s);

  CompareOptions cmp;
  auto* c = app.add_subcommand("compare", "run several algorithms over several seeds");
  c->add_option("--instance", cmp.instance, "instance JSON")->required();
  c->add_option("--algos", cmp.algos, "comma separated algorithms")->delimiter(',')->capture_default_str();
  c->add_option("--seeds", cmp.seeds, "comma separated seeds")->delimiter(',')->capture_default_str();
  c->add_option("--out-dir", cmp.out_dir, "output directory")->required();
  cmp.solver.add_to(c);

  AdjustOptions adj;
  auto* a = app.add_subcommand("adjust", "walk a monthly volume scenario");
  a->add_option("--scenario", adj.scenario, "scenario JSON")->required();
  a->add_option("--instance", adj.instance, "task data for the lines (generated when omitted)");
  a->add_option("--size", adj.size, "generated size when no instance is given")->capture_default_str();
  a->add_option("--seed", adj.seed, "seed")->capture_default_str();
  a->add_option("--replan-interval", adj.replan_interval, "months between stage-one re-plans")->capture_default_str();
  a->add_option("--available-s", adj.available_s, "available seconds per line-month")->capture_default_str();
  a->add_option("--pop", adj.pop, "population size")->capture_default_str();
  a->add_option("--gens", adj.gens, "generations")->capture_default_str();
  a->add_option("--out-dir", adj.out_dir, "output directory")->required();

  std::string manifest_path, replay_dir;
  auto* r = app.add_subcommand("replay", "rerun a command from its manifest");
  r->add_option("--manifest", manifest_path, "manifest JSON")->required();
  r->add_option("--out-dir", replay_dir, "output directory")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (g->parsed()) return cmd_gen(gen, out);
    if (s->parsed()) return cmd_solve(solve, out);
    if (c->parsed()) return cmd_compare(cmp, out, err);
    if (a->parsed()) return cmd_adjust(adj, out, err);
    if (r->parsed()) return cmd_replay(manifest_path, replay_dir, out, err);
    return kUsage;
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::Error& e) {
    app.exit(e, out, err);
    return kUsage;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntime;
  }
}

}  // namespace mpmdl::cli
