#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <ellshell/report.hpp>

namespace {

struct Opts {
  std::vector<double> a;
  int samples = 200;
  std::uint64_t seed = 42;
  double h1 = ellshell::kDefaultH1;
  double h2 = ellshell::kDefaultH2;
  double delta_pole = ellshell::kDefaultPoleExclusion;
  std::vector<std::string> suites;
  std::string op;
  std::string field = "rotation";
  std::string scenario;
  std::string format = "text";
  std::string out;
  std::string grid = "16x32";
  double tol_geometry = 0, tol_identities = 0, tol_boundary = 0, tol_operators = 0,
         tol_limits = 0;
};

struct TolOpts {
  CLI::Option* geometry = nullptr;
  CLI::Option* identities = nullptr;
  CLI::Option* boundary = nullptr;
  CLI::Option* operators_ = nullptr;
  CLI::Option* limits = nullptr;
};

TolOpts add_common(CLI::App* cmd, Opts& o) {
  cmd->add_option("--a", o.a, "ellipsoid parameter, repeatable")->delimiter(',');
  cmd->add_option("--samples", o.samples, "samples per check");
  cmd->add_option("--seed", o.seed, "master RNG seed");
  cmd->add_option("--h1", o.h1, "first-derivative FD step");
  cmd->add_option("--h2", o.h2, "oracle stencil step");
  cmd->add_option("--delta-pole", o.delta_pole, "pole exclusion half-angle");
  cmd->add_option("--suites", o.suites, "subset of suites to run")
      ->delimiter(',')
      ->check(CLI::IsMember(ellshell::all_suite_names()));
  cmd->add_option("--op", o.op, "restrict operator checks / select eval operator");
  cmd->add_option("--field", o.field, "field preset for eval");
  cmd->add_option("--scenario", o.scenario, "thin-shell scenario for eval");
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"json", "text", "csv"}));
  cmd->add_option("--out", o.out, "write output to a file instead of stdout");
  cmd->add_option("--grid", o.grid, "eval grid, NxM in (phi, theta)");
  TolOpts t;
  t.geometry = cmd->add_option("--tol.geometry", o.tol_geometry, "geometry suite tolerance");
  t.identities =
      cmd->add_option("--tol.identities", o.tol_identities, "identities suite tolerance");
  t.boundary = cmd->add_option("--tol.boundary", o.tol_boundary, "boundary suite tolerance");
  t.operators_ =
      cmd->add_option("--tol.operators", o.tol_operators, "operators suite tolerance");
  t.limits = cmd->add_option("--tol.limits", o.tol_limits, "limits suite tolerance");
  return t;
}

ellshell::RunConfig to_config(const Opts& o, const TolOpts& t) {
  ellshell::RunConfig cfg;
  if (!o.a.empty()) cfg.a_values = o.a;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.h1 = o.h1;
  cfg.h2 = o.h2;
  cfg.delta_pole = o.delta_pole;
  cfg.suites = o.suites;
  cfg.op_filter = o.op;
  if (t.geometry->count()) cfg.tol_override["geometry"] = o.tol_geometry;
  if (t.identities->count()) cfg.tol_override["identities"] = o.tol_identities;
  if (t.boundary->count()) cfg.tol_override["boundary"] = o.tol_boundary;
  if (t.operators_->count()) cfg.tol_override["operators"] = o.tol_operators;
  if (t.limits->count()) cfg.tol_override["limits"] = o.tol_limits;
  return cfg;
}

void emit(const std::string& text, const std::string& out_path, const std::string& summary) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << text;
    if (!summary.empty()) std::cout << summary << "\n";
  }
}

void parse_grid(const std::string& s, int& n, int& m) {
  if (std::sscanf(s.c_str(), "%dx%d", &n, &m) != 2 || n < 1 || m < 1)
    throw std::runtime_error("bad --grid, expected NxM: " + s);
}

int run_verify(const Opts& o, const TolOpts& t) {
  const ellshell::RunConfig cfg = to_config(o, t);
  const std::vector<ellshell::CheckResult> results = ellshell::run_all(cfg);
  ellshell::RunMeta meta;
  meta.command = "verify";
  meta.timestamp = ellshell::iso_timestamp_utc();
  const int failed = ellshell::count_failures(results);
  char summary[64];
  std::snprintf(summary, sizeof summary, "%zu checks, %d failed", results.size(), failed);
  emit(ellshell::render_report(o.format, meta, cfg, results), o.out, summary);
  return failed == 0 ? 0 : 1;
}

// Grid evaluation of either an operator (both routes) or a scenario replay.
int run_eval(const Opts& o, const TolOpts& t) {
  const ellshell::RunConfig cfg = to_config(o, t);
  const ellshell::EllipsoidParams par{cfg.a_values.front()};
  int gn = 0, gm = 0;
  parse_grid(o.grid, gn, gm);
  const ellshell::TangentField u = ellshell::preset_field(par, o.field);

  std::vector<std::string> cols;
  std::vector<std::vector<double>> rows;
  const double d = cfg.delta_pole;
  if (!o.scenario.empty()) {
    const ellshell::Scenario s = ellshell::parse_scenario(o.scenario);
    cols = {"phi", "theta", "oracle1", "oracle2", "intrinsic1", "intrinsic2", "residual"};
    for (int i = 0; i < gn; ++i)
      for (int j = 0; j < gm; ++j) {
        const double phi = d + (M_PI - 2 * d) * (i + 0.5) / gn;
        const double th = -M_PI + 2 * M_PI * (j + 0.5) / gm;
        const ellshell::ReplayResult r =
            ellshell::replay(par, s, u, {phi, th}, cfg.h1, cfg.h2, 2);
        rows.push_back({phi, th, r.oracle.c1, r.oracle.c2, r.intrinsic.c1, r.intrinsic.c2,
                        r.residual});
      }
  } else {
    const ellshell::OperatorKind k = ellshell::parse_operator(o.op.empty() ? "bochner" : o.op);
    cols = {"phi", "theta", "u1", "u2", "op1", "op2", "route_gap"};
    for (int i = 0; i < gn; ++i)
      for (int j = 0; j < gm; ++j) {
        const double phi = d + (M_PI - 2 * d) * (i + 0.5) / gn;
        const double th = -M_PI + 2 * M_PI * (j + 0.5) / gm;
        const ellshell::TanVec st =
            ellshell::apply_operator(par, k, ellshell::Route::Structural, u, {phi, th}, cfg.h1);
        const ellshell::TanVec co = ellshell::apply_operator(
            par, k, ellshell::Route::Coefficient, u, {phi, th}, cfg.h1);
        rows.push_back({phi, th, u.c1(phi, th), u.c2(phi, th), st.c1, st.c2,
                        ellshell::norm(st - co)});
      }
  }

  std::string text;
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["command"] = "eval";
    j["a"] = par.a;
    j["field"] = o.field;
    if (!o.scenario.empty())
      j["scenario"] = o.scenario;
    else
      j["op"] = o.op.empty() ? "bochner" : o.op;
    j["columns"] = cols;
    j["rows"] = rows;
    text = j.dump(2) + "\n";
  } else {
    std::string sep = (o.format == "csv") ? "," : "  ";
    for (size_t i = 0; i < cols.size(); ++i)
      text += cols[i] + (i + 1 < cols.size() ? sep : "\n");
    for (const auto& row : rows) {
      for (size_t i = 0; i < row.size(); ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", row[i]);
        text += buf;
        text += (i + 1 < row.size() ? sep : "\n");
      }
    }
  }
  emit(text, o.out, "wrote " + std::to_string(rows.size()) + " rows");
  return 0;
}

// Per-a summary across the selected suites.
int run_sweep(const Opts& o, const TolOpts& t) {
  const ellshell::RunConfig base = to_config(o, t);
  struct Row {
    double a;
    std::string suite;
    int checks, failed;
    double worst_ratio;
    std::string worst_id;
  };
  std::vector<Row> rows;
  int total_failed = 0;
  const std::vector<std::string> suites =
      base.suites.empty() ? ellshell::all_suite_names() : base.suites;
  for (double a : base.a_values) {
    ellshell::RunConfig cfg = base;
    cfg.a_values = {a};
    for (const std::string& s : suites) {
      const auto results = ellshell::run_suite(s, cfg);
      Row row{a, s, static_cast<int>(results.size()), 0, 0.0, ""};
      for (const auto& r : results) {
        if (!r.passed) ++row.failed;
        double ratio = 0.0;
        if (r.kind == "max")
          ratio = r.threshold > 0 ? r.value / r.threshold : 0.0;
        else if (r.kind == "min")
          ratio = r.value != 0 ? r.threshold / r.value : 1e300;
        else if (r.kind == "band")
          ratio = r.threshold > 0 ? std::fabs(r.value - r.target) / r.threshold : 0.0;
        if (ratio > row.worst_ratio) {
          row.worst_ratio = ratio;
          row.worst_id = r.id;
        }
      }
      total_failed += row.failed;
      rows.push_back(row);
    }
  }

  std::string text;
  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["command"] = "sweep";
    j["timestamp"] = ellshell::iso_timestamp_utc();
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Row& r : rows)
      arr.push_back({{"a", r.a},
                     {"suite", r.suite},
                     {"checks", r.checks},
                     {"failed", r.failed},
                     {"worst_ratio", r.worst_ratio},
                     {"worst_id", r.worst_id}});
    j["rows"] = arr;
    text = j.dump(2) + "\n";
  } else {
    const char* sep = (o.format == "csv") ? "," : "  ";
    text = std::string("a") + sep + "suite" + sep + "checks" + sep + "failed" + sep +
           "worst_ratio" + sep + "worst_id\n";
    for (const Row& r : rows) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%g%s%s%s%d%s%d%s%.4g%s%s\n", r.a, sep,
                    r.suite.c_str(), sep, r.checks, sep, r.failed, sep, r.worst_ratio, sep,
                    r.worst_id.c_str());
      text += buf;
    }
  }
  emit(text, o.out, std::to_string(total_failed) + " failed");
  return total_failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ellipsoid shell calculus: verification suites, operator evaluation, sweeps"};
  app.require_subcommand(1);

  // The config option lives on the top-level app; fallthrough lets it appear
  // after the subcommand name too.  Keys are scoped per subcommand: either a
  // [verify] section or dotted verify.samples = ... form.  Flags win over file.
  app.set_config("--config", "",
                 "INI config file; keys live in a [verify]/[eval]/[sweep] section "
                 "(or dotted: verify.samples = 30); command-line flags win");

  Opts o;
  CLI::App* verify = app.add_subcommand("verify", "run verification suites");
  CLI::App* eval = app.add_subcommand("eval", "evaluate an operator or scenario on a grid");
  CLI::App* sweep = app.add_subcommand("sweep", "per-a pass/fail summary across suites");
  for (CLI::App* sub : {verify, eval, sweep}) sub->fallthrough();
  const TolOpts tv = add_common(verify, o);
  const TolOpts te = add_common(eval, o);
  const TolOpts ts = add_common(sweep, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(verify)) return run_verify(o, tv);
    if (app.got_subcommand(eval)) return run_eval(o, te);
    return run_sweep(o, ts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
