#include <ellshell/report.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ellshell {

namespace {

constexpr const char* kSchemaVersion = "1";

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

nlohmann::ordered_json config_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["a"] = cfg.a_values;
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  j["h1"] = cfg.h1;
  j["h2"] = cfg.h2;
  j["delta_pole"] = cfg.delta_pole;
  j["suites"] = cfg.suites.empty() ? all_suite_names() : cfg.suites;
  nlohmann::ordered_json tols = nlohmann::ordered_json::object();
  for (const auto& [suite, tol] : cfg.tol_override) tols[suite] = tol;
  j["tol_override"] = tols;
  if (!cfg.op_filter.empty()) j["op"] = cfg.op_filter;
  return j;
}

}  // namespace

std::string iso_timestamp_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string report_json(const RunMeta& meta, const RunConfig& cfg,
                        const std::vector<CheckResult>& results) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = "ellshell";
  j["command"] = meta.command;
  j["timestamp"] = meta.timestamp;
  j["config"] = config_json(cfg);
  int failed = count_failures(results);
  j["summary"] = {{"checks", results.size()},
                  {"passed", results.size() - failed},
                  {"failed", failed}};
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const CheckResult& r : results) {
    nlohmann::ordered_json row;
    row["suite"] = r.suite;
    row["id"] = r.id;
    row["a"] = r.a;
    row["kind"] = r.kind;
    row["value"] = r.value;
    row["threshold"] = r.threshold;
    if (r.kind == "band") row["target"] = r.target;
    row["passed"] = r.passed;
    row["samples"] = r.samples;
    if (!r.note.empty()) row["note"] = r.note;
    rows.push_back(row);
  }
  j["results"] = rows;
  return j.dump(2) + "\n";
}

std::string report_text(const RunMeta& meta, const RunConfig& cfg,
                        const std::vector<CheckResult>& results) {
  std::ostringstream os;
  os << "ellshell " << meta.command;
  if (!meta.timestamp.empty()) os << "  " << meta.timestamp;
  os << "\n";
  os << "a =";
  for (double a : cfg.a_values) os << " " << fmt_double(a);
  os << "  samples = " << cfg.samples << "  seed = " << cfg.seed
     << "  h1 = " << fmt_double(cfg.h1) << "  h2 = " << fmt_double(cfg.h2) << "\n\n";
  for (const CheckResult& r : results) {
    os << (r.passed ? "PASS " : "FAIL ");
    char line[160];
    if (r.kind == "band")
      std::snprintf(line, sizeof line, "%-44s a=%-4g value=%-12.5g in %g+-%g", r.id.c_str(),
                    r.a, r.value, r.target, r.threshold);
    else if (r.kind == "min")
      std::snprintf(line, sizeof line, "%-44s a=%-4g value=%-12.5g >= %g", r.id.c_str(),
                    r.a, r.value, r.threshold);
    else if (r.kind == "info")
      std::snprintf(line, sizeof line, "%-44s a=%-4g value=%-12.5g (recorded)",
                    r.id.c_str(), r.a, r.value);
    else
      std::snprintf(line, sizeof line, "%-44s a=%-4g value=%-12.5g <= %g", r.id.c_str(),
                    r.a, r.value, r.threshold);
    os << line << "\n";
  }
  const int failed = count_failures(results);
  os << "\n" << results.size() << " checks, " << failed << " failed\n";
  return os.str();
}

std::string report_csv(const std::vector<CheckResult>& results) {
  std::ostringstream os;
  os << "suite,id,a,kind,value,threshold,target,passed,samples\n";
  for (const CheckResult& r : results) {
    char line[256];
    std::snprintf(line, sizeof line, "%s,%s,%.17g,%s,%.17g,%.17g,%.17g,%d,%d\n",
                  r.suite.c_str(), r.id.c_str(), r.a, r.kind.c_str(), r.value, r.threshold,
                  r.target, r.passed ? 1 : 0, r.samples);
    os << line;
  }
  return os.str();
}

std::string render_report(const std::string& format, const RunMeta& meta,
                          const RunConfig& cfg, const std::vector<CheckResult>& results) {
  if (format == "json") return report_json(meta, cfg, results);
  if (format == "text") return report_text(meta, cfg, results);
  if (format == "csv") return report_csv(results);
  throw std::invalid_argument("unknown format: " + format);
}

}  // namespace ellshell
