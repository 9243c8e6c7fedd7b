#pragma once

#include <string>
#include <vector>

#include <ellshell/suites.hpp>

namespace ellshell {

// Serialization of a verification run. Reports are deterministic for a fixed
// config: the timestamp is the only field that varies between identical runs,
// and callers may pass an empty one to get byte-stable output.
struct RunMeta {
  std::string command = "verify";
  std::string timestamp;  // ISO-8601 UTC, or empty
};

std::string iso_timestamp_utc();

std::string report_json(const RunMeta& meta, const RunConfig& cfg,
                        const std::vector<CheckResult>& results);
std::string report_text(const RunMeta& meta, const RunConfig& cfg,
                        const std::vector<CheckResult>& results);
std::string report_csv(const std::vector<CheckResult>& results);

std::string render_report(const std::string& format, const RunMeta& meta,
                          const RunConfig& cfg, const std::vector<CheckResult>& results);

}  // namespace ellshell
