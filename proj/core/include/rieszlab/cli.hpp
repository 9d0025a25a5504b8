#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rieszlab/config.hpp"

namespace rieszlab::cli {

inline constexpr const char* kToolVersion = "rieszlab 0.1.0";

/// Exit codes: 2 config parse, 3 malformed/invalid spec, 4 missing file,
/// 5 unknown job kind. Execution errors surface as 1 in the driver.
struct CliError : std::runtime_error {
    CliError(int code, const std::string& what) : std::runtime_error(what), exit_code(code) {}
    int exit_code;
};

struct RunRecord {
    std::string config_hash;
    std::string tool_version = kToolVersion;
    double wall_time_s = 0.0;
    std::uint64_t seed = 0;
    std::string kind;
    std::map<std::string, std::string> verdicts;
    std::vector<std::string> artifacts;
    std::string error;  // nonempty when the job failed
};

/// Runs the configured job, writing <out_prefix>.json (+ .csv for sweeps)
/// and <out_prefix>.run.json. Reports and CSVs are byte-stable for a given
/// (config, seed); the run record carries the wall time.
RunRecord run_job(const Config& cfg, const std::string& out_prefix);

void write_run_record(const RunRecord& rec, const std::string& out_prefix);

/// Merges run records and/or earlier summaries into one summary table
/// (<out_prefix>.json / .csv), one row per experiment, sorted by config
/// hash, idempotent under re-merge. Returns the summary JSON text.
std::string report_merge(const std::vector<std::string>& paths, const std::string& out_prefix);

}  // namespace rieszlab::cli
