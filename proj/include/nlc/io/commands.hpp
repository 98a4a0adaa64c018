#pragma once

#include <iosfwd>
#include <string>

#include "nlc/error.hpp"
#include "nlc/io/config.hpp"

namespace nlc::io {

// Exit codes: 0 success, 2 configuration error, 3 solver failure, 4 I/O error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitIo = 4;
int exit_code(ErrorKind kind);

// The configured output directory unless SOLVE_OUT is set.
std::string output_dir(const RunConfig& c);

// One simulation: config.txt, diag.csv and snapshots/snap_<step>.txt.
int cmd_run(const std::string& config_path, std::ostream& out, std::ostream& err);
// A continuation family: config.txt, report.json and run_<k>.csv.
int cmd_continuation(const std::string& config_path, std::ostream& out, std::ostream& err);
// Manufactured-solution study: mms.json and a table on `out`.
int cmd_mms(const std::string& case_name, const std::string& config_path, std::ostream& out, std::ostream& err);
// Replays <dir>/snapshots through the diagnostics into diag_replay.csv
// (written to SOLVE_OUT when set, else to <dir>).
int cmd_diagnose(const std::string& dir, std::ostream& out, std::ostream& err);

}  // namespace nlc::io
