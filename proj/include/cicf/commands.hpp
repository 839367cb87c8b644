#pragma once

#include <string>

namespace cicf {

// Experiment commands behind the CLI. Each parses the config at
// config_path, writes its artifacts under out_dir (created if missing) and
// returns the process exit code:
//   0 all checks passed, 2 audit failure, 3 runtime error, 4 config error.

int cmd_run(const std::string& config_path, const std::string& out_dir);
int cmd_check(const std::string& config_path, const std::string& out_dir);
int cmd_slice_profile(const std::string& config_path, const std::string& out_dir);
int cmd_sweep(const std::string& config_path, const std::string& out_dir);

// Shortest round-trip decimal formatting ('.' decimal, locale-free); the
// byte-determinism contract of the trace CSV rests on it.
std::string format_double(double x);

} // namespace cicf
