#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace lsched::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitGuard = 3;

/// Environment variable naming the config file used when --config is absent.
inline constexpr const char* kConfigEnv = "LSCHED_CONFIG";

struct ExperimentSpec {
  std::string command;  // run | equivalence | sweep | bound
  std::string config_path;
  std::vector<std::string> overrides;  // key=value
  std::string output_path;             // empty: stdout
  std::optional<std::uint64_t> seed;
};

/// Parses argv, runs the experiment and returns the process exit code.
/// Diagnostics go to `err` as a single line.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lsched::cli
