#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>

#include "lsched/config_io.hpp"
#include "lsched/csv.hpp"
#include "lsched/errors.hpp"
#include "lsched/sim.hpp"

namespace lsched::cli {
namespace {

SystemConfig resolve_config(const ExperimentSpec& spec) {
  ConfigPairs overrides;
  for (const auto& text : spec.overrides) overrides.push_back(parse_override(text));
  if (spec.seed) overrides.emplace_back("rng_seed", std::to_string(*spec.seed));

  std::string path = spec.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv(kConfigEnv); env != nullptr) path = env;
  }
  if (path.empty()) return apply_config(default_config(), overrides);
  return load_config(path, overrides);
}

// Output file or `fallback`; the returned stream outlives the write.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot open output file '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Slotted downlink scheduler: Lambert-Strict power control and scheduling"};
  app.require_subcommand(1);

  ExperimentSpec spec;
  std::string algorithm_name = "lambert_strict";
  std::string trajectory_path;
  std::optional<std::size_t> n_rt;
  std::size_t samples = 1000;
  std::vector<std::size_t> n_rt_values{2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  std::string sweep_algorithms = "both";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", spec.config_path, "key=value config file");
    sub->add_option("--set", spec.overrides, "override a config key, e.g. --set n_rt=8");
    sub->add_option("-o,--output", spec.output_path, "CSV output path (default stdout)");
    sub->add_option("--seed", spec.seed, "override rng_seed");
  };

  auto* run_cmd = app.add_subcommand("run", "simulate and write the metrics CSV row");
  add_common(run_cmd);
  run_cmd->add_option("-a,--algorithm", algorithm_name, "lambert_strict | exhaustive");
  run_cmd->add_option("--trajectory", trajectory_path, "per-slot queue CSV path");

  auto* eq_cmd = app.add_subcommand("equivalence", "compare both schedulers on sampled slots");
  add_common(eq_cmd);
  eq_cmd->add_option("--n-rt", n_rt, "number of real-time users");
  eq_cmd->add_option("--samples", samples, "number of sampled slots");

  auto* sweep_cmd = app.add_subcommand("sweep", "average evaluations per slot versus n_rt");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--n-rt-values", n_rt_values, "n_rt values to sweep")->delimiter(',');
  sweep_cmd->add_option("-a,--algorithm", sweep_algorithms, "both | lambert_strict | exhaustive");

  auto* bound_cmd = app.add_subcommand("bound", "print C1 and the throughput gap bound");
  add_common(bound_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    spec.command = app.get_subcommands().front()->get_name();
    if (spec.command == "equivalence" && n_rt) {
      spec.overrides.push_back("n_rt=" + std::to_string(*n_rt));
    }
    const SystemConfig config = resolve_config(spec);
    Sink sink(spec.output_path, out);

    if (spec.command == "run") {
      const Algorithm algorithm = parse_algorithm(algorithm_name);
      RunOptions options;
      std::unique_ptr<std::ofstream> trajectory;
      if (!trajectory_path.empty()) {
        trajectory = std::make_unique<std::ofstream>(trajectory_path);
        if (!*trajectory) {
          throw std::runtime_error("cannot open trajectory file '" + trajectory_path + "'");
        }
        *trajectory << std::setprecision(csv::kPrecision);
        options.trajectory = trajectory.get();
      }
      csv::write_metrics(sink.get(), lsched::run(config, algorithm, options), algorithm);
    } else if (spec.command == "equivalence") {
      if (config.n_rt > kExhaustiveMaxUsers) {
        throw SizeGuardError("equivalence: n_rt exceeds the exhaustive limit");
      }
      csv::write_equivalence(sink.get(), equivalence_check(config, samples, config.rng_seed));
    } else if (spec.command == "sweep") {
      std::vector<SweepPoint> points;
      auto sweep = [&](Algorithm algorithm) {
        auto part = complexity_sweep(config, n_rt_values, algorithm);
        points.insert(points.end(), part.begin(), part.end());
      };
      if (sweep_algorithms == "both") {
        sweep(Algorithm::kLambertStrict);
        sweep(Algorithm::kExhaustive);
      } else {
        sweep(parse_algorithm(sweep_algorithms));
      }
      csv::write_sweep(sink.get(), points);
    } else {
      csv::write_bound(sink.get(), throughput_gap_bound(config));
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const SizeGuardError& e) {
    err << "error: " << e.what() << '\n';
    return kExitGuard;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace lsched::cli
