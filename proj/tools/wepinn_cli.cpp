#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wepinn/errors.hpp"
#include "wepinn/experiment.hpp"
#include "wepinn/validation.hpp"

namespace {

struct CommonFlags {
  std::string experiment;
  std::string preset;
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--experiment", f.experiment, "burgers-shock | burgers-rarefaction | burgers-interaction | sod | dambreak");
  cmd->add_option("--preset", f.preset, "desk | paper (default desk)");
  cmd->add_option("--seed", f.seed, "random seed");
  cmd->add_option("--config", f.config, "JSON config file");
  cmd->add_option("--out", f.out, "output directory");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw wepinn::ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Preset first, then the config file, then explicit flags.
wepinn::ExperimentConfig resolve(const CommonFlags& f) {
  std::string text = f.config.empty() ? std::string("{}") : read_file(f.config);
  std::string file_experiment, file_preset;
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.is_object()) {
      file_experiment = j.value("experiment", "");
      file_preset = j.value("preset", "");
    }
  } catch (const nlohmann::json::exception& e) {
    throw wepinn::ConfigError(std::string("config: ") + e.what());
  }
  const std::string experiment = !f.experiment.empty() ? f.experiment : file_experiment;
  if (experiment.empty()) throw wepinn::ConfigError("no experiment given (--experiment or config field)");
  const std::string preset = !f.preset.empty() ? f.preset : !file_preset.empty() ? file_preset : "desk";
  wepinn::ExperimentConfig cfg = wepinn::preset_config(experiment, preset);
  wepinn::apply_config_json(cfg, text);
  cfg.experiment = experiment;
  cfg.preset = preset;
  if (f.seed) cfg.seed = *f.seed;
  if (!f.out.empty()) cfg.out_dir = f.out;
  else if (f.config.empty() || cfg.out_dir == "out") cfg.out_dir = std::filesystem::path("out") / experiment;
  return cfg;
}

void print_table(const std::vector<wepinn::ErrorTableRow>& rows) {
  std::printf("%-9s %-4s %6s %13s %13s %13s\n", "method", "var", "time", "E_L1", "E_L2", "E_Linf");
  for (const auto& r : rows)
    std::printf("%-9s %-4s %6g %13.4e %13.4e %13.4e\n", r.method.c_str(), r.variable.c_str(), r.time,
                r.err.l1, r.err.l2, r.err.linf);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weak-entropy PINN solver for hyperbolic conservation laws"};
  app.require_subcommand(1);

  CommonFlags run_flags, base_flags, table_flags;
  auto* run = app.add_subcommand("run", "train the weak-entropy model and write artifacts");
  add_common(run, run_flags);
  auto* base = app.add_subcommand("baseline", "train the strong-form baseline and write artifacts");
  add_common(base, base_flags);
  auto* table = app.add_subcommand("table", "recompute the error table from a checkpoint");
  add_common(table, table_flags);
  bool table_baseline = false;
  std::string checkpoint;
  table->add_flag("--baseline", table_baseline, "read the baseline checkpoint");
  table->add_option("--checkpoint", checkpoint, "checkpoint path (default: <out>/checkpoint.bin)");

  auto* validate = app.add_subcommand("validate", "run the training-free property suite");
  std::string fault;
  bool skip_oracles = false;
  validate->add_option("--fault-inject", fault, "test hook: corrupt-quadrature")
      ->check(CLI::IsMember({"corrupt-quadrature"}));
  validate->add_flag("--skip-oracles", skip_oracles, "skip finite-volume oracle comparisons");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const auto cfg = resolve(run_flags);
      const auto s = wepinn::run_experiment(cfg);
      print_table(s.errors);
      std::printf("artifacts in %s (%.1f s)\n", cfg.out_dir.string().c_str(), s.seconds);
      if (!s.admissible) std::printf("warning: inadmissible states on the evaluation grid\n");
    } else if (base->parsed()) {
      const auto cfg = resolve(base_flags);
      const auto s = wepinn::run_baseline(cfg);
      print_table(s.errors);
      std::printf("artifacts in %s (%.1f s)\n", cfg.out_dir.string().c_str(), s.seconds);
    } else if (table->parsed()) {
      const auto cfg = resolve(table_flags);
      const std::filesystem::path ckpt =
          !checkpoint.empty() ? std::filesystem::path(checkpoint)
                              : cfg.out_dir / (table_baseline ? "baseline_checkpoint.bin" : "checkpoint.bin");
      const auto rows = wepinn::table_from_checkpoint(cfg, ckpt, table_baseline);
      const auto csv = cfg.out_dir / (table_baseline ? "baseline_errors.csv" : "errors.csv");
      std::filesystem::create_directories(cfg.out_dir);
      wepinn::write_error_csv(csv, rows);
      print_table(rows);
    } else if (validate->parsed()) {
      wepinn::ValidationOptions opts;
      opts.skip_oracles = skip_oracles;
      if (fault == "corrupt-quadrature")
        opts.quadrature_hook = [](wepinn::QuadRule& r) { r.weights.front() *= 1.001; };
      const auto results = wepinn::run_validation(opts);
      int failed = 0;
      for (const auto& r : results) {
        std::printf("%-4s %-36s measured=%-12.4e threshold=%-10.3e %s\n", r.passed ? "PASS" : "FAIL",
                    r.name.c_str(), r.measured, r.threshold, r.detail.c_str());
        failed += !r.passed;
      }
      if (failed) {
        std::printf("%d propert%s failed:", failed, failed == 1 ? "y" : "ies");
        for (const auto& r : results)
          if (!r.passed) std::printf(" %s", r.name.c_str());
        std::printf("\n");
        return 1;
      }
      std::printf("all %zu properties passed\n", results.size());
    }
  } catch (const wepinn::ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const wepinn::TrainingError& e) {
    std::fprintf(stderr, "%s (last good checkpoint kept)\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
