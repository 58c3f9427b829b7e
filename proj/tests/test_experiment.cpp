#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "wepinn/errors.hpp"
#include "wepinn/experiment.hpp"

using namespace wepinn;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Drops the trailing wall_ms column.
std::string strip_wall(const std::string& csv) {
  std::stringstream in(csv), out;
  std::string line;
  while (std::getline(in, line)) out << line.substr(0, line.rfind(',')) << '\n';
  return out.str();
}

ExperimentConfig tiny(const std::string& experiment, const fs::path& out) {
  ExperimentConfig cfg = preset_config(experiment, "desk");
  cfg.out_dir = out;
  cfg.seed = 7;
  cfg.network.hidden_layers = 1;
  cfg.network.hidden_width = 6;
  cfg.sampler.n_volumes = 20;
  cfg.train.adam_iters = 6;
  cfg.train.lbfgs_iters = 3;
  cfg.train.lbfgs_volumes = 30;
  cfg.train.checkpoint_every = 2;
  cfg.tvd_levels = 3;
  cfg.tvd_points = 16;
  cfg.monitor_volumes = 20;
  cfg.error_points = 100;
  cfg.baseline.collocation = 64;
  cfg.baseline.initial_points = 16;
  cfg.baseline.boundary_points = 8;
  return cfg;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("wepinn_unit_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("benchmark registry") {
  CHECK(experiment_names().size() == 5);
  for (const std::string& name : experiment_names()) {
    const Benchmark b = make_benchmark(name);
    CHECK(b.name == name);
    CHECK(!b.table_times.empty());
    for (double x : {b.domain.x_lo[0] + 0.01, 0.5 * (b.domain.x_lo[0] + b.domain.x_hi[0])})
      CHECK((b.exact(x, 0.0) - b.initial(x)).norm() == 0.0);
  }
  CHECK(make_benchmark("burgers-shock").table_times == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(make_benchmark("sod").table_times == std::vector<double>{0.01, 0.13, 0.2});
  CHECK(make_benchmark("sod").variables.size() == 4);
  CHECK(make_benchmark("dambreak").variables.size() == 2);
  CHECK_THROWS_AS(make_benchmark("kelvin-helmholtz"), ConfigError);
}

TEST_CASE("presets") {
  const ExperimentConfig d = preset_config("burgers-shock", "desk");
  CHECK(d.network.hidden_layers == 4);
  CHECK(d.network.hidden_width == 40);
  CHECK(d.sampler.n_volumes == 500);
  CHECK(d.train.adam_iters == 5000);
  const ExperimentConfig p = preset_config("sod", "paper");
  CHECK(p.network.hidden_layers == 8);
  CHECK(p.network.hidden_width == 80);
  CHECK(p.sampler.n_volumes == 1000);
  CHECK(p.train.adam_iters == 20000);
  CHECK(p.train.lbfgs_iters == 2000);
  CHECK_THROWS_AS(preset_config("sod", "huge"), ConfigError);
}

TEST_CASE("config JSON: overrides, strict keys, round trip") {
  ExperimentConfig cfg = preset_config("sod", "desk");
  apply_config_json(cfg, R"({"seed": 3, "network": {"hidden_width": 12}, "train": {"adam_iters": 0},
                             "boundary": "network-value", "domain": {"t_end": 0.1}})");
  CHECK(cfg.seed == 3);
  CHECK(cfg.network.hidden_width == 12);
  CHECK(cfg.network.hidden_layers == 4);
  CHECK(cfg.train.adam_iters == 0);
  CHECK(cfg.boundary == BoundaryMode::network_value);
  CHECK(cfg.t_end == 0.1);
  CHECK_NOTHROW(cfg.validate());

  ExperimentConfig back = preset_config("burgers-shock", "desk");
  apply_config_json(back, config_to_json(cfg));
  CHECK(nlohmann::json::parse(config_to_json(back)) == nlohmann::json::parse(config_to_json(cfg)));

  ExperimentConfig bad = preset_config("sod", "desk");
  CHECK_THROWS_AS(apply_config_json(bad, R"({"sede": 3})"), ConfigError);
  CHECK_THROWS_AS(apply_config_json(bad, R"({"network": {"depth": 3}})"), ConfigError);
  CHECK_THROWS_AS(apply_config_json(bad, R"({"boundary": "reflective"})"), ConfigError);
  CHECK_THROWS_AS(apply_config_json(bad, "{not json"), ConfigError);
  CHECK_THROWS_AS(apply_config_json(bad, R"({"seed": "three"})"), ConfigError);
  bad.quad_points = 40;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("error table schema and exact ansatz start") {
  const Benchmark b = make_benchmark("burgers-shock");
  const ProfileFn exact = [&](double x, double t) { return b.exact(x, t); };
  const auto rows = error_table(b, "exact", exact, 200);
  CHECK(rows.size() == 3);
  for (const auto& r : rows) CHECK(r.err.l1 == 0.0);
  const fs::path dir = scratch("table");
  fs::create_directories(dir);
  write_error_csv(dir / "e.csv", rows);
  const std::string csv = slurp(dir / "e.csv");
  CHECK(csv.rfind("method,variable,time,E_L1,E_L2,E_Linf\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("short runs are deterministic and write every artifact") {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  const RunSummary ra = run_experiment(tiny("burgers-shock", a));
  run_experiment(tiny("burgers-shock", b));
  for (const char* f : {"config.json", "checkpoint.bin", "history.csv", "errors.csv", "profiles.csv",
                        "diagnostic.csv", "summary.json"})
    CHECK(fs::exists(a / f));
  CHECK(strip_wall(slurp(a / "history.csv")) == strip_wall(slurp(b / "history.csv")));
  CHECK(slurp(a / "errors.csv") == slurp(b / "errors.csv"));
  CHECK(slurp(a / "checkpoint.bin") == slurp(b / "checkpoint.bin"));
  CHECK(slurp(a / "history.csv").rfind("iter,cons,ent,tvd,total,grad_norm,wall_ms\n", 0) == 0);
  // The ansatz reproduces the initial condition.
  for (const auto& r : ra.errors)
    if (r.time == 0.0) CHECK(r.err.l1 == 0.0);

  const auto again = table_from_checkpoint(tiny("burgers-shock", a), a / "checkpoint.bin", false);
  REQUIRE(again.size() == ra.errors.size());
  for (std::size_t i = 0; i < again.size(); ++i) CHECK(again[i].err.l1 == ra.errors[i].err.l1);
}

TEST_CASE("adam_iters = 0 is a valid run") {
  ExperimentConfig cfg = tiny("sod", scratch("zero"));
  cfg.train.adam_iters = 0;
  cfg.train.lbfgs_iters = 0;
  const RunSummary s = run_experiment(cfg);
  CHECK(s.errors.size() == 12);
  CHECK(s.train.history.empty());
}

TEST_CASE("baseline tables share the schema") {
  const fs::path dir = scratch("baseline");
  const RunSummary s = run_baseline(tiny("dambreak", dir));
  CHECK(s.method == "PINNs");
  CHECK(s.errors.size() == 6);
  const std::string csv = slurp(dir / "baseline_errors.csv");
  CHECK(csv.rfind("method,variable,time,E_L1,E_L2,E_Linf\n", 0) == 0);
  CHECK(csv.find("\nPINNs,h,0,") != std::string::npos);
}
