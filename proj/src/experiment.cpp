#include "wepinn/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>

#include "json.hpp"
#include "wepinn/errors.hpp"
#include "wepinn/reference.hpp"

namespace wepinn {

using nlohmann::json;

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"burgers-shock", "burgers-rarefaction",
                                                 "burgers-interaction", "sod", "dambreak"};
  return names;
}

namespace {

State scalar(double v) {
  State s(1);
  s[0] = v;
  return s;
}

Domain line(double lo, double hi, double t_end) {
  Domain d;
  d.dim = 1;
  d.x_lo[0] = lo;
  d.x_hi[0] = hi;
  d.t_end = t_end;
  return d;
}

}  // namespace

Benchmark make_benchmark(const std::string& name, double gamma, double g) {
  Benchmark b;
  b.name = name;
  if (name.rfind("burgers-", 0) == 0) {
    const BurgersCase c = parse_burgers_case(name.substr(8));
    b.law = burgers_law();
    b.domain = line(-1.0, 1.0, 1.0);
    b.exact = [c](double x, double t) { return scalar(burgers_exact(c, x, t)); };
    b.table_times = {0.0, 0.5, 1.0};
    b.variables = {{"u", [](const State& u) { return u[0]; }}};
  } else if (name == "sod") {
    EulerParams ep;
    ep.gamma = gamma;
    b.law = euler_law(ep);
    b.domain = line(0.0, 1.0, 0.2);
    RiemannSetup setup;
    setup.law = "euler";
    setup.left = Eigen::Vector3d(1.0, 0.0, 1.0);
    setup.right = Eigen::Vector3d(0.125, 0.0, 0.1);
    setup.x0 = 0.5;
    setup.t_end = 0.2;
    setup.gamma = gamma;
    setup.validate();
    const LawPtr law = b.law;
    b.exact = [setup, law](double x, double t) { return law->to_conservative(sod_exact(setup, x, t)); };
    b.table_times = {0.01, 0.13, 0.2};
    b.variables = {
        {"rho", [](const State& u) { return u[0]; }},
        {"u", [](const State& u) { return u[1] / u[0]; }},
        {"p", [gamma](const State& u) { return (gamma - 1.0) * (u[2] - 0.5 * u[1] * u[1] / u[0]); }},
        {"E", [](const State& u) { return u[2]; }},
    };
  } else if (name == "dambreak") {
    SweParams sp;
    sp.g = g;
    b.law = swe_law(sp);
    b.domain = line(0.0, 1.0, 0.12);
    RiemannSetup setup;
    setup.law = "swe";
    setup.left = Eigen::Vector2d(5.0, 0.0);
    setup.right = Eigen::Vector2d(1.0, 0.0);
    setup.x0 = 0.5;
    setup.t_end = 0.12;
    setup.g = g;
    setup.validate();
    const LawPtr law = b.law;
    b.exact = [setup, law](double x, double t) { return law->to_conservative(stoker_exact(setup, x, t)); };
    b.table_times = {0.0, 0.05, 0.12};
    b.variables = {
        {"h", [](const State& u) { return u[0]; }},
        {"u", [](const State& u) { return u[1] / u[0]; }},
    };
  } else {
    throw ConfigError("unknown experiment: " + name);
  }
  const auto exact = b.exact;
  b.initial = [exact](double x) { return exact(x, 0.0); };
  return b;
}

void ExperimentConfig::validate() const {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), experiment) == names.end())
    throw ConfigError("unknown experiment: " + experiment);
  network.validate();
  train.validate();
  if (quad_points < 1 || quad_points > kMaxQuadPoints) throw ConfigError("quad_points must be in [1, 32]");
  if (tvd_levels != 0 && (tvd_levels < 2 || tvd_points < 2))
    throw ConfigError("tvd: need at least 2 levels and 2 points (or levels = 0 to disable)");
  if (error_points < 1) throw ConfigError("error_points must be positive");
  if (!(gamma > 1.0)) throw ConfigError("gamma must exceed 1");
  if (!(g > 0.0)) throw ConfigError("g must be positive");
  configured_benchmark(*this);
  sampler.validate(configured_benchmark(*this).domain);
}

ExperimentConfig preset_config(const std::string& experiment, const std::string& preset) {
  const Benchmark bench = make_benchmark(experiment);
  ExperimentConfig cfg;
  cfg.experiment = experiment;
  cfg.preset = preset;
  cfg.network.input_dim = 2;
  cfg.network.output_dim = bench.law->components();
  cfg.boundary = bench.default_boundary;
  if (preset == "desk") {
    cfg.network.hidden_layers = 4;
    cfg.network.hidden_width = 40;
    cfg.sampler = SamplerConfig::defaults(bench.domain, 500);
    cfg.train.adam_iters = 5000;
    cfg.train.lbfgs_iters = 200;
    cfg.train.checkpoint_every = 250;
  } else if (preset == "paper") {
    cfg.network.hidden_layers = 8;
    cfg.network.hidden_width = 80;
    cfg.sampler = SamplerConfig::defaults(bench.domain, 1000);
    cfg.train.adam_iters = 20000;
    cfg.train.lbfgs_iters = 2000;
    cfg.train.checkpoint_every = 1000;
  } else {
    throw ConfigError("unknown preset: " + preset);
  }
  cfg.train.lbfgs_volumes = 5000;
  return cfg;
}

namespace {

const char* boundary_name(BoundaryMode m) {
  return m == BoundaryMode::dirichlet_state ? "dirichlet-state" : "network-value";
}

BoundaryMode parse_boundary(const std::string& s) {
  if (s == "dirichlet-state") return BoundaryMode::dirichlet_state;
  if (s == "network-value") return BoundaryMode::network_value;
  throw ConfigError("boundary must be dirichlet-state or network-value");
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items())
    if (!ok.count(key)) throw ConfigError(where + ": unknown field '" + key + "'");
}

template <class T>
void take(const json& j, const char* key, T& target) {
  if (j.contains(key)) target = j.at(key).get<T>();
}

}  // namespace

void apply_config_json(ExperimentConfig& cfg, const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
    check_keys(j, {"experiment", "preset", "seed", "out", "domain", "network", "sampler", "train",
                   "baseline", "quad_points", "boundary", "tvd", "monitor_volumes", "error_points",
                   "gamma", "g"},
               "config");
    take(j, "experiment", cfg.experiment);
    take(j, "preset", cfg.preset);
    take(j, "seed", cfg.seed);
    if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
    bool domain_changed = false;
    if (j.contains("domain")) {
      const json& d = j.at("domain");
      check_keys(d, {"x_lo", "x_hi", "t_end"}, "domain");
      if (d.contains("x_lo")) cfg.x_lo = d.at("x_lo").get<double>();
      if (d.contains("x_hi")) cfg.x_hi = d.at("x_hi").get<double>();
      if (d.contains("t_end")) cfg.t_end = d.at("t_end").get<double>();
      domain_changed = !d.empty();
    }
    if (j.contains("network")) {
      const json& n = j.at("network");
      check_keys(n, {"hidden_layers", "hidden_width"}, "network");
      take(n, "hidden_layers", cfg.network.hidden_layers);
      take(n, "hidden_width", cfg.network.hidden_width);
    }
    bool lengths_given = false;
    if (j.contains("sampler")) {
      const json& s = j.at("sampler");
      check_keys(s, {"n_volumes", "lx_min", "lx_max", "lt_min", "lt_max"}, "sampler");
      take(s, "n_volumes", cfg.sampler.n_volumes);
      for (const char* k : {"lx_min", "lx_max", "lt_min", "lt_max"}) lengths_given |= s.contains(k);
      take(s, "lx_min", cfg.sampler.lx_min);
      take(s, "lx_max", cfg.sampler.lx_max);
      take(s, "lt_min", cfg.sampler.lt_min);
      take(s, "lt_max", cfg.sampler.lt_max);
    }
    if (domain_changed && !lengths_given)
      cfg.sampler = SamplerConfig::defaults(configured_benchmark(cfg).domain, cfg.sampler.n_volumes);
    if (j.contains("train")) {
      const json& t = j.at("train");
      check_keys(t, {"adam_iters", "lbfgs_iters", "adam_lr", "checkpoint_every", "lbfgs_volumes",
                     "clip_norm", "lbfgs_history"},
                 "train");
      take(t, "adam_iters", cfg.train.adam_iters);
      take(t, "lbfgs_iters", cfg.train.lbfgs_iters);
      take(t, "adam_lr", cfg.train.adam_lr);
      take(t, "checkpoint_every", cfg.train.checkpoint_every);
      take(t, "lbfgs_volumes", cfg.train.lbfgs_volumes);
      take(t, "clip_norm", cfg.train.adam.clip_norm);
      take(t, "lbfgs_history", cfg.train.lbfgs.history);
    }
    if (j.contains("baseline")) {
      const json& b = j.at("baseline");
      check_keys(b, {"collocation", "initial_points", "boundary_points"}, "baseline");
      take(b, "collocation", cfg.baseline.collocation);
      take(b, "initial_points", cfg.baseline.initial_points);
      take(b, "boundary_points", cfg.baseline.boundary_points);
    }
    take(j, "quad_points", cfg.quad_points);
    if (j.contains("boundary")) cfg.boundary = parse_boundary(j.at("boundary").get<std::string>());
    if (j.contains("tvd")) {
      const json& t = j.at("tvd");
      check_keys(t, {"levels", "points"}, "tvd");
      take(t, "levels", cfg.tvd_levels);
      take(t, "points", cfg.tvd_points);
    }
    take(j, "monitor_volumes", cfg.monitor_volumes);
    take(j, "error_points", cfg.error_points);
    take(j, "gamma", cfg.gamma);
    take(j, "g", cfg.g);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

std::string config_to_json(const ExperimentConfig& cfg) {
  const Benchmark bench = configured_benchmark(cfg);
  json j = {
      {"experiment", cfg.experiment},
      {"preset", cfg.preset},
      {"seed", cfg.seed},
      {"out", cfg.out_dir.string()},
      {"domain", {{"x_lo", bench.domain.x_lo[0]}, {"x_hi", bench.domain.x_hi[0]}, {"t_end", bench.domain.t_end}}},
      {"network", {{"hidden_layers", cfg.network.hidden_layers}, {"hidden_width", cfg.network.hidden_width}}},
      {"sampler",
       {{"n_volumes", cfg.sampler.n_volumes},
        {"lx_min", cfg.sampler.lx_min},
        {"lx_max", cfg.sampler.lx_max},
        {"lt_min", cfg.sampler.lt_min},
        {"lt_max", cfg.sampler.lt_max}}},
      {"train",
       {{"adam_iters", cfg.train.adam_iters},
        {"lbfgs_iters", cfg.train.lbfgs_iters},
        {"adam_lr", cfg.train.adam_lr},
        {"checkpoint_every", cfg.train.checkpoint_every},
        {"lbfgs_volumes", cfg.train.lbfgs_volumes},
        {"clip_norm", cfg.train.adam.clip_norm},
        {"lbfgs_history", cfg.train.lbfgs.history}}},
      {"baseline",
       {{"collocation", cfg.baseline.collocation},
        {"initial_points", cfg.baseline.initial_points},
        {"boundary_points", cfg.baseline.boundary_points}}},
      {"quad_points", cfg.quad_points},
      {"boundary", boundary_name(cfg.boundary)},
      {"tvd", {{"levels", cfg.tvd_levels}, {"points", cfg.tvd_points}}},
      {"monitor_volumes", cfg.monitor_volumes},
      {"error_points", cfg.error_points},
      {"gamma", cfg.gamma},
      {"g", cfg.g},
  };
  return j.dump(2);
}

Benchmark configured_benchmark(const ExperimentConfig& cfg) {
  Benchmark b = make_benchmark(cfg.experiment, cfg.gamma, cfg.g);
  if (cfg.x_lo) b.domain.x_lo[0] = *cfg.x_lo;
  if (cfg.x_hi) b.domain.x_hi[0] = *cfg.x_hi;
  if (cfg.t_end) b.domain.t_end = *cfg.t_end;
  b.domain.validate();
  std::erase_if(b.table_times, [&](double t) { return t > b.domain.t_end; });
  return b;
}

Problem make_problem(const ExperimentConfig& cfg, const Benchmark& bench) {
  Problem p;
  p.law = bench.law;
  p.domain = bench.domain;
  const auto init = bench.initial;
  p.initial.value = [init](std::span<const double> x) { return init(x[0]); };
  p.boundary.mode = cfg.boundary;
  p.boundary.domain = bench.domain;
  // Boundary data are the exact trace; for waves that stay inside this is the far-field state.
  const auto exact = bench.exact;
  p.boundary.state = [exact](std::span<const double> x, double t) { return exact(x[0], t); };
  p.scaling = InputScaling::box_1d(bench.domain.x_lo[0], bench.domain.x_hi[0], bench.domain.t_end);
  p.sampler = cfg.sampler;
  p.quad_points = cfg.quad_points;
  p.tvd_levels = cfg.tvd_levels;
  p.tvd_points = cfg.tvd_points;
  p.monitor_volumes = cfg.monitor_volumes;
  return p;
}

std::vector<ErrorTableRow> error_table(const Benchmark& bench, const std::string& method,
                                       const ProfileFn& approx, int n_points) {
  const Eigen::VectorXd grid = uniform_grid(bench.domain.x_lo[0], bench.domain.x_hi[0], n_points);
  std::vector<ErrorTableRow> rows;
  for (double t : bench.table_times) {
    std::vector<State> a(n_points), e(n_points);
    for (int i = 0; i < n_points; ++i) {
      a[i] = approx(grid[i], t);
      e[i] = bench.exact(grid[i], t);
    }
    for (const Variable& v : bench.variables) {
      Eigen::VectorXd va(n_points), ve(n_points);
      for (int i = 0; i < n_points; ++i) {
        va[i] = v.extract(a[i]);
        ve[i] = v.extract(e[i]);
      }
      RelativeErrors err;
      try {
        err = relative_norms(va, ve);
      } catch (const ZeroNormError&) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        err = {nan, nan, nan};
      }
      rows.push_back({method, v.name, t, err});
    }
  }
  return rows;
}

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::string fmt_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

}  // namespace

void write_error_csv(const std::filesystem::path& path, const std::vector<ErrorTableRow>& rows) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << "method,variable,time,E_L1,E_L2,E_Linf\n";
  for (const auto& r : rows)
    out << r.method << ',' << r.variable << ',' << fmt_time(r.time) << ',' << fmt(r.err.l1) << ','
        << fmt(r.err.l2) << ',' << fmt(r.err.linf) << '\n';
}

ProfileFn weak_profile(const Problem& problem, const NetworkParams& params) {
  auto ansatz = std::make_shared<Ansatz>(make_ansatz(problem, params));
  return [ansatz](double x, double t) { return ansatz->eval(std::span<const double>(&x, 1), t); };
}

ProfileFn baseline_profile(const Problem& problem, const NetworkParams& params) {
  auto net = std::make_shared<ScaledNetwork>(ScaledNetwork{params, problem.scaling});
  return [net](double x, double t) {
    Eigen::MatrixXd p(2, 1);
    p << x, t;
    return State(net->eval_batch(p).col(0));
  };
}

namespace {

void write_profiles(const std::filesystem::path& path, const Benchmark& bench, const ProfileFn& approx,
                    int n_points) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << "time,x";
  for (const auto& v : bench.variables) out << ',' << v.name << ',' << v.name << "_exact";
  out << '\n';
  const Eigen::VectorXd grid = uniform_grid(bench.domain.x_lo[0], bench.domain.x_hi[0], n_points);
  for (double t : bench.table_times)
    for (int i = 0; i < n_points; ++i) {
      const State a = approx(grid[i], t);
      const State e = bench.exact(grid[i], t);
      out << fmt_time(t) << ',' << fmt(grid[i]);
      for (const auto& v : bench.variables) out << ',' << fmt(v.extract(a)) << ',' << fmt(v.extract(e));
      out << '\n';
    }
}

// Glorot init with the output layer shrunk and centred on the mean initial
// state. A zero output is inadmissible for Euler and shallow water once the
// ramp weights the network.
NetworkParams initial_network(const ExperimentConfig& cfg, const Benchmark& bench) {
  NetworkConfig nc = cfg.network;
  nc.output_dim = bench.law->components();
  NetworkParams p = init_network(nc, cfg.seed);
  const Eigen::VectorXd grid = uniform_grid(bench.domain.x_lo[0], bench.domain.x_hi[0], 1000);
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(nc.output_dim);
  for (double x : grid) mean += bench.initial(x);
  const int last = p.num_layers() - 1;
  p.weight(last) *= 0.1;
  p.bias(last) = mean / static_cast<double>(grid.size());
  return p;
}

double headline_error(const Benchmark& bench, const ProfileFn& approx, double t, int n_points) {
  Benchmark only_t = bench;
  only_t.table_times = {t};
  for (const auto& row : error_table(only_t, "", approx, n_points))
    if (row.variable == bench.variables[bench.headline].name) return row.err.l1;
  return std::numeric_limits<double>::quiet_NaN();
}

void check_admissible(const Benchmark& bench, const ProfileFn& approx, int n_points, RunSummary& s) {
  const Eigen::VectorXd grid = uniform_grid(bench.domain.x_lo[0], bench.domain.x_hi[0], n_points);
  std::vector<double> times = bench.table_times;
  times.push_back(bench.domain.t_end);
  for (double t : times)
    for (int i = 0; i < n_points; ++i)
      if (!bench.law->admissible(approx(grid[i], t))) s.admissible = false;
  Eigen::MatrixXd values(bench.law->components(), n_points);
  for (int i = 0; i < n_points; ++i) values.col(i) = approx(grid[i], bench.domain.t_end);
  s.total_variation_T = total_variation(std::span<const double>(grid.data(), grid.size()), values);
}

void write_summary(const std::filesystem::path& path, const RunSummary& s, const ExperimentConfig& cfg) {
  json j;
  j["experiment"] = cfg.experiment;
  j["method"] = s.method;
  j["seed"] = cfg.seed;
  j["diverged"] = s.train.diverged;
  j["admissible"] = s.admissible;
  j["total_variation_T"] = s.total_variation_T;
  j["seconds"] = s.seconds;
  if (!s.train.history.empty()) {
    const HistoryRow& last = s.train.history.back();
    j["final"] = {{"cons", last.cons}, {"ent", last.ent}, {"tvd", last.tvd}, {"total", last.total}};
  }
  if (!s.diagnostic.empty()) {
    j["bound_diagnostic"] = {{"checkpoints", s.diagnostic.size()},
                             {"spearman", s.correlation ? json(*s.correlation) : json(nullptr)},
                             {"k_hat", std::isfinite(s.k_hat) ? json(s.k_hat) : json("inf")}};
  }
  json errs = json::array();
  for (const auto& r : s.errors)
    errs.push_back({{"variable", r.variable}, {"time", r.time}, {"E_L1", fmt(r.err.l1)},
                    {"E_L2", fmt(r.err.l2)}, {"E_Linf", fmt(r.err.linf)}});
  j["errors"] = errs;
  std::ofstream(path) << j.dump(2) << '\n';
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

RunSummary run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const Benchmark bench = configured_benchmark(cfg);
  const Problem problem = make_problem(cfg, bench);
  std::filesystem::create_directories(cfg.out_dir);
  std::ofstream(cfg.out_dir / "config.json") << config_to_json(cfg) << '\n';

  TrainConfig tc = cfg.train;
  tc.seed = cfg.seed;
  tc.checkpoint_path = cfg.out_dir / "checkpoint.bin";
  NetworkParams init = initial_network(cfg, bench);
  save_checkpoint(tc.checkpoint_path, init);

  RunSummary s;
  s.method = "WE-PINNs";
  s.train = train(tc, problem, std::move(init));
  write_history_csv(cfg.out_dir / "history.csv", s.train.history);
  if (s.train.diverged) throw TrainingError("training diverged: " + s.train.message);

  const ProfileFn approx = weak_profile(problem, s.train.params);
  s.errors = error_table(bench, s.method, approx, cfg.error_points);
  write_error_csv(cfg.out_dir / "errors.csv", s.errors);
  write_profiles(cfg.out_dir / "profiles.csv", bench, approx, cfg.error_points);
  check_admissible(bench, approx, cfg.error_points, s);

  if (s.train.checkpoints.size() >= 5) {
    std::vector<BoundSample> samples;
    for (const Checkpoint& c : s.train.checkpoints) {
      NetworkParams p = s.train.params;
      p.set_flat(c.params);
      const double err = headline_error(bench, weak_profile(problem, p), bench.domain.t_end, cfg.error_points);
      samples.push_back({c.cons, c.ent, err});
    }
    const BoundDiagnostic d = l1_bound_diagnostic(samples);
    for (std::size_t k = 0; k < samples.size(); ++k)
      s.diagnostic.push_back({s.train.checkpoints[k].iter, samples[k].l_cons, samples[k].l_ent, d.bound[k],
                              samples[k].error});
    s.correlation = d.correlation;
    s.k_hat = d.k_hat;
    std::ofstream out(cfg.out_dir / "diagnostic.csv");
    out << "iter,cons,ent,bound,E_L1\n";
    for (const auto& r : s.diagnostic)
      out << r.iter << ',' << fmt(r.cons) << ',' << fmt(r.ent) << ',' << fmt(r.bound) << ',' << fmt(r.error) << '\n';
  }
  s.seconds = seconds_since(start);
  write_summary(cfg.out_dir / "summary.json", s, cfg);
  return s;
}

RunSummary run_baseline(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const Benchmark bench = configured_benchmark(cfg);
  const Problem problem = make_problem(cfg, bench);
  std::filesystem::create_directories(cfg.out_dir);

  TrainConfig tc = cfg.train;
  tc.seed = cfg.seed;
  tc.checkpoint_path = cfg.out_dir / "baseline_checkpoint.bin";
  NetworkParams init = initial_network(cfg, bench);
  save_checkpoint(tc.checkpoint_path, init);

  RunSummary s;
  s.method = "PINNs";
  s.train = train_baseline(tc, cfg.baseline, problem, std::move(init));
  write_history_csv(cfg.out_dir / "baseline_history.csv", s.train.history);
  if (s.train.diverged) throw TrainingError("baseline diverged: " + s.train.message);

  const ProfileFn approx = baseline_profile(problem, s.train.params);
  s.errors = error_table(bench, s.method, approx, cfg.error_points);
  write_error_csv(cfg.out_dir / "baseline_errors.csv", s.errors);
  write_profiles(cfg.out_dir / "baseline_profiles.csv", bench, approx, cfg.error_points);
  check_admissible(bench, approx, cfg.error_points, s);
  s.seconds = seconds_since(start);
  write_summary(cfg.out_dir / "baseline_summary.json", s, cfg);
  return s;
}

std::vector<ErrorTableRow> table_from_checkpoint(const ExperimentConfig& cfg,
                                                 const std::filesystem::path& checkpoint,
                                                 bool baseline) {
  cfg.validate();
  const Benchmark bench = configured_benchmark(cfg);
  const Problem problem = make_problem(cfg, bench);
  const NetworkParams params = load_checkpoint(checkpoint);
  if (params.input_dim() != 2 || params.output_dim() != bench.law->components())
    throw ConfigError("checkpoint shape does not match experiment " + cfg.experiment);
  const ProfileFn approx = baseline ? baseline_profile(problem, params) : weak_profile(problem, params);
  return error_table(bench, baseline ? "PINNs" : "WE-PINNs", approx, cfg.error_points);
}

}  // namespace wepinn
