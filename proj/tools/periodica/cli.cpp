#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "bench.hpp"
#include "periodica/io.hpp"
#include "periodica/periodica.hpp"
#include "pipeline.hpp"

namespace periodica::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::optional<double> to_double(std::string_view s) {
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<std::int64_t> to_int(std::string_view s) {
  std::int64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<std::uint64_t> env_seed() {
  const char* text = std::getenv("PERIODICA_SEED");
  if (!text || !*text) return std::nullopt;
  std::uint64_t v = 0;
  const std::string_view s(text);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) throw UsageError("PERIODICA_SEED must be an integer");
  return v;
}

AnnotatedDiagram diagram_for(const Signal& s, const std::string& domain) {
  return domain == "circle" ? diagram_circle(s) : diagram_interval(s);
}

void emit(std::ostream& out, const std::optional<std::string>& path, const std::string& text) {
  if (!path) {
    out << text << '\n';
    return;
  }
  std::ofstream f(*path);
  if (!f) throw ConfigError("cannot write '" + *path + "'");
  f << text << '\n';
}

// --- subcommands ---------------------------------------------------------------

struct PersistenceArgs {
  std::string input;
  std::string domain = "interval";
  std::optional<std::string> output;
};

void cmd_persistence(const PersistenceArgs& a, std::ostream& out) {
  const auto s = io::read_signal_csv(std::filesystem::path(a.input));
  emit(out, a.output, io::diagram_to_json(diagram_for(s, a.domain)));
}

struct EstimateArgs {
  std::string input;
  std::string method;
  std::string domain = "interval";
  bool detrend = false;
  double window = 5.0;
};

EstimatorReport estimate(const Signal& s, const AnnotatedDiagram& d, std::string_view method) {
  const auto colon = method.find(':');
  const auto name = method.substr(0, colon);
  const std::optional<std::string_view> param =
      colon == std::string_view::npos ? std::nullopt : std::optional(method.substr(colon + 1));

  if (name == "auto") {
    if (param) throw UsageError("method 'auto' takes no parameter");
    return n_hat_auto(d);
  }
  if (name == "ball" || name == "cluster") {
    if (!param) throw UsageError("method '" + std::string(name) + "' needs a scale, e.g. " + std::string(name) + ":0.1");
    const auto tau = to_double(*param);
    if (!tau || !(*tau > 0)) throw UsageError("scale must be a positive number");
    if (name == "ball") return {n_hat_ball(d, *tau), EstimatorMethod::ball, *tau, std::nullopt};
    return {n_hat_cluster(d, *tau), EstimatorMethod::cluster, *tau, std::nullopt};
  }
  if (name == "exact") {
    double tol = 0.0;
    if (param) {
      const auto t = to_double(*param);
      if (!t || !(*t >= 0)) throw UsageError("exact tolerance must be a non-negative number");
      tol = *t;
    }
    return {n_exact(to_measure(d, tol)), EstimatorMethod::exact, std::nullopt, std::nullopt};
  }
  if (name == "zc") {
    if (!param) throw UsageError("method 'zc' needs crossings per period, e.g. zc:2");
    const auto k = to_int(*param);
    if (!k || *k < 2 || *k % 2 != 0) throw UsageError("crossings per period must be an even integer >= 2");
    return {zero_crossings_estimate(s, *k), EstimatorMethod::zero_crossings, std::nullopt, std::nullopt};
  }
  throw UsageError("unknown method '" + std::string(method) + "'");
}

void cmd_estimate(const EstimateArgs& a, std::ostream& out) {
  // Validate the method before touching the input so usage errors win.
  if (a.method.empty()) throw UsageError("--method is required");
  const auto raw = io::read_signal_csv(std::filesystem::path(a.input));
  const Signal s = a.detrend ? detrend_median(raw, a.window) : raw;
  emit(out, std::nullopt, io::report_to_json(estimate(s, diagram_for(s, a.domain), a.method)));
}

struct OdometryArgs {
  std::string input;
  std::string periods = "auto";
  std::string tau = "auto";
  double circumference = kDefaultCircumference;
  std::optional<std::string> reference;
  std::optional<std::string> truth;
  double window = 5.0;
  bool no_detrend = false;
  std::optional<std::string> output;
};

void cmd_odometry(const OdometryArgs& a, std::ostream& out) {
  OdometryOptions opt;
  if (a.periods != "auto") {
    const auto n = to_int(a.periods);
    if (!n || *n < 1) throw UsageError("--periods must be a positive integer or 'auto'");
    opt.periods = *n;
  }
  if (a.tau != "auto") {
    const auto t = to_double(a.tau);
    if (!t || !(*t > 0)) throw UsageError("--tau must be a positive number or 'auto'");
    opt.tau = *t;
  }
  if (a.reference && a.truth) throw UsageError("--reference and --truth are mutually exclusive");
  opt.circumference = a.circumference;
  opt.detrend = !a.no_detrend;
  opt.window_seconds = a.window;

  const auto s = io::read_signal_csv(std::filesystem::path(a.input));
  std::function<double(double)> reference;
  if (a.reference) {
    auto ref = std::make_shared<Signal>(io::read_signal_csv(std::filesystem::path(*a.reference)));
    reference = [ref](double t) { return (*ref)(std::clamp(t, ref->t_begin(), ref->t_end())); };
  } else if (a.truth) {
    reference = truth_reference(io::reparam_from_json(io::read_text(*a.truth)), a.circumference);
  }
  const auto outcome = run_odometry(s, opt, reference);

  json j{{"odometry", json::parse(io::odometry_to_json(outcome.result))}};
  j["estimate"] = outcome.estimate ? json::parse(io::report_to_json(*outcome.estimate)) : json(nullptr);
  j["metrics"] = outcome.metrics ? json::parse(io::metrics_to_json(*outcome.metrics)) : json(nullptr);
  emit(out, a.output, j.dump());
}

struct BenchArgs {
  std::optional<std::string> config;
  std::string output;
  unsigned threads = 0;
};

void cmd_bench(const BenchArgs& a) {
  ExperimentConfig cfg = a.config ? experiment_config_from_json(io::read_text(*a.config)) : ExperimentConfig{};
  if (const auto s = env_seed()) cfg.seed = *s;
  const unsigned threads = a.threads ? a.threads : std::max(1u, std::thread::hardware_concurrency());
  const auto rows = run_benchmark(cfg, threads);
  std::ofstream f(a.output);
  if (!f) throw ConfigError("cannot write '" + a.output + "'");
  write_bench_csv(f, rows);
}

struct BoundArgs {
  std::string kind;
  std::optional<double> kappa, tau, sigma, l, omega, c;
  std::optional<std::string> template_id;
  std::int64_t periods = 1;
  double amplitude = 0.0;
  int harmonic = 1;
};

void cmd_bound(const BoundArgs& a, std::ostream& out) {
  BoundInputs in{};
  if (a.kind == "gp") {
    if (!a.l) throw UsageError("bound gp needs --l");
    if (a.kappa) {
      if (a.tau || a.sigma) throw UsageError("give either --kappa or --tau with --sigma");
      in.sigma = 1.0;
      in.tau = 2.0 * *a.kappa;
    } else {
      if (!a.tau || !a.sigma) throw UsageError("bound gp needs --kappa, or --tau and --sigma");
      in.tau = *a.tau;
      in.sigma = *a.sigma;
    }
    in.l = *a.l;
    emit(out, std::nullopt,
         io::bound_to_json("gp", in, bound_gaussian_process(in, false), bound_gaussian_process(in, true)));
    return;
  }
  if (!a.tau || !a.sigma || !a.omega) throw UsageError("bound white needs --tau, --sigma and --omega");
  in.tau = *a.tau;
  in.sigma = *a.sigma;
  in.omega = *a.omega;
  if (a.c && a.template_id) throw UsageError("give either --c-f-gamma or --template");
  if (a.c) in.c_f_gamma = *a.c;
  else if (a.template_id)
    in.c_f_gamma = c_f_gamma(builtin_template(*a.template_id), SmoothReparam(a.periods, a.amplitude, a.harmonic));
  emit(out, std::nullopt, io::bound_to_json("white", in, bound_white_noise(in, false), bound_white_noise(in, true)));
}

struct SimulateArgs {
  SimulationParams params;
  std::optional<std::uint64_t> seed;
  std::string output;
};

void cmd_simulate(SimulateArgs a) {
  if (a.seed) a.params.seed = *a.seed;
  else if (const auto s = env_seed()) a.params.seed = *s;
  const auto sim = simulate(a.params);
  io::write_signal_csv(std::filesystem::path(a.output), sim.signal);
  std::ofstream f(a.output + ".truth.json");
  if (!f) throw ConfigError("cannot write '" + a.output + ".truth.json'");
  f << io::reparam_to_json(sim.truth) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Period counting and odometry from periodic signals via sublevel-set persistence", "periodica"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "periodica 0.1.0");

  const std::vector<std::string> domains{"interval", "circle"};

  PersistenceArgs pa;
  auto* persistence = app.add_subcommand("persistence", "Annotated persistence diagram of a signal CSV");
  persistence->add_option("-i,--input", pa.input, "Signal CSV (t,value)")->required();
  persistence->add_option("--domain", pa.domain, "interval or circle")->check(CLI::IsMember(domains));
  persistence->add_option("-o,--output", pa.output, "Diagram JSON (default: stdout)");

  EstimateArgs ea;
  auto* estimate_n = app.add_subcommand("estimate-n", "Estimate the number of periods in a signal");
  estimate_n->add_option("-i,--input", ea.input, "Signal CSV (t,value)")->required();
  estimate_n->add_option("-m,--method", ea.method, "auto | ball:TAU | cluster:TAU | exact[:TOL] | zc:K")->required();
  estimate_n->add_option("--domain", ea.domain, "interval or circle")->check(CLI::IsMember(domains));
  estimate_n->add_flag("--detrend", ea.detrend, "Subtract a sliding median first");
  estimate_n->add_option("--window", ea.window, "Detrend window in seconds")->check(CLI::PositiveNumber);

  OdometryArgs oa;
  auto* odometry = app.add_subcommand("odometry", "Odometric sequences and quality metrics");
  odometry->add_option("-i,--input", oa.input, "Signal CSV (t,value)")->required();
  odometry->add_option("-N,--periods", oa.periods, "Period count or 'auto'");
  odometry->add_option("--tau", oa.tau, "Scale or 'auto'");
  odometry->add_option("-C,--circumference", oa.circumference, "Wheel circumference in meters")
      ->check(CLI::PositiveNumber);
  odometry->add_option("--reference", oa.reference, "Reference displacement CSV (t,value in meters)");
  odometry->add_option("--truth", oa.truth, "Ground-truth JSON written by 'simulate'");
  odometry->add_option("--window", oa.window, "Detrend window in seconds")->check(CLI::PositiveNumber);
  odometry->add_flag("--no-detrend", oa.no_detrend, "Skip median detrending");
  odometry->add_option("-o,--output", oa.output, "Result JSON (default: stdout)");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Success-rate benchmark over templates and noise levels");
  bench->add_option("-c,--config", ba.config, "Experiment config JSON (default grid if omitted)");
  bench->add_option("-o,--output", ba.output, "Result CSV")->required();
  bench->add_option("-j,--threads", ba.threads, "Worker threads (default: all cores)");

  BoundArgs boa;
  auto* bound = app.add_subcommand("bound", "Evaluate the probability bounds (printed and corrected forms)");
  bound->add_option("kind", boa.kind, "gp or white")->required()->check(CLI::IsMember({"gp", "white"}));
  bound->add_option("--kappa", boa.kappa, "tau / (2 sigma)");
  bound->add_option("--tau", boa.tau, "Scale");
  bound->add_option("--sigma", boa.sigma, "Noise standard deviation");
  bound->add_option("--l", boa.l, "GP time-scale");
  bound->add_option("--omega", boa.omega, "Sampling rate");
  bound->add_option("--c-f-gamma", boa.c, "Smoothness constant");
  bound->add_option("--template", boa.template_id, "Template id, to compute the smoothness constant");
  bound->add_option("--periods", boa.periods, "N for gamma(t) = N t + a sin(2 pi k t)");
  bound->add_option("--amplitude", boa.amplitude, "a for gamma");
  bound->add_option("--harmonic", boa.harmonic, "k for gamma");

  SimulateArgs sa;
  auto* sim = app.add_subcommand("simulate", "Write a synthetic noisy signal and its ground truth");
  sim->add_option("-t,--template", sa.params.template_id, "Template id (f0..f4 or fr:R)");
  sim->add_option("-N,--periods", sa.params.periods, "Number of periods")->check(CLI::PositiveNumber);
  sim->add_option("--sigma", sa.params.sigma, "GP noise standard deviation")->check(CLI::NonNegativeNumber);
  sim->add_option("--l", sa.params.l, "GP time-scale in normalized time")->check(CLI::PositiveNumber);
  sim->add_option("--omega", sa.params.omega, "Sampling rate in Hz")->check(CLI::PositiveNumber);
  sim->add_option("--duration", sa.params.duration, "Recording length in seconds")->check(CLI::PositiveNumber);
  sim->add_option("--reparam", sa.params.reparam, "random or jittered")->check(CLI::IsMember({"random", "jittered"}));
  sim->add_option("--jitter", sa.params.jitter, "Relative period-length jitter in [0,1)");
  sim->add_option("--seed", sa.seed, "Random seed (PERIODICA_SEED if omitted)");
  sim->add_option("-o,--output", sa.output, "Signal CSV; ground truth goes to <output>.truth.json")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (persistence->parsed()) cmd_persistence(pa, out);
    else if (estimate_n->parsed()) cmd_estimate(ea, out);
    else if (odometry->parsed()) cmd_odometry(oa, out);
    else if (bench->parsed()) cmd_bench(ba);
    else if (bound->parsed()) cmd_bound(boa, out);
    else if (sim->parsed()) cmd_simulate(sa);
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const OdometryInconsistency& e) {
    err << "inconsistent model: " << e.what() << '\n';
    return kModelError;
  } catch (const ModelInconsistency& e) {
    err << "inconsistent model: " << e.what() << '\n';
    return kModelError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace periodica::cli
