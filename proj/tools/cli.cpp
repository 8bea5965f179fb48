#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "batchq/analytic/moments.hpp"
#include "batchq/analytic/stationary.hpp"
#include "batchq/analytic/transient.hpp"
#include "batchq/arrival.hpp"
#include "batchq/discipline.hpp"
#include "batchq/experiments/acceptance.hpp"
#include "batchq/experiments/report.hpp"
#include "batchq/experiments/scaling.hpp"
#include "batchq/fluid/path.hpp"
#include "batchq/params.hpp"
#include "batchq/sim/simulate.hpp"
#include "batchq/sim/statistics.hpp"
#include "batchq/version.hpp"

namespace fs = std::filesystem;

namespace batchq::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitResource = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ArrivalModel parse_arrival(const std::string& spec) {
  if (spec == "exp" || spec == "exponential") return ArrivalModel::exponential(1.0);
  if (spec == "det" || spec == "deterministic") return ArrivalModel::deterministic(1.0);
  if (spec.rfind("uniform:", 0) == 0) {
    double lo, hi;
    if (std::sscanf(spec.c_str() + 8, "%lf,%lf", &lo, &hi) != 2)
      throw ConfigError("arrival: expected uniform:LO,HI");
    return ArrivalModel::uniform_interval(lo, hi);
  }
  if (spec == "uniform") return ArrivalModel::uniform_interval(1.0, 3.0);
  if (spec.rfind("gamma:", 0) == 0) {
    double shape;
    if (std::sscanf(spec.c_str() + 6, "%lf", &shape) != 1)
      throw ConfigError("arrival: expected gamma:SHAPE");
    return ArrivalModel::gamma(shape, shape);
  }
  throw ConfigError("arrival: unknown law '" + spec +
                    "' (use exp, det, uniform[:LO,HI], gamma:SHAPE)");
}

CutLaw parse_cut(const std::string& spec) {
  if (spec == "uniform") return CutLaw::uniform();
  if (spec.rfind("beta:", 0) == 0) {
    double a, b;
    if (std::sscanf(spec.c_str() + 5, "%lf,%lf", &a, &b) != 2)
      throw ConfigError("cut: expected beta:A,B");
    return CutLaw::beta(a, b);
  }
  throw ConfigError("cut: unknown law '" + spec + "' (use uniform or beta:A,B)");
}

Discipline parse_discipline(const std::string& spec) {
  if (spec == "fifo") return FifoBatch{};
  if (spec == "lifo") return LifoBatch{};
  if (spec == "frac") return GeneralFraction{CutLaw::uniform()};
  if (spec.rfind("frac:", 0) == 0) return GeneralFraction{parse_cut(spec.substr(5))};
  throw ConfigError("discipline: unknown '" + spec + "' (use fifo, lifo, frac[:beta:A,B])");
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

// Flat key=value config support: values become trailing --key value args for
// every key not already given on the command line, so flags always win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::string file;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      file = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      file = args[i].substr(9);
    }
  }
  if (file.empty()) return args;
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot read config file " + file);

  auto present = [&](const std::string& key) {
    const std::string flag = "--" + key;
    for (const auto& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
  };

  std::vector<std::string> out = args;
  std::string line;
  while (std::getline(in, line)) {
    const std::string entry = trim(line);
    if (entry.empty() || entry[0] == '#' || entry[0] == ';') continue;
    const auto eq = entry.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config file: expected key=value, got '" + entry + "'");
    const std::string key = trim(entry.substr(0, eq));
    const std::string value = trim(entry.substr(eq + 1));
    if (key.empty()) throw ConfigError("config file: empty key in '" + entry + "'");
    if (key == "config" || present(key)) continue;
    if (value == "true") {
      out.push_back("--" + key);
    } else if (value == "false") {
      continue;
    } else {
      out.push_back("--" + key);
      out.push_back(value);
    }
  }
  return out;
}

// Shared model flags: lambda plus exactly one of mu / rho.
struct ModelFlags {
  double lambda = 1.0;
  std::optional<double> mu;
  std::optional<double> rho;
  std::string arrival = "exp";

  void add_to(CLI::App* cmd, bool with_arrival = true) {
    cmd->add_option("--lambda", lambda, "arrival rate")->capture_default_str();
    auto* mu_opt = cmd->add_option("--mu", mu, "service rate (exclusive with --rho)");
    auto* rho_opt = cmd->add_option("--rho", rho, "load lambda/mu (exclusive with --mu)");
    mu_opt->excludes(rho_opt);
    rho_opt->excludes(mu_opt);
    if (with_arrival)
      cmd->add_option("--arrival", arrival,
                      "inter-arrival law: exp, det, uniform[:LO,HI], gamma:SHAPE")
          ->capture_default_str();
  }

  ModelParams params() const {
    if (mu.has_value() == rho.has_value())
      throw ConfigError("exactly one of --mu or --rho is required");
    if (mu) return ModelParams(lambda, *mu);
    return ModelParams::from_rho(lambda, *rho);
  }

  ArrivalModel shape() const { return parse_arrival(arrival); }

  std::string echo() const {
    const auto p = params();
    std::ostringstream out;
    out << "lambda=" << fmt17(p.lambda) << " mu=" << fmt17(p.mu) << " rho=" << fmt17(p.rho())
        << " arrival=" << shape().with_rate(p.lambda).describe();
    return out.str();
  }
};

std::string header_line(const std::string& command, const std::string& echo) {
  return "# batchq " + std::string(kVersion) + " | " + command + " " + echo;
}

std::ofstream open_output(const fs::path& dir, const std::string& name,
                          const std::string& header) {
  fs::create_directories(dir);
  const fs::path file = dir / name;
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot open output file " + file.string());
  out << header << "\n";
  return out;
}

// ---------------------------------------------------------------- analyze --

struct AnalyzeArgs {
  ModelFlags model;
  int k_max = 20;
  int moments = 0;
  bool transient = false;
  std::vector<double> times;
  int q0 = 0;
  double tol = 1e-10;
  std::string out_dir = ".";
};

int cmd_analyze(const AnalyzeArgs& args) {
  const auto params = args.model.params();
  const auto arrival = args.model.shape();
  const double rho = params.rho();
  std::ostringstream echo;
  echo << args.model.echo() << " kmax=" << args.k_max << " q0=" << args.q0
       << " tol=" << args.tol;
  if (args.moments > 0) echo << " moments=" << args.moments;
  if (args.transient) {
    echo << " transient_times=";
    for (std::size_t i = 0; i < args.times.size(); ++i)
      echo << (i ? "," : "") << fmt17(args.times[i]);
  }
  const std::string header = header_line("analyze", echo.str());
  std::cout << header << "\n";

  const bool poisson = args.model.arrival == "exp" || args.model.arrival == "exponential";

  // stationary table with per-level arrival means
  {
    auto out = open_output(args.out_dir, "stationary.csv", header);
    out << "k,stationary_tail,stationary_pmf,mean_level_arrivals\n";
    const auto table = analytic::StationaryTailTable::build(args.k_max + 1, rho, arrival);
    for (int k = 0; k <= args.k_max; ++k) {
      out << k << ',' << fmt17(table.tail(k)) << ',' << fmt17(table.pmf(k)) << ',';
      if (k >= 2) out << fmt17(analytic::mean_level_arrivals(k, rho, arrival));
      out << '\n';
    }
  }

  const auto mean = analytic::mean_stationary(rho, arrival, args.tol);
  {
    auto out = open_output(args.out_dir, "scalars.csv", header);
    out << "name,value\n";
    out << "mean_cycle," << fmt17(analytic::mean_cycle(rho, params.lambda, arrival)) << '\n';
    out << "mean_stationary," << fmt17(mean.value) << '\n';
    out << "mean_stationary_truncation_bound," << fmt17(mean.truncation_bound) << '\n';
    out << "mean_stationary_terms," << mean.terms << '\n';
  }

  if (args.moments > 0) {
    if (!poisson)
      throw ConfigError(
          "factorial moments are defined for exponential (Poisson) arrivals only; "
          "rerun with --arrival exp");
    const auto table =
        analytic::factorial_moments(args.moments, rho, mean.value, mean.truncation_bound);
    auto out = open_output(args.out_dir, "moments.csv", header);
    out << "n,factorial_moment,error_estimate,significant\n";
    for (std::size_t n = 0; n < table.m.size(); ++n)
      out << n << ',' << fmt17(table.m[n]) << ',' << fmt17(table.error[n]) << ','
          << (table.significant(static_cast<int>(n)) ? "true" : "false") << '\n';
  }

  if (args.transient) {
    if (!poisson)
      throw ConfigError(
          "the transient recursion assumes exponential (Poisson) arrivals; "
          "rerun with --arrival exp");
    if (args.times.empty()) throw ConfigError("--transient requires --times");
    double t_max = 0.0;
    for (double t : args.times) {
      if (t < 0.0) throw ConfigError("--times must be nonnegative");
      t_max = std::max(t_max, t);
    }
    std::vector<double> initial(static_cast<std::size_t>(args.q0) + 1, 0.0);
    initial.back() = 1.0;
    const int k_needed = analytic::required_k_max(t_max, params.lambda, args.q0);
    const int k_max = std::max(args.k_max, k_needed);
    const auto table = analytic::CoefficientTable::build(k_max, initial, params.lambda, params.mu);
    auto out = open_output(args.out_dir, "transient.csv", header);
    out << "t,k,probability\n";
    for (double t : args.times) {
      const auto pmf = table.evaluate(t);
      for (int k = 0; k <= std::min(args.k_max, k_max); ++k)
        out << fmt17(t) << ',' << k << ',' << fmt17(pmf[static_cast<std::size_t>(k)]) << '\n';
    }
  }
  return kExitOk;
}

// --------------------------------------------------------------- simulate --

struct SimulateArgs {
  ModelFlags model;
  std::string discipline = "fifo";
  std::string engine = "aggregated";
  std::optional<double> horizon;
  std::optional<std::uint64_t> events;
  int q0 = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string out_dir = ".";
  int pmf_kmax = -1;
  double burn_in = 0.0;
};

int cmd_simulate(const SimulateArgs& args) {
  const auto params = args.model.params();
  if (args.horizon.has_value() == args.events.has_value())
    throw ConfigError("exactly one of --horizon or --events is required");
  const auto stop = args.horizon ? sim::StopRule::at_time(*args.horizon)
                                 : sim::StopRule::after_events(*args.events);
  sim::Engine engine;
  if (args.engine == "aggregated") {
    engine = sim::Engine::Aggregated;
  } else if (args.engine == "percustomer") {
    engine = sim::Engine::PerCustomer;
  } else {
    throw ConfigError("engine: unknown '" + args.engine + "' (use aggregated or percustomer)");
  }

  std::ostringstream echo;
  echo << args.model.echo() << " discipline=" << args.discipline << " engine=" << args.engine;
  if (args.horizon) echo << " horizon=" << fmt17(*args.horizon);
  if (args.events) echo << " events=" << *args.events;
  echo << " q0=" << args.q0 << " seed=" << args.seed << " stream=" << args.stream;
  const std::string header = header_line("simulate", echo.str());
  std::cout << header << "\n";

  RngStream rng(args.seed, args.stream);
  const auto path =
      sim::simulate(params, args.model.shape().with_rate(params.lambda),
                    parse_discipline(args.discipline), engine, stop, args.q0, rng, true);

  {
    auto out = open_output(args.out_dir, "path.csv", header);
    sim::write_path_csv(out, path);
  }
  {
    const auto busy = sim::busy_periods(path);
    auto out = open_output(args.out_dir, "busy_periods.csv", header);
    out << "n,duration\n";
    for (std::size_t i = 0; i < busy.size(); ++i) out << (i + 1) << ',' << fmt17(busy[i]) << '\n';
  }
  if (args.pmf_kmax >= 0) {
    const auto pmf = sim::time_average_pmf(path, args.burn_in, args.pmf_kmax);
    auto out = open_output(args.out_dir, "occupancy.csv", header);
    out << "k,fraction\n";
    for (int k = 0; k <= args.pmf_kmax; ++k)
      out << k << ',' << fmt17(pmf[static_cast<std::size_t>(k)]) << '\n';
  }
  return kExitOk;
}

// ------------------------------------------------------------------ fluid --

struct FluidArgs {
  double xi0 = 0.0;
  double lambda = 1.0;
  double horizon = 100.0;
  std::string cut = "uniform";
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string out_dir = ".";
};

int cmd_fluid(const FluidArgs& args) {
  std::ostringstream echo;
  echo << "xi0=" << fmt17(args.xi0) << " lambda=" << fmt17(args.lambda)
       << " horizon=" << fmt17(args.horizon) << " cut=" << args.cut << " seed=" << args.seed
       << " stream=" << args.stream;
  const std::string header = header_line("fluid", echo.str());
  std::cout << header << "\n";

  RngStream rng(args.seed, args.stream);
  const auto path =
      fluid::fluid_simulate(args.xi0, args.lambda, args.horizon, parse_cut(args.cut), rng);
  auto out = open_output(args.out_dir, "ledger.csv", header);
  fluid::write_ledger_csv(out, path);
  std::cout << "jumps=" << path.jumps.size() << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------ scale --

struct ScaleArgs {
  std::string study = "rayleigh";
  std::vector<double> rho_list;
  std::string arrival = "exp";
  double lambda = 1.0;
  double horizon_T = 10.0;
  int replications = 1000;
  std::uint64_t seed = 0;
  double alpha = 0.01;
  std::uint64_t event_cap = 50'000'000;
  int l_max = 5;
  int n_jumps = 1;
  std::size_t fluid_samples = 100'000;
  std::vector<double> times{1.0, 5.0, 10.0};
  double mean_rho = 1e6;
  std::string out_dir = ".";
  unsigned threads = 0;
};

int cmd_scale(const ScaleArgs& args) {
  if (args.rho_list.empty()) throw ConfigError("--rho-list is required");
  experiments::ScalingConfig config;
  config.lambda = args.lambda;
  config.arrival = parse_arrival(args.arrival);
  config.horizon_T = args.horizon_T;
  config.replications = args.replications;
  config.seed = args.seed;
  config.alpha = args.alpha;
  config.event_cap = args.event_cap;
  config.threads = args.threads;

  std::ostringstream echo;
  echo << "study=" << args.study << " lambda=" << fmt17(args.lambda) << " arrival="
       << args.arrival << " horizon_T=" << fmt17(args.horizon_T)
       << " replications=" << args.replications << " alpha=" << fmt17(args.alpha)
       << " seed=" << args.seed << " rho_list=";
  for (std::size_t i = 0; i < args.rho_list.size(); ++i)
    echo << (i ? "," : "") << fmt17(args.rho_list[i]);
  const std::string header = header_line("scale", echo.str());
  std::cout << header << "\n";

  experiments::ComparisonReport report;
  if (args.study == "rayleigh") {
    report = experiments::stationary_rayleigh_study(args.rho_list, config.arrival, 0.01,
                                                    args.mean_rho, 0.01);
  } else if (args.study == "departures") {
    for (std::size_t i = 0; i < args.rho_list.size(); ++i) {
      const double rho = args.rho_list[i];
      const auto freq =
          experiments::single_departure_frequency(rho, args.l_max, config, i * 1'000'000);
      for (int l = 1; l <= args.l_max; ++l)
        report.add(experiments::StatRow{
            "departures", "single_departure_freq_l" + std::to_string(l), rho,
            freq[static_cast<std::size_t>(l - 1)], std::numeric_limits<double>::quiet_NaN(), true,
            args.seed, static_cast<std::size_t>(args.replications), 0});
    }
  } else if (args.study == "embedded") {
    for (std::size_t i = 0; i < args.rho_list.size(); ++i)
      report.append(experiments::embedded_convergence(args.rho_list[i], args.n_jumps, config,
                                                      i * 1'000'000, args.fluid_samples));
  } else if (args.study == "fdd") {
    for (std::size_t i = 0; i < args.rho_list.size(); ++i)
      report.append(
          experiments::finite_dim_compare(args.rho_list[i], args.times, config, i * 1'000'000));
  } else {
    throw ConfigError("study: unknown '" + args.study +
                      "' (use rayleigh, departures, embedded, fdd)");
  }

  fs::create_directories(args.out_dir);
  {
    auto out = open_output(args.out_dir, args.study + "_report.csv", header);
    report.write_csv(out);
  }
  {
    auto out = std::ofstream(fs::path(args.out_dir) / (args.study + "_report.json"));
    report.write_json(out, header);
  }
  const auto files = experiments::write_gnuplot_data(report, args.out_dir, header);
  std::cout << "rows=" << report.rows.size() << " files=" << files.size() + 2
            << " all_pass=" << (report.all_pass() ? "true" : "false") << "\n";
  return kExitOk;
}

// ----------------------------------------------------------------- verify --

struct VerifyArgs {
  std::uint64_t seed = experiments::kAcceptanceSeed;
  bool quick = false;
  std::vector<int> only;
  unsigned threads = 0;
  std::string out_dir = ".";
};

int cmd_verify(const VerifyArgs& args) {
  experiments::AcceptanceOptions options;
  options.seed = args.seed;
  options.quick = args.quick;
  options.only = args.only;
  options.threads = args.threads;

  std::ostringstream echo;
  echo << "seed=" << args.seed << (args.quick ? " quick=true" : "");
  if (!args.only.empty()) {
    echo << " only=";
    for (std::size_t i = 0; i < args.only.size(); ++i) echo << (i ? "," : "") << args.only[i];
  }
  const std::string header = header_line("verify", echo.str());
  std::cout << header << "\n";

  const auto results = experiments::run_acceptance(options, &std::cout);
  const auto report = experiments::acceptance_report(results, args.seed);
  {
    auto out = open_output(args.out_dir, "acceptance_report.csv", header);
    report.write_csv(out);
  }
  {
    auto out = std::ofstream(fs::path(args.out_dir) / "acceptance_report.json");
    report.write_json(out, header);
  }
  return report.all_pass() && !results.empty() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"G/M/inf queue with FIFO/LIFO-batch departures: closed forms, simulation, "
               "growth-collapse fluid limit, scaling studies"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* cmd_a = app.add_subcommand("analyze", "evaluate closed-form results");
  analyze.model.add_to(cmd_a);
  cmd_a->add_option("--kmax", analyze.k_max, "largest queue level to report")
      ->capture_default_str();
  cmd_a->add_option("--moments", analyze.moments, "emit factorial moments up to this order");
  cmd_a->add_flag("--transient", analyze.transient, "emit the time-dependent distribution");
  cmd_a->add_option("--times", analyze.times, "time points for --transient")->delimiter(',');
  cmd_a->add_option("--q0", analyze.q0, "initial queue size for --transient")
      ->capture_default_str();
  cmd_a->add_option("--tol", analyze.tol, "series truncation tolerance")->capture_default_str();
  cmd_a->add_option("--out-dir", analyze.out_dir, "output directory")
      ->envname("BATCHQ_OUT_DIR")
      ->capture_default_str();

  SimulateArgs simulate;
  auto* cmd_s = app.add_subcommand("simulate", "run one discrete-event realization");
  simulate.model.add_to(cmd_s);
  cmd_s->add_option("--discipline", simulate.discipline, "fifo, lifo, frac[:beta:A,B]")
      ->capture_default_str();
  cmd_s->add_option("--engine", simulate.engine, "aggregated or percustomer")
      ->capture_default_str();
  cmd_s->add_option("--horizon", simulate.horizon, "stop at this time (exclusive with --events)");
  cmd_s->add_option("--events", simulate.events, "stop after this many events");
  cmd_s->add_option("--q0", simulate.q0, "initial queue size")->capture_default_str();
  cmd_s->add_option("--seed", simulate.seed, "rng seed")->required();
  cmd_s->add_option("--stream", simulate.stream, "rng stream id")->capture_default_str();
  cmd_s->add_option("--pmf-kmax", simulate.pmf_kmax,
                    "also emit occupancy fractions up to this level");
  cmd_s->add_option("--burn-in", simulate.burn_in, "occupancy burn-in time")
      ->capture_default_str();
  cmd_s->add_option("--out-dir", simulate.out_dir, "output directory")
      ->envname("BATCHQ_OUT_DIR")
      ->capture_default_str();

  FluidArgs fluid_args;
  auto* cmd_f = app.add_subcommand("fluid", "simulate the growth-collapse fluid limit");
  cmd_f->add_option("--xi0", fluid_args.xi0, "initial level")->capture_default_str();
  cmd_f->add_option("--lambda", fluid_args.lambda, "growth rate")->capture_default_str();
  cmd_f->add_option("--horizon", fluid_args.horizon, "time horizon")->capture_default_str();
  cmd_f->add_option("--cut", fluid_args.cut, "uniform or beta:A,B")->capture_default_str();
  cmd_f->add_option("--seed", fluid_args.seed, "rng seed")->required();
  cmd_f->add_option("--stream", fluid_args.stream, "rng stream id")->capture_default_str();
  cmd_f->add_option("--out-dir", fluid_args.out_dir, "output directory")
      ->envname("BATCHQ_OUT_DIR")
      ->capture_default_str();

  ScaleArgs scale;
  auto* cmd_c = app.add_subcommand("scale", "pre-limit vs fluid-limit scaling studies");
  cmd_c->add_option("--study", scale.study, "rayleigh, departures, embedded, fdd")
      ->capture_default_str();
  cmd_c->add_option("--rho-list", scale.rho_list, "loads to sweep")->delimiter(',')->required();
  cmd_c->add_option("--arrival", scale.arrival, "inter-arrival law")->capture_default_str();
  cmd_c->add_option("--lambda", scale.lambda, "arrival rate, fixed across rho")
      ->capture_default_str();
  cmd_c->add_option("--horizon-T", scale.horizon_T, "scaled horizon")->capture_default_str();
  cmd_c->add_option("--replications", scale.replications, "replications per rho")
      ->capture_default_str();
  cmd_c->add_option("--seed", scale.seed, "rng seed")->required();
  cmd_c->add_option("--alpha", scale.alpha, "test level for KS thresholds")
      ->capture_default_str();
  cmd_c->add_option("--event-cap", scale.event_cap, "per-replication event guard")
      ->capture_default_str();
  cmd_c->add_option("--lmax", scale.l_max, "departure periods per replication (departures study)")
      ->capture_default_str();
  cmd_c->add_option("--n-jumps", scale.n_jumps, "jumps compared (embedded study)")
      ->capture_default_str();
  cmd_c->add_option("--fluid-samples", scale.fluid_samples, "fluid reference sample size")
      ->capture_default_str();
  cmd_c->add_option("--times", scale.times, "time points (fdd study)")->delimiter(',');
  cmd_c->add_option("--mean-rho", scale.mean_rho,
                    "rho for the mean check (rayleigh study; 0 disables)")
      ->capture_default_str();
  cmd_c->add_option("--threads", scale.threads, "worker threads (0 = hardware)")
      ->capture_default_str();
  cmd_c->add_option("--out-dir", scale.out_dir, "output directory")
      ->envname("BATCHQ_OUT_DIR")
      ->capture_default_str();

  VerifyArgs verify;
  auto* cmd_v = app.add_subcommand("verify", "run the acceptance suite");
  cmd_v->add_option("--seed", verify.seed, "rng seed (reference seed by default)")
      ->capture_default_str();
  cmd_v->add_flag("--quick", verify.quick, "primary criteria subset");
  cmd_v->add_option("--only", verify.only, "run only these criterion ids")->delimiter(',');
  cmd_v->add_option("--threads", verify.threads, "worker threads (0 = hardware)")
      ->capture_default_str();
  cmd_v->add_option("--out-dir", verify.out_dir, "output directory")
      ->envname("BATCHQ_OUT_DIR")
      ->capture_default_str();

  std::string config_file;
  for (auto* cmd : {cmd_a, cmd_s, cmd_f, cmd_c, cmd_v})
    cmd->add_option("--config", config_file, "flat key=value config file; command-line flags win");

  try {
    const auto expanded = expand_config(args);
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    app.parse(reversed);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help / --version
    }
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (cmd_a->parsed()) return cmd_analyze(analyze);
    if (cmd_s->parsed()) return cmd_simulate(simulate);
    if (cmd_f->parsed()) return cmd_fluid(fluid_args);
    if (cmd_c->parsed()) return cmd_scale(scale);
    if (cmd_v->parsed()) return cmd_verify(verify);
    std::cerr << "error: no subcommand\n";
    return kExitConfig;
  } catch (const experiments::ResourceLimitError& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return kExitResource;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace batchq::cli
