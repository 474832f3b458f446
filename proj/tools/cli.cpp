#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "r2r/controller.hpp"
#include "r2r/delay_chain.hpp"
#include "r2r/mixed_product.hpp"
#include "r2r/serialize.hpp"
#include "r2r/simulate.hpp"
#include "r2r/stability.hpp"
#include "r2r/sweep.hpp"

namespace r2r::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  // distribution
  std::string dist;
  double lambda = 0.0;
  int k_max = 0;
  std::string etas_file;
  double pnm = 0.0;
  std::optional<double> q;
  int taup = 0;
  double eps = 1e-3;
  int step = 5;
  // delay mode
  int sampling = 0;
  int fixed_delay = 0;
  std::string chain_file;
  // controller
  std::string controller = "ewma1";
  std::optional<double> xi;
  std::optional<double> beta;
  std::optional<double> b;
  std::optional<double> omega;
  double target = 0.0;
  std::string method;
  std::string cert_file;
  // grid
  std::string xi_range = "0.02:4:0.02";
  std::string omega_range = "0.01:1:0.01";
  std::string compare;
  bool serial = false;
  // simulation
  long runs = 50000;
  std::uint64_t seed = 0;
  long steps = 200;
  double noise = 0.0;
  std::string x0;
  std::string out;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

bool given(const CLI::App* app, const std::string& flag) {
  const CLI::Option* opt = app->get_option_no_throw(flag);
  return opt != nullptr && opt->count() > 0;
}

void add_dist_options(CLI::App* app, Options& o) {
  app->add_option("--dist", o.dist, "Delay distribution")->check(CLI::IsMember({"poisson", "explicit"}));
  app->add_option("--lambda", o.lambda, "Poisson mean");
  app->add_option("--k-max", o.k_max, "Last stored Poisson delay (default: tail below 1e-10)");
  app->add_option("--etas-file", o.etas_file, "File with eta_0..eta_K (JSON array or numbers)");
  app->add_option("--pnm", o.pnm, "Probability a run is never measured");
  app->add_option("--taup", o.taup, "Truncation tau_p (default: chosen from --eps)");
  app->add_option("--eps", o.eps, "Truncation tolerance");
  app->add_option("--step", o.step, "Truncation scan stride");
}

void add_mode_options(CLI::App* app, Options& o, bool with_chain_file) {
  app->add_option("--fixed-delay", o.fixed_delay, "Fixed delay of f runs");
  app->add_option("--sampling", o.sampling, "Fixed sampling every d runs");
  if (with_chain_file) app->add_option("--chain", o.chain_file, "Chain JSON file");
}

void add_controller_options(CLI::App* app, Options& o, bool with_gains) {
  app->add_option("--controller", o.controller, "ewma1 | ewma2")->check(CLI::IsMember({"ewma1", "ewma2"}));
  if (!with_gains) return;
  app->add_option("--xi", o.xi, "Plant-model mismatch beta / b");
  app->add_option("--beta", o.beta, "True process gain");
  app->add_option("--b", o.b, "Model gain");
  app->add_option("--omega", o.omega, "EWMA discount factor");
  app->add_option("--target", o.target, "Target T");
}

std::vector<double> read_etas(const std::string& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
    Json j;
    try {
      j = Json::parse(text);
      if (j.is_object()) j = j.at("etas");
      return j.get<std::vector<double>>();
    } catch (const Json::exception& e) {
      throw UsageError("invalid distribution file " + path + ": " + e.what());
    }
  }
  std::string cleaned = text;
  for (char& ch : cleaned) {
    if (ch == ',') ch = ' ';
  }
  std::istringstream in(cleaned);
  std::vector<double> etas;
  std::string token;
  while (in >> token) {
    try {
      size_t used = 0;
      etas.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw UsageError("invalid distribution file " + path + ": bad number \"" + token + "\"");
    }
  }
  if (etas.empty()) throw UsageError("invalid distribution file " + path + ": no values");
  return etas;
}

DelayDistribution make_distribution(const CLI::App* app, const Options& o) {
  if (o.dist == "poisson") {
    if (!given(app, "--lambda")) throw UsageError("--dist poisson needs --lambda");
    DelayDistribution d = o.k_max > 0 ? poisson_etas(o.lambda, o.k_max) : poisson_etas(o.lambda);
    d.p_nm = o.pnm;
    d.validate();
    return d;
  }
  if (o.dist == "explicit") {
    if (o.etas_file.empty()) throw UsageError("--dist explicit needs --etas-file");
    return explicit_etas(read_etas(o.etas_file), o.pnm);
  }
  throw UsageError("no delay distribution given (--dist)");
}

DelayChain chain_from_distribution(const CLI::App* app, const Options& o) {
  const DelayDistribution d = make_distribution(app, o);
  TruncationOptions topts;
  topts.eps = o.eps;
  topts.step = o.step;
  if (o.q) {
    const ProductMix mix{*o.q};
    mix.validate();
    const int tau_p = given(app, "--taup") ? o.taup : choose_truncation(product_delay_dist(d, mix), topts);
    return product_chain(d, mix, tau_p);
  }
  const int tau_p = given(app, "--taup") ? o.taup : choose_truncation(d, topts);
  return build_transition(d, tau_p);
}

enum class Mode { fixed, sampling, chain_file, distribution };

Mode delay_mode(const CLI::App* app) {
  int count = 0;
  Mode mode = Mode::distribution;
  auto take = [&](const char* flag, Mode m) {
    if (given(app, flag)) {
      ++count;
      mode = m;
    }
  };
  take("--fixed-delay", Mode::fixed);
  take("--sampling", Mode::sampling);
  take("--chain", Mode::chain_file);
  take("--dist", Mode::distribution);
  if (count != 1) throw UsageError("give exactly one of --fixed-delay, --sampling, --chain, --dist");
  return mode;
}

DelayChain resolve_chain(const CLI::App* app, const Options& o, Mode mode) {
  switch (mode) {
    case Mode::fixed:
      return fixed_delay_chain(o.fixed_delay);
    case Mode::sampling:
      return sampling_chain(o.sampling);
    case Mode::chain_file: {
      Json j;
      try {
        j = Json::parse(read_file(o.chain_file));
      } catch (const Json::exception& e) {
        throw UsageError("invalid chain file " + o.chain_file + ": " + e.what());
      }
      return chain_from_json(j);
    }
    case Mode::distribution:
      break;
  }
  return chain_from_distribution(app, o);
}

ControllerSpec make_controller(const CLI::App* app, const Options& o) {
  const ControllerKind kind = parse_controller_kind(o.controller);
  if (!o.omega) throw UsageError("--omega is required");
  if (o.beta || o.b) {
    if (!(o.beta && o.b)) throw UsageError("--beta and --b go together");
    ControllerSpec c = ControllerSpec::from_gains(kind, *o.omega, *o.beta, *o.b, o.target);
    if (o.xi && std::abs(*o.xi - c.xi) > 1e-12 * std::max(1.0, c.xi)) {
      throw UsageError("--xi does not equal --beta / --b");
    }
    return c;
  }
  if (!o.xi) throw UsageError("--xi (or --beta and --b) is required");
  ControllerSpec c = ControllerSpec::from_mismatch(kind, *o.omega, *o.xi);
  c.target = o.target;
  (void)app;
  return c;
}

// Writes the document to --out, or to stdout when no path was given. Summary
// lines go to stdout in the first case and stderr in the second.
std::ostream& emit(const Options& o, const std::string& document, std::ostream& out, std::ostream& err) {
  if (o.out.empty()) {
    out << document;
    return err;
  }
  write_file(o.out, document);
  return out;
}

int exit_code(Status s) {
  switch (s) {
    case Status::stable:
      return kExitStable;
    case Status::unstable:
      return kExitUnstable;
    case Status::marginal:
      break;
  }
  return kExitMarginal;
}

std::vector<double> parse_range(const std::string& text, const char* name) {
  std::vector<double> parts;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ':')) {
    try {
      size_t used = 0;
      parts.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw UsageError(std::string("bad ") + name + " range \"" + text + "\" (expected lo:hi:step)");
    }
  }
  if (parts.size() != 3) throw UsageError(std::string("bad ") + name + " range \"" + text + "\" (expected lo:hi:step)");
  try {
    return make_axis(parts[0], parts[1], parts[2]);
  } catch (const ContractViolation& e) {
    throw UsageError(std::string("bad ") + name + " range: " + e.what());
  }
}

// ---------------------------------------------------------------- commands

int cmd_chain(const CLI::App* app, const Options& o, std::ostream& out, std::ostream& err) {
  const DelayChain chain = resolve_chain(app, o, delay_mode(app));
  std::ostream& info = emit(o, chain_to_json(chain).dump(2) + "\n", out, err);
  info << "tau_p " << chain.tau_p << "\n";
  info << "e_tau " << fmt(chain.e_tau) << "\n";
  if (chain.renorm_warning) err << "warning: last-row renormalization exceeds 10%\n";
  if (chain.dist && chain.dist->tail_warning) err << "warning: stored distribution drops more than 1e-6 of mass\n";
  return kExitStable;
}

int cmd_stationary(const CLI::App* app, const Options& o, std::ostream& out, std::ostream& err) {
  const DelayChain chain = resolve_chain(app, o, delay_mode(app));
  Json j;
  j["pi"] = std::vector<double>(chain.pi.data(), chain.pi.data() + chain.pi.size());
  j["e_tau"] = chain.e_tau;
  std::ostream& info = emit(o, j.dump(2) + "\n", out, err);
  info << "pi";
  for (Eigen::Index i = 0; i < chain.pi.size(); ++i) info << ' ' << fmt(chain.pi(i));
  info << "\ne_tau " << fmt(chain.e_tau) << "\n";
  return kExitStable;
}

std::string_view outcome_name(CertifyOutcome outcome) {
  switch (outcome) {
    case CertifyOutcome::certified:
      return "certified";
    case CertifyOutcome::diverged:
      return "diverged";
    case CertifyOutcome::inconclusive:
      break;
  }
  return "inconclusive";
}

int cmd_stability(const CLI::App* app, const Options& o, std::ostream& out, std::ostream& err) {
  const ControllerSpec c = make_controller(app, o);
  const Mode mode = delay_mode(app);
  Verdict verdict;
  if (mode == Mode::fixed) {
    const Method method = o.method.empty() ? Method::jury : parse_method(o.method);
    if (method == Method::certificate || !o.cert_file.empty()) {
      throw UsageError("certificates need a delay chain (--sampling, --chain or --dist)");
    }
    verdict = fixed_delay_stable(c, o.fixed_delay, method);
  } else {
    const Method method = o.method.empty() ? Method::mss_operator : parse_method(o.method);
    if (method != Method::mss_operator && method != Method::certificate) {
      throw UsageError("chain modes use --method mss or certificate");
    }
    const JumpLinearSystem sys = build_jump_system(c, resolve_chain(app, o, mode));
    verdict = mss_verdict(sys);
    if (method == Method::certificate || !o.cert_file.empty()) {
      const CertifyResult cert = certify(sys);
      const Status from_cert = cert.outcome == CertifyOutcome::certified ? Status::stable
                               : cert.outcome == CertifyOutcome::diverged ? Status::unstable
                                                                          : Status::marginal;
      if (method == Method::certificate) {
        if (verdict.status != Status::marginal && from_cert != Status::marginal && from_cert != verdict.status) {
          err << "warning: certificate and operator radius disagree\n";
          verdict.status = Status::marginal;
        } else {
          verdict.status = from_cert;
        }
        verdict.method = Method::certificate;
      }
      if (!o.cert_file.empty()) {
        if (cert.certificate) {
          write_file(o.cert_file, certificate_to_json(*cert.certificate).dump(2) + "\n");
        } else {
          err << "no certificate written: " << outcome_name(cert.outcome) << "\n";
        }
      }
    }
  }
  out << to_string(verdict.status) << ' ' << (verdict.rho ? fmt(*verdict.rho) : std::string("nan")) << ' '
      << to_string(verdict.method) << "\n";
  return exit_code(verdict.status);
}

int cmd_sweep(const CLI::App* app, const Options& o, std::ostream& out, std::ostream& err) {
  const std::vector<double> xi_axis = parse_range(o.xi_range, "xi");
  const std::vector<double> omega_axis = parse_range(o.omega_range, "omega");
  SweepRecipe recipe;
  recipe.kind = parse_controller_kind(o.controller);
  const Mode mode = delay_mode(app);
  if (mode == Mode::fixed) {
    recipe.fixed_delay = o.fixed_delay;
    if (!o.method.empty()) recipe.fixed_method = parse_method(o.method);
  } else {
    recipe.chain = resolve_chain(app, o, mode);
  }
  RegionGrid grid;
  try {
    grid = o.serial ? sweep_serial(recipe, xi_axis, omega_axis) : sweep(recipe, xi_axis, omega_axis);
  } catch (const ContractViolation& e) {
    throw UsageError(e.what());
  }
  std::ostringstream csv;
  write_region_csv(csv, grid);
  std::ostream& info = emit(o, csv.str(), out, err);
  if (!o.compare.empty()) {
    std::istringstream other_csv(read_file(o.compare));
    const RegionGrid other = read_region_csv(other_csv);
    info << "subset: " << (region_subset(grid, other) ? "true" : "false") << "\n";
  }
  return kExitStable;
}

int cmd_simulate_chain(const CLI::App* app, const Options& o, std::ostream& out, std::ostream& err) {
  if (!given(app, "--dist")) throw UsageError("simulate chain needs --dist");
  if (o.runs < 1000) throw UsageError("--runs must be at least 1000");
  const DelayDistribution d = make_distribution(app, o);
  TruncationOptions topts;
  topts.eps = o.eps;
  topts.step = o.step;
  const int tau_p = given(app, "--taup") ? o.taup : choose_truncation(d, topts);
  const EmpiricalChain emp = estimate_chain(resample(gen_omd(d, o.runs, o.seed)), tau_p);
  const DelayChain analytic = build_transition(d, tau_p);
  std::ostream& info = emit(o, chain_to_json(emp).dump(2) + "\n", out, err);
  info << "tau_p " << tau_p << "\n";
  info << "e_hat " << fmt(emp.e_hat) << "\n";
  info << "e_tau " << fmt(analytic.e_tau) << "\n";
  info << "max_abs_diff " << fmt(emp.max_abs_diff(analytic.P)) << "\n";
  return kExitStable;
}

Vector parse_x0(const std::string& text, int size) {
  if (text.empty()) return Vector::Ones(size);
  std::vector<double> values;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    try {
      values.push_back(std::stod(token));
    } catch (const std::exception&) {
      throw UsageError("bad --x0 value \"" + token + "\"");
    }
  }
  if (static_cast<int>(values.size()) != size) {
    throw UsageError("--x0 needs " + std::to_string(size) + " comma-separated values");
  }
  return Eigen::Map<Vector>(values.data(), size);
}

int cmd_simulate_traj(const CLI::App* app, const Options& o, std::ostream& out, std::ostream& err) {
  if (o.steps < 1) throw UsageError("--steps must be positive");
  const ControllerSpec c = make_controller(app, o);
  const Mode mode = delay_mode(app);
  std::vector<int> taus;
  int tau_max = 0;
  switch (mode) {
    case Mode::fixed:
      if (o.fixed_delay < 0) throw UsageError("--fixed-delay must be >= 0");
      taus.assign(static_cast<size_t>(o.steps), o.fixed_delay);
      tau_max = o.fixed_delay;
      break;
    case Mode::sampling:
      if (o.sampling < 1) throw UsageError("--sampling must be >= 1");
      for (long t = 0; t < o.steps; ++t) taus.push_back(static_cast<int>(t % (o.sampling + 1)));
      tau_max = o.sampling;
      break;
    case Mode::chain_file: {
      const DelayChain chain = resolve_chain(app, o, mode);
      taus = sample_chain_path(chain, o.steps, o.seed);
      tau_max = chain.tau_p;
      break;
    }
    case Mode::distribution: {
      taus = resample(gen_omd(make_distribution(app, o), o.steps, o.seed));
      for (int t : taus) tau_max = std::max(tau_max, t);
      break;
    }
  }
  const Vector x0 = parse_x0(o.x0, tau_max + 1);
  // noise uses its own stream so the delay path does not shift with --noise
  const Trajectory traj = run_trajectory(c, taus, o.steps, x0, o.noise, o.seed ^ 0x6E6F697365ULL);
  std::ostringstream csv;
  write_trajectory_csv(csv, traj);
  std::ostream& info = emit(o, csv.str(), out, err);
  info << (traj.diverged ? "diverged" : traj.converged ? "converged" : "bounded") << "\n";
  return kExitStable;
}

int cmd_mixed(const CLI::App* app, const Options& o, std::ostream& out, std::ostream& err) {
  if (!o.q) throw UsageError("mixed needs --q");
  if (!given(app, "--dist")) throw UsageError("mixed needs --dist");
  const DelayDistribution d = make_distribution(app, o);
  const DelayDistribution product = product_delay_dist(d, ProductMix{*o.q});
  const DelayChain chain = chain_from_distribution(app, o);
  Json j = chain_to_json(chain);
  j["product_etas"] = product.etas;
  std::ostream& info = emit(o, j.dump(2) + "\n", out, err);
  info << "tau_p " << chain.tau_p << "\n";
  info << "e_tau " << fmt(chain.e_tau) << "\n";
  return kExitStable;
}

// Appends "--key value" for every key of the --config JSON object that is
// not already on the command line.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> kept;
  std::string path;
  for (size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config") {
      if (k + 1 >= args.size()) throw UsageError("--config needs a file");
      path = args[++k];
    } else if (args[k].rfind("--config=", 0) == 0) {
      path = args[k].substr(9);
    } else {
      kept.push_back(args[k]);
    }
  }
  if (path.empty()) return kept;
  Json cfg;
  try {
    cfg = Json::parse(read_file(path));
  } catch (const Json::exception& e) {
    throw UsageError("invalid config " + path + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
  if (!cfg.is_object()) throw UsageError("config must be a JSON object");
  if (cfg.contains("command") && (kept.empty() || kept.front().rfind("-", 0) == 0)) {
    std::istringstream words(cfg["command"].get<std::string>());
    std::vector<std::string> head;
    std::string w;
    while (words >> w) head.push_back(w);
    kept.insert(kept.begin(), head.begin(), head.end());
  }
  for (const auto& [key, value] : cfg.items()) {
    if (key == "command") continue;
    const std::string flag = "--" + key;
    bool present = false;
    for (const std::string& a : kept) present = present || a == flag || a.rfind(flag + "=", 0) == 0;
    if (present) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) kept.push_back(flag);
    } else if (value.is_string()) {
      kept.push_back(flag);
      kept.push_back(value.get<std::string>());
    } else if (value.is_number()) {
      kept.push_back(flag);
      kept.push_back(value.dump());
    } else {
      throw UsageError("config key \"" + key + "\" must be a string, number or boolean");
    }
  }
  return kept;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  try {
    args = expand_config(raw_args);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  Options o;
  CLI::App app{"Stability of EWMA run-to-run controllers under metrology delay", "r2r"};
  app.require_subcommand(1);
  app.add_option("--config", "JSON file with option values");

  CLI::App* chain = app.add_subcommand("chain", "Build a delay chain and print its average delay");
  add_dist_options(chain, o);
  add_mode_options(chain, o, false);
  chain->add_option("--q", o.q, "Product share for a mixed-product chain");
  chain->add_option("--out", o.out, "Output JSON path");

  CLI::App* stationary = app.add_subcommand("stationary", "Stationary distribution of a chain");
  add_dist_options(stationary, o);
  add_mode_options(stationary, o, true);
  stationary->add_option("--q", o.q, "Product share");
  stationary->add_option("--out", o.out, "Output JSON path");

  CLI::App* stability = app.add_subcommand("stability", "Stability verdict for one controller");
  add_dist_options(stability, o);
  add_mode_options(stability, o, true);
  add_controller_options(stability, o, true);
  stability->add_option("--q", o.q, "Product share");
  stability->add_option("--method", o.method, "jury | routh | roots | mss | certificate");
  stability->add_option("--cert", o.cert_file, "Write the Lyapunov certificate here");
  stability->add_option("--out", o.out, "Unused; accepted for uniformity");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Stability region over a (xi, omega) grid");
  add_dist_options(sweep_cmd, o);
  add_mode_options(sweep_cmd, o, true);
  add_controller_options(sweep_cmd, o, false);
  sweep_cmd->add_option("--q", o.q, "Product share");
  sweep_cmd->add_option("--method", o.method, "Fixed-delay method: jury | routh | roots");
  sweep_cmd->add_option("--xi-range", o.xi_range, "lo:hi:step");
  sweep_cmd->add_option("--omega-range", o.omega_range, "lo:hi:step");
  sweep_cmd->add_option("--compare", o.compare, "Region CSV to test containment against");
  sweep_cmd->add_flag("--serial", o.serial, "Evaluate cells on one thread");
  sweep_cmd->add_option("--out", o.out, "Output CSV path");

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo delay chains and trajectories");
  simulate->require_subcommand(1);
  CLI::App* sim_chain = simulate->add_subcommand("chain", "Empirical chain from simulated delays");
  add_dist_options(sim_chain, o);
  sim_chain->add_option("--runs", o.runs, "Number of production runs");
  sim_chain->add_option("--seed", o.seed, "Random seed (default 0)");
  sim_chain->add_option("--out", o.out, "Output JSON path");
  CLI::App* sim_traj = simulate->add_subcommand("traj", "Closed-loop state trajectory");
  add_dist_options(sim_traj, o);
  add_mode_options(sim_traj, o, true);
  add_controller_options(sim_traj, o, true);
  sim_traj->add_option("--steps", o.steps, "Number of runs");
  sim_traj->add_option("--noise", o.noise, "Gaussian noise sigma on the newest state");
  sim_traj->add_option("--x0", o.x0, "Initial state, comma separated (default ones)");
  sim_traj->add_option("--seed", o.seed, "Random seed (default 0)");
  sim_traj->add_option("--out", o.out, "Output CSV path");

  CLI::App* mixed = app.add_subcommand("mixed", "Per-product delay distribution and chain");
  add_dist_options(mixed, o);
  mixed->add_option("--q", o.q, "Product share");
  mixed->add_option("--out", o.out, "Output JSON path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitStable;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (chain->parsed()) return cmd_chain(chain, o, out, err);
    if (stationary->parsed()) return cmd_stationary(stationary, o, out, err);
    if (stability->parsed()) return cmd_stability(stability, o, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_cmd, o, out, err);
    if (sim_chain->parsed()) return cmd_simulate_chain(sim_chain, o, out, err);
    if (sim_traj->parsed()) return cmd_simulate_traj(sim_traj, o, out, err);
    if (mixed->parsed()) return cmd_mixed(mixed, o, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "error: no command\n";
  return kExitUsage;
}

}  // namespace r2r::cli
