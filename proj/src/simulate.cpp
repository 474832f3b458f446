#include "r2r/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace r2r {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

OmdSequence gen_omd(const DelayDistribution& d, long n, std::uint64_t seed) {
  if (n < 1) throw ContractViolation("gen_omd: n must be >= 1");
  if (d.etas.empty()) throw ContractViolation("gen_omd: empty eta list");
  if (!(d.p_nm >= 0.0 && d.p_nm <= 1.0)) throw ContractViolation("gen_omd: p_nm outside [0, 1]");
  SplitMix64 rng(seed);
  OmdSequence out;
  out.seed = seed;
  out.tag = d.source == DistSource::poisson ? "poisson" : "explicit";
  out.omd.resize(static_cast<size_t>(n));
  const int k_max = static_cast<int>(d.etas.size()) - 1;
  for (long t = 0; t < n; ++t) {
    if (rng.uniform() < d.p_nm) {
      out.omd[static_cast<size_t>(t)] = OmdSequence::kNotMeasured;
      continue;
    }
    const double u = rng.uniform();
    double cumulative = 0.0;
    int draw = k_max + 1;
    for (int j = 0; j <= k_max; ++j) {
      cumulative += d.etas[static_cast<size_t>(j)];
      if (u < cumulative) {
        draw = j;
        break;
      }
    }
    out.omd[static_cast<size_t>(t)] = draw;
  }
  return out;
}

std::vector<int> resample(const std::vector<int>& omd) {
  const long n = static_cast<long>(omd.size());
  std::vector<int> taus(static_cast<size_t>(n), 0);
  if (n == 0) return taus;
  // usable[t] lists runs whose result can first be used at run t (1-based).
  // A zero delay is usable by its own run.
  std::vector<std::vector<long>> usable(static_cast<size_t>(n) + 1);
  for (long k = 1; k <= n; ++k) {
    const int delay = omd[static_cast<size_t>(k - 1)];
    if (delay == OmdSequence::kNotMeasured) continue;
    if (delay < 0) throw ContractViolation("resample: negative delay");
    const long when = k + delay;
    if (when <= n) usable[static_cast<size_t>(when)].push_back(k);
  }
  long latest = 1;
  for (long t = 2; t <= n; ++t) {
    for (long k : usable[static_cast<size_t>(t)]) latest = std::max(latest, k);
    taus[static_cast<size_t>(t - 1)] = static_cast<int>(t - latest);
  }
  return taus;
}

std::vector<int> resample(const OmdSequence& omd) { return resample(omd.omd); }

double EmpiricalChain::max_abs_diff(const Matrix& analytic) const {
  if (analytic.rows() != P.rows() || analytic.cols() != P.cols()) {
    throw ContractViolation("max_abs_diff: shape mismatch");
  }
  double worst = 0.0;
  for (Eigen::Index i = 0; i < P.rows(); ++i) {
    if (empty_rows[static_cast<size_t>(i)]) continue;
    worst = std::max(worst, (P.row(i) - analytic.row(i)).cwiseAbs().maxCoeff());
  }
  return worst;
}

DelayChain EmpiricalChain::to_chain() const {
  DelayChain chain;
  chain.tau_p = tau_p;
  chain.P = P;
  chain.e_tau = e_hat;
  chain.empirical = true;
  if (std::none_of(empty_rows.begin(), empty_rows.end(), [](bool b) { return b; })) {
    try {
      chain.pi = stationary(P);
    } catch (const std::runtime_error&) {
      chain.pi = Vector();
    }
  }
  return chain;
}

EmpiricalChain estimate_chain(const std::vector<int>& taus, int tau_p) {
  if (taus.size() < 1000) throw ContractViolation("estimate_chain: need at least 1000 delays");
  if (tau_p < 1) throw ContractViolation("estimate_chain: tau_p must be >= 1");
  const int n = tau_p + 1;
  Matrix counts = Matrix::Zero(n, n);
  double clipped_sum = 0.0;
  long transitions = 0;
  for (size_t t = 0; t < taus.size(); ++t) {
    if (taus[t] < 0) throw ContractViolation("estimate_chain: negative delay");
    clipped_sum += std::min(taus[t], tau_p);
    if (t + 1 == taus.size()) break;
    const int next = taus[t + 1];
    if (next > tau_p) continue;
    counts(std::min(taus[t], tau_p), next) += 1.0;
    ++transitions;
  }
  EmpiricalChain out;
  out.tau_p = tau_p;
  out.P = Matrix::Zero(n, n);
  out.empty_rows.assign(static_cast<size_t>(n), false);
  for (int i = 0; i < n; ++i) {
    const double total = counts.row(i).sum();
    if (total == 0.0) {
      out.empty_rows[static_cast<size_t>(i)] = true;
      continue;
    }
    out.P.row(i) = counts.row(i) / total;
  }
  out.e_hat = clipped_sum / static_cast<double>(taus.size());
  out.transitions = transitions;
  return out;
}

namespace {

EmpiricalChain estimate_one(const DelayDistribution& d, int tau_p, long runs, std::uint64_t seed) {
  return estimate_chain(resample(gen_omd(d, runs, seed)), tau_p);
}

}  // namespace

std::vector<EmpiricalChain> estimate_batch(const DelayDistribution& d, int tau_p, long runs,
                                           const std::vector<std::uint64_t>& seeds) {
  std::vector<EmpiricalChain> out(seeds.size());
  const long count = static_cast<long>(seeds.size());
  bool failed = false;
  std::string message;
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < count; ++k) {
    try {
      out[static_cast<size_t>(k)] = estimate_one(d, tau_p, runs, seeds[static_cast<size_t>(k)]);
    } catch (const std::exception& e) {
#pragma omp critical(r2r_batch_error)
      {
        if (!failed) message = e.what();
        failed = true;
      }
    }
  }
  if (failed) throw std::runtime_error("estimate_batch: " + message);
  return out;
}

std::vector<EmpiricalChain> estimate_batch_serial(const DelayDistribution& d, int tau_p, long runs,
                                                  const std::vector<std::uint64_t>& seeds) {
  std::vector<EmpiricalChain> out;
  out.reserve(seeds.size());
  for (std::uint64_t s : seeds) out.push_back(estimate_one(d, tau_p, runs, s));
  return out;
}

std::vector<int> sample_chain_path(const DelayChain& chain, long steps, std::uint64_t seed, int start) {
  if (steps < 1) throw ContractViolation("sample_chain_path: steps must be >= 1");
  if (start < 0 || start > chain.tau_p) throw ContractViolation("sample_chain_path: bad start state");
  SplitMix64 rng(seed);
  std::vector<int> path(static_cast<size_t>(steps));
  int state = start;
  for (long t = 0; t < steps; ++t) {
    path[static_cast<size_t>(t)] = state;
    const double u = rng.uniform();
    double cumulative = 0.0;
    int next = chain.tau_p;
    for (int j = 0; j <= chain.tau_p; ++j) {
      cumulative += chain.P(state, j);
      if (u < cumulative) {
        next = j;
        break;
      }
    }
    // guards against rounding past the last positive entry
    while (chain.P(state, next) == 0.0 && next > 0) --next;
    state = next;
  }
  return path;
}

Trajectory run_trajectory(const ControllerSpec& c, const std::vector<int>& taus, long steps,
                          const Vector& x0, double noise_sigma, std::uint64_t seed) {
  c.validate();
  if (steps < 1) throw ContractViolation("run_trajectory: steps must be >= 1");
  if (x0.size() < 1) throw ContractViolation("run_trajectory: empty initial state");
  if (static_cast<long>(taus.size()) < steps) throw ContractViolation("run_trajectory: delay sequence too short");
  if (noise_sigma < 0.0) throw ContractViolation("run_trajectory: negative noise level");
  const int tau_max = static_cast<int>(x0.size()) - 1;
  for (long t = 0; t < steps; ++t) {
    const int tau = taus[static_cast<size_t>(t)];
    if (tau < 0 || tau > tau_max) throw ContractViolation("run_trajectory: delay exceeds state size");
  }

  SplitMix64 rng(seed);
  const bool gains = c.beta.has_value() && c.b.has_value();
  Trajectory traj;
  traj.states.push_back(x0);
  auto record_signals = [&](const Vector& x) {
    if (!gains) return;
    const double u = (c.target - x(0)) / *c.b;
    traj.inputs.push_back(u);
    traj.outputs.push_back(*c.beta * u);
  };
  record_signals(x0);

  Vector x = x0;
  for (long t = 0; t < steps; ++t) {
    const int tau = taus[static_cast<size_t>(t)];
    const int prev = t == 0 ? tau : taus[static_cast<size_t>(t - 1)];
    x = system_matrix(c, prev, tau, tau_max) * x;
    if (noise_sigma > 0.0) x(0) += noise_sigma * rng.normal();
    traj.taus.push_back(tau);
    traj.states.push_back(x);
    record_signals(x);
    if (!(x.norm() <= kDivergenceThreshold)) {
      traj.diverged = true;
      break;
    }
  }

  if (!traj.diverged) {
    const size_t total = traj.states.size();
    const size_t window = std::max<size_t>(1, total / 10);
    double tail_max = 0.0;
    for (size_t k = total - window; k < total; ++k) tail_max = std::max(tail_max, traj.states[k].norm());
    traj.converged = tail_max < 1e-3 * x0.norm() || (x0.norm() == 0.0 && tail_max == 0.0);
  }
  return traj;
}

}  // namespace r2r
