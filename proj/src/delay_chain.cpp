#include "r2r/delay_chain.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace r2r {

double DelayDistribution::eta(int j) const {
  if (j < 0 || static_cast<size_t>(j) >= etas.size()) return 0.0;
  return etas[static_cast<size_t>(j)];
}

double DelayDistribution::stored_mass() const {
  return std::accumulate(etas.begin(), etas.end(), 0.0);
}

double DelayDistribution::tail_after(int i) const {
  double tail = std::max(0.0, 1.0 - stored_mass());
  for (size_t k = static_cast<size_t>(std::max(i + 1, 0)); k < etas.size(); ++k) tail += etas[k];
  return tail;
}

void DelayDistribution::validate() const {
  if (etas.empty()) throw ContractViolation("DelayDistribution: empty eta list");
  for (double e : etas) {
    if (!(e >= 0.0 && e <= 1.0)) throw ContractViolation("DelayDistribution: eta outside [0, 1]");
  }
  if (!(p_nm >= 0.0 && p_nm < 1.0)) throw ContractViolation("DelayDistribution: p_nm outside [0, 1)");
  const double mass = stored_mass();
  if (mass > 1.0 + 1e-9) throw ContractViolation("DelayDistribution: eta sums above 1");
  if (mass < 1.0 - 1e-6 && !tail_warning) {
    throw ContractViolation("DelayDistribution: eta sums below 1 - 1e-6");
  }
}

DelayDistribution poisson_etas(double lambda, int k_max) {
  if (!(lambda > 0.0)) throw ContractViolation("poisson_etas: lambda must be positive");
  if (k_max < 1) throw ContractViolation("poisson_etas: k_max must be >= 1");
  DelayDistribution d;
  d.source = DistSource::poisson;
  d.lambda = lambda;
  d.etas.resize(static_cast<size_t>(k_max) + 1);
  for (int j = 0; j <= k_max; ++j) {
    d.etas[static_cast<size_t>(j)] = std::exp(-lambda + j * std::log(lambda) - std::lgamma(j + 1.0));
  }
  d.tail_warning = 1.0 - d.stored_mass() > 1e-6;
  return d;
}

DelayDistribution poisson_etas(double lambda) {
  if (!(lambda > 0.0)) throw ContractViolation("poisson_etas: lambda must be positive");
  double cumulative = 0.0;
  int k = 0;
  for (;; ++k) {
    cumulative += std::exp(-lambda + k * std::log(lambda) - std::lgamma(k + 1.0));
    if (cumulative >= 1.0 - 1e-10 || k > 100000) break;
  }
  return poisson_etas(lambda, std::max(k, 1));
}

DelayDistribution explicit_etas(std::vector<double> etas, double p_nm) {
  DelayDistribution d;
  d.etas = std::move(etas);
  d.p_nm = p_nm;
  d.source = DistSource::explicit_list;
  d.validate();
  return d;
}

Matrix raw_transition(const DelayDistribution& d, int tau_p) {
  d.validate();
  if (tau_p < 1) throw ContractViolation("build_transition: tau_p must be >= 1");
  const int n = tau_p + 1;
  const double measured = 1.0 - d.p_nm;
  Matrix P = Matrix::Zero(n, n);
  for (int i = 0; i < tau_p; ++i) {
    for (int j = 0; j <= i; ++j) P(i, j) = measured * d.eta(j);
    P(i, i + 1) = d.p_nm + measured * d.tail_after(i);
  }
  for (int j = 0; j <= tau_p; ++j) P(tau_p, j) = measured * d.eta(j);
  return P;
}

DelayChain build_transition(const DelayDistribution& d, int tau_p) {
  DelayChain chain;
  chain.tau_p = tau_p;
  chain.P = raw_transition(d, tau_p);
  const double row_mass = chain.P.row(tau_p).sum();
  if (!(row_mass > 0.0)) {
    throw std::runtime_error("build_transition: no delay mass at or below tau_p");
  }
  chain.P.row(tau_p) /= row_mass;
  chain.renorm_warning = row_mass / (1.0 - d.p_nm) < 1.0 / 1.1;
  chain.pi = stationary(chain.P);
  chain.e_tau = expected_delay(chain.pi);
  chain.dist = d;
  return chain;
}

Vector stationary(const Matrix& P) {
  if (P.rows() != P.cols() || P.rows() == 0) throw ContractViolation("stationary: P must be square");
  const Eigen::Index n = P.rows();
  if (n == 1) return Vector::Ones(1);
  Matrix A = P.transpose() - Matrix::Identity(n, n);
  A.row(n - 1).setOnes();
  Vector b = Vector::Zero(n);
  b(n - 1) = 1.0;
  Eigen::FullPivLU<Matrix> lu(A);
  lu.setThreshold(1e-12);
  if (lu.rank() < n) throw std::runtime_error("reducible chain");
  Vector pi = lu.solve(b);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (pi(i) < 0.0) pi(i) = 0.0;  // rounding below zero only
  }
  pi /= pi.sum();
  return pi;
}

double expected_delay(const Vector& pi) {
  double e = 0.0;
  for (Eigen::Index j = 0; j < pi.size(); ++j) e += static_cast<double>(j) * pi(j);
  return e;
}

int choose_truncation(const DelayDistribution& d, const TruncationOptions& opts) {
  if (!(opts.eps > 0.0)) throw ContractViolation("choose_truncation: eps must be positive");
  if (opts.step < 1) throw ContractViolation("choose_truncation: step must be >= 1");
  std::map<int, double> cache;
  auto average_delay = [&](int tau_p) {
    auto it = cache.find(tau_p);
    if (it != cache.end()) return it->second;
    const double e = build_transition(d, tau_p).e_tau;
    cache.emplace(tau_p, e);
    return e;
  };
  auto quantum = [&](double e) {
    if (std::abs(e) < opts.eps) return opts.eps;
    return opts.eps * std::pow(10.0, std::floor(std::log10(std::abs(e))));
  };

  int tau = 1;
  double prev = average_delay(tau);
  double limit = 0.0;
  for (;;) {
    const int next_tau = tau + opts.step;
    if (next_tau > opts.max_tau) throw std::runtime_error("delay tail too heavy");
    const double e = average_delay(next_tau);
    if (std::abs(e - prev) < 1e-4 * quantum(e)) {
      limit = e;
      break;
    }
    tau = next_tau;
    prev = e;
  }

  const double q = quantum(limit);
  const long long target = std::llround(limit / q);
  for (int t = 1;; ++t) {
    if (std::llround(average_delay(t) / q) == target) return t;
  }
}

int choose_truncation(const DelayDistribution& d, double eps) {
  TruncationOptions opts;
  opts.eps = eps;
  return choose_truncation(d, opts);
}

namespace {

DelayChain finish_chain(Matrix P) {
  DelayChain chain;
  chain.tau_p = static_cast<int>(P.rows()) - 1;
  chain.pi = stationary(P);
  chain.e_tau = expected_delay(chain.pi);
  chain.P = std::move(P);
  return chain;
}

}  // namespace

DelayChain sampling_chain(int d) {
  if (d < 1) throw ContractViolation("sampling_chain: d must be >= 1");
  Matrix P = Matrix::Zero(d + 1, d + 1);
  for (int i = 0; i < d; ++i) P(i, i + 1) = 1.0;
  P(d, 0) = 1.0;
  DelayChain chain = finish_chain(std::move(P));
  chain.sampling_d = d;
  return chain;
}

DelayChain fixed_delay_chain(int f) {
  if (f < 0) throw ContractViolation("fixed_delay_chain: f must be >= 0");
  Matrix P = Matrix::Zero(f + 1, f + 1);
  for (int i = 0; i < f; ++i) P(i, i + 1) = 1.0;
  P(f, f) = 1.0;
  return finish_chain(std::move(P));
}

bool is_row_stochastic(const Matrix& P, double tol) {
  if (P.rows() != P.cols() || P.rows() == 0) return false;
  if (!P.allFinite() || (P.array() < -tol).any() || (P.array() > 1.0 + tol).any()) return false;
  for (Eigen::Index i = 0; i < P.rows(); ++i) {
    if (std::abs(P.row(i).sum() - 1.0) > tol) return false;
  }
  return true;
}

DelayChain chain_from_matrix(const Matrix& P) {
  if (!is_row_stochastic(P, 1e-9)) {
    throw ContractViolation("chain_from_matrix: matrix is not row-stochastic");
  }
  Matrix Q = P.cwiseMax(0.0);
  for (Eigen::Index i = 0; i < Q.rows(); ++i) Q.row(i) /= Q.row(i).sum();
  return finish_chain(std::move(Q));
}

}  // namespace r2r
