#pragma once

#include <optional>
#include <vector>

#include "r2r/numerics.hpp"

namespace r2r {

enum class DistSource { poisson, explicit_list };

/// Per-run report-delay probabilities eta_0..eta_K plus the probability that
/// a run is never measured. Mass beyond K (a discarded Poisson tail) is
/// treated as "delay longer than K".
struct DelayDistribution {
  std::vector<double> etas;
  double p_nm = 0.0;
  DistSource source = DistSource::explicit_list;
  double lambda = 0.0;        // Poisson mean, when source == poisson
  bool tail_warning = false;  // stored list discards more than 1e-6 of mass

  double eta(int j) const;
  double stored_mass() const;
  /// Probability that a measured run reports after more than i runs.
  double tail_after(int i) const;
  void validate() const;
};

/// Poisson pmf truncated at k_max. Sets tail_warning when the discarded tail
/// exceeds 1e-6.
DelayDistribution poisson_etas(double lambda, int k_max);
/// Poisson pmf cut at the smallest k whose cumulative mass is >= 1 - 1e-10.
DelayDistribution poisson_etas(double lambda);

DelayDistribution explicit_etas(std::vector<double> etas, double p_nm);

/// Truncated metrology-delay Markov chain on states 0..tau_p.
struct DelayChain {
  int tau_p = 0;
  Matrix P;
  Vector pi;
  double e_tau = 0.0;

  // Provenance, carried into the JSON form.
  std::optional<DelayDistribution> dist;
  std::optional<double> mix_q;
  std::optional<int> sampling_d;
  bool empirical = false;
  bool renorm_warning = false;  // last-row renormalization rescaled by > 10%

  int states() const { return tau_p + 1; }
};

/// Transition matrix with the last row as printed before renormalization:
/// p_{tau_p, j} = (1 - p_nm) eta_j for j <= tau_p.
Matrix raw_transition(const DelayDistribution& d, int tau_p);

/// Row-stochastic truncated transition matrix, stationary vector and
/// average delay.
DelayChain build_transition(const DelayDistribution& d, int tau_p);

/// Unique pi with pi P = pi and sum(pi) = 1, by direct elimination. Throws
/// std::runtime_error("reducible chain") when the solution is not unique.
Vector stationary(const Matrix& P);

double expected_delay(const Vector& pi);

struct TruncationOptions {
  double eps = 1e-3;
  int step = 5;  // scan stride used to locate the converged average delay
  int max_tau = 512;
};

/// Smallest tau_p whose average delay agrees with the converged limit when
/// both are rounded to eps relative to the limit's leading decade
/// (eps = 1e-3 is four significant digits). Throws "delay tail too heavy"
/// when no limit is found by max_tau.
int choose_truncation(const DelayDistribution& d, const TruncationOptions& opts = {});
int choose_truncation(const DelayDistribution& d, double eps);

/// Fixed-sampling chain: d + 1 states, i -> i + 1 for i < d, d -> 0.
DelayChain sampling_chain(int d);

/// Chain whose realized delay settles at f and stays there: i -> i + 1 for
/// i < f, f -> f.
DelayChain fixed_delay_chain(int f);

/// Wraps an arbitrary row-stochastic matrix (within 1e-9) as a chain.
DelayChain chain_from_matrix(const Matrix& P);

bool is_row_stochastic(const Matrix& P, double tol);

}  // namespace r2r
