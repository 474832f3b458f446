#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "r2r/controller.hpp"
#include "r2r/delay_chain.hpp"

namespace r2r {

/// SplitMix64: state += 0x9E3779B97F4A7C15, then the standard xor-shift /
/// multiply finalizer. uniform() takes the top 53 bits; normal() is
/// Box-Muller and caches the second variate.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  double uniform();  // [0, 1)
  double normal();

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

struct OmdSequence {
  static constexpr int kNotMeasured = -1;

  std::vector<int> omd;
  std::uint64_t seed = 0;
  std::string tag;
};

/// Per run: not measured when u < p_nm, else eta drawn by inverse CDF.
/// Draws past the stored list (a discarded tail) become K + 1.
OmdSequence gen_omd(const DelayDistribution& d, long n, std::uint64_t seed);

/// Controller-visible delays. Run 1 has delay 0; afterwards
/// tau_t = t - LRA_t where LRA_t is the latest run k <= t whose metrology
/// (due at k + OMD_k) is in by run t.
std::vector<int> resample(const OmdSequence& omd);
std::vector<int> resample(const std::vector<int>& omd);

struct EmpiricalChain {
  int tau_p = 0;
  Matrix P;
  double e_hat = 0.0;
  std::vector<bool> empty_rows;
  long transitions = 0;

  /// Largest |P_hat - P| over rows that were visited.
  double max_abs_diff(const Matrix& analytic) const;
  DelayChain to_chain() const;
};

/// Transition counts with delays >= tau_p merged into tau_p. Transitions that
/// leave the truncated range are dropped before the row is normalized.
EmpiricalChain estimate_chain(const std::vector<int>& taus, int tau_p);

/// Simulates one delay sequence per seed and estimates its chain.
std::vector<EmpiricalChain> estimate_batch(const DelayDistribution& d, int tau_p, long runs,
                                           const std::vector<std::uint64_t>& seeds);
std::vector<EmpiricalChain> estimate_batch_serial(const DelayDistribution& d, int tau_p, long runs,
                                                  const std::vector<std::uint64_t>& seeds);

/// Markov path of the given length drawn from chain.P.
std::vector<int> sample_chain_path(const DelayChain& chain, long steps, std::uint64_t seed, int start = 0);

inline constexpr double kDivergenceThreshold = 1e9;

struct Trajectory {
  std::vector<Vector> states;  // X_0 .. X_T
  std::vector<int> taus;       // delay applied at each step
  std::vector<double> outputs;  // Y_t, when beta and b are known
  std::vector<double> inputs;   // u_t
  bool diverged = false;
  bool converged = false;
};

/// X_{t+1} = Xi(tau_{t-1}, tau_t) X_t with tau_{-1} = tau_0, plus optional
/// Gaussian noise on component 0. Stops once ||X|| exceeds 1e9. Converged
/// means the last 10% of the norms stay below 1e-3 ||x0||.
Trajectory run_trajectory(const ControllerSpec& c, const std::vector<int>& taus, long steps,
                          const Vector& x0, double noise_sigma = 0.0, std::uint64_t seed = 0);

}  // namespace r2r
