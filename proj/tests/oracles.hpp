#pragma once

// Reference computations written independently of the library code paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "r2r/controller.hpp"

namespace oracle {

/// Durand-Kerner iteration from the start points (0.4 + 0.9i)^k.
inline std::vector<std::complex<double>> durand_kerner(std::vector<double> ascending) {
  const int n = static_cast<int>(ascending.size()) - 1;
  const double lead = ascending.back();
  for (double& c : ascending) c /= lead;
  auto eval = [&](std::complex<double> z) {
    std::complex<double> acc = 0.0;
    for (int k = n; k >= 0; --k) acc = acc * z + ascending[static_cast<size_t>(k)];
    return acc;
  };
  std::vector<std::complex<double>> roots(static_cast<size_t>(n));
  const std::complex<double> seed(0.4, 0.9);
  std::complex<double> power = 1.0;
  for (int k = 0; k < n; ++k) {
    roots[static_cast<size_t>(k)] = power;
    power *= seed;
  }
  for (int iter = 0; iter < 5000; ++iter) {
    double moved = 0.0;
    for (int i = 0; i < n; ++i) {
      std::complex<double> denom = 1.0;
      for (int j = 0; j < n; ++j) {
        if (j != i) denom *= roots[static_cast<size_t>(i)] - roots[static_cast<size_t>(j)];
      }
      const std::complex<double> step = eval(roots[static_cast<size_t>(i)]) / denom;
      roots[static_cast<size_t>(i)] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-15) break;
  }
  return roots;
}

inline double max_root_modulus(const std::vector<double>& ascending) {
  double m = 0.0;
  for (auto r : durand_kerner(ascending)) m = std::max(m, std::abs(r));
  return m;
}

/// Larger root of z^2 + p z + q.
inline std::complex<double> quadratic_root(double p, double q) {
  const std::complex<double> disc = std::sqrt(std::complex<double>(p * p - 4.0 * q));
  return (-p + disc) / 2.0;
}

/// Matrix of the second-moment operator built one basis matrix at a time:
/// column (j, k, l) holds T(E_kl placed in mode j).
inline r2r::Matrix brute_force_lifted(const r2r::JumpLinearSystem& sys) {
  const int m = sys.mode_count();
  const int n = sys.n;
  const int n2 = n * n;
  r2r::Matrix out = r2r::Matrix::Zero(m * n2, m * n2);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        r2r::Matrix e = r2r::Matrix::Zero(n, n);
        e(k, l) = 1.0;
        for (int i = 0; i < m; ++i) {
          const double p = sys.mode_P(i, j);
          if (p == 0.0) continue;
          const r2r::Matrix& x = sys.step_matrix(i, j);
          r2r::Matrix y = r2r::Matrix::Zero(n, n);
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
              for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s) y(a, b) += x(r, a) * e(r, s) * x(s, b);
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) out(i * n2 + a + b * n, j * n2 + k + l * n) += p * y(a, b);
        }
      }
    }
  }
  return out;
}

/// Growth rate of ||A^k|| by repeated squaring with rescaling.
inline double growth_rate(const r2r::Matrix& a, int squarings = 40) {
  r2r::Matrix m = a;
  double log_scale = 0.0;
  for (int s = 0; s < squarings; ++s) {
    const double norm = m.norm();
    if (norm == 0.0) return 0.0;
    m /= norm;
    log_scale = 2.0 * (log_scale + std::log(norm));
    m = m * m;
  }
  const double norm = m.norm();
  if (norm == 0.0) return 0.0;
  return std::exp((log_scale + std::log(norm)) / std::pow(2.0, squarings));
}

inline double poisson_pmf(double lambda, int k) {
  double p = std::exp(-lambda);
  for (int j = 1; j <= k; ++j) p *= lambda / j;
  return p;
}

/// Per-product delay of one run for Poisson(1) tool delays:
/// eta'_1 = sum_k e^{-1}/k! (1-q)^{k-1} = (e^{-1}/(1-q)) (e^{1-q} - 1).
inline double product_eta1_poisson1(double q) { return std::exp(-1.0) / (1.0 - q) * (std::exp(1.0 - q) - 1.0); }

/// Probability that i-1 of k-1 runs are the product, by enumerating every
/// placement.
inline double enumerate_binomial(int k, int i, double q) {
  const int slots = k - 1;
  double total = 0.0;
  for (unsigned mask = 0; mask < (1u << slots); ++mask) {
    if (__builtin_popcount(mask) != i - 1) continue;
    total += std::pow(q, i - 1) * std::pow(1.0 - q, slots - (i - 1));
  }
  return total;
}

/// Random row-stochastic matrix with p_ij = 0 for j > i + 1.
inline r2r::Matrix random_banded_stochastic(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  r2r::Matrix p = r2r::Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double total = 0.0;
    for (int j = 0; j <= std::min(i + 1, n - 1); ++j) {
      p(i, j) = u(rng) < 0.2 ? 0.0 : u(rng);
      total += p(i, j);
    }
    if (total == 0.0) {
      p(i, 0) = 1.0;
      total = 1.0;
    }
    p.row(i) /= total;
  }
  return p;
}

}  // namespace oracle
