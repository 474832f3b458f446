#pragma once

#include "r2r/delay_chain.hpp"

namespace r2r {

/// Share of tool runs that belong to the product under analysis.
struct ProductMix {
  double q = 1.0;
  void validate() const;
};

/// C(k-1, i-1) q^(i-1) (1-q)^(k-i): probability that i-1 of the k-1 runs
/// following a run are the same product. Evaluated in log space for k > 50.
double binomial_weight(int k, int i, double q);

/// Per-product report-delay distribution. A tool-level delay of k runs is a
/// per-product delay of i runs when i-1 of the intervening runs are this
/// product: eta'_i = sum_{k>=i} eta_k * binomial_weight(k, i, q), eta'_0 = eta_0.
/// p_nm is carried over unchanged.
DelayDistribution product_delay_dist(const DelayDistribution& d, const ProductMix& mix);

/// build_transition applied to the per-product distribution. The returned
/// chain keeps the tool-level distribution in `dist` and records q.
DelayChain product_chain(const DelayDistribution& d, const ProductMix& mix, int tau_p);

}  // namespace r2r
