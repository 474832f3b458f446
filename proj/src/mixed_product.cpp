#include "r2r/mixed_product.hpp"

#include <cmath>

namespace r2r {

void ProductMix::validate() const {
  if (!(q > 0.0 && q <= 1.0)) throw ContractViolation("ProductMix: q must lie in (0, 1]");
}

double binomial_weight(int k, int i, double q) {
  if (i < 1 || k < 1) throw ContractViolation("binomial_weight: need 1 <= i <= k");
  if (i > k) throw ContractViolation("binomial_weight: i > k");
  if (!(q > 0.0 && q <= 1.0)) throw ContractViolation("binomial_weight: q must lie in (0, 1]");
  const int n = k - 1;
  const int s = i - 1;
  if (q == 1.0) return s == n ? 1.0 : 0.0;
  if (k > 50) {
    const double log_c = std::lgamma(n + 1.0) - std::lgamma(s + 1.0) - std::lgamma(n - s + 1.0);
    return std::exp(log_c + s * std::log(q) + (n - s) * std::log1p(-q));
  }
  double c = 1.0;
  for (int r = 1; r <= s; ++r) c = c * (n - s + r) / r;
  return c * std::pow(q, s) * std::pow(1.0 - q, n - s);
}

DelayDistribution product_delay_dist(const DelayDistribution& d, const ProductMix& mix) {
  d.validate();
  mix.validate();
  const int k_max = static_cast<int>(d.etas.size()) - 1;
  std::vector<double> out(d.etas.size(), 0.0);
  out[0] = d.etas[0];
  for (int i = 1; i <= k_max; ++i) {
    double acc = 0.0;
    for (int k = i; k <= k_max; ++k) acc += d.eta(k) * binomial_weight(k, i, mix.q);
    out[static_cast<size_t>(i)] = acc;
  }
  // Drop trailing entries while the discarded mass stays below 1e-10.
  double dropped = 0.0;
  while (out.size() > 2 && dropped + out.back() < 1e-10) {
    dropped += out.back();
    out.pop_back();
  }
  DelayDistribution result;
  result.etas = std::move(out);
  result.p_nm = d.p_nm;
  result.source = DistSource::explicit_list;
  result.tail_warning = d.tail_warning;
  return result;
}

DelayChain product_chain(const DelayDistribution& d, const ProductMix& mix, int tau_p) {
  DelayChain chain = build_transition(product_delay_dist(d, mix), tau_p);
  chain.dist = d;
  chain.mix_q = mix.q;
  return chain;
}

}  // namespace r2r
