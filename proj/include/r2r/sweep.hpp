#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "r2r/controller.hpp"
#include "r2r/delay_chain.hpp"
#include "r2r/stability.hpp"

namespace r2r {

/// Tri-state verdicts on a (xi, omega) lattice, stored omega-major:
/// cells[o * xi_axis.size() + x].
struct RegionGrid {
  std::vector<double> xi_axis;
  std::vector<double> omega_axis;
  std::vector<Status> cells;

  std::size_t index(std::size_t xi_idx, std::size_t omega_idx) const {
    return omega_idx * xi_axis.size() + xi_idx;
  }
  Status at(std::size_t xi_idx, std::size_t omega_idx) const { return cells[index(xi_idx, omega_idx)]; }
  void validate() const;
};

/// lo, lo + step, ... up to hi (inclusive within 1e-9 of a step).
std::vector<double> make_axis(double lo, double hi, double step);
/// count evenly spaced values from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, int count);

std::vector<double> default_xi_axis();     // 0.02 .. 4.00 step 0.02
std::vector<double> default_omega_axis();  // 0.01 .. 1.00 step 0.01

/// What to evaluate at each cell: a fixed delay or a delay chain.
struct SweepRecipe {
  ControllerKind kind = ControllerKind::ewma1;
  std::optional<int> fixed_delay;
  std::optional<DelayChain> chain;
  Method fixed_method = Method::jury;
  PowerOptions power;

  void validate() const;
};

Verdict evaluate_cell(const SweepRecipe& recipe, double xi, double omega);

/// Parallel sweep; each cell is written to its own slot so the result does
/// not depend on scheduling.
RegionGrid sweep(const SweepRecipe& recipe, const std::vector<double>& xi_axis,
                 const std::vector<double>& omega_axis);
RegionGrid sweep_serial(const SweepRecipe& recipe, const std::vector<double>& xi_axis,
                        const std::vector<double>& omega_axis);

/// Every stable cell of a is stable in b; marginal cells in either grid are
/// skipped. Throws on mismatched axes.
bool region_subset(const RegionGrid& a, const RegionGrid& b);

/// Cells where one grid says stable and the other unstable.
std::size_t region_conflicts(const RegionGrid& a, const RegionGrid& b);

}  // namespace r2r
