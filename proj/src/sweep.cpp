#include "r2r/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace r2r {

void RegionGrid::validate() const {
  auto increasing = [](const std::vector<double>& axis) {
    if (axis.empty()) return false;
    for (size_t k = 1; k < axis.size(); ++k) {
      if (!(axis[k] > axis[k - 1])) return false;
    }
    return true;
  };
  if (!increasing(xi_axis) || !increasing(omega_axis)) {
    throw ContractViolation("RegionGrid: axes must be non-empty and strictly increasing");
  }
  if (cells.size() != xi_axis.size() * omega_axis.size()) {
    throw ContractViolation("RegionGrid: cell count does not match axes");
  }
}

std::vector<double> make_axis(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw ContractViolation("make_axis: need step > 0 and hi >= lo");
  const long count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> axis(static_cast<size_t>(count));
  for (long k = 0; k < count; ++k) axis[static_cast<size_t>(k)] = lo + static_cast<double>(k) * step;
  return axis;
}

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 1) throw ContractViolation("linspace: count must be >= 1");
  if (count == 1) return {lo};
  std::vector<double> axis(static_cast<size_t>(count));
  for (int k = 0; k < count; ++k) axis[static_cast<size_t>(k)] = lo + (hi - lo) * k / (count - 1);
  return axis;
}

std::vector<double> default_xi_axis() { return make_axis(0.02, 4.0, 0.02); }
std::vector<double> default_omega_axis() { return make_axis(0.01, 1.0, 0.01); }

void SweepRecipe::validate() const {
  if (fixed_delay.has_value() == chain.has_value()) {
    throw ContractViolation("SweepRecipe: give exactly one of fixed delay or chain");
  }
  if (fixed_delay && *fixed_delay < 0) throw ContractViolation("SweepRecipe: negative fixed delay");
}

Verdict evaluate_cell(const SweepRecipe& recipe, double xi, double omega) {
  const ControllerSpec c = ControllerSpec::from_mismatch(recipe.kind, omega, xi);
  if (recipe.fixed_delay) return fixed_delay_stable(c, *recipe.fixed_delay, recipe.fixed_method);
  return mss_verdict(build_jump_system(c, *recipe.chain), recipe.power);
}

namespace {

RegionGrid empty_grid(const SweepRecipe& recipe, const std::vector<double>& xi_axis,
                      const std::vector<double>& omega_axis) {
  recipe.validate();
  RegionGrid grid{xi_axis, omega_axis, std::vector<Status>(xi_axis.size() * omega_axis.size())};
  grid.validate();
  if (xi_axis.front() <= 0.0 || xi_axis.back() > 4.0 + 1e-9 || omega_axis.front() <= 0.0 ||
      omega_axis.back() > 1.0 + 1e-12) {
    throw ContractViolation("sweep: grid must lie within xi in (0, 4], omega in (0, 1]");
  }
  return grid;
}

}  // namespace

RegionGrid sweep(const SweepRecipe& recipe, const std::vector<double>& xi_axis,
                 const std::vector<double>& omega_axis) {
  RegionGrid grid = empty_grid(recipe, xi_axis, omega_axis);
  const long nx = static_cast<long>(xi_axis.size());
  const long total = nx * static_cast<long>(omega_axis.size());
  bool failed = false;
  std::string message;
#pragma omp parallel for schedule(dynamic, 16)
  for (long k = 0; k < total; ++k) {
    try {
      grid.cells[static_cast<size_t>(k)] =
          evaluate_cell(recipe, xi_axis[static_cast<size_t>(k % nx)], omega_axis[static_cast<size_t>(k / nx)]).status;
    } catch (const std::exception& e) {
#pragma omp critical(r2r_sweep_error)
      {
        if (!failed) message = e.what();
        failed = true;
      }
    }
  }
  if (failed) throw std::runtime_error("sweep: " + message);
  return grid;
}

RegionGrid sweep_serial(const SweepRecipe& recipe, const std::vector<double>& xi_axis,
                        const std::vector<double>& omega_axis) {
  RegionGrid grid = empty_grid(recipe, xi_axis, omega_axis);
  for (size_t o = 0; o < omega_axis.size(); ++o) {
    for (size_t x = 0; x < xi_axis.size(); ++x) {
      grid.cells[grid.index(x, o)] = evaluate_cell(recipe, xi_axis[x], omega_axis[o]).status;
    }
  }
  return grid;
}

namespace {

void require_same_axes(const RegionGrid& a, const RegionGrid& b) {
  a.validate();
  b.validate();
  auto same = [](const std::vector<double>& u, const std::vector<double>& v) {
    if (u.size() != v.size()) return false;
    for (size_t k = 0; k < u.size(); ++k) {
      if (std::abs(u[k] - v[k]) > 1e-9 * std::max(1.0, std::abs(u[k]))) return false;
    }
    return true;
  };
  if (!same(a.xi_axis, b.xi_axis) || !same(a.omega_axis, b.omega_axis)) {
    throw ContractViolation("region comparison: axes differ");
  }
}

}  // namespace

bool region_subset(const RegionGrid& a, const RegionGrid& b) {
  require_same_axes(a, b);
  for (size_t k = 0; k < a.cells.size(); ++k) {
    if (a.cells[k] == Status::stable && b.cells[k] == Status::unstable) return false;
  }
  return true;
}

std::size_t region_conflicts(const RegionGrid& a, const RegionGrid& b) {
  require_same_axes(a, b);
  std::size_t count = 0;
  for (size_t k = 0; k < a.cells.size(); ++k) {
    const Status x = a.cells[k];
    const Status y = b.cells[k];
    if (x != Status::marginal && y != Status::marginal && x != y) ++count;
  }
  return count;
}

}  // namespace r2r
