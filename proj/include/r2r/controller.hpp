#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "r2r/delay_chain.hpp"
#include "r2r/numerics.hpp"

namespace r2r {

/// EWMA-I always updates with the latest available output. EWMA-II holds its
/// estimate when no newer output arrived (tau_{t-1} < tau_t).
enum class ControllerKind { ewma1, ewma2 };

std::string_view to_string(ControllerKind kind);
ControllerKind parse_controller_kind(std::string_view text);

struct ControllerSpec {
  ControllerKind kind = ControllerKind::ewma1;
  double omega = 0.5;  // EWMA discount factor, 0 < omega <= 1
  double xi = 1.0;     // plant-model mismatch beta / b
  std::optional<double> beta;
  std::optional<double> b;
  double target = 0.0;

  void validate() const;

  static ControllerSpec from_mismatch(ControllerKind kind, double omega, double xi);
  static ControllerSpec from_gains(ControllerKind kind, double omega, double beta, double b,
                                   double target = 0.0);
};

/// Augmented-state matrix for X = (a_t, a_{t-1}, ..., a_{t-tau_max}).
/// Rows 1..tau_max shift the history. Row 0 applies the EWMA update
/// (1-omega) at column 0 plus omega(1-xi) at column tau_cur, or holds
/// (EWMA-II with tau_prev < tau_cur).
Matrix system_matrix(const ControllerSpec& c, int tau_prev, int tau_cur, int tau_max);

/// Reciprocal closed-loop characteristic polynomial for a fixed delay f:
/// z^{f+1} - (1-omega) z^f - omega(1-xi).
Polynomial char_poly(const ControllerSpec& c, int f);

enum class Reduction { single_index, pair_index };

/// Delay-free jump linear system X_{t+1} = Xi(tau_{t-1}, tau_t) X_t with
/// modes driven by mode_P.
struct JumpLinearSystem {
  int n = 0;  // state dimension
  std::vector<int> modes;
  Matrix mode_P;
  Reduction reduction = Reduction::single_index;
  /// single_index: xi[j] is applied whenever the incoming mode is j.
  /// pair_index: xi[i * m + j] is applied on the transition i -> j; empty
  /// for transitions with zero probability that the controller cannot reach.
  std::vector<Matrix> xi;

  int mode_count() const { return static_cast<int>(modes.size()); }
  const Matrix& step_matrix(int from, int to) const;
  void validate() const;
};

JumpLinearSystem build_jump_system(const ControllerSpec& c, const DelayChain& chain);

/// Generic construction for hand-made systems (tests, cross-checks).
JumpLinearSystem make_jump_system(Matrix mode_P, std::vector<Matrix> xi, Reduction reduction);

}  // namespace r2r
