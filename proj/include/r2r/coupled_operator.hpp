#pragma once

#include <vector>

#include "r2r/controller.hpp"
#include "r2r/numerics.hpp"

namespace r2r {

/// One symmetric matrix per mode.
using MatrixTuple = std::vector<Matrix>;

double tuple_norm(const MatrixTuple& q);

/// Second-moment operator of a jump linear system,
///   T(Q)_i = sum_j p_ij Xi(i, j)^T Q_j Xi(i, j).
/// rho(T) < 1 exactly when the system is mean-square stable.
class CoupledOperator {
 public:
  explicit CoupledOperator(JumpLinearSystem sys);

  int modes() const { return sys_.mode_count(); }
  int dim() const { return sys_.n; }
  const JumpLinearSystem& system() const { return sys_; }
  /// True when every mode matrix is a shift block below a free first row,
  /// which enables the O(n^2) kernel.
  bool structured() const { return structured_; }

  MatrixTuple identity() const;

  /// Fast kernel; modes are evaluated in parallel when large enough.
  MatrixTuple apply(const MatrixTuple& q) const;
  /// Same operator with plain dense products, serial.
  MatrixTuple apply_reference(const MatrixTuple& q) const;

 private:
  void apply_mode(const MatrixTuple& q, const MatrixTuple& w, int i, Matrix& out) const;

  JumpLinearSystem sys_;
  bool structured_ = false;
  std::vector<Vector> first_rows_;  // row 0 of each stored mode matrix
};

/// Dense matrix of T on stacked column-major vec(Q_j); block (i, j) is
/// p_ij kron(Xi(i,j)^T, Xi(i,j)^T). Size m n^2, meant for small systems.
Matrix lifted_operator_matrix(const JumpLinearSystem& sys);

struct PowerOptions {
  double rel_tol = 1e-8;
  long max_iter = 100000;
  int plain_phase = 300;   // iterations before switching to T + s I
  int shift_window = 60;   // ratios averaged for the shift estimate
};

struct OperatorRadius {
  double rho = 0.0;
  bool converged = false;
  long iterations = 0;
};

/// Power iteration from identity tuples, normalized by the total Frobenius
/// norm. Periodic chains put several eigenvalues on the spectral circle; if
/// the plain ratios have not settled the iteration continues on T + s I.
OperatorRadius mss_spectral_radius(const JumpLinearSystem& sys, const PowerOptions& opts = {});
OperatorRadius mss_spectral_radius(const CoupledOperator& op, const PowerOptions& opts = {});

}  // namespace r2r
