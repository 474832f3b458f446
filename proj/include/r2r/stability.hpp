#pragma once

#include <optional>
#include <string_view>

#include "r2r/controller.hpp"
#include "r2r/coupled_operator.hpp"

namespace r2r {

enum class Status { stable, unstable, marginal };
enum class Method { jury, routh_hurwitz, root_modulus, mss_operator, certificate };

std::string_view to_string(Status s);
std::string_view to_string(Method m);
Method parse_method(std::string_view text);

/// Operator radii within this distance of 1 are reported as marginal.
inline constexpr double kOperatorMarginalBand = 1e-4;

struct Verdict {
  Status status = Status::marginal;
  std::optional<double> rho;
  Method method = Method::jury;
};

/// Fixed delay f: roots of z^{f+1} - (1-omega) z^f - omega(1-xi). rho is the
/// largest root modulus. A verdict that contradicts rho outside the band is
/// reported marginal.
Verdict fixed_delay_stable(const ControllerSpec& c, int f, Method method = Method::jury);

Status classify_radius(double rho, double band);

Verdict mss_verdict(const JumpLinearSystem& sys, const PowerOptions& opts = {});

struct Certificate {
  MatrixTuple Q;          // indexed by current delay
  double residual = 0.0;  // max_i lambda_max(T(Q)_i - Q_i)
};

enum class CertifyOutcome { certified, diverged, inconclusive };

struct CertifyOptions {
  double increment_tol = 1e-10;
  double blowup = 1e12;
  long max_iter = 1000000;
};

struct CertifyResult {
  CertifyOutcome outcome = CertifyOutcome::inconclusive;
  std::optional<Certificate> certificate;
  long iterations = 0;
};

/// Q = sum_k T^k(I), accumulated until the increments vanish. Divergence of
/// the sum means no certificate exists.
CertifyResult certify(const JumpLinearSystem& sys, const CertifyOptions& opts = {});

/// Coupled inequality with pair-indexed Q(h, i) := Q_i, evaluated directly:
/// max over (h, i) with p_hi > 0 of
///   lambda_max(sum_j p_ij Xi(i,j)^T Q(i,j) Xi(i,j) - Q(h,i)).
double pairwise_lyapunov_residual(const JumpLinearSystem& sys, const MatrixTuple& q);

/// Largest eigenvalue over modes i of the block matrix
///   [[-Q_i, Xibar_i^T V_i Qhat_i], [Qhat_i V_i^T Xibar_i, -Qhat_i]],
/// which is negative definite iff the mode-i inequality holds.
double schur_block_residual(const JumpLinearSystem& sys, const MatrixTuple& q);

}  // namespace r2r
