#include "r2r/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace r2r {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::stable:
      return "stable";
    case Status::unstable:
      return "unstable";
    case Status::marginal:
      break;
  }
  return "marginal";
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::jury:
      return "jury";
    case Method::routh_hurwitz:
      return "routh";
    case Method::root_modulus:
      return "roots";
    case Method::mss_operator:
      return "mss";
    case Method::certificate:
      break;
  }
  return "certificate";
}

Method parse_method(std::string_view text) {
  if (text == "jury") return Method::jury;
  if (text == "routh" || text == "routh-hurwitz") return Method::routh_hurwitz;
  if (text == "roots" || text == "root-modulus") return Method::root_modulus;
  if (text == "mss") return Method::mss_operator;
  if (text == "certificate" || text == "cert") return Method::certificate;
  throw ContractViolation("unknown method: " + std::string(text));
}

Status classify_radius(double rho, double band) {
  if (rho < 1.0 - band) return Status::stable;
  if (rho > 1.0 + band) return Status::unstable;
  return Status::marginal;
}

Verdict mss_verdict(const JumpLinearSystem& sys, const PowerOptions& opts) {
  const OperatorRadius r = mss_spectral_radius(sys, opts);
  Verdict v;
  v.method = Method::mss_operator;
  v.rho = r.rho;
  v.status = r.converged ? classify_radius(r.rho, kOperatorMarginalBand) : Status::marginal;
  return v;
}

Verdict fixed_delay_stable(const ControllerSpec& c, int f, Method method) {
  c.validate();
  if (f < 0) throw ContractViolation("fixed_delay_stable: f must be >= 0");
  if (method == Method::mss_operator) {
    return mss_verdict(build_jump_system(c, fixed_delay_chain(f)));
  }
  if (method == Method::certificate) {
    throw ContractViolation("fixed_delay_stable: certificate is not a fixed-delay method");
  }

  const Polynomial h = char_poly(c, f);
  const double rho = poly_roots_max_modulus(h);
  Verdict v;
  v.method = method;
  v.rho = rho;
  if (std::abs(rho - 1.0) <= kRootMarginalBand) {
    v.status = Status::marginal;
    return v;
  }
  bool stable = rho < 1.0;
  bool flagged = false;
  if (method == Method::jury) {
    const RootTest t = jury_test(h);
    stable = t.stable;
    flagged = t.marginal;
  } else if (method == Method::routh_hurwitz) {
    const BilinearImage image = bilinear_image(h);
    if (image.root_at_minus_one || image.w.degree() < 1) {
      flagged = true;
    } else {
      const RootTest t = routh_hurwitz_test(image.w);
      stable = t.stable;
      flagged = t.marginal;
    }
  }
  if (flagged || stable != (rho < 1.0)) {
    v.status = Status::marginal;
  } else {
    v.status = stable ? Status::stable : Status::unstable;
  }
  return v;
}

namespace {

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

double max_block_gap(const CoupledOperator& op, const MatrixTuple& q) {
  const MatrixTuple tq = op.apply(q);
  double worst = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < q.size(); ++i) worst = std::max(worst, sym_eig_max(symmetrized(tq[i] - q[i])));
  return worst;
}

}  // namespace

CertifyResult certify(const JumpLinearSystem& sys, const CertifyOptions& opts) {
  const CoupledOperator op(sys);
  MatrixTuple d = op.identity();
  MatrixTuple q = d;
  CertifyResult result;
  for (long it = 1; it <= opts.max_iter; ++it) {
    d = op.apply(d);
    for (size_t i = 0; i < q.size(); ++i) q[i] += d[i];
    result.iterations = it;
    const double qn = tuple_norm(q);
    if (!std::isfinite(qn) || qn > opts.blowup) {
      result.outcome = CertifyOutcome::diverged;
      return result;
    }
    if (tuple_norm(d) < opts.increment_tol) {
      for (Matrix& m : q) m = symmetrized(m);
      Certificate cert;
      cert.residual = max_block_gap(op, q);
      bool positive = true;
      for (const Matrix& m : q) positive = positive && sym_eig_min(m) > 0.0;
      cert.Q = std::move(q);
      result.outcome = positive && cert.residual < 0.0 ? CertifyOutcome::certified
                                                       : CertifyOutcome::inconclusive;
      result.certificate = std::move(cert);
      return result;
    }
  }
  result.outcome = CertifyOutcome::inconclusive;
  return result;
}

double pairwise_lyapunov_residual(const JumpLinearSystem& sys, const MatrixTuple& q) {
  sys.validate();
  const int m = sys.mode_count();
  if (static_cast<int>(q.size()) != m) throw ContractViolation("pairwise_lyapunov_residual: wrong tuple size");
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    const bool entered = (sys.mode_P.col(i).array() > 0.0).any();
    for (int h = 0; h < m; ++h) {
      if (entered ? sys.mode_P(h, i) == 0.0 : h != i) continue;
      const Matrix& q_hi = q[static_cast<size_t>(i)];
      Matrix l = -q_hi;
      for (int j = 0; j < m; ++j) {
        const double p = sys.mode_P(i, j);
        if (p == 0.0) continue;
        const Matrix& q_ij = q[static_cast<size_t>(j)];
        const Matrix& x = sys.step_matrix(i, j);
        l += p * x.transpose() * q_ij * x;
      }
      worst = std::max(worst, sym_eig_max(symmetrized(l)));
    }
  }
  return worst;
}

double schur_block_residual(const JumpLinearSystem& sys, const MatrixTuple& q) {
  sys.validate();
  const int m = sys.mode_count();
  const int n = sys.n;
  if (static_cast<int>(q.size()) != m) throw ContractViolation("schur_block_residual: wrong tuple size");
  double worst = -std::numeric_limits<double>::infinity();
  const Eigen::Index size = static_cast<Eigen::Index>(n) * (m + 1);
  for (int i = 0; i < m; ++i) {
    Matrix big = Matrix::Zero(size, size);
    big.topLeftCorner(n, n) = -q[static_cast<size_t>(i)];
    for (int j = 0; j < m; ++j) {
      const Eigen::Index off = static_cast<Eigen::Index>(n) * (j + 1);
      const Matrix& q_j = q[static_cast<size_t>(j)];
      big.block(off, off, n, n) = -q_j;
      const double p = sys.mode_P(i, j);
      if (p == 0.0) continue;
      const Matrix upper = std::sqrt(p) * sys.step_matrix(i, j).transpose() * q_j;
      big.block(0, off, n, n) = upper;
      big.block(off, 0, n, n) = upper.transpose();
    }
    worst = std::max(worst, sym_eig_max(symmetrized(big)));
  }
  return worst;
}

}  // namespace r2r
