#include "r2r/controller.hpp"

#include <cmath>
#include <string>

namespace r2r {

std::string_view to_string(ControllerKind kind) {
  return kind == ControllerKind::ewma1 ? "ewma1" : "ewma2";
}

ControllerKind parse_controller_kind(std::string_view text) {
  if (text == "ewma1" || text == "ewma-i" || text == "EWMA-I") return ControllerKind::ewma1;
  if (text == "ewma2" || text == "ewma-ii" || text == "EWMA-II") return ControllerKind::ewma2;
  throw ContractViolation("unknown controller kind: " + std::string(text));
}

void ControllerSpec::validate() const {
  if (!(omega > 0.0 && omega <= 1.0)) throw ContractViolation("ControllerSpec: omega must lie in (0, 1]");
  if (!(xi > 0.0) || !std::isfinite(xi)) throw ContractViolation("ControllerSpec: xi must be positive");
  if (beta.has_value() != b.has_value()) {
    throw ContractViolation("ControllerSpec: beta and b must be given together");
  }
  if (beta && b) {
    if (*b == 0.0) throw ContractViolation("ControllerSpec: model gain b is zero");
    if (std::abs(xi - *beta / *b) > 1e-12 * std::max(1.0, std::abs(xi))) {
      throw ContractViolation("ControllerSpec: xi != beta / b");
    }
  }
}

ControllerSpec ControllerSpec::from_mismatch(ControllerKind kind, double omega, double xi) {
  ControllerSpec c;
  c.kind = kind;
  c.omega = omega;
  c.xi = xi;
  c.validate();
  return c;
}

ControllerSpec ControllerSpec::from_gains(ControllerKind kind, double omega, double beta, double b,
                                          double target) {
  if (b == 0.0) throw ContractViolation("ControllerSpec: model gain b is zero");
  ControllerSpec c;
  c.kind = kind;
  c.omega = omega;
  c.beta = beta;
  c.b = b;
  c.xi = beta / b;
  c.target = target;
  c.validate();
  return c;
}

Matrix system_matrix(const ControllerSpec& c, int tau_prev, int tau_cur, int tau_max) {
  if (tau_max < 0 || tau_prev < 0 || tau_cur < 0 || tau_prev > tau_max || tau_cur > tau_max) {
    throw ContractViolation("system_matrix: delay outside 0..tau_max");
  }
  if (tau_cur > tau_prev + 1) throw ContractViolation("unreachable mode");
  const int n = tau_max + 1;
  Matrix m = Matrix::Zero(n, n);
  for (int k = 1; k < n; ++k) m(k, k - 1) = 1.0;
  if (c.kind == ControllerKind::ewma2 && tau_prev < tau_cur) {
    m(0, 0) = 1.0;
  } else {
    m(0, 0) += 1.0 - c.omega;
    m(0, tau_cur) += c.omega * (1.0 - c.xi);
  }
  return m;
}

Polynomial char_poly(const ControllerSpec& c, int f) {
  if (f < 0) throw ContractViolation("char_poly: f must be >= 0");
  std::vector<double> coeffs(static_cast<size_t>(f) + 2, 0.0);
  coeffs[static_cast<size_t>(f) + 1] = 1.0;
  coeffs[static_cast<size_t>(f)] -= 1.0 - c.omega;
  coeffs[0] -= c.omega * (1.0 - c.xi);
  return Polynomial(std::move(coeffs));
}

const Matrix& JumpLinearSystem::step_matrix(int from, int to) const {
  const int m = mode_count();
  if (reduction == Reduction::single_index) return xi[static_cast<size_t>(to)];
  return xi[static_cast<size_t>(from * m + to)];
}

void JumpLinearSystem::validate() const {
  const int m = mode_count();
  if (m == 0 || mode_P.rows() != m || mode_P.cols() != m) {
    throw ContractViolation("JumpLinearSystem: mode_P shape does not match modes");
  }
  if (!is_row_stochastic(mode_P, 1e-12 * m + 1e-12)) {
    throw ContractViolation("JumpLinearSystem: mode_P is not row-stochastic");
  }
  const size_t expected = reduction == Reduction::single_index ? static_cast<size_t>(m)
                                                               : static_cast<size_t>(m) * m;
  if (xi.size() != expected) throw ContractViolation("JumpLinearSystem: wrong number of matrices");
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (mode_P(i, j) == 0.0 && reduction == Reduction::pair_index) continue;
      const Matrix& x = step_matrix(i, j);
      if (x.rows() != n || x.cols() != n) {
        throw ContractViolation("JumpLinearSystem: mode matrix has wrong shape");
      }
    }
  }
}

JumpLinearSystem build_jump_system(const ControllerSpec& c, const DelayChain& chain) {
  c.validate();
  const int tau_max = chain.tau_p;
  const int m = tau_max + 1;
  JumpLinearSystem sys;
  sys.n = m;
  sys.mode_P = chain.P;
  for (int i = 0; i < m; ++i) sys.modes.push_back(i);
  if (c.kind == ControllerKind::ewma1) {
    sys.reduction = Reduction::single_index;
    for (int j = 0; j < m; ++j) sys.xi.push_back(system_matrix(c, j, j, tau_max));
  } else {
    sys.reduction = Reduction::pair_index;
    sys.xi.resize(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        if (j > i + 1) {
          if (chain.P(i, j) != 0.0) throw ContractViolation("unreachable mode");
          continue;
        }
        sys.xi[static_cast<size_t>(i * m + j)] = system_matrix(c, i, j, tau_max);
      }
    }
  }
  sys.validate();
  return sys;
}

JumpLinearSystem make_jump_system(Matrix mode_P, std::vector<Matrix> xi, Reduction reduction) {
  JumpLinearSystem sys;
  const int m = static_cast<int>(mode_P.rows());
  for (int i = 0; i < m; ++i) sys.modes.push_back(i);
  sys.mode_P = std::move(mode_P);
  sys.reduction = reduction;
  sys.xi = std::move(xi);
  for (const Matrix& x : sys.xi) {
    if (x.size() > 0) {
      sys.n = static_cast<int>(x.rows());
      break;
    }
  }
  sys.validate();
  return sys;
}

}  // namespace r2r
