#include "r2r/coupled_operator.hpp"

#include <cmath>
#include <numeric>

namespace r2r {

double tuple_norm(const MatrixTuple& q) {
  double s = 0.0;
  for (const Matrix& m : q) s += m.squaredNorm();
  return std::sqrt(s);
}

namespace {

bool has_shift_block(const Matrix& x) {
  const Eigen::Index n = x.rows();
  for (Eigen::Index a = 1; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      if (x(a, b) != (b == a - 1 ? 1.0 : 0.0)) return false;
    }
  }
  return true;
}

// out += w * X^T Q X for X = e0 r^T + S, S the down-shift.
void add_shift_congruence(const Vector& r, const Matrix& q, double w, Matrix& out) {
  const Eigen::Index n = q.rows();
  const double q00 = q(0, 0);
  for (Eigen::Index b = 0; b < n; ++b) {
    const double qtop = b + 1 < n ? q(0, b + 1) : 0.0;
    for (Eigen::Index a = 0; a < n; ++a) {
      double v = q00 * r(a) * r(b) + r(a) * qtop;
      if (a + 1 < n) {
        v += q(a + 1, 0) * r(b);
        if (b + 1 < n) v += q(a + 1, b + 1);
      }
      out(a, b) += w * v;
    }
  }
}

constexpr long kParallelWork = 1L << 14;

}  // namespace

CoupledOperator::CoupledOperator(JumpLinearSystem sys) : sys_(std::move(sys)) {
  sys_.validate();
  structured_ = true;
  first_rows_.resize(sys_.xi.size());
  for (size_t k = 0; k < sys_.xi.size(); ++k) {
    const Matrix& x = sys_.xi[k];
    if (x.size() == 0) continue;
    if (!has_shift_block(x)) structured_ = false;
    first_rows_[k] = x.row(0).transpose();
  }
}

MatrixTuple CoupledOperator::identity() const {
  return MatrixTuple(static_cast<size_t>(modes()), Matrix::Identity(dim(), dim()));
}

void CoupledOperator::apply_mode(const MatrixTuple& q, const MatrixTuple& w, int i, Matrix& out) const {
  const int m = modes();
  out.setZero(dim(), dim());
  for (int j = 0; j < m; ++j) {
    const double p = sys_.mode_P(i, j);
    if (p == 0.0) continue;
    if (sys_.reduction == Reduction::single_index) {
      out += p * w[static_cast<size_t>(j)];
    } else if (structured_) {
      add_shift_congruence(first_rows_[static_cast<size_t>(i * m + j)], q[static_cast<size_t>(j)], p, out);
    } else {
      const Matrix& x = sys_.step_matrix(i, j);
      out.noalias() += p * (x.transpose() * q[static_cast<size_t>(j)] * x);
    }
  }
}

MatrixTuple CoupledOperator::apply(const MatrixTuple& q) const {
  const int m = modes();
  const int n = dim();
  const bool wide = static_cast<long>(m) * m * n * n >= kParallelWork;
  MatrixTuple w;
  if (sys_.reduction == Reduction::single_index) {
    // Xi depends only on the incoming mode, so each congruence is shared by
    // every row of mode_P.
    w.assign(static_cast<size_t>(m), Matrix());
#pragma omp parallel for schedule(static) if (wide)
    for (int j = 0; j < m; ++j) {
      Matrix& wj = w[static_cast<size_t>(j)];
      if (structured_) {
        wj = Matrix::Zero(n, n);
        add_shift_congruence(first_rows_[static_cast<size_t>(j)], q[static_cast<size_t>(j)], 1.0, wj);
      } else {
        const Matrix& x = sys_.xi[static_cast<size_t>(j)];
        wj.noalias() = x.transpose() * q[static_cast<size_t>(j)] * x;
      }
    }
  }
  MatrixTuple out(static_cast<size_t>(m));
#pragma omp parallel for schedule(static) if (wide)
  for (int i = 0; i < m; ++i) apply_mode(q, w, i, out[static_cast<size_t>(i)]);
  return out;
}

MatrixTuple CoupledOperator::apply_reference(const MatrixTuple& q) const {
  const int m = modes();
  MatrixTuple out(static_cast<size_t>(m), Matrix::Zero(dim(), dim()));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double p = sys_.mode_P(i, j);
      if (p == 0.0) continue;
      const Matrix& x = sys_.step_matrix(i, j);
      out[static_cast<size_t>(i)] += p * x.transpose() * q[static_cast<size_t>(j)] * x;
    }
  }
  return out;
}

Matrix lifted_operator_matrix(const JumpLinearSystem& sys) {
  sys.validate();
  const int m = sys.mode_count();
  const int n = sys.n;
  const int n2 = n * n;
  Matrix lifted = Matrix::Zero(static_cast<Eigen::Index>(m) * n2, static_cast<Eigen::Index>(m) * n2);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double p = sys.mode_P(i, j);
      if (p == 0.0) continue;
      const Matrix& x = sys.step_matrix(i, j);
      // (X^T E_kl X)_ab = X(k, a) X(l, b)
      for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k)
          for (int b = 0; b < n; ++b)
            for (int a = 0; a < n; ++a)
              lifted(i * n2 + a + b * n, j * n2 + k + l * n) = p * x(k, a) * x(l, b);
    }
  }
  return lifted;
}

OperatorRadius mss_spectral_radius(const JumpLinearSystem& sys, const PowerOptions& opts) {
  return mss_spectral_radius(CoupledOperator(sys), opts);
}

OperatorRadius mss_spectral_radius(const CoupledOperator& op, const PowerOptions& opts) {
  if (!(opts.rel_tol > 0.0) || opts.max_iter < 1) {
    throw ContractViolation("mss_spectral_radius: bad iteration options");
  }
  MatrixTuple q = op.identity();
  {
    const double s = tuple_norm(q);
    for (Matrix& m : q) m /= s;
  }
  std::vector<double> log_ratios;
  double shift = 0.0;
  bool shifted = false;
  double prev = -1.0;
  int settled = 0;
  for (long it = 1; it <= opts.max_iter; ++it) {
    MatrixTuple y = op.apply(q);
    if (shifted) {
      for (size_t i = 0; i < y.size(); ++i) y[i] += shift * q[i];
    }
    const double norm = tuple_norm(y);
    if (norm == 0.0) return {0.0, true, it};
    if (!std::isfinite(norm)) return {kRadiusLimit, false, it};
    if (!shifted) log_ratios.push_back(std::log(norm));
    if (prev > 0.0 && std::abs(norm - prev) <= opts.rel_tol * norm) {
      if (++settled >= 2) return {std::max(0.0, norm - shift), true, it};
    } else {
      settled = 0;
    }
    prev = norm;
    for (size_t i = 0; i < y.size(); ++i) q[i] = y[i] / norm;

    if (!shifted && it == opts.plain_phase) {
      const size_t window = std::min(log_ratios.size(), static_cast<size_t>(std::max(1, opts.shift_window)));
      const double mean_log =
          std::accumulate(log_ratios.end() - static_cast<long>(window), log_ratios.end(), 0.0) / window;
      shift = std::exp(mean_log);
      shifted = true;
      prev = -1.0;
      settled = 0;
    }
  }
  return {std::max(0.0, prev - shift), false, opts.max_iter};
}

}  // namespace r2r
