#include "r2r/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace r2r {

namespace {

void require_square(const Matrix& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ContractViolation(std::string(who) + ": matrix must be square and non-empty");
  }
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void require_symmetric(const Matrix& m, const char* who) {
  require_square(m, who);
  const double tol = 1e-10 * std::max(1.0, max_abs(m));
  if (((m - m.transpose()).cwiseAbs().array() > tol).any()) {
    throw ContractViolation(std::string(who) + ": matrix is not symmetric");
  }
}

// Parlett-Reinsch balancing with radix-2 scaling, so the similarity is exact
// in floating point.
void balance(Matrix& a) {
  constexpr double kRadix = 2.0;
  constexpr double kSqRadix = kRadix * kRadix;
  const Eigen::Index n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double r = 0.0;
      double c = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j != i) {
          c += std::abs(a(j, i));
          r += std::abs(a(i, j));
        }
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / kRadix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= kRadix;
        c *= kSqRadix;
      }
      g = r * kRadix;
      while (c > g) {
        f /= kRadix;
        c /= kSqRadix;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        g = 1.0 / f;
        a.row(i) *= g;
        a.col(i) *= f;
      }
    }
  }
}

}  // namespace

Polynomial::Polynomial(std::vector<double> ascending) : c_(std::move(ascending)) {
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
  if (c_.empty()) throw ContractViolation("Polynomial: zero polynomial");
  for (double v : c_) {
    if (!std::isfinite(v)) throw ContractViolation("Polynomial: non-finite coefficient");
  }
}

std::complex<double> Polynomial::operator()(std::complex<double> z) const {
  std::complex<double> acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::monic() const {
  std::vector<double> out(c_);
  const double lead = c_.back();
  for (double& v : out) v /= lead;
  out.back() = 1.0;
  return Polynomial(std::move(out));
}

double sym_eig_max(const Matrix& m) {
  require_symmetric(m, "sym_eig_max");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double sym_eig_min(const Matrix& m) {
  require_symmetric(m, "sym_eig_min");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

RadiusEstimate spectral_radius(const Matrix& m) {
  require_square(m, "spectral_radius");
  if (!m.allFinite()) throw ContractViolation("spectral_radius: non-finite entry");
  if (m.rows() == 1) {
    const double v = std::abs(m(0, 0));
    return {v, v > kRadiusLimit};
  }
  Matrix a = m;
  balance(a);
  Eigen::EigenSolver<Matrix> es(a, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("spectral_radius: Hessenberg-QR did not converge");
  }
  const double rho = es.eigenvalues().cwiseAbs().maxCoeff();
  if (!std::isfinite(rho) || rho > kRadiusLimit) return {kRadiusLimit, true};
  return {rho, false};
}

Matrix companion_matrix(const Polynomial& p) {
  if (p.degree() < 1) throw ContractViolation("companion_matrix: constant polynomial");
  const Polynomial q = p.monic();
  const int n = q.degree();
  Matrix c = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) c(0, k) = -q[n - 1 - k];
  for (int k = 1; k < n; ++k) c(k, k - 1) = 1.0;
  return c;
}

double poly_roots_max_modulus(const Polynomial& p) {
  if (p.degree() < 1) throw ContractViolation("poly_roots_max_modulus: constant polynomial");
  if (p.degree() == 1) return std::abs(p[0] / p[1]);
  return spectral_radius(companion_matrix(p)).value;
}

namespace {

// One pass of the Jury table in its recursive (Schur-Cohn) form. The pair of
// rows (a, reversed a) reduces to b_k = a_n a_{k+1} - a_0 a_{n-1-k}; the
// table is stable iff |a_0| < a_n at every stage.
enum class JuryPass { stable, unstable, singular };

JuryPass jury_pass(std::vector<double> a) {
  constexpr double kSingularTol = 1e-12;
  while (a.size() > 1) {
    const size_t n = a.size() - 1;
    const double lead = a[n];
    for (double& v : a) v /= lead;
    const double k = a[0];
    if (std::abs(std::abs(k) - 1.0) <= kSingularTol) return JuryPass::singular;
    if (std::abs(k) > 1.0) return JuryPass::unstable;
    std::vector<double> b(n);
    for (size_t j = 0; j < n; ++j) b[j] = a[j + 1] - k * a[n - 1 - j];
    a = std::move(b);
  }
  return JuryPass::stable;
}

}  // namespace

RootTest jury_test(std::span<const double> ascending) {
  if (ascending.size() < 2) throw ContractViolation("jury_test: degree must be >= 1");
  if (ascending.back() == 0.0) throw ContractViolation("jury_test: zero leading coefficient");
  std::vector<double> a(ascending.begin(), ascending.end());
  if (a.back() < 0.0) {
    for (double& v : a) v = -v;
  }
  switch (jury_pass(a)) {
    case JuryPass::stable:
      return {true, false};
    case JuryPass::unstable:
      return {false, false};
    case JuryPass::singular:
      break;
  }
  // Singular table: pull the roots inward by a relative 1e-12 and rerun.
  constexpr double kPerturb = 1.0 + 1e-12;
  double scale = 1.0;
  for (double& v : a) {
    v *= scale;
    scale *= kPerturb;
  }
  return {jury_pass(a) == JuryPass::stable, true};
}

RootTest jury_test(const Polynomial& p) { return jury_test(p.coeffs()); }

bool jury_stable(const Polynomial& p) { return jury_test(p).stable; }

BilinearImage bilinear_image(const Polynomial& z_poly) {
  // N(W) = sum_j h_j (1 + W)^j (1 - W)^(d - j)
  const int d = z_poly.degree();
  std::vector<double> acc(static_cast<size_t>(d) + 1, 0.0);
  for (int j = 0; j <= d; ++j) {
    std::vector<double> term{1.0};
    auto mul = [&term](double c0, double c1) {
      std::vector<double> out(term.size() + 1, 0.0);
      for (size_t k = 0; k < term.size(); ++k) {
        out[k] += c0 * term[k];
        out[k + 1] += c1 * term[k];
      }
      term = std::move(out);
    };
    for (int k = 0; k < j; ++k) mul(1.0, 1.0);
    for (int k = j; k < d; ++k) mul(1.0, -1.0);
    for (size_t k = 0; k < term.size(); ++k) acc[k] += z_poly[j] * term[k];
  }
  double scale = 0.0;
  for (double v : acc) scale = std::max(scale, std::abs(v));
  const bool lost = std::abs(acc.back()) <= 1e-12 * scale;
  if (lost) acc.back() = 0.0;
  return {Polynomial(std::move(acc)), lost};
}

RootTest routh_hurwitz_test(const Polynomial& w_poly) {
  const int n = w_poly.degree();
  if (n < 1) throw ContractViolation("routh_hurwitz_test: degree must be >= 1");
  const double sign = w_poly.leading() > 0.0 ? 1.0 : -1.0;
  std::vector<double> desc(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) desc[static_cast<size_t>(k)] = sign * w_poly[n - k];

  RootTest result{true, false};
  double coeff_scale = 0.0;
  for (double v : desc) coeff_scale = std::max(coeff_scale, std::abs(v));
  // Root at W = 0 sits on the imaginary axis.
  if (std::abs(desc.back()) <= 1e-12 * coeff_scale) return {false, true};

  const size_t width = static_cast<size_t>(n) / 2 + 1;
  std::vector<double> prev2(width, 0.0), prev1(width, 0.0);
  for (size_t k = 0; k < width; ++k) {
    if (2 * k < desc.size()) prev2[k] = desc[2 * k];
    if (2 * k + 1 < desc.size()) prev1[k] = desc[2 * k + 1];
  }
  auto normalize_row = [](std::vector<double>& row) {
    double s = 0.0;
    for (double v : row) s = std::max(s, std::abs(v));
    if (s > 0.0) {
      for (double& v : row) v /= s;
    }
    return s;
  };
  normalize_row(prev2);
  normalize_row(prev1);

  constexpr double kPivotTol = 1e-12;
  constexpr double kEpsilon = 1e-12;
  std::vector<double> first_column{prev2[0]};
  for (int row = 1; row <= n; ++row) {
    double s = 0.0;
    for (double v : prev1) s = std::max(s, std::abs(v));
    if (s == 0.0) return {false, true};
    if (std::abs(prev1[0]) <= kPivotTol * s) {
      prev1[0] = kEpsilon * s;
      result.marginal = true;
    }
    first_column.push_back(prev1[0]);
    if (row == n) break;
    std::vector<double> next(width, 0.0);
    for (size_t k = 0; k + 1 < width; ++k) {
      next[k] = (prev1[0] * prev2[k + 1] - prev2[0] * prev1[k + 1]) / prev1[0];
    }
    normalize_row(next);
    prev2 = std::move(prev1);
    prev1 = std::move(next);
  }
  for (double v : first_column) {
    if (v <= 0.0) result.stable = false;
  }
  if (result.marginal) result.stable = false;
  return result;
}

bool routh_hurwitz_stable(const Polynomial& w_poly) { return routh_hurwitz_test(w_poly).stable; }

}  // namespace r2r
