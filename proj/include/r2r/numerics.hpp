#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace r2r {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Raised when a caller breaks the precondition of an operation.
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Root and eigenvalue tests within this distance of the unit threshold are
/// reported as marginal instead of being rounded to either side.
inline constexpr double kRootMarginalBand = 1e-6;

/// Spectral radii above this value are reported as a verdict, not a number.
inline constexpr double kRadiusLimit = 1e12;

/// Real polynomial stored in ascending degree order. Trailing zeros are
/// trimmed on construction so the leading coefficient is always nonzero.
class Polynomial {
 public:
  explicit Polynomial(std::vector<double> ascending);
  Polynomial(std::initializer_list<double> ascending)
      : Polynomial(std::vector<double>(ascending)) {}

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  double operator[](int k) const { return c_[static_cast<size_t>(k)]; }
  double leading() const { return c_.back(); }
  std::span<const double> coeffs() const { return c_; }

  std::complex<double> operator()(std::complex<double> z) const;

  /// Same roots, leading coefficient +1.
  Polynomial monic() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<double> c_;
};

double sym_eig_max(const Matrix& m);
double sym_eig_min(const Matrix& m);

struct RadiusEstimate {
  double value = 0.0;
  bool above_limit = false;  // value exceeded kRadiusLimit
};

/// Largest eigenvalue modulus via balanced Hessenberg-QR. Complex-conjugate
/// dominant pairs are handled.
RadiusEstimate spectral_radius(const Matrix& m);

/// Frobenius companion matrix of the monic version of p.
Matrix companion_matrix(const Polynomial& p);

/// Maximum modulus over all complex roots of p (companion eigenvalues).
double poly_roots_max_modulus(const Polynomial& p);

struct RootTest {
  bool stable = false;
  bool marginal = false;
};

/// Jury stability table on raw ascending coefficients; every root strictly
/// inside the unit circle. A zero leading coefficient is a contract error.
RootTest jury_test(std::span<const double> ascending);
RootTest jury_test(const Polynomial& p);
bool jury_stable(const Polynomial& p);

/// Image of a z-domain polynomial under z = (1 + W) / (1 - W). The unit disk
/// maps to the open left half-plane. A root at z = -1 maps to W = infinity and
/// shows up as a lost degree, flagged here.
struct BilinearImage {
  Polynomial w;
  bool root_at_minus_one = false;
};
BilinearImage bilinear_image(const Polynomial& z_poly);

/// Routh array; true iff every root has strictly negative real part. Zero
/// pivots are replaced by a small epsilon and flagged marginal; an all-zero
/// row is marginal and never stable.
RootTest routh_hurwitz_test(const Polynomial& w_poly);
bool routh_hurwitz_stable(const Polynomial& w_poly);

}  // namespace r2r
