#pragma once

// Exponential-sum toolbox: Gauss sums, geometric and inverse-sine sums,
// Vaaler's trigonometric approximation of interval indicators, and the
// Van der Corput inequality.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace digitseq {

struct BoundCheck {
  std::complex<double> value;
  double abs = 0.0;
  double bound = 0.0;
  double margin() const { return bound - abs; }
  bool holds(double tol = 1e-9) const { return abs <= bound + tol; }
};

/// Number of divisors and number of distinct prime factors.
std::int64_t tau(std::int64_t m);
int omega(std::int64_t m);
std::int64_t gcd_with_zero(std::int64_t a, std::int64_t m);  // gcd(0, m) = m

/// sum_{n<m} e((a n^2 + b n)/m), bound sqrt(2 m gcd(a, m)).
BoundCheck gauss_sum(std::int64_t a, std::int64_t b, std::int64_t m);

/// sum_{n0 < n <= n0+N} e((a n^2 + b n)/m),
/// bound (N/m + 1 + (2/pi) log(2m/pi)) sqrt(2 m gcd(a, m)).
BoundCheck incomplete_gauss_sum(std::int64_t a, std::int64_t b, std::int64_t m, std::int64_t n0,
                                std::int64_t N);

/// |sum_{L1 < l <= L2} e(l xi)| against min(L2 - L1, 1/|sin pi xi|).
BoundCheck geometric_min_bound(double xi, std::int64_t L1, std::int64_t L2);

/// |sin(pi t)| through the distance from t to the nearest integer.
double abs_sin_pi(double t);

struct SinusReport {
  double lhs = 0.0;        // sum_{n<m} min(U, |sin(pi (a n + b)/m)|^-1)
  double rhs = 0.0;        // delta min(U, |sin(pi delta ||b/delta|| / m)|^-1) + (2m/pi) log(2m)
  double double_sum = 0.0; // (1/A) sum_{1<=a<=A} sum_{n<m} min(U, ...)
  double shape = 0.0;      // tau(m) U + m log m
  double constant = 0.0;   // double_sum / shape
  std::int64_t tau_m = 0;
  int omega_m = 0;
  bool holds() const { return lhs <= rhs + 1e-9; }
};

SinusReport sinus_sum_checks(std::int64_t a, std::int64_t m, double b, double U, std::int64_t A);

/// chi_alpha(x) = floor(x) - floor(x - alpha), the indicator of [0, alpha) mod 1.
int chi(double alpha, double x);

/// A(x) = sum_{|h|<=H} a_h e(h x), B(x) = sum_{|h|<=H} b_h e(h x), with
/// |chi_alpha - A| <= B. Coefficients are stored at index h + H.
struct VaalerPolynomials {
  double alpha = 0.0;
  int H = 1;
  std::vector<std::complex<double>> a;
  std::vector<std::complex<double>> b;

  std::complex<double> a_coeff(int h) const { return a[static_cast<std::size_t>(h + H)]; }
  std::complex<double> b_coeff(int h) const { return b[static_cast<std::size_t>(h + H)]; }
  double eval_A(double x) const;
  double eval_B(double x) const;
};

/// Built from the Beurling-Selberg type kernels:
///   phi(t) = pi t (1 - |t|) cot(pi t) + |t|,
///   psi*(x) = -sum_{1<=|h|<=H} (2 pi i h)^-1 phi(h/(H+1)) e(h x),
///   A(x) = alpha + psi*(x - alpha) - psi*(x),
///   B(x) = (K(x - alpha) + K(x)) / (2H + 2), K the Fejer kernel of order H.
VaalerPolynomials vaaler_build(double alpha, int H);

struct VaalerReport {
  bool a0_exact = false;
  double worst_a_excess = 0.0;  // max_h |a_h| - min(alpha, 1/(pi |h|)), h != 0
  double worst_b_excess = 0.0;  // max_h |b_h| - 1/(H+1)
  double worst_gap = 0.0;       // max_x |chi - A| - B on the grid
  double max_imag_B = 0.0;      // B is real valued
  bool holds(double tol = 1e-12) const {
    return a0_exact && worst_a_excess <= tol && worst_b_excess <= tol && worst_gap <= 1e-9 &&
           max_imag_B <= 1e-9;
  }
};

/// Coefficient bounds plus |chi - A| <= B on `grid` equispaced points of [0, 1).
VaalerReport vaaler_check(const VaalerPolynomials& p, int grid);

/// Box detection in d dimensions at one point:
///   |prod chi_j(x_j) - prod A_j(x_j)| against
///   sum over nonempty J of prod_{j not in J} chi_j(x_j) prod_{j in J} B_j(x_j).
struct BoxCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds() const { return lhs <= rhs + 1e-9; }
};
BoxCheck box_detection(std::span<const VaalerPolynomials> polys, std::span<const double> x);

/// For z_1..z_N, Q, R >= 1:
///   lhs = |sum_n z_n|^2
///   rhs = (N + QR - Q)/R (sum_n |z_n|^2 + 2 sum_{r<R} (1 - r/R) sum_{n<=N-Qr} Re(z_{n+Qr} conj z_n))
struct VdcCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds() const { return lhs <= rhs + 1e-9 * std::max(1.0, rhs); }
};
VdcCheck van_der_corput_check(std::span<const std::complex<double>> z, std::int64_t Q,
                              std::int64_t R);

}  // namespace digitseq
