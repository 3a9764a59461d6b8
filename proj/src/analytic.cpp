#include "digitseq/analytic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "digitseq/digital_function.hpp"
#include "digitseq/integer.hpp"

namespace digitseq {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

cplx e_rational(i128 num, i128 den) {
  const i128 r = mod_floor(num, den);
  return std::polar(1.0, 2.0 * kPi * static_cast<double>(r) / static_cast<double>(den));
}

cplx e_real(double x) {
  const double f = x - std::floor(x);
  return std::polar(1.0, 2.0 * kPi * f);
}

}  // namespace

std::int64_t tau(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("tau needs m >= 1");
  std::int64_t count = 0;
  for (std::int64_t d = 1; d * d <= m; ++d) {
    if (m % d == 0) count += d * d == m ? 1 : 2;
  }
  return count;
}

int omega(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("omega needs m >= 1");
  return static_cast<int>(prime_factors(m).size());
}

std::int64_t gcd_with_zero(std::int64_t a, std::int64_t m) { return std::gcd(a, m); }

BoundCheck gauss_sum(std::int64_t a, std::int64_t b, std::int64_t m) {
  if (m < 1) throw std::invalid_argument("gauss sum needs m >= 1");
  cplx acc = 0.0;
  for (std::int64_t n = 0; n < m; ++n) {
    acc += e_rational(static_cast<i128>(a) * n * n + static_cast<i128>(b) * n, m);
  }
  BoundCheck r;
  r.value = acc;
  r.abs = std::abs(acc);
  r.bound = std::sqrt(2.0 * static_cast<double>(m) * static_cast<double>(gcd_with_zero(a, m)));
  return r;
}

BoundCheck incomplete_gauss_sum(std::int64_t a, std::int64_t b, std::int64_t m, std::int64_t n0,
                                std::int64_t N) {
  if (m < 1) throw std::invalid_argument("gauss sum needs m >= 1");
  if (N < 0) throw std::invalid_argument("gauss sum length must be >= 0");
  cplx acc = 0.0;
  for (std::int64_t n = n0 + 1; n <= n0 + N; ++n) {
    const i128 nn = mod_floor(static_cast<i128>(n), static_cast<i128>(m));
    acc += e_rational(static_cast<i128>(a) * nn * nn + static_cast<i128>(b) * nn, m);
  }
  BoundCheck r;
  r.value = acc;
  r.abs = std::abs(acc);
  const auto md = static_cast<double>(m);
  r.bound = (static_cast<double>(N) / md + 1.0 + (2.0 / kPi) * std::log(2.0 * md / kPi)) *
            std::sqrt(2.0 * md * static_cast<double>(gcd_with_zero(a, m)));
  return r;
}

double abs_sin_pi(double t) {
  const double dist = std::abs(t - std::round(t));
  return std::sin(kPi * dist);
}

BoundCheck geometric_min_bound(double xi, std::int64_t L1, std::int64_t L2) {
  if (L1 > L2) throw std::invalid_argument("need L1 <= L2");
  cplx acc = 0.0;
  for (std::int64_t l = L1 + 1; l <= L2; ++l) acc += e_real(static_cast<double>(l) * xi);
  BoundCheck r;
  r.value = acc;
  r.abs = std::abs(acc);
  const double s = abs_sin_pi(xi);
  const auto len = static_cast<double>(L2 - L1);
  r.bound = s == 0.0 ? len : std::min(len, 1.0 / s);
  return r;
}

namespace {

double min_inverse_sin(double U, double t) {
  const double s = abs_sin_pi(t);
  return s == 0.0 ? U : std::min(U, 1.0 / s);
}

// (a n + b)/m reduced mod 1 with the integer part kept exact.
double phase_fraction(std::int64_t a, std::int64_t n, double b, std::int64_t m) {
  const auto an = static_cast<double>(mod_floor(static_cast<i128>(a) * n, static_cast<i128>(m)));
  return (an + b) / static_cast<double>(m);
}

}  // namespace

SinusReport sinus_sum_checks(std::int64_t a, std::int64_t m, double b, double U, std::int64_t A) {
  if (m < 1 || A < 1 || !(U > 0)) throw std::invalid_argument("need m >= 1, A >= 1, U > 0");
  SinusReport r;
  for (std::int64_t n = 0; n < m; ++n) r.lhs += min_inverse_sin(U, phase_fraction(a, n, b, m));
  const std::int64_t delta = gcd_with_zero(a, m);
  const double bd = b / static_cast<double>(delta);
  const double dist = std::abs(bd - std::round(bd));
  const auto md = static_cast<double>(m);
  r.rhs = static_cast<double>(delta) * min_inverse_sin(U, static_cast<double>(delta) * dist / md) +
          (2.0 * md / kPi) * std::log(2.0 * md);

  for (std::int64_t aa = 1; aa <= A; ++aa) {
    for (std::int64_t n = 0; n < m; ++n) r.double_sum += min_inverse_sin(U, phase_fraction(aa, n, b, m));
  }
  r.double_sum /= static_cast<double>(A);
  r.tau_m = tau(m);
  r.omega_m = omega(m);
  r.shape = static_cast<double>(r.tau_m) * U + md * std::log(md);
  r.constant = r.double_sum / r.shape;
  return r;
}

int chi(double alpha, double x) {
  return static_cast<int>(std::floor(x) - std::floor(x - alpha));
}

double VaalerPolynomials::eval_A(double x) const {
  cplx acc = 0.0;
  for (int h = -H; h <= H; ++h) acc += a_coeff(h) * e_real(h * x);
  return acc.real();
}

double VaalerPolynomials::eval_B(double x) const {
  cplx acc = 0.0;
  for (int h = -H; h <= H; ++h) acc += b_coeff(h) * e_real(h * x);
  return acc.real();
}

VaalerPolynomials vaaler_build(double alpha, int H) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in [0, 1)");
  if (H < 1) throw std::invalid_argument("H must be >= 1");
  VaalerPolynomials p;
  p.alpha = alpha;
  p.H = H;
  p.a.assign(static_cast<std::size_t>(2 * H + 1), 0.0);
  p.b.assign(static_cast<std::size_t>(2 * H + 1), 0.0);
  const double H1 = H + 1.0;
  auto phi = [](double t) {
    const double at = std::abs(t);
    return kPi * t * (1.0 - at) / std::tan(kPi * t) + at;
  };
  for (int h = -H; h <= H; ++h) {
    const auto idx = static_cast<std::size_t>(h + H);
    const cplx shift = e_real(-h * alpha);
    if (h == 0) {
      p.a[idx] = alpha;
    } else {
      const cplx c = -phi(h / H1) / (2.0 * kPi * cplx(0.0, h));
      p.a[idx] = c * (shift - 1.0);
    }
    p.b[idx] = (1.0 - std::abs(h) / H1) * (shift + 1.0) / (2.0 * H1);
  }
  return p;
}

VaalerReport vaaler_check(const VaalerPolynomials& p, int grid) {
  VaalerReport r;
  r.a0_exact = p.a_coeff(0) == cplx(p.alpha, 0.0);
  r.worst_a_excess = -std::numeric_limits<double>::infinity();
  r.worst_b_excess = -std::numeric_limits<double>::infinity();
  for (int h = -p.H; h <= p.H; ++h) {
    if (h != 0) {
      r.worst_a_excess = std::max(r.worst_a_excess, std::abs(p.a_coeff(h)) - std::min(p.alpha, 1.0 / (kPi * std::abs(h))));
    }
    r.worst_b_excess = std::max(r.worst_b_excess, std::abs(p.b_coeff(h)) - 1.0 / (p.H + 1.0));
  }
  r.worst_gap = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    const double x = static_cast<double>(i) / grid;
    cplx bval = 0.0;
    for (int h = -p.H; h <= p.H; ++h) bval += p.b_coeff(h) * e_real(h * x);
    r.max_imag_B = std::max(r.max_imag_B, std::abs(bval.imag()));
    r.worst_gap = std::max(r.worst_gap, std::abs(chi(p.alpha, x) - p.eval_A(x)) - bval.real());
  }
  return r;
}

BoxCheck box_detection(std::span<const VaalerPolynomials> polys, std::span<const double> x) {
  const std::size_t d = polys.size();
  if (d == 0 || d != x.size() || d > 20) throw std::invalid_argument("box detection needs 1..20 matching coordinates");
  std::vector<double> c(d), A(d), B(d);
  double prod_chi = 1.0, prod_A = 1.0;
  for (std::size_t j = 0; j < d; ++j) {
    c[j] = chi(polys[j].alpha, x[j]);
    A[j] = polys[j].eval_A(x[j]);
    B[j] = polys[j].eval_B(x[j]);
    prod_chi *= c[j];
    prod_A *= A[j];
  }
  BoxCheck r;
  r.lhs = std::abs(prod_chi - prod_A);
  for (std::uint32_t mask = 1; mask < (1u << d); ++mask) {
    double term = 1.0;
    for (std::size_t j = 0; j < d; ++j) term *= (mask >> j) & 1 ? B[j] : c[j];
    r.rhs += term;
  }
  return r;
}

VdcCheck van_der_corput_check(std::span<const std::complex<double>> z, std::int64_t Q,
                              std::int64_t R) {
  if (Q < 1 || R < 1) throw std::invalid_argument("need Q >= 1 and R >= 1");
  const auto N = static_cast<std::int64_t>(z.size());
  cplx total = 0.0;
  double energy = 0.0;
  for (const cplx& v : z) {
    total += v;
    energy += std::norm(v);
  }
  double corr = 0.0;
  for (std::int64_t r = 1; r < R; ++r) {
    double inner = 0.0;
    for (std::int64_t n = 0; n + Q * r < N; ++n) {
      inner += (z[static_cast<std::size_t>(n + Q * r)] * std::conj(z[static_cast<std::size_t>(n)])).real();
    }
    corr += (1.0 - static_cast<double>(r) / static_cast<double>(R)) * inner;
  }
  VdcCheck c;
  c.lhs = std::norm(total);
  c.rhs = static_cast<double>(N + Q * R - Q) / static_cast<double>(R) * (energy + 2.0 * corr);
  return c;
}

}  // namespace digitseq
