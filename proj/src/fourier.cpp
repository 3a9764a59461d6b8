#include "digitseq/fourier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "digitseq/budget.hpp"
#include "digitseq/integer.hpp"

namespace digitseq {

cplx unit_root(std::int64_t num, std::int64_t den) {
  const std::int64_t r = mod_floor(num, den);
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den));
}

void ComplexSum::add_part(double x, double& sum, double& comp) {
  const double t = sum + x;
  if (std::abs(sum) >= std::abs(x)) {
    comp += (sum - t) + x;
  } else {
    comp += (x - t) + sum;
  }
  sum = t;
}

void ComplexSum::add(cplx z) {
  add_part(z.real(), re_, cre_);
  add_part(z.imag(), im_, cim_);
}

FourierContext::FourierContext(const DigitalFunction& f, AlphaVector alpha)
    : f_(normalize(f)), alpha_(std::move(alpha)) {
  if (alpha_.modulus() != f_.modulus()) throw std::invalid_argument("alpha modulus != m'");
  space_ = std::make_shared<const IndexSpace>(f_.base(), f_.window(), alpha_.size());
}

const std::vector<std::uint16_t>& FourierContext::b_table(int j) const {
  if (j < 0) throw std::invalid_argument("truncation depth must be >= 0");
  std::lock_guard<std::mutex> lock(mutex_);
  if (auto it = tables_.find(j); it != tables_.end()) return *it->second;

  const int q = f_.base();
  const int m = f_.window();
  const auto mod = static_cast<std::int64_t>(f_.modulus());
  require_budget(BudgetKind::fourier_terms, static_cast<std::uint64_t>(pow64(q, j + m - 1)));
  // b_i(n) = F(n mod q^m) + b_{i-1}(floor(n/q)), starting from b_0 = 0.
  int have = 0;
  std::shared_ptr<const std::vector<std::uint16_t>> prev;
  for (int i = j - 1; i >= 0; --i) {
    if (auto it = tables_.find(i); it != tables_.end()) {
      have = i;
      prev = it->second;
      break;
    }
  }
  if (!prev) {
    prev = std::make_shared<const std::vector<std::uint16_t>>(static_cast<std::size_t>(pow64(q, m - 1)), 0);
    tables_[0] = prev;
    have = 0;
  }
  for (int i = have + 1; i <= j; ++i) {
    const auto size = static_cast<std::size_t>(pow64(q, i + m - 1));
    auto next = std::make_shared<std::vector<std::uint16_t>>(size);
    const auto table = f_.table();
    for (std::size_t n = 0; n < size; ++n) {
      const std::int64_t w = mod_floor(table[n % table.size()], mod);
      (*next)[n] = static_cast<std::uint16_t>((w + (*prev)[n / static_cast<std::size_t>(q)]) % mod);
    }
    prev = next;
    tables_[i] = next;
  }
  return *tables_.at(j);
}

int FourierContext::b_mod(int j, std::int64_t n) const {
  const auto& t = b_table(j);
  return t[static_cast<std::size_t>(mod_floor(n, static_cast<std::int64_t>(t.size())))];
}

int FourierContext::v_phase(const IndexVector& I, std::int64_t eps, std::int64_t delta,
                            int j) const {
  if (j == 0) return 0;
  const auto& t = b_table(j);
  const auto period = static_cast<i128>(t.size());
  const i128 step = this->step();
  long phase = 0;
  for (int l = 0; l < length(); ++l) {
    if (alpha_[l] == 0) continue;
    const i128 arg = static_cast<i128>(I[static_cast<std::size_t>(l)]) + step * (static_cast<i128>(eps) + static_cast<i128>(l) * delta);
    phase += static_cast<long>(alpha_[l]) * t[static_cast<std::size_t>(mod_floor(arg, period))];
  }
  return static_cast<int>(phase % modulus());
}

cplx FourierContext::weight_v(const IndexVector& I, std::int64_t eps, std::int64_t delta,
                              int j) const {
  return unit_root(v_phase(I, eps, delta, j), modulus());
}

namespace {

// Phase numerators p(u), u < count, of sum_l alpha_l b_lambda(scale (u + l d) + i_l).
std::vector<int> phase_sequence(const FourierContext& ctx, const IndexVector& I, int lambda,
                                std::int64_t scale, std::int64_t count, std::int64_t d) {
  const auto& t = ctx.b_table(lambda);
  const auto period = static_cast<std::int64_t>(t.size());
  const AlphaVector& alpha = ctx.alpha();
  const int mod = ctx.modulus();
  std::vector<int> out(static_cast<std::size_t>(count), 0);
  for (int l = 0; l < ctx.length(); ++l) {
    if (alpha[l] == 0) continue;
    const std::int64_t offset = mod_floor(
        static_cast<std::int64_t>(mod_floor(static_cast<i128>(scale) * l * d, static_cast<i128>(period))) +
            I[static_cast<std::size_t>(l)],
        period);
    std::int64_t arg = offset;
    for (std::int64_t u = 0; u < count; ++u) {
      out[static_cast<std::size_t>(u)] =
          (out[static_cast<std::size_t>(u)] + alpha[l] * t[static_cast<std::size_t>(arg)]) % mod;
      arg += scale;
      if (arg >= period) arg -= period;
    }
  }
  return out;
}

cplx phase_transform(const std::vector<int>& phases, int mod, std::int64_t h) {
  const auto n = static_cast<std::int64_t>(phases.size());
  const std::int64_t hr = mod_floor(h, n);
  const std::int64_t den = static_cast<std::int64_t>(mod) * n;
  ComplexSum acc;
  std::int64_t hu = 0;  // h u mod n
  for (std::int64_t u = 0; u < n; ++u) {
    acc.add(unit_root(static_cast<std::int64_t>(phases[static_cast<std::size_t>(u)]) * n - mod * hu, den));
    hu += hr;
    if (hu >= n) hu -= n;
  }
  return acc.value() / static_cast<double>(n);
}

void require_member(const FourierContext& ctx, const IndexVector& I) {
  if (!ctx.space().contains(I)) throw std::invalid_argument("vector " + to_string(I) + " is not in the index set");
}

}  // namespace

cplx fourier_H(const FourierContext& ctx, const IndexVector& I, int lambda, std::int64_t h,
               std::int64_t d) {
  if (!ctx.space().contains_primed(I)) {
    throw std::invalid_argument("H needs a start-normalized index vector, got " + to_string(I));
  }
  if (lambda < 0) throw std::invalid_argument("lambda must be >= 0");
  const std::int64_t P = pow64(ctx.base(), lambda + ctx.window() - 1);
  return phase_transform(phase_sequence(ctx, I, lambda, 1, P, d), ctx.modulus(), h);
}

cplx fourier_G(const FourierContext& ctx, const IndexVector& I, int lambda, std::int64_t h,
               std::int64_t d) {
  require_member(ctx, I);
  if (lambda < 0) throw std::invalid_argument("lambda must be >= 0");
  const std::int64_t N = pow64(ctx.base(), lambda);
  return phase_transform(phase_sequence(ctx, I, lambda, ctx.step(), N, d), ctx.modulus(), h);
}

cplx fourier_G_via_v(const FourierContext& ctx, const IndexVector& I, int lambda, std::int64_t h,
                     std::int64_t d) {
  require_member(ctx, I);
  const std::int64_t N = pow64(ctx.base(), lambda);
  ComplexSum acc;
  for (std::int64_t u = 0; u < N; ++u) {
    acc.add(ctx.weight_v(I, u, d, lambda) * unit_root(-static_cast<std::int64_t>(mod_floor(static_cast<i128>(h) * u, static_cast<i128>(N))), N));
  }
  return acc.value() / static_cast<double>(N);
}

std::vector<cplx> dft_radix(const std::vector<cplx>& x, int q) {
  const std::size_t n = x.size();
  if (n <= 1) return x;
  if (n % static_cast<std::size_t>(q) != 0) throw std::invalid_argument("DFT length is not a power of q");
  const std::size_t sub = n / static_cast<std::size_t>(q);
  std::vector<std::vector<cplx>> parts(static_cast<std::size_t>(q));
  for (int r = 0; r < q; ++r) {
    std::vector<cplx> xr(sub);
    for (std::size_t u = 0; u < sub; ++u) xr[u] = x[u * static_cast<std::size_t>(q) + static_cast<std::size_t>(r)];
    parts[static_cast<std::size_t>(r)] = dft_radix(xr, q);
  }
  std::vector<cplx> out(n);
  for (std::size_t h = 0; h < n; ++h) {
    cplx acc = parts[0][h % sub];
    for (int r = 1; r < q; ++r) {
      const auto num = -static_cast<std::int64_t>((h * static_cast<std::size_t>(r)) % n);
      acc += unit_root(num, static_cast<std::int64_t>(n)) * parts[static_cast<std::size_t>(r)][h % sub];
    }
    out[h] = acc;
  }
  return out;
}

std::vector<cplx> fourier_G_spectrum(const FourierContext& ctx, const IndexVector& I, int lambda,
                                     std::int64_t d) {
  require_member(ctx, I);
  const std::int64_t N = pow64(ctx.base(), lambda);
  const auto phases = phase_sequence(ctx, I, lambda, ctx.step(), N, d);
  std::vector<cplx> x(phases.size());
  for (std::size_t u = 0; u < x.size(); ++u) x[u] = unit_root(phases[u], ctx.modulus());
  auto spectrum = dft_radix(x, ctx.base());
  for (auto& v : spectrum) v /= static_cast<double>(N);
  return spectrum;
}

double parseval_residual(const FourierContext& ctx, const IndexVector& I, int lambda,
                         std::int64_t d) {
  double acc = 0.0;
  double comp = 0.0;
  for (const cplx& g : fourier_G_spectrum(ctx, I, lambda, d)) {
    const double x = std::norm(g);
    const double t = acc + x;
    comp += std::abs(acc) >= x ? (acc - t) + x : (x - t) + acc;
    acc = t;
  }
  return std::abs(acc + comp - 1.0);
}

double h_recursion_residual(const FourierContext& ctx, const IndexVector& I, int lambda,
                            std::int64_t h, std::int64_t d, std::int64_t delta) {
  const std::int64_t step = ctx.step();
  if (delta < 0 || delta >= step) throw std::invalid_argument("delta must lie in [0, q^(m-1))");
  const cplx lhs = fourier_H(ctx, I, lambda, h, step * d + delta);
  const std::int64_t P = pow64(ctx.base(), lambda + ctx.window() - 1);
  ComplexSum rhs;
  IndexVector J(I.size());
  for (std::int64_t eps = 0; eps < step; ++eps) {
    for (std::size_t l = 0; l < I.size(); ++l) J[l] = I[l] + static_cast<std::int64_t>(l) * delta + eps;
    rhs.add(unit_root(-mod_floor(static_cast<i128>(h) * eps, static_cast<i128>(P)), P) *
            fourier_G(ctx, J, lambda, h, d));
  }
  return std::abs(lhs - rhs.value() / static_cast<double>(step));
}

double g_recursion_residual(const FourierContext& ctx, const IndexVector& I, int lambda, int j,
                            std::int64_t h, std::int64_t d, std::int64_t delta) {
  if (j < 1 || j > lambda) throw std::invalid_argument("need 1 <= j <= lambda");
  const std::int64_t qj = pow64(ctx.base(), j);
  if (delta < 0 || delta >= qj) throw std::invalid_argument("delta must lie in [0, q^j)");
  const std::int64_t N = pow64(ctx.base(), lambda);
  const cplx lhs = fourier_G(ctx, I, lambda, h, qj * d + delta);
  ComplexSum rhs;
  IndexVector T;
  for (std::int64_t eps = 0; eps < qj; ++eps) {
    transform_T_into(I, eps, delta, j, ctx.base(), ctx.step(), T);
    rhs.add(unit_root(-mod_floor(static_cast<i128>(h) * eps, static_cast<i128>(N)), N) *
            ctx.weight_v(I, eps, delta, j) * fourier_G(ctx, T, lambda - j, h, d));
  }
  return std::abs(lhs - rhs.value() / static_cast<double>(qj));
}

cplx phi_bruteforce(const FourierContext& ctx, const IndexVector& I, const IndexVector& Ip,
                    int lambda, int lambda_prime, std::int64_t h) {
  const std::int64_t D = pow64(ctx.base(), lambda_prime);
  ComplexSum acc;
  for (std::int64_t d = 0; d < D; ++d) {
    acc.add(fourier_G(ctx, I, lambda, h, d) * std::conj(fourier_G(ctx, Ip, lambda, h, d)));
  }
  return acc.value() / static_cast<double>(D);
}

}  // namespace digitseq
