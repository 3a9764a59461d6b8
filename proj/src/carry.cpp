#include "digitseq/carry.hpp"

#include <stdexcept>
#include <string>

#include "digitseq/budget.hpp"

namespace digitseq {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("constraint violated: " + what);
}

}  // namespace

CarryExperiment carry_exception_count(const DigitalFunction& f, int nu, int lambda, int rho,
                                      std::int64_t r) {
  const int q = f.base();
  require(nu >= 0 && rho >= 0, "nu, rho >= 0");
  require(nu + rho <= lambda, "nu + rho <= lambda");
  require(lambda <= 2 * nu, "lambda <= 2 nu");
  require(r >= 0 && r <= pow64(q, rho), "0 <= r <= q^rho");
  require_budget(BudgetKind::carry, static_cast<std::uint64_t>(pow64(q, nu)));
  require(lambda - f.window() + 1 >= 0, "lambda >= m - 1");

  const DigitalFunction g = f.is_normalized() ? f : normalize(f);
  const auto limit = static_cast<std::int64_t>(pow64(q, nu));
  const u128 cut = pow64(q, lambda);
  const int low = lambda - f.window() + 1;

  CarryExperiment e;
  e.q = q;
  e.nu = nu;
  e.lambda = lambda;
  e.rho = rho;
  e.r = r;
  for (std::int64_t n = 0; n < limit; ++n) {
    const u128 a = static_cast<u128>(n) * static_cast<u128>(n);
    const u128 b = static_cast<u128>(n + r) * static_cast<u128>(n + r);
    if (a / cut != b / cut) ++e.count;
    const std::int64_t full = eval_b(g, b) - eval_b(g, a);
    const std::int64_t trunc = eval_b_truncated(g, static_cast<i128>(b), low) -
                               eval_b_truncated(g, static_cast<i128>(a), low);
    if (full != trunc) ++e.b_count;
  }
  e.scale = static_cast<double>(pow64(q, 2 * nu + rho - lambda));
  e.constant = static_cast<double>(e.count) / e.scale;
  e.b_constant = static_cast<double>(e.b_count) / e.scale;
  return e;
}

CarryDecompositionReport carry_decomposition_check(const DigitalFunction& f,
                                                   const CarryDecompositionParams& p) {
  const int q = f.base();
  const int m = f.window();
  require(0 < p.mu && p.mu < p.nu && p.nu < p.lambda, "0 < mu < nu < lambda");
  require(p.rho_prime >= 0 && 2 * p.rho_prime <= p.mu, "2 rho' <= mu");
  require(p.mu <= p.nu - p.rho_prime, "mu <= nu - rho'");
  require(p.lambda - p.nu <= 2 * (p.mu - p.rho_prime), "lambda - nu <= 2 (mu - rho')");
  require(p.ell >= 0, "ell >= 0");
  require(p.s >= 1, "s >= 1");
  require(p.r >= 1 && p.r * p.r <= pow64(q, p.lambda - p.nu),
          "1 <= r <= q^((lambda - nu)/2)");
  require_budget(BudgetKind::carry_decomposition, static_cast<std::uint64_t>(pow64(q, p.nu)));

  const DigitalFunction g = f.is_normalized() ? f : normalize(f);
  const int mu_p = p.mu - p.rho_prime;
  const auto modulus = static_cast<i128>(pow64(q, p.lambda + m - 1));
  const auto shift_mu = static_cast<i128>(pow64(q, mu_p));
  const auto v_mod = static_cast<i128>(pow64(q, p.lambda - p.mu + m - 1));
  const auto qm1 = static_cast<i128>(pow64(q, m - 1));
  const auto q_rho = static_cast<i128>(pow64(q, p.rho_prime));
  const i128 jump = static_cast<i128>(p.s) * static_cast<i128>(pow64(q, p.mu + m - 1));
  const TruncationWindow band = TruncationWindow::make(p.mu, p.lambda);
  const TruncationWindow low =
      TruncationWindow::make(p.rho_prime, p.lambda - p.mu + p.rho_prime);
  const i128 ell = p.ell, s = p.s, r = p.r;

  auto high = [&](i128 x) { return mod_floor(x, modulus) / shift_mu; };
  auto band_of_square = [&](i128 x) { return eval_b_window(g, mod_floor(x * x, modulus), band); };

  CarryDecompositionReport rep;
  rep.params = p;
  const auto limit = static_cast<std::int64_t>(pow64(q, p.nu));
  for (std::int64_t nn = 0; nn < limit; ++nn) {
    const i128 n = nn;
    const i128 u1 = high(n * n);
    const i128 u2 = high((n + r) * (n + r));
    const i128 u3 = high(2 * n);
    const i128 v = mod_floor(2 * s * qm1 * n, v_mod);

    const bool fail[4] = {
        band_of_square(n + ell) != eval_b_window(g, u1 + ell * u3, low),
        band_of_square(n + ell + jump) !=
            eval_b_window(g, u1 + ell * u3 + v * q_rho + 2 * ell * s * qm1 * q_rho, low),
        band_of_square(n + r + ell) != eval_b_window(g, u2 + ell * u3, low),
        band_of_square(n + r + ell + jump) !=
            eval_b_window(g, u2 + ell * u3 + v * q_rho + 2 * (ell + r) * s * qm1 * q_rho, low),
    };
    bool any = false;
    for (int i = 0; i < 4; ++i) {
      if (fail[i]) {
        ++rep.identity_failures[i];
        any = true;
      }
    }
    if (any) ++rep.count;
  }
  rep.scale = static_cast<double>(pow64(q, p.nu - p.rho_prime));
  rep.constant = static_cast<double>(rep.count) / rep.scale;
  return rep;
}

}  // namespace digitseq
