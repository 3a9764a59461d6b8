// Acceptance harness: `acceptance <id>` runs one criterion, `acceptance` runs
// all of them. Each prints a single PASS/FAIL line; the exit status is
// non-zero when any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <memory>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "digitseq/analytic.hpp"
#include "digitseq/carry.hpp"
#include "digitseq/errors.hpp"
#include "digitseq/normality.hpp"
#include "digitseq/seqgen.hpp"
#include "digitseq/transfer.hpp"
#include "digitseq/witness.hpp"

using namespace digitseq;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::int64_t below(std::mt19937_64& rng, std::int64_t n) {
  return std::uniform_int_distribution<std::int64_t>(0, n - 1)(rng);
}

DigitalFunction random_normalized(std::mt19937_64& rng, int q, int m, int modulus) {
  std::vector<std::int64_t> t(static_cast<std::size_t>(pow64(q, m)));
  for (std::size_t i = 1; i < t.size(); ++i) t[i] = below(rng, 6);
  return normalize(DigitalFunction::make(q, m, t, modulus));
}

AlphaVector random_alpha(std::mt19937_64& rng, int k, int modulus, bool nonzero) {
  for (;;) {
    std::vector<int> a(static_cast<std::size_t>(k));
    for (auto& x : a) x = static_cast<int>(below(rng, modulus));
    AlphaVector v(a, modulus);
    if (!nonzero || !v.is_zero()) return v;
  }
}

// 1. Exact digit recursion plus the H and G recursions.
Outcome c1() {
  Timer t;
  std::mt19937_64 rng(101);
  std::uint64_t bad_rec = 0;
  const DigitalFunction rec_fns[] = {thue_morse(), rudin_shapiro(), digit_sum(3, 2),
                                     random_normalized(rng, 2, 3, 5), random_normalized(rng, 3, 2, 4)};
  for (int i = 0; i < 10000; ++i) {
    const auto& f = rec_fns[i % 5];
    const int alpha = static_cast<int>(below(rng, 10));
    const int lambda = alpha + 1 + static_cast<int>(below(rng, 10));
    const u128 n1 = static_cast<u128>(below(rng, std::int64_t{1} << 40));
    const u128 n2 = static_cast<u128>(below(rng, pow64(f.base(), alpha)));
    const auto [a, b] = check_recursion(f, n1, n2, alpha, lambda);
    if (a != 0 || b != 0) ++bad_rec;
  }

  double worst_h = 0.0, worst_g = 0.0;
  int cases = 0;
  for (auto [q, m] : {std::pair{2, 1}, {2, 2}, {3, 1}}) {
    const DigitalFunction fns[] = {q == 2 && m == 1 ? thue_morse() : q == 2 ? rudin_shapiro() : digit_sum(3, 2),
                                   random_normalized(rng, q, m, 3)};
    for (const auto& f : fns) {
      for (int k = 1; k <= 3; ++k) {
        const FourierContext ctx(f, random_alpha(rng, k, f.modulus(), true));
        const auto& primed = ctx.space().primed();
        const auto& all = ctx.space().elements();
        for (int lambda = 1; lambda <= 10; ++lambda) {
          for (int s = 0; s < 3; ++s) {
            const std::int64_t h = below(rng, pow64(q, lambda + m - 1));
            const std::int64_t d = below(rng, pow64(q, lambda + 1));
            const auto& Ip = primed[static_cast<std::size_t>(below(rng, static_cast<std::int64_t>(primed.size())))];
            worst_h = std::max(worst_h, h_recursion_residual(ctx, Ip, lambda, h, d, below(rng, pow64(q, m - 1))));
            const auto& I = all[static_cast<std::size_t>(below(rng, static_cast<std::int64_t>(all.size())))];
            const int j = 1 + static_cast<int>(below(rng, lambda));
            worst_g = std::max(worst_g, g_recursion_residual(ctx, I, lambda, j, h, d, below(rng, pow64(q, j))));
            ++cases;
          }
        }
      }
    }
  }
  const double secs = t.seconds();
  return {bad_rec == 0 && worst_h <= 1e-9 && worst_g <= 1e-9 && secs <= 60.0,
          fmt("digit recursion 10000 cases, %llu nonzero; H/G recursion %d cases, worst %.2e / %.2e; %.1f s",
              static_cast<unsigned long long>(bad_rec), cases, worst_h, worst_g, secs)};
}

// 2. Parseval for G.
Outcome c2() {
  std::mt19937_64 rng(202);
  const DigitalFunction fns[] = {thue_morse(), rudin_shapiro(), digit_sum(3, 2), random_normalized(rng, 2, 2, 3)};
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto& f = fns[i % 4];
    const int k = 1 + static_cast<int>(below(rng, 3));
    const FourierContext ctx(f, random_alpha(rng, k, f.modulus(), false));
    const auto& all = ctx.space().elements();
    const auto& I = all[static_cast<std::size_t>(below(rng, static_cast<std::int64_t>(all.size())))];
    const int lambda = static_cast<int>(below(rng, 11));
    worst = std::max(worst, parseval_residual(ctx, I, lambda, below(rng, std::int64_t{1} << 30)));
  }
  return {worst <= 1e-9, fmt("1000 cases, worst |sum |G|^2 - 1| = %.2e", worst)};
}

// 3. Bounds with explicit right-hand sides.
Outcome c3() {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal;
  int gauss = 0, incomplete = 0, geometric = 0, vdc = 0, vaaler = 0, sinus = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::int64_t m = 1 + below(rng, 4096);
    const std::int64_t a = below(rng, 2 * m) - m / 2, b = below(rng, 2 * m);
    gauss += !gauss_sum(a, b, m).holds();
    incomplete += !incomplete_gauss_sum(a, b, m, below(rng, 20000) - 10000, below(rng, 513)).holds();

    const std::int64_t L1 = below(rng, 1000) - 500;
    geometric += !geometric_min_bound(unit(rng) * 6.0 - 3.0, L1, L1 + below(rng, 513)).holds();

    std::vector<std::complex<double>> z(static_cast<std::size_t>(1 + below(rng, 512)));
    const double theta = unit(rng);
    for (std::size_t n = 0; n < z.size(); ++n) {
      z[n] = i % 2 == 0 ? std::complex<double>(normal(rng), normal(rng))
                        : std::polar(1.0, 2.0 * std::numbers::pi * theta * static_cast<double>(n * n));
    }
    vdc += !van_der_corput_check(z, 1 + below(rng, 8), 1 + below(rng, 64)).holds();

    const auto p = vaaler_build(unit(rng), 1 + static_cast<int>(below(rng, 8)));
    vaaler += !vaaler_check(p, 4096).holds();

    const double shift = unit(rng) < 0.3 ? static_cast<double>(below(rng, m)) : unit(rng) * static_cast<double>(m);
    sinus += !sinus_sum_checks(below(rng, 2 * m), m, shift, std::exp(unit(rng) * 12.0), 1).holds();
  }
  const int total = gauss + incomplete + geometric + vdc + vaaler + sinus;
  return {total == 0, fmt("violations over 1000 cases each: gauss %d, incomplete %d, geometric %d, "
                          "van der corput %d, vaaler %d, inverse sine %d",
                          gauss, incomplete, geometric, vdc, vaaler, sinus)};
}

// 4. Contraction conditions on the integral-K branch.
Outcome c4() {
  Timer t;
  const auto hs = stratified_samples(std::int64_t{1} << 12, 1024, 404);
  bool ok = true;
  std::string detail;
  for (const char* name : {"rudin-shapiro", "thue-morse"}) {
    const FourierContext ctx(preset(name), AlphaVector::parse("1,1", 2));
    const auto r1 = check_condition1(ctx, hs, 12);
    const auto r2 = check_condition2(ctx, hs, 12);
    ok = ok && r1.holds && r2.holds;
    detail += fmt("%s: cond1 m0=%d worst margin %.3g (%llu violations), cond2 m1=%d eta=%.3g worst margin %.3g "
                  "(%llu violations); ",
                  name, r1.window, r1.worst_margin, static_cast<unsigned long long>(r1.violations), r2.window,
                  r2.eta, r2.worst_margin, static_cast<unsigned long long>(r2.violations));
  }
  const double secs = t.seconds();
  return {ok && secs <= 120.0, detail + fmt("%.1f s", secs)};
}

// 5. Uniform saving of the small matrices on the non-integral branch.
Outcome c5() {
  const FourierContext tm(thue_morse(), AlphaVector::parse("1", 2));
  const std::vector<std::int64_t> all_delta{0, 1, 2, 3};
  const auto a = check_m_saving(tm, saving_length(1, 1), all_delta, 256);
  const FourierContext rs(rudin_shapiro(), AlphaVector::parse("1,0", 2));
  const auto deltas = stratified_samples(std::int64_t{1} << 12, 64, 505);
  const auto b = check_m_saving(rs, saving_length(2, 2), deltas, 256);
  return {a.violations == 0 && b.violations == 0,
          fmt("thue-morse m1=%d: worst norm %.4f vs bound %.4f, %llu/%llu violations; "
              "rudin-shapiro m1=%d: worst norm %.2f vs bound %.2f, %llu/%llu violations",
              a.j, a.worst_norm, a.bound, static_cast<unsigned long long>(a.violations),
              static_cast<unsigned long long>(a.cases), b.j, b.worst_norm, b.bound,
              static_cast<unsigned long long>(b.violations), static_cast<unsigned long long>(b.cases))};
}

// 6. Witness construction sweep plus the path and collapse identities.
Outcome c6() {
  struct Case {
    const char* name;
    const char* alpha;
  };
  const Case cases[] = {{"thue-morse", "1"},      {"thue-morse", "1,0"},   {"thue-morse", "0,1"},
                        {"rudin-shapiro", "1"},   {"rudin-shapiro", "1,0"}, {"rudin-shapiro", "0,1"},
                        {"rudin-shapiro", "1,1,1"}, {"digit-sum:3,5", "2"}, {"digit-sum:3,5", "1,3"}};
  std::vector<std::unique_ptr<FourierContext>> ctxs;
  for (const auto& c : cases) {
    const auto f = preset(c.name);
    ctxs.push_back(std::make_unique<FourierContext>(f, AlphaVector::parse(c.alpha, f.modulus())));
  }
  std::mt19937_64 rng(606);
  int failures = 0, first_try = 0;
  std::string first_failure;
  for (int i = 0; i < 1000; ++i) {
    const auto& ctx = *ctxs[static_cast<std::size_t>(i) % ctxs.size()];
    const auto& all = ctx.space().elements();
    const auto& I = all[static_cast<std::size_t>(below(rng, static_cast<std::int64_t>(all.size())))];
    const std::int64_t delta = below(rng, pow64(ctx.base(), saving_length(ctx.window(), ctx.length())));
    try {
      const auto w = find_saving_witness(ctx, I, delta);
      if (!(w.verified() && verify_witness(ctx, w))) throw HypothesisViolation("record does not verify");
      first_try += w.candidates_tried == 1;
    } catch (const std::exception& e) {
      if (failures++ == 0) first_failure = fmt(" (first: %s I=%s delta=%lld: %s)", ctx.alpha().describe().c_str(),
                                               to_string(I).c_str(), static_cast<long long>(delta), e.what());
    }
  }
  int path = 0;
  std::uint64_t collapse = 0;
  for (auto [q, m] : {std::pair{2, 1}, {2, 2}, {3, 1}}) {
    for (int k = 1; k <= 4; ++k) {
      path += path_lemma_failures(q, m, k);
      collapse += zero_collapse_failures(q, m, k);
    }
  }
  return {failures == 0 && path == 0 && collapse == 0,
          fmt("1000 witness cases, %d failures, %d verified on the first candidate; path lemma failures %d, "
              "T^m0(I) != 0 for %llu vectors",
              failures, first_try, path, static_cast<unsigned long long>(collapse)) + first_failure};
}

// 7. Block frequencies along squares.
Outcome c7() {
  Timer t;
  bool ok = true;
  std::string detail;
  for (const char* name : {"rudin-shapiro", "thue-morse"}) {
    const auto f = preset(name);
    const auto v = stream_parallel(f, IndexMap::square(), 0, 1000000, 1);
    double worst = 0.0;
    std::uint64_t missing = 0;
    for (int k = 1; k <= 8; ++k) {
      const auto s = normality_deviation(block_histogram(v, k, f.modulus()), f.modulus());
      if (k <= 4) worst = std::max(worst, s.max_deviation);
      missing += s.missing_blocks;
    }
    ok = ok && worst <= 0.01 && missing == 0;
    detail += fmt("%s: max deviation (k<=4) %.5f, missing blocks (k<=8) %llu; ", name, worst,
                  static_cast<unsigned long long>(missing));
  }
  const double secs = t.seconds();
  return {ok && secs <= 60.0, detail + fmt("%.1f s", secs)};
}

// 8. Decay of S0 over N = 2^10..2^20.
Outcome c8() {
  std::vector<std::uint64_t> grid;
  for (int e = 10; e <= 20; ++e) grid.push_back(std::uint64_t{1} << e);
  struct Case {
    const char* name;
    const char* alpha;
  };
  bool ok = true;
  std::string detail;
  for (const Case& c : {Case{"thue-morse", "1"}, Case{"rudin-shapiro", "1,1"}, Case{"rudin-shapiro", "1,0"}}) {
    const auto f = preset(c.name);
    const double slope = decay_exponent(f, AlphaVector::parse(c.alpha, 2), grid).slope;
    ok = ok && slope <= 0.98;
    detail += fmt("%s alpha=(%s)/2 slope %.4f; ", c.name, c.alpha, slope);
  }
  const double flat = decay_exponent(rudin_shapiro(), AlphaVector::parse("0,0", 2), grid).slope;
  ok = ok && std::abs(flat - 1.0) <= 0.001;
  return {ok, detail + fmt("zero alpha slope %.6f", flat)};
}

// 9. Carry exceptions.
Outcome c9() {
  double worst = 0.0, worst_b = 0.0;
  int cells = 0;
  for (int rho : {0, 2}) {
    for (int lambda : {18, 20}) {
      for (int i = 0; i < 8; ++i) {
        const auto r = static_cast<std::int64_t>(std::lround(i * std::pow(2.0, rho) / 7.0));
        const auto e = carry_exception_count(rudin_shapiro(), 16, lambda, rho, r);
        worst = std::max(worst, e.constant);
        worst_b = std::max(worst_b, e.b_constant);
        ++cells;
      }
    }
  }
  return {worst <= 16.0 && worst_b <= 16.0,
          fmt("%d cells, largest constant %.3f (digits) / %.3f (rudin-shapiro differences)", cells, worst, worst_b)};
}

// 10. Generation throughput along squares.
Outcome c10() {
  const auto f = rudin_shapiro();
  auto timed = [&](std::uint64_t count) {
    Timer t;
    const auto v = stream(f, IndexMap::square(), 0, count);
    volatile std::uint8_t sink = v.back();
    (void)sink;
    return t.seconds();
  };
  timed(100000);
  const double small = timed(1000000);
  const double large = timed(10000000);
  const double ratio = large / small;
  return {large <= 5.0 && ratio <= 15.0,
          fmt("1e6 symbols %.3f s, 1e7 symbols %.3f s, ratio %.2f (single thread)", small, large, ratio)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
  std::vector<int> ids;
  if (argc > 1) {
    for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  } else {
    for (int i = 1; i <= 10; ++i) ids.push_back(i);
  }
  int failed = 0;
  for (int id : ids) {
    if (id < 1 || id > 10) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 2;
    }
    Outcome o;
    try {
      o = criteria[static_cast<std::size_t>(id - 1)]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("C%d %s %s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
