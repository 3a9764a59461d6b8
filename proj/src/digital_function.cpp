#include "digitseq/digital_function.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "digitseq/errors.hpp"

namespace digitseq {

namespace {

constexpr std::int64_t kMaxWeight = std::int64_t{1} << 40;
constexpr std::uint64_t kMaxTable = std::uint64_t{1} << 24;

int power_of_two_shift(int q) {
  if (q <= 1 || (q & (q - 1)) != 0) return 0;
  int s = 0;
  while ((1 << s) != q) ++s;
  return s;
}

bool compute_normalized(int q, int m, const std::vector<std::int64_t>& table) {
  const std::uint64_t size = table.size();
  for (std::uint64_t n = 0; n < size; ++n) {
    std::int64_t sum = 0;
    std::uint64_t shifted = n;
    for (int j = 1; j < m; ++j) {
      shifted = (shifted * static_cast<std::uint64_t>(q)) % size;
      sum += table[shifted];
    }
    if (sum != 0) return false;
  }
  return true;
}

// sum_{j>=0} F(floor(n/q^j) mod q^m) for the canonical (upper) windows.
std::int64_t upper_windows(const DigitalFunction& f, int shift, u128 n) {
  const auto table = f.table();
  const std::uint64_t size = table.size();
  std::int64_t sum = 0;
  if (shift > 0) {
    const std::uint64_t mask = size - 1;
    while (n >> 64) {
      sum += table[static_cast<std::uint64_t>(n) & mask];
      n >>= shift;
    }
    auto x = static_cast<std::uint64_t>(n);
    while (x != 0) {
      sum += table[x & mask];
      x >>= shift;
    }
    return sum;
  }
  const auto q = static_cast<std::uint64_t>(f.base());
  while (n >> 64) {
    sum += table[static_cast<std::uint64_t>(n % size)];
    n /= q;
  }
  auto x = static_cast<std::uint64_t>(n);
  while (x != 0) {
    sum += table[x % size];
    x /= q;
  }
  return sum;
}

}  // namespace

DigitalFunction::DigitalFunction(int q, int m, std::vector<std::int64_t> table, int modulus)
    : q_(q), m_(m), modulus_(modulus), shift_(power_of_two_shift(q)), table_(std::move(table)) {
  normalized_ = compute_normalized(q_, m_, table_);
}

DigitalFunction DigitalFunction::make(int q, int m, std::vector<std::int64_t> table,
                                      int modulus) {
  if (q < 2) throw std::invalid_argument("base q must be >= 2, got " + std::to_string(q));
  if (m < 1) throw std::invalid_argument("window m must be >= 1, got " + std::to_string(m));
  if (modulus < 1 || modulus > (1 << 15)) {
    throw std::invalid_argument("modulus must lie in [1, 32768], got " + std::to_string(modulus));
  }
  const auto size = checked_pow(static_cast<std::uint64_t>(q), m);
  if (!size || *size > kMaxTable) {
    throw std::invalid_argument("table size q^m exceeds 2^24");
  }
  if (table.size() != static_cast<std::uint64_t>(*size)) {
    throw std::invalid_argument("table length " + std::to_string(table.size()) +
                                " != q^m = " + to_string(*size));
  }
  if (table.front() != 0) throw std::invalid_argument("F(0,...,0) must be 0");
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i] < 0 || table[i] > kMaxWeight) {
      throw std::invalid_argument("table entry " + std::to_string(i) + " outside [0, 2^40]");
    }
  }
  return DigitalFunction(q, m, std::move(table), modulus);
}

DigitalFunction DigitalFunction::with_modulus(int modulus) const {
  if (modulus < 1 || modulus > (1 << 15)) {
    throw std::invalid_argument("modulus must lie in [1, 32768]");
  }
  DigitalFunction g = *this;
  g.modulus_ = modulus;
  return g;
}

DigitalFunction normalize(const DigitalFunction& f) {
  const int q = f.base();
  const int m = f.window();
  const auto src = f.table();
  const std::uint64_t size = src.size();
  std::vector<std::int64_t> shifted_sum(size, 0);  // G(n)
  for (std::uint64_t n = 0; n < size; ++n) {
    std::uint64_t shifted = n;
    for (int j = 1; j < m; ++j) {
      shifted = (shifted * static_cast<std::uint64_t>(q)) % size;
      shifted_sum[n] += src[shifted];
    }
  }
  std::vector<std::int64_t> table(size);
  for (std::uint64_t n = 0; n < size; ++n) {
    table[n] = src[n] + shifted_sum[n] - shifted_sum[n / static_cast<std::uint64_t>(q)];
  }
  return DigitalFunction(q, m, std::move(table), f.modulus());
}

std::int64_t eval_b(const DigitalFunction& f, u128 n) {
  if (n > kMaxArgument) throw std::out_of_range("eval_b: argument exceeds 2^126");
  std::int64_t sum = upper_windows(f, f.bit_shift(), n);
  if (!f.is_normalized()) {
    // Windows hanging below digit 0: F((n mod q^(m-s)) q^s) for s = 1..m-1.
    const std::uint64_t size = f.table_size();
    const auto q = static_cast<std::uint64_t>(f.base());
    std::uint64_t low = static_cast<std::uint64_t>(n % size);
    for (int s = 1; s < f.window(); ++s) {
      low = (low * q) % size;
      sum += f.table()[low];
    }
  }
  return sum;
}

TruncationWindow TruncationWindow::make(int mu, int lambda) {
  if (mu < 0 || lambda < mu) {
    throw std::invalid_argument("truncation window requires 0 <= mu <= lambda");
  }
  return TruncationWindow{mu, lambda};
}

std::int64_t eval_b_truncated(const DigitalFunction& f, i128 n, int lambda) {
  if (!f.is_normalized()) {
    throw std::invalid_argument("truncated evaluation requires a normalized function");
  }
  if (lambda < 0) throw std::invalid_argument("lambda must be >= 0");
  if (lambda == 0) return 0;
  const auto period = checked_pow(static_cast<std::uint64_t>(f.base()), lambda + f.window() - 1);
  if (period && *period <= kMaxArgument) {
    n = mod_floor(n, static_cast<i128>(*period));
  } else if (n < 0 || static_cast<u128>(n) > kMaxArgument) {
    throw std::out_of_range("eval_b_truncated: argument outside supported range");
  }
  const auto table = f.table();
  const std::uint64_t size = table.size();
  const auto q = static_cast<u128>(f.base());
  auto x = static_cast<u128>(n);
  std::int64_t sum = 0;
  for (int j = 0; j < lambda && x != 0; ++j) {
    sum += table[static_cast<std::uint64_t>(x % size)];
    x /= q;
  }
  return sum;
}

std::int64_t eval_b_window(const DigitalFunction& f, i128 n, TruncationWindow w) {
  if (w.mu < 0 || w.lambda < w.mu) {
    throw std::invalid_argument("truncation window requires 0 <= mu <= lambda");
  }
  return eval_b_truncated(f, n, w.lambda) - eval_b_truncated(f, n, w.mu);
}

std::pair<std::int64_t, std::int64_t> check_recursion(const DigitalFunction& f, u128 n1,
                                                      u128 n2, int alpha, int lambda) {
  if (alpha < 0) throw std::invalid_argument("alpha must be >= 0");
  if (lambda <= alpha) throw std::invalid_argument("recursion requires lambda > alpha");
  const auto scale = checked_pow(static_cast<std::uint64_t>(f.base()), alpha);
  if (!scale) throw std::out_of_range("q^alpha overflows");
  if (n2 >= *scale) throw std::invalid_argument("recursion requires n2 < q^alpha");
  if (n1 != 0 && n1 > (kMaxArgument - n2) / *scale) {
    throw std::out_of_range("n1 q^alpha + n2 exceeds 2^126");
  }
  const u128 n = n1 * *scale + n2;
  const auto in = static_cast<i128>(n);
  const std::int64_t low = eval_b_truncated(f, in, alpha);
  const std::int64_t first =
      eval_b_truncated(f, in, lambda) - eval_b_truncated(f, static_cast<i128>(n1), lambda - alpha) - low;
  const std::int64_t second = eval_b(f, n) - eval_b(f, n1) - low;
  return {first, second};
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> primes;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      primes.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) primes.push_back(n);
  return primes;
}

GcdReport check_gcd_conditions(const DigitalFunction& f) {
  const std::int64_t mod = f.modulus();
  if (mod <= 1) throw std::invalid_argument("gcd conditions require modulus m' > 1");
  const DigitalFunction g = normalize(f);
  const std::uint64_t size = g.table_size();

  GcdReport report;
  report.q_minus_one_coprime = std::gcd<std::int64_t>(f.base() - 1, mod) == 1;

  std::vector<std::int64_t> values(size);
  for (std::uint64_t n = 0; n < size; ++n) values[n] = eval_b(f, n);

  report.values_coprime = true;
  report.values_not_all_divisible = true;
  for (std::int64_t p : prime_factors(mod)) {
    PrimeCondition pc{p, -1, -1};
    for (std::uint64_t n = 0; n < size; ++n) {
      if (pc.weight_witness < 0 && mod_floor(g.table()[n], p) != 0) {
        pc.weight_witness = static_cast<std::int64_t>(n);
      }
      if (pc.value_witness < 0 && mod_floor(values[n], p) != 0) {
        pc.value_witness = static_cast<std::int64_t>(n);
      }
    }
    report.values_coprime = report.values_coprime && pc.weight_witness >= 0;
    report.values_not_all_divisible = report.values_not_all_divisible && pc.value_witness >= 0;
    report.primes.push_back(pc);
  }

  for (std::uint64_t n = 0; n < size; ++n) {
    if (std::gcd(values[n], mod) == 1) {
      report.naive_scan_coprime = true;
      break;
    }
  }
  report.naive_differs = report.naive_scan_coprime != report.values_coprime;

  const auto search = checked_pow(static_cast<std::uint64_t>(f.base()), f.window() + 4);
  const std::uint64_t limit =
      (search && *search < (u128{1} << 20)) ? static_cast<std::uint64_t>(*search) : (1u << 20);
  for (std::uint64_t n = 0; n < limit; ++n) {
    if (std::gcd(eval_b(f, n), mod) == 1) {
      report.coprime_value_witness = static_cast<std::int64_t>(n);
      break;
    }
  }
  return report;
}

std::int64_t boundary_difference(const DigitalFunction& f, std::int64_t e) {
  const std::int64_t top = pow64(f.base(), f.window() - 1) * (e + 1);
  return eval_b(f, static_cast<u128>(top - 1)) - eval_b(f, static_cast<u128>(top));
}

namespace {

std::vector<std::int64_t> boundary_table(const DigitalFunction& f, int alpha_num) {
  if (f.modulus() <= 1) throw std::invalid_argument("difference witness requires m' > 1");
  if (alpha_num < 1 || alpha_num >= f.modulus()) {
    throw std::invalid_argument("alpha numerator must lie in [1, m'-1]");
  }
  const std::int64_t count = pow64(f.base(), 2 * f.window() - 1);
  if (count > (std::int64_t{1} << 20)) {
    throw BudgetExceeded("difference witness search: q^(2m-1) exceeds 2^20");
  }
  std::vector<std::int64_t> diffs(static_cast<std::size_t>(count));
  for (std::int64_t e = 0; e < count; ++e) diffs[static_cast<std::size_t>(e)] = boundary_difference(f, e);
  return diffs;
}

}  // namespace

DifferenceWitness find_difference_witness(const DigitalFunction& f, int alpha_num) {
  const auto diffs = boundary_table(f, alpha_num);
  const std::int64_t mod = f.modulus();
  const auto count = static_cast<std::int64_t>(diffs.size());
  for (std::int64_t e1 = 0; e1 < count; ++e1) {
    for (std::int64_t e2 = 0; e2 < count; ++e2) {
      const std::int64_t d = diffs[static_cast<std::size_t>(e1)] - diffs[static_cast<std::size_t>(e2)];
      if (mod_floor(d * alpha_num, mod) != 0) return {e1, e2, d};
    }
  }
  throw HypothesisViolation("no difference witness exists: d * alpha is integral for every pair "
                            "(the gcd hypotheses on q, m' and b fail)");
}

std::vector<DifferenceWitness> all_difference_witnesses(const DigitalFunction& f, int alpha_num) {
  const auto diffs = boundary_table(f, alpha_num);
  const std::int64_t mod = f.modulus();
  const auto count = static_cast<std::int64_t>(diffs.size());
  std::vector<DifferenceWitness> out;
  for (std::int64_t e1 = 0; e1 < count; ++e1) {
    for (std::int64_t e2 = 0; e2 < count; ++e2) {
      const std::int64_t d = diffs[static_cast<std::size_t>(e1)] - diffs[static_cast<std::size_t>(e2)];
      if (mod_floor(d * alpha_num, mod) != 0) out.push_back({e1, e2, d});
    }
  }
  return out;
}

}  // namespace digitseq
