#include "digitseq/normality.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>

#include "digitseq/errors.hpp"

namespace digitseq {

namespace {

constexpr std::uint64_t kMaxBlocks = std::uint64_t{1} << 26;

std::uint64_t checked_block_space(int alphabet, int k) {
  std::uint64_t space = 1;
  for (int i = 0; i < k; ++i) {
    space *= static_cast<std::uint64_t>(alphabet);
    if (space > kMaxBlocks) throw BudgetExceeded("block histogram: alphabet^k exceeds 2^26");
  }
  return space;
}

}  // namespace

std::uint64_t BlockHistogram::count(std::span<const std::uint8_t> block) const {
  if (static_cast<int>(block.size()) != k) throw std::invalid_argument("block length != k");
  std::uint64_t code = 0;
  for (std::uint8_t c : block) {
    if (c >= alphabet) return 0;
    code = code * static_cast<std::uint64_t>(alphabet) + c;
  }
  return counts[code];
}

std::uint64_t BlockHistogram::distinct() const {
  std::uint64_t n = 0;
  for (std::uint64_t c : counts) n += c != 0;
  return n;
}

std::vector<std::uint8_t> BlockHistogram::decode(std::uint64_t code) const {
  std::vector<std::uint8_t> block(static_cast<std::size_t>(k));
  for (int i = k - 1; i >= 0; --i) {
    block[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(code % alphabet);
    code /= static_cast<std::uint64_t>(alphabet);
  }
  return block;
}

BlockHistogram block_histogram(std::span<const std::uint8_t> values, int k, int alphabet) {
  if (k < 1) throw std::invalid_argument("block length k must be >= 1");
  if (alphabet < 1 || alphabet > 256) throw std::invalid_argument("alphabet must lie in [1, 256]");
  if (values.size() < static_cast<std::size_t>(k)) {
    throw std::invalid_argument("block length k exceeds the sequence length");
  }
  BlockHistogram h;
  h.k = k;
  h.alphabet = alphabet;
  const std::uint64_t space = checked_block_space(alphabet, k);
  h.counts.assign(space, 0);
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= alphabet) throw std::invalid_argument("symbol outside the alphabet");
    code = (code * static_cast<std::uint64_t>(alphabet) + values[i]) % space;
    if (i + 1 >= static_cast<std::size_t>(k)) ++h.counts[code];
  }
  h.total = values.size() - static_cast<std::size_t>(k) + 1;
  return h;
}

NormalityStats normality_deviation(const BlockHistogram& h, int modulus) {
  if (modulus != h.alphabet) throw std::invalid_argument("histogram alphabet != modulus");
  NormalityStats s;
  const double expected = std::pow(static_cast<double>(modulus), -h.k);
  const double total = static_cast<double>(h.total);
  for (std::uint64_t c : h.counts) {
    const double freq = total > 0 ? static_cast<double>(c) / total : 0.0;
    s.max_deviation = std::max(s.max_deviation, std::abs(freq - expected));
    const double e = total * expected;
    if (e > 0) s.chi_square += (static_cast<double>(c) - e) * (static_cast<double>(c) - e) / e;
    s.missing_blocks += c == 0;
  }
  return s;
}

std::vector<std::uint64_t> subword_complexity(std::span<const std::uint8_t> values, int n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  if (static_cast<std::size_t>(n_max) >= values.size()) {
    throw std::invalid_argument("n_max must be smaller than the sequence length");
  }
  int alphabet = 1;
  for (std::uint8_t v : values) alphabet = std::max(alphabet, v + 1);
  const int bits = std::max(1, static_cast<int>(std::ceil(std::log2(alphabet))));

  std::vector<std::uint64_t> p;
  p.reserve(static_cast<std::size_t>(n_max));
  const std::string_view bytes(reinterpret_cast<const char*>(values.data()), values.size());
  for (int n = 1; n <= n_max; ++n) {
    const std::size_t windows = values.size() - static_cast<std::size_t>(n) + 1;
    if (n * bits <= 64) {
      std::unordered_set<std::uint64_t> seen;
      seen.reserve(std::min<std::size_t>(windows, std::size_t{1} << 20));
      const std::uint64_t mask = n * bits == 64 ? ~std::uint64_t{0}
                                                : (std::uint64_t{1} << (n * bits)) - 1;
      std::uint64_t code = 0;
      for (std::size_t i = 0; i < values.size(); ++i) {
        code = ((code << bits) | values[i]) & mask;
        if (i + 1 >= static_cast<std::size_t>(n)) seen.insert(code);
      }
      p.push_back(seen.size());
    } else {
      std::unordered_set<std::string_view> seen;
      for (std::size_t i = 0; i < windows; ++i) seen.insert(bytes.substr(i, static_cast<std::size_t>(n)));
      p.push_back(seen.size());
    }
  }
  return p;
}

AlphaVector::AlphaVector(std::vector<int> numerators, int modulus)
    : numerators_(std::move(numerators)), modulus_(modulus) {
  if (modulus_ < 1) throw std::invalid_argument("alpha modulus must be >= 1");
  if (numerators_.empty()) throw std::invalid_argument("alpha vector must have k >= 1 entries");
  for (int v : numerators_) {
    if (v < 0 || v >= modulus_) {
      throw std::invalid_argument("alpha numerators must lie in [0, m'-1]");
    }
  }
}

AlphaVector AlphaVector::parse(std::string_view text, int modulus) {
  std::vector<int> nums;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto item = text.substr(pos, end - pos);
    int v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw std::invalid_argument("malformed alpha entry '" + std::string(item) + "'");
    }
    nums.push_back(v);
    pos = end + 1;
  }
  return AlphaVector(std::move(nums), modulus);
}

int AlphaVector::k_numerator() const {
  int sum = 0;
  for (int v : numerators_) sum = (sum + v) % modulus_;
  return sum;
}

bool AlphaVector::is_zero() const {
  for (int v : numerators_) {
    if (v != 0) return false;
  }
  return true;
}

int AlphaVector::first_nonzero() const {
  for (std::size_t l = 0; l < numerators_.size(); ++l) {
    if (numerators_[l] != 0) return static_cast<int>(l);
  }
  return -1;
}

std::string AlphaVector::describe() const {
  std::string s = "(";
  for (std::size_t l = 0; l < numerators_.size(); ++l) {
    if (l > 0) s += ",";
    s += std::to_string(numerators_[l]) + "/" + std::to_string(modulus_);
  }
  return s + ")";
}

std::complex<double> combine_phase_counts(std::span<const std::uint64_t> counts) {
  const auto mod = static_cast<double>(counts.size());
  double re = 0.0;
  double im = 0.0;
  for (std::size_t p = 0; p < counts.size(); ++p) {
    if (counts[p] == 0) continue;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(p) / mod;
    const double c = static_cast<double>(counts[p]);
    // Exact values at the quarter points keep small-modulus sums integral.
    if (4 * p == 0) {
      re += c;
    } else if (4 * p == counts.size() * 1) {
      im += c;
    } else if (2 * p == counts.size()) {
      re -= c;
    } else if (4 * p == counts.size() * 3) {
      im -= c;
    } else {
      re += c * std::cos(angle);
      im += c * std::sin(angle);
    }
  }
  return {re, im};
}

namespace {

void check_sum_range(const AlphaVector& alpha, std::uint64_t N) {
  const u128 top = static_cast<u128>(N) + static_cast<u128>(alpha.size()) - 1;
  if (top > (u128{1} << 63)) throw std::out_of_range("(N+k-1)^2 exceeds 2^126");
}

// Phase tally of n in [lo, hi).
void tally_phases(const DigitalFunction& f, const AlphaVector& alpha, std::uint64_t lo,
                  std::uint64_t hi, std::vector<std::uint64_t>& counts) {
  const int k = alpha.size();
  const int mod = alpha.modulus();
  // Ring buffer of b((n+l)^2) mod m' for l = 0..k-1.
  std::vector<int> ring(static_cast<std::size_t>(k));
  auto value_at = [&](std::uint64_t t) {
    const u128 x = static_cast<u128>(t);
    return static_cast<int>(mod_floor(eval_b(f, x * x), static_cast<std::int64_t>(mod)));
  };
  for (int l = 0; l + 1 < k; ++l) ring[static_cast<std::size_t>(l)] = value_at(lo + static_cast<std::uint64_t>(l));
  std::size_t head = 0;
  for (std::uint64_t n = lo; n < hi; ++n) {
    ring[(head + static_cast<std::size_t>(k) - 1) % static_cast<std::size_t>(k)] =
        value_at(n + static_cast<std::uint64_t>(k) - 1);
    long phase = 0;
    for (int l = 0; l < k; ++l) {
      phase += static_cast<long>(alpha[l]) * ring[(head + static_cast<std::size_t>(l)) % static_cast<std::size_t>(k)];
    }
    ++counts[static_cast<std::size_t>(phase % mod)];
    head = (head + 1) % static_cast<std::size_t>(k);
  }
}

}  // namespace

ExpSum exp_sum_S0(const DigitalFunction& f, const AlphaVector& alpha, std::uint64_t N,
                  int threads) {
  if (alpha.modulus() != f.modulus()) throw std::invalid_argument("alpha modulus != m'");
  check_sum_range(alpha, N);
  ExpSum out;
  out.n = N;
  out.phase_counts.assign(static_cast<std::size_t>(alpha.modulus()), 0);
  if (threads <= 1 || N < 4096) {
    tally_phases(f, alpha, 0, N, out.phase_counts);
  } else {
    std::vector<std::vector<std::uint64_t>> partial(static_cast<std::size_t>(threads),
                                                    std::vector<std::uint64_t>(out.phase_counts.size(), 0));
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (N + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const std::uint64_t lo = std::min<std::uint64_t>(N, chunk * t);
      const std::uint64_t hi = std::min<std::uint64_t>(N, lo + chunk);
      pool.emplace_back([&, t, lo, hi] { tally_phases(f, alpha, lo, hi, partial[static_cast<std::size_t>(t)]); });
    }
    for (auto& th : pool) th.join();
    for (const auto& part : partial) {
      for (std::size_t p = 0; p < part.size(); ++p) out.phase_counts[p] += part[p];
    }
  }
  out.value = combine_phase_counts(out.phase_counts);
  return out;
}

DecayFit decay_exponent(const DigitalFunction& f, const AlphaVector& alpha,
                        std::span<const std::uint64_t> grid) {
  if (grid.size() < 2) throw std::invalid_argument("decay grid needs at least 2 points");
  if (alpha.modulus() != f.modulus()) throw std::invalid_argument("alpha modulus != m'");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 1 || (i > 0 && grid[i] <= grid[i - 1])) {
      throw std::invalid_argument("decay grid must be strictly increasing and positive");
    }
  }
  check_sum_range(alpha, grid.back());

  DecayFit fit;
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(alpha.modulus()), 0);
  std::uint64_t done = 0;
  for (std::uint64_t N : grid) {
    tally_phases(f, alpha, done, N, counts);
    done = N;
    fit.table.push_back({N, counts, combine_phase_counts(counts)});
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto n = static_cast<double>(grid.size());
  for (const auto& row : fit.table) {
    const double x = std::log(static_cast<double>(row.n));
    const double y = std::log(std::max(1.0, std::abs(row.value)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

}  // namespace digitseq
