#include "oracles.hpp"

#include <cmath>
#include <numbers>

namespace oracle {

std::vector<int> digits(unsigned __int128 n, int q) {
  std::vector<int> d;
  while (n > 0) {
    d.push_back(static_cast<int>(n % static_cast<unsigned>(q)));
    n /= static_cast<unsigned>(q);
  }
  return d;
}

namespace {

// Window whose lowest digit sits at position `pos` (may be negative: padding).
std::int64_t window_weight(const std::vector<std::int64_t>& F, int q, int m,
                           const std::vector<int>& d, int pos) {
  std::int64_t idx = 0;
  for (int i = m - 1; i >= 0; --i) {
    const int p = pos + i;
    const int digit = p >= 0 && p < static_cast<int>(d.size()) ? d[static_cast<std::size_t>(p)] : 0;
    idx = idx * q + digit;
  }
  return F[static_cast<std::size_t>(idx)];
}

}  // namespace

std::int64_t block_sum(const std::vector<std::int64_t>& F, int q, int m, unsigned __int128 n) {
  const auto d = digits(n, q);
  std::int64_t total = 0;
  for (int pos = -(m - 1); pos < static_cast<int>(d.size()); ++pos) total += window_weight(F, q, m, d, pos);
  return total;
}

std::int64_t block_sum_truncated(const std::vector<std::int64_t>& F, int q, int m,
                                 unsigned __int128 n, int lambda) {
  const auto d = digits(n, q);
  std::int64_t total = 0;
  for (int pos = 0; pos < lambda; ++pos) total += window_weight(F, q, m, d, pos);
  return total;
}

int adjacent_ones(std::uint64_t n) {
  int c = 0;
  while (n > 0) {
    if ((n & 3u) == 3u) ++c;
    n >>= 1;
  }
  return c;
}

int popcount_parity(unsigned __int128 n) {
  int c = 0;
  while (n > 0) {
    c ^= static_cast<int>(n & 1u);
    n >>= 1;
  }
  return c;
}

std::complex<double> gauss_direct(std::int64_t a, std::int64_t b, std::int64_t m, std::int64_t n0,
                                  std::int64_t N) {
  std::complex<long double> acc = 0;
  for (std::int64_t n = n0 + 1; n <= n0 + N; ++n) {
    const long double x = static_cast<long double>(a) * n * n + static_cast<long double>(b) * n;
    const long double t = std::fmod(x, static_cast<long double>(m)) / m;
    acc += std::polar(1.0L, 2.0L * std::numbers::pi_v<long double> * t);
  }
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

}  // namespace oracle
