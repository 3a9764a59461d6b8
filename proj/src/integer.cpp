#include "digitseq/integer.hpp"

#include <algorithm>
#include <stdexcept>

namespace digitseq {

std::optional<u128> checked_pow(std::uint64_t q, int e) {
  if (e < 0) return std::nullopt;
  const u128 limit = static_cast<u128>(1) << 127;
  u128 r = 1;
  for (int i = 0; i < e; ++i) {
    if (q != 0 && r > limit / q) return std::nullopt;
    r *= q;
  }
  return r;
}

std::int64_t pow64(std::int64_t q, int e) {
  if (e < 0) throw std::invalid_argument("pow64: negative exponent");
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > (std::int64_t{1} << 62) / q) throw std::overflow_error("pow64: result exceeds 2^62");
    r *= q;
  }
  return r;
}

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

std::optional<u128> parse_u128(std::string_view text) {
  if (text.empty()) return std::nullopt;
  const u128 limit = ~static_cast<u128>(0);
  u128 v = 0;
  for (char c : text) {
    if (c < '0' || c > '9') return std::nullopt;
    const unsigned digit = static_cast<unsigned>(c - '0');
    if (v > (limit - digit) / 10) return std::nullopt;
    v = v * 10 + digit;
  }
  return v;
}

}  // namespace digitseq
