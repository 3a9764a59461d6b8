#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace digitseq {

using u128 = unsigned __int128;
using i128 = __int128;

/// Largest argument accepted by the digital-function evaluators (2^126).
inline constexpr u128 kMaxArgument = static_cast<u128>(1) << 126;

/// q^e, or nullopt when the power does not fit in 127 bits.
std::optional<u128> checked_pow(std::uint64_t q, int e);

/// q^e as a 64-bit value; throws std::overflow_error beyond 2^62.
std::int64_t pow64(std::int64_t q, int e);

/// Non-negative residue of a modulo m (m > 0).
inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline int mod_floor(int a, int m) {
  int r = a % m;
  return r < 0 ? r + m : r;
}

inline i128 mod_floor(i128 a, i128 m) {
  i128 r = a % m;
  return r < 0 ? r + m : r;
}

std::string to_string(u128 v);
/// Parses a decimal non-negative integer; nullopt on malformed input or overflow.
std::optional<u128> parse_u128(std::string_view text);

}  // namespace digitseq
