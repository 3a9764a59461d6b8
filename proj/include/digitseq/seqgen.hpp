#pragma once

// Digital sequences modulo m' along index maps, plus the named presets.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "digitseq/digital_function.hpp"
#include "digitseq/integer.hpp"

namespace digitseq {

/// Least-significant digit first; digits(0, q) == {0}.
std::vector<int> digits(u128 n, int q);

struct IndexMap {
  enum class Kind { identity, affine, square };

  Kind kind = Kind::identity;
  u128 a = 1;  // affine slope, >= 1
  u128 b = 0;  // affine offset

  static IndexMap identity() { return {}; }
  static IndexMap square() { return {Kind::square, 1, 0}; }
  static IndexMap affine(u128 a, u128 b);
  /// "id", "square" or "affine:a,b".
  static IndexMap parse(std::string_view text);

  /// map(t); throws std::out_of_range past 2^126.
  u128 apply(u128 t) const;
  std::string describe() const;
};

/// thue-morse, rudin-shapiro, digit-sum (q, m'), block-ones (L).
DigitalFunction thue_morse();
DigitalFunction rudin_shapiro();
DigitalFunction digit_sum(int q, int modulus);
DigitalFunction block_ones(int length);

/// Presets by name: "thue-morse", "rudin-shapiro", "digit-sum:<q>,<m'>",
/// "block-ones:<L>". Throws std::invalid_argument for unknown names or
/// invalid parameters.
DigitalFunction preset(std::string_view name);

/// Pull-based generator of b(map(t)) mod m' for t = start, start+1, ...
///
/// Output is a pure function of t, so chunked reads concatenate to the one-shot
/// result. Single consumer.
class SequenceStream {
 public:
  SequenceStream(DigitalFunction f, IndexMap map, u128 start);

  /// Fills `out` with the next out.size() symbols.
  void read(std::span<std::uint8_t> out);
  std::vector<std::uint8_t> read(std::size_t count);

  u128 position() const { return cursor_; }
  const DigitalFunction& function() const { return f_; }

 private:
  DigitalFunction f_;
  IndexMap map_;
  u128 cursor_;
};

/// Symbols b(map(t)) mod m' for t in [start, start+count).
std::vector<std::uint8_t> stream(const DigitalFunction& f, const IndexMap& map, u128 start,
                                 std::uint64_t count);

/// Same as stream(), partitioned over `threads` contiguous ranges.
std::vector<std::uint8_t> stream_parallel(const DigitalFunction& f, const IndexMap& map,
                                          u128 start, std::uint64_t count, int threads);

}  // namespace digitseq
