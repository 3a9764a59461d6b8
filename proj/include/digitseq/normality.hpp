#pragma once

// Block statistics, subword complexity and the exponential sum
//   S0(N) = sum_{n<N} e( sum_l alpha_l b((n+l)^2) ).

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "digitseq/digital_function.hpp"

namespace digitseq {

/// Sliding-window counts of length-k blocks over {0, ..., alphabet-1}.
/// Blocks are coded most-significant-first: code = sum c_i alphabet^(k-1-i).
struct BlockHistogram {
  int k = 0;
  int alphabet = 0;
  std::vector<std::uint64_t> counts;  // indexed by block code
  std::uint64_t total = 0;

  std::uint64_t count(std::span<const std::uint8_t> block) const;
  std::uint64_t distinct() const;
  /// Symbols of a block code, e.g. decode(5) == {1, 0, 1} for alphabet 2, k 3.
  std::vector<std::uint8_t> decode(std::uint64_t code) const;
};

BlockHistogram block_histogram(std::span<const std::uint8_t> values, int k, int alphabet);

struct NormalityStats {
  double max_deviation = 0.0;  // max_block |count/total - alphabet^-k|
  double chi_square = 0.0;     // against the uniform model
  std::uint64_t missing_blocks = 0;  // not seen in this prefix (a lower bound claim only)
};

NormalityStats normality_deviation(const BlockHistogram& h, int modulus);

/// p(n) = number of distinct length-n windows, n = 1..n_max. A prefix only
/// yields lower bounds on the complexity of the infinite sequence.
std::vector<std::uint64_t> subword_complexity(std::span<const std::uint8_t> values, int n_max);

/// Coefficients alpha_l = numerators[l] / m'.
class AlphaVector {
 public:
  AlphaVector(std::vector<int> numerators, int modulus);
  /// Comma-separated numerators, e.g. "1,0".
  static AlphaVector parse(std::string_view text, int modulus);

  int size() const { return static_cast<int>(numerators_.size()); }
  int modulus() const { return modulus_; }
  int operator[](int l) const { return numerators_[static_cast<std::size_t>(l)]; }
  std::span<const int> numerators() const { return numerators_; }

  /// K = sum alpha_l, as a numerator mod m'.
  int k_numerator() const;
  bool k_integral() const { return k_numerator() == 0; }
  bool is_zero() const;
  /// First l with alpha_l != 0, or -1.
  int first_nonzero() const;
  std::string describe() const;

 private:
  std::vector<int> numerators_;
  int modulus_;
};

struct ExpSum {
  std::uint64_t n = 0;
  std::vector<std::uint64_t> phase_counts;  // number of n with total phase p / m'
  std::complex<double> value;
};

/// Exact-phase accumulation: phases are tallied as integers mod m' and only
/// then combined with the m'-th roots of unity. The tally is independent of
/// the partition used by `threads`.
ExpSum exp_sum_S0(const DigitalFunction& f, const AlphaVector& alpha, std::uint64_t N,
                  int threads = 1);

std::complex<double> combine_phase_counts(std::span<const std::uint64_t> counts);

struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<ExpSum> table;
};

/// Least-squares slope of log max(1, |S0|) against log N over an increasing grid.
DecayFit decay_exponent(const DigitalFunction& f, const AlphaVector& alpha,
                        std::span<const std::uint64_t> grid);

}  // namespace digitseq
