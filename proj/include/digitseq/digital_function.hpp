#pragma once

// Strongly block-additive digital functions.
//
// b(n) sums a weight table F over every length-m window of the base-q digits
// of n, with the digit string padded by zeros on both sides:
//
//     b(n) = sum_{j >= 0} F(floor(q^(m-1) n / q^j) mod q^m).
//
// Table index convention: F[n] is the weight of the window whose digits are
// (eps_{m-1}(n), ..., eps_0(n)), i.e. n = sum eps_j q^j.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "digitseq/integer.hpp"

namespace digitseq {

class DigitalFunction {
 public:
  /// Validates and builds a function. Entries must be non-negative and
  /// F[0] == 0; throws std::invalid_argument otherwise.
  static DigitalFunction make(int q, int m, std::vector<std::int64_t> table, int modulus);

  int base() const { return q_; }
  int window() const { return m_; }
  int modulus() const { return modulus_; }
  std::uint64_t table_size() const { return table_.size(); }
  std::span<const std::int64_t> table() const { return table_; }

  /// F(n) := F(n mod q^m).
  std::int64_t weight(u128 n) const {
    return table_[static_cast<std::size_t>(n % table_.size())];
  }

  /// True when sum_{j=1}^{m-1} F(n q^j mod q^m) == 0 for every n < q^m.
  bool is_normalized() const { return normalized_; }

  /// log2(q) when q is a power of two, else 0.
  int bit_shift() const { return shift_; }

  /// Same function, different modulus m'.
  DigitalFunction with_modulus(int modulus) const;

  friend bool operator==(const DigitalFunction&, const DigitalFunction&) = default;

 private:
  DigitalFunction(int q, int m, std::vector<std::int64_t> table, int modulus);
  friend DigitalFunction normalize(const DigitalFunction& f);

  int q_ = 2;
  int m_ = 1;
  int modulus_ = 2;
  int shift_ = 0;  // log2(q) when q is a power of two, else 0
  bool normalized_ = false;
  std::vector<std::int64_t> table_;
};

/// Rewrites F so that sum_{j=1}^{m-1} F(n q^j) = 0 while keeping b pointwise.
/// The result may carry negative table entries.
DigitalFunction normalize(const DigitalFunction& f);

/// b(n); throws std::out_of_range for n > 2^126.
std::int64_t eval_b(const DigitalFunction& f, u128 n);

/// 0 <= mu <= lambda.
struct TruncationWindow {
  int mu = 0;
  int lambda = 0;

  static TruncationWindow make(int mu, int lambda);
};

/// b_lambda(n) = sum_{j<lambda} F(floor(n/q^j)), the truncation to the lowest
/// lambda window positions (normalized f only). Periodic with period
/// q^(lambda+m-1); negative n is reduced into one period.
std::int64_t eval_b_truncated(const DigitalFunction& f, i128 n, int lambda);

/// b_{mu,lambda}(n) = b_lambda(n) - b_mu(n).
std::int64_t eval_b_window(const DigitalFunction& f, i128 n, TruncationWindow w);

/// Residuals of the digit-splitting recursion for n = n1 q^alpha + n2:
///   first  = b_lambda(n) - b_{lambda-alpha}(n1) - b_alpha(n)
///   second = b(n) - b(n1) - b_alpha(n)
/// Both are zero for every normalized function.
std::pair<std::int64_t, std::int64_t> check_recursion(const DigitalFunction& f, u128 n1,
                                                      u128 n2, int alpha, int lambda);

struct PrimeCondition {
  std::int64_t prime = 0;
  /// Smallest n < q^m with prime not dividing F(n) (normalized table), or -1.
  std::int64_t weight_witness = -1;
  /// Smallest n < q^m with prime not dividing b(n), or -1.
  std::int64_t value_witness = -1;
};

struct GcdReport {
  bool q_minus_one_coprime = false;   // gcd(q-1, m') == 1
  bool values_coprime = false;        // gcd(m', gcd{b(n)}) == 1, via per-prime weights
  bool values_not_all_divisible = false;  // every prime p | m' has n < q^m with p not dividing b(n)
  std::vector<PrimeCondition> primes;
  /// Naive scan: some n < q^m with gcd(m', b(n)) == 1.
  bool naive_scan_coprime = false;
  /// The naive scan disagrees with the per-prime decision.
  bool naive_differs = false;
  /// Smallest n (searched up to q^(m+4)) with gcd(m', b(n)) == 1, or -1.
  std::int64_t coprime_value_witness = -1;

  bool hypotheses_hold() const { return q_minus_one_coprime && values_coprime; }
};

/// Normality hypotheses on (q, m', b). Throws std::invalid_argument for m' <= 1.
GcdReport check_gcd_conditions(const DigitalFunction& f);

/// D(e) = b(q^(m-1)(e+1) - 1) - b(q^(m-1)(e+1)).
std::int64_t boundary_difference(const DigitalFunction& f, std::int64_t e);

struct DifferenceWitness {
  std::int64_t e1 = 0;
  std::int64_t e2 = 0;
  std::int64_t d = 0;  // D(e1) - D(e2)
};

/// First (e1, e2) in lexicographic order, e_i < q^(2m-1), with
/// d * alpha_num != 0 (mod m'). Throws HypothesisViolation on exhaustion.
DifferenceWitness find_difference_witness(const DigitalFunction& f, int alpha_num);

/// Every (e1, e2) pair satisfying the witness condition, lexicographically.
std::vector<DifferenceWitness> all_difference_witnesses(const DigitalFunction& f, int alpha_num);

std::vector<std::int64_t> prime_factors(std::int64_t n);

}  // namespace digitseq
