#pragma once

// Offset vectors I = (i_0, ..., i_{k-1}) indexing the Fourier terms, and the
// digit-shift transformation T acting on them.

#include <cstdint>
#include <string>
#include <vector>

namespace digitseq {

using IndexVector = std::vector<std::int64_t>;

std::string to_string(const IndexVector& v);

/// The set of I with i_0 < Q and i_{l-1} <= i_l <= i_{l-1} + Q, Q = q^(m-1),
/// in lexicographic order, together with its start-normalized subset
/// (i_0 = 0, increments in {0, 1}).
class IndexSpace {
 public:
  /// Throws BudgetExceeded when the set is larger than the index-set cap.
  IndexSpace(int q, int m, int k);

  int base() const { return q_; }
  int window() const { return m_; }
  int length() const { return k_; }
  /// q^(m-1).
  std::int64_t step() const { return step_; }

  std::size_t size() const { return elements_.size(); }
  const std::vector<IndexVector>& elements() const { return elements_; }
  const IndexVector& operator[](std::size_t i) const { return elements_[i]; }

  bool contains(const IndexVector& v) const;
  /// Position in lexicographic order; throws std::invalid_argument if absent.
  std::size_t index_of(const IndexVector& v) const;

  const std::vector<IndexVector>& primed() const { return primed_; }
  bool contains_primed(const IndexVector& v) const;

  /// q^(m-1) (q^(m-1) + 1)^(k-1).
  static std::uint64_t cardinality(int q, int m, int k);

 private:
  int q_;
  int m_;
  int k_;
  std::int64_t step_;
  std::vector<IndexVector> elements_;
  std::vector<IndexVector> primed_;
};

/// T^j_{eps,delta}(I)_l = floor((i_l + q^(m-1)(eps + l delta)) / q^j), with eps
/// and delta reduced mod q^j first. j = 0 is the identity.
IndexVector transform_T(const IndexVector& I, std::int64_t eps, std::int64_t delta, int j,
                        int q, int m);

/// Same map without the membership check, for hot loops over a known space.
void transform_T_into(const IndexVector& I, std::int64_t eps, std::int64_t delta, int j, int q,
                      std::int64_t step, IndexVector& out);

/// Position of I in the lexicographic order of its space, computed from the
/// mixed-radix digits (i_0, i_1 - i_0, ..., i_{k-1} - i_{k-2}). No check.
std::size_t index_position(const IndexVector& I, std::int64_t step);

}  // namespace digitseq
