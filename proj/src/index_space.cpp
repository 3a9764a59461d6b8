#include "digitseq/index_space.hpp"

#include <stdexcept>

#include "digitseq/budget.hpp"
#include "digitseq/integer.hpp"

namespace digitseq {

std::string to_string(const IndexVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

std::uint64_t IndexSpace::cardinality(int q, int m, int k) {
  const auto step = static_cast<std::uint64_t>(pow64(q, m - 1));
  std::uint64_t n = step;
  for (int l = 1; l < k; ++l) {
    n *= step + 1;
    if (n > kHardBudgetLimit) return kHardBudgetLimit + 1;
  }
  return n;
}

IndexSpace::IndexSpace(int q, int m, int k) : q_(q), m_(m), k_(k) {
  if (q < 2 || m < 1 || k < 1) throw std::invalid_argument("index space needs q >= 2, m >= 1, k >= 1");
  step_ = pow64(q, m - 1);
  require_budget(BudgetKind::index_set, cardinality(q, m, k));

  IndexVector cur(static_cast<std::size_t>(k), 0);
  // Odometer over (i_0, increments), last coordinate fastest.
  std::vector<std::int64_t> digit(static_cast<std::size_t>(k), 0);
  while (true) {
    cur[0] = digit[0];
    for (int l = 1; l < k; ++l) cur[static_cast<std::size_t>(l)] = cur[static_cast<std::size_t>(l - 1)] + digit[static_cast<std::size_t>(l)];
    elements_.push_back(cur);
    int pos = k - 1;
    while (pos >= 0) {
      const std::int64_t limit = pos == 0 ? step_ : step_ + 1;
      if (++digit[static_cast<std::size_t>(pos)] < limit) break;
      digit[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }

  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (k - 1)); ++mask) {
    IndexVector v(static_cast<std::size_t>(k), 0);
    for (int l = 1; l < k; ++l) {
      // Most significant bit is the first increment, keeping lexicographic order.
      const int bit = static_cast<int>((mask >> (k - 1 - l)) & 1);
      v[static_cast<std::size_t>(l)] = v[static_cast<std::size_t>(l - 1)] + bit;
    }
    primed_.push_back(std::move(v));
  }
}

bool IndexSpace::contains(const IndexVector& v) const {
  if (static_cast<int>(v.size()) != k_) return false;
  if (v[0] < 0 || v[0] >= step_) return false;
  for (int l = 1; l < k_; ++l) {
    const auto inc = v[static_cast<std::size_t>(l)] - v[static_cast<std::size_t>(l - 1)];
    if (inc < 0 || inc > step_) return false;
  }
  return true;
}

bool IndexSpace::contains_primed(const IndexVector& v) const {
  if (static_cast<int>(v.size()) != k_ || v[0] != 0) return false;
  for (int l = 1; l < k_; ++l) {
    const auto inc = v[static_cast<std::size_t>(l)] - v[static_cast<std::size_t>(l - 1)];
    if (inc < 0 || inc > 1) return false;
  }
  return true;
}

std::size_t index_position(const IndexVector& I, std::int64_t step) {
  std::size_t pos = static_cast<std::size_t>(I[0]);
  for (std::size_t l = 1; l < I.size(); ++l) {
    pos = pos * static_cast<std::size_t>(step + 1) + static_cast<std::size_t>(I[l] - I[l - 1]);
  }
  return pos;
}

std::size_t IndexSpace::index_of(const IndexVector& v) const {
  if (!contains(v)) throw std::invalid_argument("vector " + to_string(v) + " is not in the index set");
  return index_position(v, step_);
}

void transform_T_into(const IndexVector& I, std::int64_t eps, std::int64_t delta, int j, int q,
                      std::int64_t step, IndexVector& out) {
  out.resize(I.size());
  if (j == 0) {
    out = I;
    return;
  }
  const std::int64_t qj = pow64(q, j);
  eps = mod_floor(eps, qj);
  delta = mod_floor(delta, qj);
  for (std::size_t l = 0; l < I.size(); ++l) {
    const auto numer = static_cast<i128>(I[l]) +
                       static_cast<i128>(step) * (eps + static_cast<i128>(l) * delta);
    out[l] = static_cast<std::int64_t>(numer / qj);
  }
}

IndexVector transform_T(const IndexVector& I, std::int64_t eps, std::int64_t delta, int j, int q,
                        int m) {
  if (j < 0) throw std::invalid_argument("transform_T: j must be >= 0");
  const std::int64_t step = pow64(q, m - 1);
  // Membership in the index set is the precondition.
  if (I.empty() || I[0] < 0 || I[0] >= step) throw std::invalid_argument("transform_T: I not in the index set");
  for (std::size_t l = 1; l < I.size(); ++l) {
    const auto inc = I[l] - I[l - 1];
    if (inc < 0 || inc > step) throw std::invalid_argument("transform_T: I not in the index set");
  }
  IndexVector out;
  transform_T_into(I, eps, delta, j, q, step, out);
  return out;
}

}  // namespace digitseq
