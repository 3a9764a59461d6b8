#pragma once

#include <stdexcept>
#include <string>

namespace digitseq {

/// An exhaustive computation would exceed its enumeration cap.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A result that the theory guarantees could not be produced; signals that the
/// input violates a hypothesis (or a defect, for conforming input).
class HypothesisViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested check belongs to the other K-branch (K in Z vs K not in Z).
class WrongBranch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace digitseq
