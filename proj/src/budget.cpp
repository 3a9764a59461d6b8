#include "digitseq/budget.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "digitseq/errors.hpp"

namespace digitseq {

namespace {

std::uint64_t default_budget(BudgetKind kind) {
  switch (kind) {
    case BudgetKind::fourier_terms: return std::uint64_t{1} << 22;
    case BudgetKind::index_set: return std::uint64_t{1} << 16;
    case BudgetKind::carry: return std::uint64_t{1} << 22;
    case BudgetKind::carry_decomposition: return std::uint64_t{1} << 20;
  }
  return 0;
}

}  // namespace

std::uint64_t budget(BudgetKind kind) {
  if (const char* env = std::getenv("DIGITSEQ_BUDGET"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) {
      return std::min<std::uint64_t>(v, kHardBudgetLimit);
    }
  }
  return default_budget(kind);
}

std::string_view budget_name(BudgetKind kind) {
  switch (kind) {
    case BudgetKind::fourier_terms: return "fourier_terms";
    case BudgetKind::index_set: return "index_set";
    case BudgetKind::carry: return "carry";
    case BudgetKind::carry_decomposition: return "carry_decomposition";
  }
  return "unknown";
}

void require_budget(BudgetKind kind, std::uint64_t required) {
  const std::uint64_t cap = budget(kind);
  if (required > cap) {
    throw BudgetExceeded(std::string(budget_name(kind)) + " budget exceeded: need " +
                         std::to_string(required) + ", cap " + std::to_string(cap));
  }
}

}  // namespace digitseq
