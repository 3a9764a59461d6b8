#pragma once

#include <cstdint>
#include <string_view>

namespace digitseq {

/// Enumeration caps shared by the exhaustive checks.
///
/// The environment variable DIGITSEQ_BUDGET replaces every default cap with
/// its value, clamped to kHardBudgetLimit.
enum class BudgetKind {
  fourier_terms,        // q^(lambda+m-1) summands in H and G
  index_set,            // |I_k|
  carry,                // q^nu in the carry-exception count
  carry_decomposition,  // q^nu in the digit-band decomposition check
};

inline constexpr std::uint64_t kHardBudgetLimit = std::uint64_t{1} << 30;

std::uint64_t budget(BudgetKind kind);
std::string_view budget_name(BudgetKind kind);

/// Throws BudgetExceeded when `required` is above the cap for `kind`.
void require_budget(BudgetKind kind, std::uint64_t required);

}  // namespace digitseq
