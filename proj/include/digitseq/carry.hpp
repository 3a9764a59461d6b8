#pragma once

// Carry propagation in squares: how often a small shift n -> n + r disturbs
// the high digits of n^2, and how often a digit band of a shifted square can
// be read off from a few digits of n^2 and 2n.

#include <cstdint>

#include "digitseq/digital_function.hpp"

namespace digitseq {

struct CarryExperiment {
  int q = 2;
  int nu = 0;
  int lambda = 0;
  int rho = 0;
  std::int64_t r = 0;
  /// n < q^nu with floor((n+r)^2 / q^lambda) != floor(n^2 / q^lambda).
  std::int64_t count = 0;
  /// n < q^nu with b_{lambda-m+1}((n+r)^2) - b_{lambda-m+1}(n^2) != b((n+r)^2) - b(n^2).
  std::int64_t b_count = 0;
  double scale = 0.0;       // q^(2 nu + rho - lambda)
  double constant = 0.0;    // count / scale
  double b_constant = 0.0;  // b_count / scale
};

/// Requires nu + rho <= lambda <= 2 nu and 0 <= r <= q^rho; q^nu is capped by
/// the carry budget. Throws std::invalid_argument on violated constraints.
CarryExperiment carry_exception_count(const DigitalFunction& f, int nu, int lambda, int rho,
                                      std::int64_t r);

struct CarryDecompositionParams {
  int lambda = 0;
  int mu = 0;
  int nu = 0;
  int rho_prime = 0;
  std::int64_t ell = 1;
  std::int64_t s = 1;
  std::int64_t r = 1;
};

struct CarryDecompositionReport {
  CarryDecompositionParams params;
  /// Per-identity failure counts, in the order: n^2, n^2 shifted by s q^(mu+m-1),
  /// (n+r)^2, (n+r)^2 shifted by s q^(mu+m-1).
  std::int64_t identity_failures[4] = {0, 0, 0, 0};
  std::int64_t count = 0;  // n failing at least one identity
  double scale = 0.0;      // q^(nu - rho')
  double constant = 0.0;   // count / scale
};

/// Validates 0 < mu < nu < lambda, 2 rho' <= mu <= nu - rho',
/// lambda - nu <= 2 (mu - rho'), ell >= 0, s >= 1 and 1 <= r with
/// r^2 <= q^(lambda - nu); q^nu is capped by the decomposition budget.
CarryDecompositionReport carry_decomposition_check(const DigitalFunction& f,
                                                   const CarryDecompositionParams& p);

}  // namespace digitseq
