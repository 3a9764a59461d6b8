#pragma once

// Explicit (eps_1, eps_2) pairs giving the uniform saving of M^j_delta(z).
//
// With keys key_l = floor(i_l / q^(m-1)) + l delta, the classes
// M_{x,c} = {l : key_l = c mod q^x} carry weights beta_{x,c} = sum alpha_l.
// x0 is a level where the partition no longer refines over 4m-2 more digits,
// c0 a class with non-integral weight, c0+ its representative mod q^(x0+4m-2).

#include <cstdint>
#include <vector>

#include "digitseq/digital_function.hpp"
#include "digitseq/fourier.hpp"

namespace digitseq {

struct PartitionClass {
  std::int64_t c = 0;       // residue mod q^x
  std::int64_t c_plus = 0;  // residue of the members mod q^(x+4m-2)
  std::vector<int> members;
  int beta_num = 0;         // beta_{x,c} numerator mod m'
};

/// Nonempty classes at level x, in increasing residue order.
std::vector<PartitionClass> partition_classes(const FourierContext& ctx, const IndexVector& I,
                                              std::int64_t delta, int x);

/// Whether key congruence mod q^x already forces congruence mod q^(x+4m-2).
bool partition_stable(const FourierContext& ctx, const IndexVector& I, std::int64_t delta, int x);

struct WitnessRecord {
  IndexVector I;
  std::int64_t delta = 0;  // reduced mod q^((4m-2)k)
  int x0 = 0;
  std::int64_t c0 = 0;
  std::int64_t c0_plus = 0;
  DifferenceWitness e;
  std::int64_t eps1 = 0;
  std::int64_t eps2 = 0;
  int m1_prime = 0;
  std::vector<PartitionClass> partition;  // at level x0

  int xi1 = 0;  // phase numerators of v(eps_i + 1) / v(eps_i)
  int xi2 = 0;
  bool collisions_hold = false;  // T(eps_i) == T(eps_i + 1) with no wrap past q^m1'
  bool phases_separated = false; // xi1 != xi2 mod m'
  double eta_prime = 0.0;
  double grid_max = 0.0;         // max over the z grid of the two-pair sum
  double exact_max = 0.0;        // 4 cos(pi ||xi1 - xi2|| / 2)
  bool disjoint = false;         // {eps1, eps1+1} and {eps2, eps2+1} do not meet
  int candidates_tried = 0;

  bool verified() const;
};

/// Candidates are tried in order of x0, then c0, then (e1, e2); the first one
/// passing both clauses is returned. Throws WrongBranch when K is an integer
/// and HypothesisViolation when no candidate verifies.
WitnessRecord find_saving_witness(const FourierContext& ctx, const IndexVector& I,
                                  std::int64_t delta, int z_count = 256);

/// Re-checks the record's clauses from scratch on the given z grid.
bool verify_witness(const FourierContext& ctx, const WitnessRecord& w, int z_count = 256);

/// |e(x1) + e(x1 + xi1)| + |e(x2) + e(x2 + xi2)|.
double two_pair_sum(double x1, double xi1, double x2, double xi2);
/// 4 - 8 sin^2(pi ||xi1 - xi2|| / 4), the largest value of two_pair_sum over x1, x2.
double two_pair_bound(double xi1, double xi2);

}  // namespace digitseq
