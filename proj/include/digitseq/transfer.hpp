#pragma once

// Transfer matrices of the G-recursion and the contraction checks built on them.
//
// M(beta) acts on pairs (I, I') of offset vectors. One step of the recursion
// sends (I, I') to (T^1_{e1,delta}(I), T^1_{e2,delta}(I')) with weight
//   q^-3 e(-(e1 - e2) beta) v^1(I, e1, delta) conj(v^1(I', e2, delta)).
// Pair (a, b) of space positions is stored at row a * |I_k| + b, so the
// all-zero pair is row 0.

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "digitseq/fourier.hpp"

namespace digitseq {

/// beta = num / den, kept exact so that e(-(e1 - e2) beta) is reduced in integers.
struct ExactPhase {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

struct TransferMatrix {
  Eigen::MatrixXcd values;
  /// n^(1): number of (delta, e1, e2) routed from row pair to column pair.
  CountMatrix path_counts;
};

TransferMatrix build_transfer_matrix(const FourierContext& ctx, ExactPhase beta);

Eigen::VectorXd absolute_row_sums(const Eigen::MatrixXcd& m);

/// n^(j) by enumerating (delta, e1, e2) < q^j with the j-step transformation.
CountMatrix path_counts_direct(const FourierContext& ctx, int j);
/// n^(j) as the j-th power of the one-step counts.
CountMatrix path_counts_power(const FourierContext& ctx, int j);

/// Psi_{lambda,lambda'}(h) = M(h/q^lambda) ... M(h/q^(lambda-lambda'+1)) Psi_{lambda-lambda',0}(h).
Eigen::VectorXcd phi_matrix_route(const FourierContext& ctx, int lambda, int lambda_prime,
                                  std::int64_t h);

/// Smallest t with q^t >= n.
int ceil_log(int q, std::int64_t n);
/// Largest t with q^t <= n (n >= 1).
int floor_log(int q, std::int64_t n);

/// m0 = m - 1 + ceil(log_q(k + 1)).
int condition1_length(int q, int m, int k);
/// m1 = floor(log_q k) + 4m - 1.
int condition2_length(int q, int m, int k);

/// `count` values of h in [0, range), one per equal-width stratum, with a
/// seeded offset inside each stratum. All of [0, range) when range <= count.
std::vector<std::int64_t> stratified_samples(std::int64_t range, std::int64_t count,
                                             std::uint64_t seed);

struct ConditionReport {
  int window = 0;         // m0 or m1
  double c0 = 0.0;        // condition (1) only
  double eta = 0.0;
  bool holds = true;
  double worst_margin = 0.0;  // min over checked rows; >= 0 means the condition holds
  std::int64_t worst_h = 0;
  int worst_start = 0;    // l of the first factor M(h/q^l) in the worst window
  std::uint64_t rows_checked = 0;
  std::uint64_t violations = 0;
};

/// For each h and each window M(h/q^l) ... M(h/q^(l-m0+1)), l = lambda..m0:
/// every row has |A_{row,0}| >= c0 or absolute row sum <= 1 - eta.
/// Margin of a row: max(|A_{row,0}| - c0, 1 - eta - rowsum).
ConditionReport check_condition1(const FourierContext& ctx, std::span<const std::int64_t> h_samples,
                                 int lambda);

/// First-row absolute sum of every m1-fold window is <= 1 - eta,
/// eta = 4 sin^2(pi / 2m') q^(-3 m1). Throws WrongBranch unless K is an integer.
ConditionReport check_condition2(const FourierContext& ctx, std::span<const std::int64_t> h_samples,
                                 int lambda);

struct Prop1Row {
  int lambda = 0;
  int lambda_prime = 0;
  double value = 0.0;  // q^-lambda' sum_{d < q^lambda'} |H^I_lambda(h, d)|^2
};

struct Prop1Profile {
  std::vector<Prop1Row> rows;
  bool strictly_decreasing = false;
  /// Least-squares slope of log_q(value) against lambda.
  double log_slope = 0.0;
};

/// lambda' = ceil(lambda / 2). Throws WrongBranch unless K is an integer.
Prop1Profile prop1_decay_profile(const FourierContext& ctx, const IndexVector& I, std::int64_t h,
                                 std::span<const int> lambdas);

double prop1_value_direct(const FourierContext& ctx, const IndexVector& I, std::int64_t h,
                          int lambda, int lambda_prime);
/// Same average through Phi: with d = q^(m-1) D + delta,
///   q^-(m-1) sum_delta q^-2(m-1) sum_{eps, eps'} e(-h (eps - eps') / q^(lambda+m-1))
///   Phi^{J_eps, J_eps'}_{lambda, lambda'-m+1}.
double prop1_value_matrix(const FourierContext& ctx, const IndexVector& I, std::int64_t h,
                          int lambda, int lambda_prime);

/// Rows I, columns J, entries sum_eps [J = T^j_{eps,delta}(I)] v^j(I, eps, delta) z^eps.
Eigen::MatrixXcd small_matrix_M(const FourierContext& ctx, int j, std::int64_t delta, cplx z);

Eigen::MatrixXcd small_matrix_M_root(const FourierContext& ctx, int j, std::int64_t delta,
                                     std::int64_t z_num, std::int64_t z_den);

double max_row_norm(const Eigen::MatrixXcd& m);

/// m1 = (4m - 2) k for the uniform saving.
int saving_length(int m, int k);
/// eta' = 8 sin^2(pi / 4m').
double saving_eta(int modulus);

struct SavingReport {
  int j = 0;
  double bound = 0.0;        // q^j - eta'
  double worst_norm = 0.0;
  std::int64_t worst_delta = 0;
  int worst_z = 0;           // z = e(worst_z / z_count)
  std::uint64_t cases = 0;
  std::uint64_t violations = 0;
};

/// ||M^j_delta(z)||_inf over the given delta and the z_count-th roots of unity.
/// Throws WrongBranch when K is an integer.
SavingReport check_m_saving(const FourierContext& ctx, int j, std::span<const std::int64_t> deltas,
                            int z_count);

struct Prop2Row {
  int L = 0;
  double abs_H = 0.0;
  double max_G = 0.0;     // max_J |G^J_{lambda-L}(h, floor(d/q^L))|
  double rate = 0.0;      // q^(-eta L)
  double constant = 0.0;  // abs_H / (rate max_G); 0 when max_G == 0
};

struct Prop2Report {
  double eta = 0.0;  // eta' / (q^m1 log q^m1)
  int m1 = 0;
  std::vector<Prop2Row> rows;
  double max_constant = 0.0;
  bool within_limit = true;
};

/// Throws std::invalid_argument for the all-zero alpha, WrongBranch when K is an integer.
Prop2Report prop2_decay_check(const FourierContext& ctx, const IndexVector& I, int lambda,
                              std::int64_t h, std::int64_t d, std::span<const int> Ls,
                              double constant_limit);

/// I0 = (Q-1 repeated n0+1 times, then Q), Q = q^(m-1).
IndexVector path_target(int q, int m, int k, int n0);

/// Number of n0 < k for which T^{n1}_{q^n1 - n0 - 1, 1}(0) != I0, n1 = floor(log_q k) + m.
int path_lemma_failures(int q, int m, int k);
/// Number of I in the index set with T^{m0}_{0,0}(I) != 0.
std::uint64_t zero_collapse_failures(int q, int m, int k);

}  // namespace digitseq
