#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "digitseq/errors.hpp"
#include "digitseq/seqgen.hpp"
#include "digitseq/transfer.hpp"
#include "digitseq/witness.hpp"

using namespace digitseq;

namespace {

FourierContext ctx_of(const char* name, const char* alpha) {
  const auto f = preset(name);
  return FourierContext(f, AlphaVector::parse(alpha, f.modulus()));
}

}  // namespace

TEST(TransferMatrix, RowSumsAtMostOne) {
  std::mt19937_64 rng(3);
  for (auto [name, alpha] : {std::pair{"rudin-shapiro", "1,1"}, {"thue-morse", "1,1,0"}, {"digit-sum:3,2", "1,1"}}) {
    const auto ctx = ctx_of(name, alpha);
    for (int trial = 0; trial < 200; ++trial) {
      const std::int64_t den = 1 + static_cast<std::int64_t>(rng() % 4096);
      const auto M = build_transfer_matrix(ctx, {static_cast<std::int64_t>(rng() % 10000), den});
      ASSERT_LE(absolute_row_sums(M.values).maxCoeff(), 1.0 + 1e-12);
    }
  }
}

TEST(TransferMatrix, PathCountsSumToCubes) {
  const auto ctx = ctx_of("rudin-shapiro", "1,1");
  const auto M = build_transfer_matrix(ctx, {0, 1});
  for (Eigen::Index r = 0; r < M.path_counts.rows(); ++r) EXPECT_EQ(M.path_counts.row(r).sum(), 8);
  for (int j = 1; j <= 3; ++j) {
    const auto direct = path_counts_direct(ctx, j);
    EXPECT_EQ(direct, path_counts_power(ctx, j));
    for (Eigen::Index r = 0; r < direct.rows(); ++r) EXPECT_EQ(direct.row(r).sum(), pow64(2, 3 * j));
  }
}

TEST(TransferMatrix, PhiMatrixRouteMatchesBruteForce) {
  for (auto [name, alpha] : {std::pair{"rudin-shapiro", "1,1"}, {"thue-morse", "1,1"}, {"digit-sum:3,2", "1,0"}}) {
    const auto ctx = ctx_of(name, alpha);
    const auto& E = ctx.space().elements();
    const std::size_t n = E.size();
    for (std::int64_t h : {0, 1, 7, 45}) {
      const auto psi = phi_matrix_route(ctx, 5, 3, h);
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          ASSERT_LT(std::abs(psi(static_cast<Eigen::Index>(a * n + b)) - phi_bruteforce(ctx, E[a], E[b], 5, 3, h)), 1e-9);
        }
      }
    }
  }
}

TEST(Lengths, WindowsForPresets) {
  EXPECT_EQ(condition1_length(2, 2, 2), 3);
  EXPECT_EQ(condition1_length(2, 1, 2), 2);
  EXPECT_EQ(condition2_length(2, 2, 2), 8);
  EXPECT_EQ(condition2_length(2, 1, 2), 4);
  EXPECT_EQ(saving_length(1, 1), 2);
  EXPECT_EQ(saving_length(2, 2), 12);
  EXPECT_NEAR(saving_eta(2), 8.0 * std::pow(std::sin(std::numbers::pi / 8.0), 2), 1e-15);
}

TEST(Conditions, RudinShapiroAndThueMorseHold) {
  const auto hs = stratified_samples(1 << 12, 256, 7);
  for (const char* name : {"rudin-shapiro", "thue-morse"}) {
    const auto ctx = ctx_of(name, "1,1");
    const auto c1 = check_condition1(ctx, hs, 12);
    EXPECT_TRUE(c1.holds) << name;
    EXPECT_EQ(c1.violations, 0u);
    EXPECT_DOUBLE_EQ(c1.c0, std::pow(2.0, -3.0 * c1.window) / 2.0);
    const auto c2 = check_condition2(ctx, hs, 12);
    EXPECT_TRUE(c2.holds) << name;
    const double s = std::sin(std::numbers::pi / 4.0);
    EXPECT_DOUBLE_EQ(c2.eta, 4.0 * s * s * std::pow(2.0, -3.0 * c2.window));
  }
  const auto first = stratified_samples(256, 256, 1);
  EXPECT_TRUE(check_condition1(ctx_of("rudin-shapiro", "1,1"), first, 12).holds);
}

TEST(Conditions, BranchAndInputValidation) {
  const auto hs = stratified_samples(64, 8, 1);
  EXPECT_THROW(check_condition1(ctx_of("thue-morse", "0"), hs, 8), std::invalid_argument);
  EXPECT_THROW(check_condition2(ctx_of("rudin-shapiro", "1,0"), hs, 12), WrongBranch);
}

TEST(StratifiedSamples, OnePerStratum) {
  const auto s = stratified_samples(1000, 10, 4);
  ASSERT_EQ(s.size(), 10u);
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_GE(s[i], static_cast<std::int64_t>(i) * 100);
    EXPECT_LT(s[i], static_cast<std::int64_t>(i + 1) * 100);
  }
  EXPECT_EQ(stratified_samples(1000, 10, 4), s);
  EXPECT_EQ(stratified_samples(5, 10, 4).size(), 5u);
}

TEST(Prop1, ProfileValuesAndRoutes) {
  const auto ctx = ctx_of("rudin-shapiro", "1,1");
  const std::vector<int> lambdas{4, 5, 6, 7, 8, 9, 10};
  for (std::int64_t h : {0, 1, 5}) {
    for (const auto& I : ctx.space().primed()) {
      const auto p = prop1_decay_profile(ctx, I, h, lambdas);
      for (const auto& r : p.rows) {
        EXPECT_GE(r.value, -1e-15);
        EXPECT_LE(r.value, 1.0 + 1e-12);
      }
      EXPECT_NEAR(prop1_value_matrix(ctx, I, h, 4, 2), prop1_value_direct(ctx, I, h, 4, 2), 1e-9);
    }
  }
}

TEST(Prop1, RudinShapiroZeroFrequencyHalvesEveryTwoLevels) {
  // For I = (0, 0) and h = 0 the average equals 2^-ceil(lambda/2): it halves
  // whenever lambda' grows and stays flat in between.
  const auto ctx = ctx_of("rudin-shapiro", "1,1");
  const std::vector<int> lambdas{4, 5, 6, 7, 8, 9, 10};
  const auto p = prop1_decay_profile(ctx, {0, 0}, 0, lambdas);
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    EXPECT_NEAR(p.rows[i].value, std::pow(2.0, -(lambdas[i] + 1) / 2), 1e-12);
    if (i > 0) EXPECT_LE(p.rows[i].value, p.rows[i - 1].value + 1e-12);
  }
  EXPECT_FALSE(p.strictly_decreasing);
  EXPECT_NEAR(p.log_slope, -0.5, 0.1);
  EXPECT_THROW(prop1_decay_profile(ctx_of("rudin-shapiro", "1,0"), {0, 0}, 0, lambdas), WrongBranch);
}

TEST(SmallMatrix, IdentityAndNormBound) {
  const auto ctx = ctx_of("rudin-shapiro", "1,0");
  const auto I0 = small_matrix_M(ctx, 0, 0, {0.3, 0.4});
  EXPECT_TRUE(I0.isApprox(Eigen::MatrixXcd::Identity(I0.rows(), I0.cols())));
  EXPECT_DOUBLE_EQ(max_row_norm(I0), 1.0);
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const int j = 1 + trial % 5;
    const auto M = small_matrix_M_root(ctx, j, static_cast<std::int64_t>(rng() % 64), static_cast<std::int64_t>(rng() % 97), 97);
    EXPECT_LE(max_row_norm(M), std::pow(2.0, j) + 1e-9);
  }
}

TEST(SmallMatrix, FactorsThroughStages) {
  const auto ctx = ctx_of("rudin-shapiro", "1,0");
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const int j1 = 1 + trial % 3, j2 = 1 + (trial / 3) % 3;
    const std::int64_t d1 = static_cast<std::int64_t>(rng() % pow64(2, j1));
    const std::int64_t d2 = static_cast<std::int64_t>(rng() % pow64(2, j2));
    const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(rng() % 1000) / 1000.0);
    const auto whole = small_matrix_M(ctx, j1 + j2, d2 * pow64(2, j1) + d1, z);
    const Eigen::MatrixXcd staged = small_matrix_M(ctx, j1, d1, z) * small_matrix_M(ctx, j2, d2, std::pow(z, pow64(2, j1)));
    EXPECT_LT((whole - staged).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Saving, RudinShapiroSampledDeltas) {
  const auto ctx = ctx_of("rudin-shapiro", "1,0");
  const auto deltas = stratified_samples(1 << 12, 16, 5);
  const auto r = check_m_saving(ctx, 12, deltas, 64);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_NEAR(r.bound, 4096.0 - saving_eta(2), 1e-12);
}

TEST(Saving, ThueMorseSingleCoefficientExceedsBound) {
  // With m = 1 the two colliding digit pairs of the saving argument overlap,
  // and the row norm |1 - z| |1 - z^2| reaches 3.079 > 4 - eta' = 2.828.
  const auto ctx = ctx_of("thue-morse", "1");
  const std::vector<std::int64_t> deltas{0, 1, 2, 3};
  const auto r = check_m_saving(ctx, 2, deltas, 256);
  EXPECT_GT(r.violations, 0u);
  double expect = 0.0;
  for (int t = 0; t < 256; ++t) {
    const std::complex<double> z = std::polar(1.0, 2.0 * std::numbers::pi * t / 256.0);
    expect = std::max(expect, std::abs(1.0 - z) * std::abs(1.0 - z * z));
  }
  EXPECT_NEAR(r.worst_norm, expect, 1e-9);
  EXPECT_THROW(check_m_saving(ctx_of("thue-morse", "1,1"), 2, deltas, 8), WrongBranch);
}

TEST(Prop2, ThueMorseConstantsStaySmall) {
  const auto ctx = ctx_of("thue-morse", "1");
  std::mt19937_64 rng(4);
  std::vector<int> Ls;
  for (int L = 0; L <= 10; ++L) Ls.push_back(L);
  for (int trial = 0; trial < 12; ++trial) {
    const auto r = prop2_decay_check(ctx, {0}, 10, static_cast<std::int64_t>(rng() % 1024),
                                     static_cast<std::int64_t>(rng() % 1024), Ls, 4.0);
    EXPECT_TRUE(r.within_limit) << r.max_constant;
    EXPECT_LE(r.rows.front().constant, 1.0 + 1e-12);  // L = 0: |H| is an average of |G|
  }
  EXPECT_THROW(prop2_decay_check(ctx_of("thue-morse", "0"), {0}, 4, 0, 0, Ls, 4.0), std::invalid_argument);
  EXPECT_THROW(prop2_decay_check(ctx_of("rudin-shapiro", "1,1"), {0, 0}, 4, 0, 0, Ls, 4.0), WrongBranch);
}

TEST(PathLemma, ExhaustiveSmallCases) {
  for (auto [q, m] : {std::pair{2, 1}, {2, 2}, {3, 1}}) {
    for (int k = 1; k <= 4; ++k) {
      EXPECT_EQ(path_lemma_failures(q, m, k), 0) << q << m << k;
      EXPECT_EQ(zero_collapse_failures(q, m, k), 0u) << q << m << k;
    }
  }
  EXPECT_EQ(path_target(2, 2, 3, 1), (IndexVector{1, 1, 2}));
}

TEST(Witness, ThueMorseOrigin) {
  const auto ctx = ctx_of("thue-morse", "1");
  const auto w = find_saving_witness(ctx, {0}, 0);
  EXPECT_TRUE(w.verified());
  EXPECT_TRUE(verify_witness(ctx, w));
  EXPECT_TRUE(w.collisions_hold);
  EXPECT_NE(w.xi1, w.xi2);
  const auto cls = std::find_if(w.partition.begin(), w.partition.end(),
                               [&](const PartitionClass& c) { return c.c == w.c0; });
  ASSERT_NE(cls, w.partition.end());
  EXPECT_NE(((w.e.d * cls->beta_num) % 2 + 2) % 2, 0);
}

TEST(Witness, RudinShapiroSweep) {
  const auto ctx = ctx_of("rudin-shapiro", "1,0");
  std::mt19937_64 rng(6);
  for (const auto& I : ctx.space().elements()) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto w = find_saving_witness(ctx, I, static_cast<std::int64_t>(rng() % 4096));
      ASSERT_TRUE(w.verified());
      ASSERT_TRUE(verify_witness(ctx, w));
      ASSERT_LE(w.x0, 6);
    }
  }
  EXPECT_THROW(find_saving_witness(ctx_of("rudin-shapiro", "1,1"), {0, 0}, 0), WrongBranch);
}

TEST(Witness, TwoPairInequality) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 10000; ++trial) {
    const double x1 = u(rng), x2 = u(rng), xi1 = u(rng), xi2 = u(rng);
    ASSERT_LE(two_pair_sum(x1, xi1, x2, xi2), two_pair_bound(xi1, xi2) + 1e-12);
  }
  EXPECT_NEAR(two_pair_bound(0.5, 0.0), 4.0 - saving_eta(2), 1e-12);
}
