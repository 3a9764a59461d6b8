#include <gtest/gtest.h>

#include <random>

#include "digitseq/seqgen.hpp"
#include "oracles.hpp"

using namespace digitseq;

namespace {
std::vector<std::uint8_t> bytes(std::initializer_list<int> v) { return {v.begin(), v.end()}; }
}  // namespace

TEST(Digits, Examples) {
  EXPECT_EQ(digits(13, 2), (std::vector<int>{1, 0, 1, 1}));
  EXPECT_EQ(digits(0, 7), (std::vector<int>{0}));
  EXPECT_EQ(digits(123, 10), (std::vector<int>{3, 2, 1}));
}

TEST(Preset, Names) {
  EXPECT_EQ(preset("thue-morse"), thue_morse());
  EXPECT_EQ(preset("rudin-shapiro"), rudin_shapiro());
  EXPECT_EQ(preset("digit-sum:10,3"), digit_sum(10, 3));
  EXPECT_EQ(preset("block-ones:3"), block_ones(3));
  EXPECT_THROW(preset("fibonacci"), std::invalid_argument);
  EXPECT_THROW(preset("block-ones:0"), std::invalid_argument);
}

TEST(Preset, ThueMorsePrefix) {
  EXPECT_EQ(stream(thue_morse(), IndexMap::identity(), 0, 8), bytes({0, 1, 1, 0, 1, 0, 0, 1}));
  for (std::uint64_t n = 0; n < 4096; ++n) {
    ASSERT_EQ(stream(thue_morse(), IndexMap::identity(), n, 1)[0], oracle::popcount_parity(n));
  }
}

TEST(Preset, RudinShapiroValues) {
  EXPECT_EQ(stream(rudin_shapiro(), IndexMap::identity(), 3, 1)[0], 1);
  for (std::uint64_t n = 0; n < 4096; ++n) {
    ASSERT_EQ(stream(rudin_shapiro(), IndexMap::identity(), n, 1)[0], oracle::adjacent_ones(n) % 2);
  }
}

TEST(Preset, BlockOnesTwoIsRudinShapiro) {
  const auto a = stream(block_ones(2), IndexMap::identity(), 0, 1 << 16);
  const auto b = stream(rudin_shapiro(), IndexMap::identity(), 0, 1 << 16);
  EXPECT_EQ(a, b);
}

TEST(Stream, ThueMorseAlongSquares) {
  EXPECT_EQ(stream(thue_morse(), IndexMap::square(), 0, 8), bytes({0, 1, 1, 0, 1, 1, 0, 1}));
}

TEST(Stream, EmptyAndAffine) {
  EXPECT_TRUE(stream(rudin_shapiro(), IndexMap::square(), 5, 0).empty());
  EXPECT_EQ(stream(rudin_shapiro(), IndexMap::affine(2, 1), 0, 4), bytes({0, 1, 0, 0}));
  EXPECT_THROW(IndexMap::affine(0, 1), std::invalid_argument);
}

TEST(Stream, ParseMaps) {
  EXPECT_EQ(IndexMap::parse("square").kind, IndexMap::Kind::square);
  EXPECT_EQ(IndexMap::parse("id").kind, IndexMap::Kind::identity);
  const auto m = IndexMap::parse("affine:3,4");
  EXPECT_EQ(m.apply(2), 10u);
  EXPECT_THROW(IndexMap::parse("cube"), std::invalid_argument);
}

TEST(Stream, AgreesWithPointwiseEvaluation) {
  std::mt19937_64 rng(41);
  const DigitalFunction fs[] = {thue_morse(), rudin_shapiro(), digit_sum(3, 4), block_ones(3),
                                DigitalFunction::make(2, 2, {0, 1, 1, 1}, 3)};
  const IndexMap maps[] = {IndexMap::identity(), IndexMap::square(), IndexMap::affine(7, 3)};
  for (int trial = 0; trial < 100000; ++trial) {
    const auto& f = fs[trial % 5];
    const auto& map = maps[(trial / 5) % 3];
    const u128 t = std::uniform_int_distribution<std::uint64_t>(0, std::uint64_t{1} << 40)(rng);
    const auto got = stream(f, map, t, 1)[0];
    const auto n = map.apply(t);
    const auto expect = oracle::block_sum({f.table().begin(), f.table().end()}, f.base(), f.window(), n);
    ASSERT_EQ(got, expect % f.modulus());
  }
}

TEST(Stream, ChunkedReadsConcatenate) {
  const auto whole = stream(rudin_shapiro(), IndexMap::square(), 1000, 5000);
  SequenceStream s(rudin_shapiro(), IndexMap::square(), 1000);
  std::vector<std::uint8_t> joined;
  std::mt19937_64 rng(2);
  while (joined.size() < whole.size()) {
    const std::size_t take = std::min<std::size_t>(whole.size() - joined.size(),
                                                   std::uniform_int_distribution<std::size_t>(1, 700)(rng));
    const auto part = s.read(take);
    joined.insert(joined.end(), part.begin(), part.end());
  }
  EXPECT_EQ(joined, whole);
  EXPECT_EQ(s.position(), 6000u);
  EXPECT_EQ(stream_parallel(rudin_shapiro(), IndexMap::square(), 1000, 5000, 4), whole);
}
