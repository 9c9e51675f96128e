#include "cursor/rng.h"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

namespace cursor {
namespace {

TEST(RngTest, EngineIsStandardMt19937_64) {
  // The 10000th output of a default-seeded mt19937_64 is fixed by the standard.
  Rng rng(5489);
  std::uint64_t v = 0;
  for (int i = 0; i < 10000; ++i) v = rng.next();
  EXPECT_EQ(v, 9981545732273789042ull);
}

TEST(RngTest, UniformIntRangeAndCoverage) {
  Rng rng(1);
  std::set<std::int64_t> seen;
  for (int i = 0; i < 10000; ++i) {
    const auto v = rng.uniform_int(-3, 3);
    ASSERT_GE(v, -3);
    ASSERT_LE(v, 3);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_EQ(rng.uniform_int(5, 5), 5);
}

TEST(RngTest, NormalMoments) {
  Rng rng(2);
  double sum = 0, sq = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double v = rng.normal(3.0, 2.0);
    sum += v;
    sq += v * v;
  }
  const double mean = sum / n;
  EXPECT_NEAR(mean, 3.0, 0.03);
  EXPECT_NEAR(std::sqrt(sq / n - mean * mean), 2.0, 0.03);
}

TEST(RngTest, SubstreamsDiffer) {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t m = 0; m < 50; ++m) {
    for (std::uint64_t i = 0; i < 50; ++i) seeds.insert(substream_seed(m, i));
  }
  EXPECT_EQ(seeds.size(), 2500u);
  EXPECT_EQ(substream_seed(7, 3), substream_seed(7, 3));
}

}  // namespace
}  // namespace cursor
