#include "cursor/grpo.h"

#include <gtest/gtest.h>

#include <cmath>

#include "cursor/error.h"
#include "test_util.h"

namespace cursor {
namespace {

TEST(GroupAdvantagesTest, Examples) {
  const std::vector<double> r{0, 1, 2};
  const auto a = group_advantages(r);
  const double s = std::sqrt(2.0 / 3.0);
  EXPECT_NEAR(a[0], -1 / s, 1e-7);
  EXPECT_NEAR(a[1], 0.0, 1e-12);
  EXPECT_NEAR(a[2], 1 / s, 1e-7);
  EXPECT_NEAR(a[2], 1.22474, 1e-4);

  const std::vector<double> two{1.9, 0.4};
  const auto b = group_advantages(two);
  EXPECT_NEAR(b[0], 1.0, 1e-6);
  EXPECT_NEAR(b[1], -1.0, 1e-6);
}

TEST(GroupAdvantagesTest, ConstantGroupIsZero) {
  const std::vector<double> r(12, 1.9);
  for (double a : group_advantages(r)) EXPECT_EQ(a, 0.0);
}

TEST(GroupAdvantagesTest, TooSmall) {
  const std::vector<double> one{1.0};
  EXPECT_THROW(group_advantages(one), Error);
  EXPECT_THROW(group_advantages({}), Error);
}

TEST(ClippedSurrogateTest, HandCases) {
  const std::vector<double> lo{0.0};
  EXPECT_NEAR(clipped_surrogate(std::vector<double>{std::log(2.0)}, lo,
                                std::vector<double>{1.0}, 0.2),
              1.2, 1e-9);
  EXPECT_NEAR(clipped_surrogate(std::vector<double>{std::log(0.5)}, lo,
                                std::vector<double>{-1.0}, 0.2),
              -0.8, 1e-9);
  // Inside the clip range both terms agree.
  EXPECT_NEAR(clipped_surrogate(std::vector<double>{std::log(1.1)}, lo,
                                std::vector<double>{2.0}, 0.2),
              2.2, 1e-9);
  // Mean over a batch.
  EXPECT_NEAR(clipped_surrogate(std::vector<double>{std::log(2.0), std::log(0.5)},
                                std::vector<double>{0.0, 0.0}, std::vector<double>{1.0, -1.0},
                                0.2),
              0.2, 1e-9);
}

TEST(ClippedSurrogateTest, Errors) {
  const std::vector<double> a{0.0}, b{0.0, 0.0};
  EXPECT_THROW(clipped_surrogate(a, b, a, 0.2), Error);
  EXPECT_THROW(clipped_surrogate({}, {}, {}, 0.2), Error);
}

TEST(OnlineFilterTest, KeepsMixedGroupsOnly) {
  EXPECT_FALSE(keep_group(0, 12));
  EXPECT_FALSE(keep_group(12, 12));
  EXPECT_TRUE(keep_group(1, 12));
  EXPECT_TRUE(keep_group(11, 12));

  const BBox box{40, 40, 60, 60};
  Group g;
  g.target = box;
  g.members.push_back({testing::path({{0, 0}, {50, 50}}, true), {}});
  g.members.push_back({testing::path({{0, 0}, {50, 50}}, true), {}});
  EXPECT_FALSE(online_filter(g));
  EXPECT_EQ(g.success_count(), 2);
  // In the box but truncated is not a success.
  g.members.push_back({testing::path({{0, 0}, {50, 50}}, false, 1), {}});
  EXPECT_TRUE(online_filter(g));
  EXPECT_TRUE(g.kept);
}

}  // namespace
}  // namespace cursor
