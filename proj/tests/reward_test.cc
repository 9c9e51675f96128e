#include "cursor/reward.h"

#include <gtest/gtest.h>

#include <cmath>

#include "cursor/error.h"
#include "oracles.h"
#include "test_util.h"

namespace cursor {
namespace {

using testing::path;

const BBox kBox{40, 40, 60, 60};
constexpr ImageSize k100{100, 100};

TEST(FalseStopTest, Examples) {
  EXPECT_EQ(false_stop(path({{50, 50}}, true), kBox), 0);
  EXPECT_EQ(false_stop(path({{50, 50}, {10, 10}}, true), kBox), 1);
  EXPECT_EQ(false_stop(path({{50, 50}, {1, 1}, {2, 2}, {3, 3}, {4, 4}}, false), kBox), 0);
}

TEST(FalseMoveTest, Examples) {
  EXPECT_EQ(false_move(path({{50, 50}, {80, 80}}, false, 1), kBox), 1);
  EXPECT_EQ(false_move(path({{10, 10}, {55, 55}}, false, 1), kBox), 0);
  EXPECT_EQ(false_move(path({{50, 50}, {10, 10}, {90, 90}}, true), kBox), 1);
  EXPECT_EQ(false_move(path({{10, 10}, {50, 50}, {90, 90}}, true), kBox), 1);
  EXPECT_EQ(false_move(path({{10, 10}, {20, 20}, {90, 90}}, true), kBox), 0);
}

TEST(FalseMoveTest, MatchesEnumeration) {
  // Every 3-step path over four sample positions, against a direct scan of t.
  const std::vector<Point> pts{{50, 50}, {10, 10}, {41, 59}, {90, 5}};
  for (int code = 0; code < 256; ++code) {
    std::vector<Point> ps;
    for (int k = 0, c = code; k < 4; ++k, c /= 4) ps.push_back(pts[static_cast<std::size_t>(c % 4)]);
    const Trajectory t = path({ps[0], ps[1], ps[2], ps[3]}, false, 3);
    bool earlier = false;
    for (int i = 0; i < 3; ++i) earlier |= oracle::inside(kBox, ps[static_cast<std::size_t>(i)]);
    EXPECT_EQ(false_move(t, kBox), earlier && !oracle::inside(kBox, ps[3]) ? 1 : 0);
  }
}

TEST(FalseDirectionTest, Examples) {
  // p1 at 0.1 from the box, p_T at 0.3.
  EXPECT_EQ(false_direction(path({{50, 50}, {30, 50}, {10, 50}}, true), kBox, k100), 1);
  EXPECT_EQ(false_direction(path({{50, 50}, {30, 50}, {30, 50}}, true), kBox, k100), 0);
  EXPECT_EQ(false_direction(path({{50, 50}, {10, 50}, {50, 50}}, true), kBox, k100), 0);
  // First action STOP: p_1 falls back to p_0.
  EXPECT_EQ(false_direction(path({{10, 10}}, true), kBox, k100), 0);
}

TEST(RepeatedPositionTest, Examples) {
  EXPECT_EQ(repeated_position(path({{50, 50}, {30, 30}, {30, 30}}, false)), 1);
  EXPECT_EQ(repeated_position(path({{50, 50}, {30, 30}, {31, 30}}, false)), 0);
  EXPECT_EQ(repeated_position(path({{50, 50}, {50, 50}}, true)), 0);
  EXPECT_EQ(repeated_position(path({{50, 50}, {20, 20}, {30, 30}, {20, 20}}, false)), 1);
  // The STOP step repeats the cursor but is not a prediction.
  EXPECT_EQ(repeated_position(path({{50, 50}, {20, 20}}, true)), 0);
}

TEST(TrajectoryRewardTest, Oracle) {
  const RewardBreakdown r = trajectory_reward(path({{0, 0}, {50, 50}}, true), kBox, k100);
  EXPECT_EQ(r.position, 2.0);
  EXPECT_EQ(r.penalty_count(), 0);
  EXPECT_EQ(r.trajectory, 2.0);
  EXPECT_EQ(r.format, 1);
  EXPECT_EQ(r.total, 1.9);
}

TEST(TrajectoryRewardTest, OnePenalty) {
  // Truncated at (40, 20): r_p = 0.8, and p_0 in the box gives a false move.
  const Trajectory t = path({{50, 50}, {40, 20}}, false, 1);
  const RewardBreakdown r = trajectory_reward(t, kBox, k100);
  EXPECT_NEAR(r.position, 0.8, 1e-12);
  EXPECT_EQ(r.penalty_count(), 1);
  EXPECT_EQ(r.false_move, 1);
  EXPECT_NEAR(r.trajectory, 0.6, 1e-12);
  EXPECT_NEAR(r.total, 0.9 * 0.6 + 0.1, 1e-12);
}

TEST(TrajectoryRewardTest, AllFourPenalties) {
  const Trajectory t = path({{50, 50}, {50, 30}, {50, 0}, {50, 0}}, true);
  const RewardBreakdown r = trajectory_reward(t, kBox, k100);
  EXPECT_EQ(r.false_stop, 1);
  EXPECT_EQ(r.false_move, 1);
  EXPECT_EQ(r.false_direction, 1);
  EXPECT_EQ(r.repeated_position, 1);
  const double rp = oracle::brute_position_reward({50, 0}, kBox, k100);
  EXPECT_NEAR(r.trajectory, rp - 0.8, 1e-12);

  // r_p = 0.5 exactly: box [50,50,99,99] on 100x100, final (0, 50) is 0.5 away.
  const BBox b{50, 50, 99, 99};
  const Trajectory u = path({{60, 60}, {20, 50}, {0, 50}, {0, 50}}, true);
  const RewardBreakdown q = trajectory_reward(u, b, k100);
  EXPECT_EQ(q.penalty_count(), 4);
  EXPECT_NEAR(q.position, 0.5, 1e-12);
  EXPECT_NEAR(q.trajectory, -0.3, 1e-12);
}

TEST(TrajectoryRewardTest, SeparateFalseStopWeight) {
  RewardWeights w;
  w.false_stop = 0.5;
  const RewardBreakdown r = trajectory_reward(path({{50, 50}, {40, 20}}, true), kBox, k100, w);
  EXPECT_EQ(r.false_stop, 1);
  EXPECT_EQ(r.false_move, 1);
  EXPECT_NEAR(r.trajectory, 0.8 - 0.5 - 0.2, 1e-12);
}

TEST(TrajectoryRewardTest, FormatIsAllOrNothing) {
  Trajectory t = path({{0, 0}, {50, 50}}, true);
  t.steps.back().format_ok = false;
  const RewardBreakdown r = trajectory_reward(t, kBox, k100);
  EXPECT_EQ(r.format, 0);
  EXPECT_NEAR(r.total, 1.8, 1e-12);
}

TEST(TrajectoryRewardTest, Invariants) {
  const std::vector<Point> pts{{50, 50}, {10, 10}, {41, 59}, {90, 5}, {60, 40}};
  for (int code = 0; code < 625; ++code) {
    std::vector<Point> ps;
    for (int k = 0, c = code; k < 4; ++k, c /= 5) ps.push_back(pts[static_cast<std::size_t>(c % 5)]);
    for (bool s : {false, true}) {
      const Trajectory t = path({ps[0], ps[1], ps[2], ps[3]}, s);
      const RewardBreakdown r = trajectory_reward(t, kBox, k100);
      EXPECT_LE(r.trajectory, r.position);
      if (r.penalty_count() == 0) EXPECT_EQ(r.trajectory, r.position);
      EXPECT_GT(r.trajectory, 1 - std::sqrt(2.0) - 0.8);
      EXPECT_LE(r.trajectory, 2.0);
      EXPECT_EQ(trajectory_reward(t, kBox, k100), r);
      if (oracle::inside(kBox, ps[3])) EXPECT_EQ(r.false_move, 0);
    }
  }
}

TEST(RewardWeightsTest, Validate) {
  EXPECT_NO_THROW(RewardWeights{}.validate());
  RewardWeights w;
  w.penalty = -1;
  EXPECT_THROW(w.validate(), Error);
  RewardWeights m;
  m.mix_format = 0.5;
  EXPECT_THROW(m.validate(), Error);
}

}  // namespace
}  // namespace cursor
