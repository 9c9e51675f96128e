#include "cursor/agents.h"

#include <gtest/gtest.h>

#include "cursor/error.h"
#include "cursor/reward.h"
#include "cursor/synth.h"
#include "test_util.h"

namespace cursor {
namespace {

Trajectory drive(const PolicySpec& spec, std::shared_ptr<const Scene> scene,
                 EpisodeConfig cfg = {}, std::uint64_t seed = 1) {
  Environment env;
  auto policy = make_policy(spec, seed, cfg.action_mode);
  auto r = env.reset(scene, 0, cfg);
  Observation obs = r.observation;
  while (!r.state.done()) obs = env.step(r.state, policy->act(obs, r.state.target)).observation;
  return r.state.trajectory;
}

TEST(PolicySpecTest, Parse) {
  EXPECT_EQ(parse_policy_spec("oracle"), (PolicySpec{PolicyKind::kOracle, 0}));
  EXPECT_EQ(parse_policy_spec("noisy"), (PolicySpec{PolicyKind::kNoisyOracle, 10}));
  EXPECT_EQ(parse_policy_spec("noisy:2.5"), (PolicySpec{PolicyKind::kNoisyOracle, 2.5}));
  EXPECT_EQ(parse_policy_spec("drift"), (PolicySpec{PolicyKind::kDrifter, 20}));
  EXPECT_EQ(parse_policy_spec("random").kind, PolicyKind::kRandomWalk);
  EXPECT_EQ(to_string(parse_policy_spec("noisy:10")), "noisy:10");
  EXPECT_EQ(to_string(parse_policy_spec("drift:20")), "drift:20");
  for (const char* bad : {"", "orcale", "oracle:1", "noisy:", "noisy:-1", "noisy:x", "drift:0"}) {
    EXPECT_THROW(parse_policy_spec(bad), Error) << bad;
  }
}

TEST(PolicyTest, OracleMovesToCentreThenStops) {
  const auto scene = testing::white_scene({200, 100}, {10, 10, 30, 20});
  const Trajectory t = drive({PolicyKind::kOracle, 0}, scene);
  ASSERT_EQ(t.length(), 2);
  EXPECT_EQ(t.position(1), (Point{20, 15}));
  EXPECT_TRUE(t.stopped);
  EXPECT_TRUE(t.all_formats_ok());
  const RewardBreakdown r = trajectory_reward(t, {10, 10, 30, 20}, {200, 100});
  EXPECT_EQ(r.trajectory, 2.0);
  EXPECT_EQ(r.total, 1.9);
}

TEST(PolicyTest, OracleRelativeMode) {
  const auto scene = testing::white_scene({200, 100}, {10, 10, 30, 20});
  EpisodeConfig cfg;
  cfg.action_mode = ActionMode::kRelative;
  const Trajectory t = drive({PolicyKind::kOracle, 0}, scene, cfg);
  EXPECT_EQ(t.steps[0].action, Action(RelativeMove{-80, -35}));
  EXPECT_EQ(t.final_position(), (Point{20, 15}));
}

TEST(PolicyTest, LazyStopFalseStop) {
  const BBox b{10, 10, 30, 20};
  const Trajectory t = drive({PolicyKind::kLazyStop, 0}, testing::white_scene({200, 100}, b));
  EXPECT_EQ(t.length(), 1);
  EXPECT_EQ(false_stop(t, b), 1);
}

TEST(PolicyTest, RepeaterRepeats) {
  const BBox b{10, 10, 30, 20};
  const Trajectory t = drive({PolicyKind::kRepeater, 0}, testing::white_scene({200, 100}, b));
  EXPECT_EQ(t.length(), 4);
  EXPECT_FALSE(t.stopped);
  EXPECT_EQ(t.final_position(), (Point{199, 99}));
  EXPECT_EQ(repeated_position(t), 1);
}

TEST(PolicyTest, DrifterMovesAway) {
  const BBox b{10, 10, 30, 20};
  const Trajectory t = drive({PolicyKind::kDrifter, 5}, testing::white_scene({400, 300}, b));
  EXPECT_EQ(false_direction(t, b, {400, 300}), 1);
}

TEST(PolicyTest, RandomWalkNeverStops) {
  const Trajectory t = drive({PolicyKind::kRandomWalk, 0},
                             testing::white_scene({200, 100}, {10, 10, 30, 20}));
  EXPECT_EQ(t.length(), 4);
  EXPECT_FALSE(t.stopped);
}

TEST(PolicyTest, NoisyOracleSeeded) {
  const auto scene = testing::white_scene({500, 500}, {200, 200, 240, 240});
  EXPECT_EQ(drive({PolicyKind::kNoisyOracle, 10}, scene, {}, 3),
            drive({PolicyKind::kNoisyOracle, 10}, scene, {}, 3));
  const Trajectory t = drive({PolicyKind::kNoisyOracle, 0.001}, scene);
  EXPECT_EQ(t.length(), 2);
  EXPECT_TRUE(t.stopped);
}

TEST(PolicyTest, AllEmitWellFormedText) {
  SceneParams p;
  for (PolicyKind k : {PolicyKind::kOracle, PolicyKind::kNoisyOracle, PolicyKind::kLazyStop,
                       PolicyKind::kRepeater, PolicyKind::kDrifter, PolicyKind::kRandomWalk}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      p.seed = seed;
      const auto scene = std::make_shared<Scene>(gen_scene(p));
      for (ActionMode mode : {ActionMode::kDirect, ActionMode::kRelative}) {
        EpisodeConfig cfg;
        cfg.action_mode = mode;
        const Trajectory t = drive({k, 10}, scene, cfg, seed);
        EXPECT_TRUE(t.all_formats_ok());
        for (const TrajectoryStep& s : t.steps) EXPECT_FALSE(s.think.empty());
      }
    }
  }
}

}  // namespace
}  // namespace cursor
