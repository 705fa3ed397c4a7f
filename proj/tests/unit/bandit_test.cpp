// Copyright 2026 The energyucb Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <map>

#include "energyucb/bandit.hpp"
#include "energyucb/error.hpp"

using namespace energyucb;

namespace {

std::size_t pull(Policy &policy, double reward)
{
    const std::size_t arm = policy.select_arm();
    policy.update(arm, reward);
    return arm;
}

}  // namespace

TEST(PolicyKind, NamesRoundTrip)
{
    for (auto kind : {PolicyKind::energy_ucb, PolicyKind::epsilon_greedy, PolicyKind::random,
                      PolicyKind::round_robin, PolicyKind::static_arm}) {
        EXPECT_EQ(parse_policy_kind(to_string(kind)), kind);
    }
    EXPECT_EQ(parse_policy_kind("rrfreq"), PolicyKind::round_robin);
    EXPECT_EQ(parse_policy_kind("rdfreq"), PolicyKind::random);
    EXPECT_EQ(parse_policy_kind("ucb"), PolicyKind::energy_ucb);
    EXPECT_FALSE(parse_policy_kind("thompson").has_value());
}

TEST(UcbValue, SpotValues)
{
    EXPECT_EQ(ucb_value({1, 0.0}, 1.0, 1.0), 0.0);
    EXPECT_NEAR(ucb_value({4, -8.0}, std::exp(4.0), 1.0), -1.0, 1e-12);
    EXPECT_NEAR(ucb_value({10, -15.0}, 100.0, 0.5), -1.1606929787792444, 1e-12);
    EXPECT_NEAR(ucb_value({10, -15.0}, 100.0, 0.5), -1.1607, 5e-5);
}

TEST(UcbValue, RejectsUnpulledArmAndZeroStep)
{
    EXPECT_THROW(ucb_value({0, 0.0}, 5.0, 1.0), InvalidArgument);
    EXPECT_THROW(ucb_value({1, -1.0}, 0.0, 1.0), InvalidArgument);
}

TEST(ArmStats, RunningMean)
{
    Policy policy(PolicyKind::round_robin, 2);
    policy.update(0, -3.0);
    EXPECT_EQ(policy.arms()[0], (ArmStats{1, -3.0}));
    EXPECT_EQ(policy.arms()[0].mean(), -3.0);

    ArmStats stats{2, -4.0};
    stats.pulls += 1;
    stats.reward_sum += -2.0;
    EXPECT_EQ(stats.mean(), -2.0);
    EXPECT_FALSE(ArmStats{}.mean().has_value());
}

TEST(ArmStats, UpdateOrderDoesNotMatter)
{
    const std::array<double, 5> rewards = {-0.5, -1.25, -3.0, -0.125, -2.0};
    Policy forward(PolicyKind::round_robin, 2);
    Policy backward(PolicyKind::round_robin, 2);
    for (std::size_t i = 0; i < rewards.size(); ++i) {
        forward.update(1, rewards[i]);
        backward.update(1, rewards[rewards.size() - 1 - i]);
    }
    double sum = 0.0;
    for (double r : rewards) {
        sum += r;
    }
    EXPECT_EQ(forward.arms()[1], backward.arms()[1]);
    EXPECT_EQ(forward.arms()[1], (ArmStats{5, sum}));
}

TEST(EnergyUcb, PureExplorationCyclesThroughArmsInOrder)
{
    Policy policy(PolicyKind::energy_ucb, 9, {});
    std::vector<std::size_t> arms;
    for (int t = 1; t <= 36; ++t) {
        EXPECT_TRUE(policy.in_pure_exploration());
        arms.push_back(pull(policy, -1.0));
    }
    EXPECT_EQ(arms[0], 0u);   // t = 1
    EXPECT_EQ(arms[8], 8u);   // t = 9
    EXPECT_EQ(arms[9], 0u);   // t = 10
    EXPECT_EQ(arms[35], 8u);  // t = 36
    EXPECT_FALSE(policy.in_pure_exploration());
    for (const auto &stats : policy.arms()) {
        EXPECT_EQ(stats.pulls, 4u);
    }
}

TEST(EnergyUcb, PicksLargestUpperBoundAfterExploration)
{
    PolicyParams params;
    params.cycles = 1;
    Policy policy(PolicyKind::energy_ucb, 2, params);
    EXPECT_EQ(pull(policy, -1.0), 0u);
    EXPECT_EQ(pull(policy, -5.0), 1u);
    ASSERT_EQ(policy.step(), 3u);
    const double ucb0 = ucb_value(policy.arms()[0], 3.0, 1.0);
    const double ucb1 = ucb_value(policy.arms()[1], 3.0, 1.0);
    EXPECT_NEAR(ucb0, 0.048147073968205056, 1e-12);
    EXPECT_NEAR(ucb1, -3.951852926031795, 1e-12);
    EXPECT_EQ(policy.select_arm(), 0u);
}

TEST(EnergyUcb, TiesBreakTowardLowestArm)
{
    PolicyParams params;
    params.cycles = 1;
    Policy policy(PolicyKind::energy_ucb, 4, params);
    for (int i = 0; i < 4; ++i) {
        pull(policy, -2.0);
    }
    EXPECT_EQ(policy.select_arm(), 0u);
}

TEST(EnergyUcb, ZeroAlphaIsGreedy)
{
    PolicyParams params;
    params.cycles = 1;
    params.alpha = 0.0;
    Policy policy(PolicyKind::energy_ucb, 3, params);
    pull(policy, -3.0);
    pull(policy, -1.0);
    pull(policy, -2.0);
    for (int i = 0; i < 20; ++i) {
        EXPECT_EQ(pull(policy, -1.0), 1u);
    }
}

TEST(EnergyUcb, NoExplorationPhaseTriesUnpulledArmsFirst)
{
    PolicyParams params;
    params.cycles = 0;
    Policy policy(PolicyKind::energy_ucb, 3, params);
    EXPECT_FALSE(policy.in_pure_exploration());
    EXPECT_EQ(pull(policy, -1.0), 0u);
    EXPECT_EQ(pull(policy, -1.0), 1u);
    EXPECT_EQ(pull(policy, -1.0), 2u);
}

TEST(StaticPolicy, AlwaysHoldsItsArm)
{
    PolicyParams params;
    params.static_arm = 8;
    Policy policy(PolicyKind::static_arm, 9, params);
    for (int t = 0; t < 50; ++t) {
        EXPECT_EQ(pull(policy, -1.0), 8u);
    }
}

TEST(RoundRobin, Cycles)
{
    Policy policy(PolicyKind::round_robin, 3);
    for (std::size_t t = 0; t < 12; ++t) {
        EXPECT_EQ(pull(policy, -1.0), t % 3);
    }
}

TEST(RandomPolicy, SeededAndRoughlyUniform)
{
    PolicyParams params;
    params.seed = 42;
    Policy a(PolicyKind::random, 4, params);
    Policy b(PolicyKind::random, 4, params);
    std::map<std::size_t, int> counts;
    for (int t = 0; t < 4000; ++t) {
        const auto arm = pull(a, -1.0);
        EXPECT_EQ(arm, pull(b, -1.0));
        ++counts[arm];
    }
    ASSERT_EQ(counts.size(), 4u);
    for (const auto &[arm, n] : counts) {
        EXPECT_NEAR(n, 1000, 120) << "arm " << arm;
    }
}

TEST(EpsilonGreedy, ZeroEpsilonTreatsUnpulledArmsAsZeroMean)
{
    PolicyParams params;
    params.epsilon = 0.0;
    Policy policy(PolicyKind::epsilon_greedy, 3, params);
    EXPECT_EQ(pull(policy, -1.0), 0u);
    EXPECT_EQ(pull(policy, -2.0), 1u);
    EXPECT_EQ(pull(policy, -0.5), 2u);
    EXPECT_EQ(pull(policy, -0.5), 2u);
}

TEST(EpsilonGreedy, ExploresAtRateEpsilon)
{
    PolicyParams params;
    params.epsilon = 0.10;
    params.seed = 7;
    Policy policy(PolicyKind::epsilon_greedy, 5, params);
    for (std::size_t arm = 0; arm < 5; ++arm) {
        policy.update(arm, arm == 2 ? -1.0 : -10.0);
    }
    int off_greedy = 0;
    const int n = 20000;
    for (int t = 0; t < n; ++t) {
        const auto arm = policy.select_arm();
        off_greedy += arm != 2 ? 1 : 0;
        policy.update(arm, arm == 2 ? -1.0 : -10.0);
    }
    // Non-greedy picks happen with probability epsilon * (K - 1) / K = 0.08.
    EXPECT_NEAR(static_cast<double>(off_greedy) / n, 0.08, 0.01);
}

TEST(Policy, RejectsBadConstruction)
{
    EXPECT_THROW(Policy(PolicyKind::energy_ucb, 1), InvalidArgument);
    PolicyParams params;
    params.static_arm = 3;
    EXPECT_THROW(Policy(PolicyKind::static_arm, 3, params), InvalidArgument);
    params = {};
    params.epsilon = 1.5;
    EXPECT_THROW(Policy(PolicyKind::epsilon_greedy, 3, params), InvalidArgument);
    params = {};
    params.alpha = -1.0;
    EXPECT_THROW(Policy(PolicyKind::energy_ucb, 3, params), InvalidArgument);
}

TEST(Policy, RejectsOutOfRangeUpdateAndBadScale)
{
    Policy policy(PolicyKind::round_robin, 3);
    EXPECT_THROW(policy.update(3, -1.0), InvalidArgument);
    EXPECT_EQ(policy.step(), 1u);
    EXPECT_THROW(policy.scale_rewards(0.0), InvalidArgument);
    EXPECT_THROW(policy.scale_rewards(-2.0), InvalidArgument);
}

TEST(Policy, ScaleRewardsMultipliesSums)
{
    Policy policy(PolicyKind::round_robin, 2);
    policy.update(0, -4.0);
    policy.update(1, -2.0);
    policy.scale_rewards(0.5);
    EXPECT_EQ(policy.arms()[0].reward_sum, -2.0);
    EXPECT_EQ(policy.arms()[1].reward_sum, -1.0);
    EXPECT_EQ(policy.arms()[1].pulls, 1u);
}
