// Copyright 2026 The energyucb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "energyucb/profile.hpp"
#include "energyucb/reward.hpp"
#include "energyucb/simulator.hpp"

namespace energyucb {

/// Per-arm expected reward and the best arm (lowest index on ties).
struct ArmTruth {
    std::vector<double> mean_reward;
    std::size_t best_arm = 0;
    double best_mean = 0.0;
    /// Divisor applied to raw rewards (1 without normalization).
    double scale = 1.0;
};

inline constexpr std::size_t kMinOracleSamples = 1000;

/// Monte-Carlo estimate of every arm's mean reward from `n_samples`
/// independent single steps. Zero-noise arms return the exact single-step
/// reward. With normalization, means are divided by the same statistic the
/// episode normalizer uses, evaluated on the raw means.
ArmTruth oracle_truth(const ApplicationProfile &profile, const RewardConfig &reward_cfg,
                      std::size_t n_samples, std::uint64_t seed);

/// Builds an ArmTruth directly from known means.
ArmTruth make_truth(std::vector<double> mean_reward, double scale = 1.0);

/// Running sum of (mu* - mu_arm) over the episode's steps.
std::vector<double> cumulative_regret(const EpisodeResult &episode, const ArmTruth &truth);

struct TrialSummary {
    std::string profile;
    std::string policy;
    std::size_t trials = 0;
    double mean_energy_j = 0.0;
    double std_energy_j = 0.0;
    double mean_exec_time_s = 0.0;
    double std_exec_time_s = 0.0;
    double mean_final_regret = 0.0;
    double std_final_regret = 0.0;
};

/// Mean and sample (n - 1) standard deviation across trials of one
/// (profile, policy) pair. Trials without a regret series count as zero regret.
TrialSummary aggregate_trials(std::span<const EpisodeResult> results);

/// Sample mean and (n - 1) standard deviation; std is 0 for a single value.
std::pair<double, double> mean_and_std(std::span<const double> values);

}  // namespace energyucb
