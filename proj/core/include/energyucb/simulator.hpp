// Copyright 2026 The energyucb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "energyucb/bandit.hpp"
#include "energyucb/profile.hpp"
#include "energyucb/reward.hpp"

namespace energyucb {

/// Remaining progress at or below this value counts as complete. Absorbs the
/// rounding of summing step/exec_time thousands of times.
inline constexpr double kProgressTolerance = 1e-9;

/// Advances the simulated counters by one step at `arm`. Per-step power is
/// drawn from N(power_mean, power_std) truncated at zero; active times are
/// deterministic (util * step).
CounterSample step_counters(const ApplicationProfile &profile, std::size_t arm,
                            const CounterSample &prev, std::mt19937_64 &rng);

struct StepRecord {
    std::uint64_t t = 0;
    std::size_t arm = 0;
    /// Reward as seen by the policy (normalized when normalization is on).
    double reward = 0.0;
    double energy_j = 0.0;
    double progress = 0.0;
};

struct EpisodeResult {
    std::string profile;
    std::string policy;
    std::uint64_t seed = 0;
    std::vector<StepRecord> history;
    double total_energy_j = 0.0;
    double exec_time_s = 0.0;
    std::uint64_t steps = 0;
    /// Cumulative regret per step; empty until filled by the metrics module.
    std::vector<double> regret;
};

struct EpisodeOptions {
    /// Defaults to 10 * max exec_time / step.
    std::optional<std::uint64_t> step_cap;
    /// Called with every emitted counter sample, starting with the zero sample.
    std::function<void(const CounterSample &)> counter_sink;
};

/// Runs one application to completion under `policy`:
/// select -> step counters -> diff -> reward -> update -> subtract progress,
/// until the remaining progress reaches zero. Throws Error when the step cap
/// is hit first.
EpisodeResult run_episode(const ApplicationProfile &profile, Policy &policy,
                          const RewardConfig &reward_cfg, std::uint64_t seed,
                          const EpisodeOptions &options = {});

/// Counter stream (steps + 1 samples) of a static run at `arm`.
std::vector<CounterSample> simulate_static_counters(const ApplicationProfile &profile,
                                                    std::size_t arm, std::uint64_t seed);

/// Deterministic seed derivation so that one trial seed can feed independent
/// generators (policy, power noise, ...).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

}  // namespace energyucb
