// Copyright 2026 The energyucb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "energyucb/profile.hpp"

namespace energyucb::testing {

/// Builds a profile from parallel vectors; validates it.
ApplicationProfile make_profile(const std::string &name, std::vector<double> ghz,
                                std::vector<FrequencyPoint> points, double step_s = 0.01);

/// Zero-noise three-arm profile with a unique best arm (the middle one):
/// mean rewards -62.5, -39.0625 and -82.03125.
ApplicationProfile toy_profile();

/// Per-step reward of an arm without noise, computed directly from its point.
double analytic_reward(const FrequencyPoint &point, double step_s, double guard = 1e-3);

/// Random valid profile: 2..max_arms arms, exec time non-increasing with
/// frequency, optional 0..5% power noise.
ApplicationProfile random_profile(std::mt19937_64 &rng, std::size_t max_arms = 9,
                                  bool noisy = true, double max_exec_s = 4.0);

/// Reward on a 1/1024 grid in [-8, 0] so that sums and shifts stay exact.
double grid_reward(std::mt19937_64 &rng);

struct PropertyResult {
    std::string name;
    bool ok = true;
    std::size_t cases = 0;
    std::string detail;
};

PropertyResult check_exploration_schedule(std::uint64_t seed, std::size_t cases);
PropertyResult check_pull_conservation(std::uint64_t seed, std::size_t cases);
PropertyResult check_ucb_spot_values();
PropertyResult check_reward_sign_and_scale(std::uint64_t seed, std::size_t cases);
PropertyResult check_counter_monotonicity(std::uint64_t seed, std::size_t cases);
PropertyResult check_progress_bounds(std::uint64_t seed, std::size_t cases);
PropertyResult check_regret_shape(std::uint64_t seed, std::size_t cases);
PropertyResult check_shift_invariance(std::uint64_t seed, std::size_t cases);
PropertyResult check_seed_determinism(std::uint64_t seed, std::size_t cases);

std::vector<PropertyResult> run_property_suite(std::uint64_t seed, std::size_t cases);

}  // namespace energyucb::testing
