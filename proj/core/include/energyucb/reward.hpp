// Copyright 2026 The energyucb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace energyucb {

/// Snapshot of the monotonic GPU counters.
struct CounterSample {
    double timestamp_s = 0.0;
    double energy_j = 0.0;
    double core_active_s = 0.0;
    double uncore_active_s = 0.0;

    bool operator==(const CounterSample &) const = default;
};

/// Per-step quantities derived from two counter samples.
struct StepObservation {
    double energy_j = 0.0;
    double core_util = 0.0;
    double uncore_util = 0.0;
    double duration_s = 0.0;
};

/// Uncore utilization floor used in the reward denominator.
inline constexpr double kUtilizationFloor = 1e-3;

/// Differences b - a. Utilizations are clamped to [0, 1].
/// Throws ValidationError on zero duration or any counter regression.
StepObservation diff_counters(const CounterSample &a, const CounterSample &b);

/// -E * UC / max(UU, guard); never positive.
double compute_reward(const StepObservation &obs, double guard = kUtilizationFloor);

/// How raw rewards (joules scale) are rescaled before the bandit sees them.
enum class Normalization {
    /// Raw rewards.
    none,
    /// Divide by the spread (max - min) of the first reward seen on each arm.
    spread,
    /// Divide by the mean |reward| of the first reward seen on each arm.
    mean_abs,
};

std::string_view to_string(Normalization mode) noexcept;
std::optional<Normalization> parse_normalization(std::string_view name) noexcept;

struct RewardConfig {
    double guard = kUtilizationFloor;
    Normalization normalization = Normalization::spread;
};

/// Divisor for the given first-cycle rewards. Falls back from spread to
/// mean |r| when all rewards are equal, and to 1 when they are all zero.
double normalization_scale(std::span<const double> first_rewards, Normalization mode);

/// Tracks the first raw reward of every arm and fixes the reward scale once
/// all arms have been observed.
class RewardNormalizer {
  public:
    RewardNormalizer(std::size_t arm_count, Normalization mode);

    /// Returns true exactly once: on the observation that fixes the scale.
    bool observe(std::size_t arm, double raw_reward);

    bool ready() const noexcept { return m_ready; }
    /// Divisor to apply; 1 until ready.
    double scale() const noexcept { return m_scale; }

  private:
    Normalization m_mode;
    std::vector<std::optional<double>> m_first;
    std::size_t m_seen = 0;
    bool m_ready = false;
    double m_scale = 1.0;
};

}  // namespace energyucb
