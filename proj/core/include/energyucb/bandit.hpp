// Copyright 2026 The energyucb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace energyucb {

/// Running reward statistics of one arm.
struct ArmStats {
    std::uint64_t pulls = 0;
    double reward_sum = 0.0;

    /// Empirical mean reward; empty until the arm has been pulled.
    std::optional<double> mean() const noexcept
    {
        if (pulls == 0) {
            return std::nullopt;
        }
        return reward_sum / static_cast<double>(pulls);
    }

    bool operator==(const ArmStats &) const = default;
};

enum class PolicyKind {
    energy_ucb,
    epsilon_greedy,
    random,
    round_robin,
    static_arm,
};

std::string_view to_string(PolicyKind kind) noexcept;
std::optional<PolicyKind> parse_policy_kind(std::string_view name) noexcept;

struct PolicyParams {
    /// Pure-exploration cycles over all arms before UCB selection starts.
    std::uint32_t cycles = 4;
    /// Weight of the UCB exploration bonus.
    double alpha = 1.0;
    /// Exploration probability of epsilon-greedy.
    double epsilon = 0.10;
    /// Arm held by the static policy.
    std::size_t static_arm = 0;
    std::uint64_t seed = 0;
};

/// mean + alpha * sqrt(ln t / pulls). Throws InvalidArgument when the arm was
/// never pulled or t < 1.
double ucb_value(const ArmStats &stats, double t, double alpha);

/// One bandit policy over a fixed number of arms.
///
/// The step counter t starts at 1 and advances by one on every update(), so
/// before the t-th selection the pull counts sum to t - 1. EnergyUCB spends
/// steps 1..C*K cycling through the arms in order and afterwards picks the arm
/// with the largest UCB value; every argmax breaks ties toward the lowest arm.
class Policy {
  public:
    Policy(PolicyKind kind, std::size_t arm_count, PolicyParams params = {});

    /// Chooses the arm for step t. Only the policy's generator state changes.
    std::size_t select_arm();

    /// Records the reward observed on `arm` and advances t.
    void update(std::size_t arm, double reward);

    /// Multiplies every recorded reward by factor (> 0). Used when the reward
    /// scale becomes known after the first observations.
    void scale_rewards(double factor);

    PolicyKind kind() const noexcept { return m_kind; }
    const PolicyParams &params() const noexcept { return m_params; }
    std::uint64_t step() const noexcept { return m_t; }
    std::size_t arm_count() const noexcept { return m_arms.size(); }
    std::span<const ArmStats> arms() const noexcept { return m_arms; }

    /// True while EnergyUCB is still in its round-robin phase (t <= C*K).
    bool in_pure_exploration() const noexcept;

  private:
    std::size_t select_energy_ucb() const;
    std::size_t select_greedy() const noexcept;
    std::size_t draw_uniform_arm();

    PolicyKind m_kind;
    PolicyParams m_params;
    std::vector<ArmStats> m_arms;
    std::uint64_t m_t = 1;
    std::mt19937_64 m_rng;
};

}  // namespace energyucb
