// Copyright 2026 The energyucb Authors
// SPDX-License-Identifier: Apache-2.0

#include "energyucb/bandit.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

#include "energyucb/error.hpp"

namespace energyucb {

std::string_view to_string(PolicyKind kind) noexcept
{
    switch (kind) {
        case PolicyKind::energy_ucb:
            return "energy_ucb";
        case PolicyKind::epsilon_greedy:
            return "epsilon_greedy";
        case PolicyKind::random:
            return "random";
        case PolicyKind::round_robin:
            return "round_robin";
        case PolicyKind::static_arm:
            return "static";
    }
    return "unknown";
}

std::optional<PolicyKind> parse_policy_kind(std::string_view text) noexcept
{
    std::string name(text);
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (name == "energy_ucb" || name == "energyucb" || name == "ucb") {
        return PolicyKind::energy_ucb;
    }
    if (name == "epsilon_greedy" || name == "eps_greedy" || name == "egreedy") {
        return PolicyKind::epsilon_greedy;
    }
    if (name == "random" || name == "rdfreq") {
        return PolicyKind::random;
    }
    if (name == "round_robin" || name == "rrfreq") {
        return PolicyKind::round_robin;
    }
    if (name == "static") {
        return PolicyKind::static_arm;
    }
    return std::nullopt;
}

double ucb_value(const ArmStats &stats, double t, double alpha)
{
    if (stats.pulls == 0) {
        throw InvalidArgument("UCB value is undefined for an arm that was never pulled");
    }
    if (!(t >= 1.0)) {
        throw InvalidArgument("UCB step counter starts at 1");
    }
    const double n = static_cast<double>(stats.pulls);
    return stats.reward_sum / n + alpha * std::sqrt(std::log(t) / n);
}

Policy::Policy(PolicyKind kind, std::size_t arm_count, PolicyParams params)
    : m_kind(kind), m_params(params), m_arms(arm_count), m_rng(params.seed)
{
    if (arm_count < 2) {
        throw InvalidArgument("a policy needs at least two arms");
    }
    if (kind == PolicyKind::static_arm && params.static_arm >= arm_count) {
        throw InvalidArgument("static arm " + std::to_string(params.static_arm) +
                              " out of range");
    }
    if (kind == PolicyKind::epsilon_greedy && !(params.epsilon >= 0.0 && params.epsilon <= 1.0)) {
        throw InvalidArgument("epsilon must lie in [0, 1]");
    }
    if (kind == PolicyKind::energy_ucb && !(params.alpha >= 0.0)) {
        throw InvalidArgument("alpha must be nonnegative");
    }
}

bool Policy::in_pure_exploration() const noexcept
{
    return m_kind == PolicyKind::energy_ucb &&
           m_t <= static_cast<std::uint64_t>(m_params.cycles) * m_arms.size();
}

std::size_t Policy::select_arm()
{
    const std::size_t k = m_arms.size();
    switch (m_kind) {
        case PolicyKind::energy_ucb:
            if (in_pure_exploration()) {
                return static_cast<std::size_t>((m_t - 1) % k);
            }
            return select_energy_ucb();
        case PolicyKind::round_robin:
            return static_cast<std::size_t>((m_t - 1) % k);
        case PolicyKind::random:
            return draw_uniform_arm();
        case PolicyKind::epsilon_greedy: {
            std::uniform_real_distribution<double> coin(0.0, 1.0);
            if (coin(m_rng) < m_params.epsilon) {
                return draw_uniform_arm();
            }
            return select_greedy();
        }
        case PolicyKind::static_arm:
            return m_params.static_arm;
    }
    return 0;
}

std::size_t Policy::select_energy_ucb() const
{
    std::size_t best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m_arms.size(); ++i) {
        if (m_arms[i].pulls == 0) {
            if (m_params.cycles >= 1) {
                throw Error("EnergyUCB state is corrupted: arm " + std::to_string(i) +
                            " has no pulls after the pure-exploration phase");
            }
            // Without a pure-exploration phase an unpulled arm has an unbounded bonus.
            return i;
        }
        const double value = ucb_value(m_arms[i], static_cast<double>(m_t), m_params.alpha);
        if (value > best_value) {
            best_value = value;
            best = i;
        }
    }
    return best;
}

std::size_t Policy::select_greedy() const noexcept
{
    std::size_t best = 0;
    double best_mean = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m_arms.size(); ++i) {
        const double mean = m_arms[i].mean().value_or(0.0);
        if (mean > best_mean) {
            best_mean = mean;
            best = i;
        }
    }
    return best;
}

std::size_t Policy::draw_uniform_arm()
{
    std::uniform_int_distribution<std::size_t> pick(0, m_arms.size() - 1);
    return pick(m_rng);
}

void Policy::update(std::size_t arm, double reward)
{
    if (arm >= m_arms.size()) {
        throw InvalidArgument("update on arm " + std::to_string(arm) + " out of range for " +
                              std::to_string(m_arms.size()) + " arms");
    }
    m_arms[arm].pulls += 1;
    m_arms[arm].reward_sum += reward;
    m_t += 1;
}

void Policy::scale_rewards(double factor)
{
    if (!(factor > 0.0) || !std::isfinite(factor)) {
        throw InvalidArgument("reward scale factor must be positive and finite");
    }
    for (auto &stats : m_arms) {
        stats.reward_sum *= factor;
    }
}

}  // namespace energyucb
