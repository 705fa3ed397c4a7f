// Copyright 2026 The energyucb Authors
// SPDX-License-Identifier: Apache-2.0

#include "energyucb/reward.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "energyucb/error.hpp"
#include "text_format.hpp"

namespace energyucb {

StepObservation diff_counters(const CounterSample &a, const CounterSample &b)
{
    const double duration = b.timestamp_s - a.timestamp_s;
    if (!(duration > 0.0)) {
        throw ValidationError("counter samples must advance in time (duration " +
                              detail::format_double(duration) + " s)");
    }
    if (b.energy_j < a.energy_j) {
        throw ValidationError("energy counter regressed");
    }
    if (b.core_active_s < a.core_active_s) {
        throw ValidationError("core active-time counter regressed");
    }
    if (b.uncore_active_s < a.uncore_active_s) {
        throw ValidationError("uncore active-time counter regressed");
    }
    StepObservation obs;
    obs.duration_s = duration;
    obs.energy_j = b.energy_j - a.energy_j;
    obs.core_util = std::clamp((b.core_active_s - a.core_active_s) / duration, 0.0, 1.0);
    obs.uncore_util = std::clamp((b.uncore_active_s - a.uncore_active_s) / duration, 0.0, 1.0);
    return obs;
}

double compute_reward(const StepObservation &obs, double guard)
{
    if (!(guard > 0.0)) {
        throw InvalidArgument("utilization guard must be positive");
    }
    if (!(obs.energy_j >= 0.0)) {
        throw InvalidArgument("step energy must be nonnegative");
    }
    if (!(obs.core_util >= 0.0 && obs.core_util <= 1.0 && obs.uncore_util >= 0.0 &&
          obs.uncore_util <= 1.0)) {
        throw InvalidArgument("utilizations must lie in [0, 1]");
    }
    if (obs.energy_j == 0.0 || obs.core_util == 0.0) {
        return 0.0;
    }
    return -obs.energy_j * obs.core_util / std::max(obs.uncore_util, guard);
}

std::string_view to_string(Normalization mode) noexcept
{
    switch (mode) {
        case Normalization::none:
            return "none";
        case Normalization::spread:
            return "spread";
        case Normalization::mean_abs:
            return "mean_abs";
    }
    return "unknown";
}

std::optional<Normalization> parse_normalization(std::string_view name) noexcept
{
    if (name == "none" || name == "off") {
        return Normalization::none;
    }
    if (name == "spread" || name == "range" || name == "on") {
        return Normalization::spread;
    }
    if (name == "mean_abs") {
        return Normalization::mean_abs;
    }
    return std::nullopt;
}

double normalization_scale(std::span<const double> first_rewards, Normalization mode)
{
    if (mode == Normalization::none || first_rewards.empty()) {
        return 1.0;
    }
    double mean_abs = 0.0;
    for (const double r : first_rewards) {
        mean_abs += std::abs(r);
    }
    mean_abs /= static_cast<double>(first_rewards.size());
    if (mode == Normalization::spread) {
        const auto [lo, hi] = std::minmax_element(first_rewards.begin(), first_rewards.end());
        const double spread = *hi - *lo;
        if (spread > 0.0) {
            return spread;
        }
    }
    return mean_abs > 0.0 ? mean_abs : 1.0;
}

RewardNormalizer::RewardNormalizer(std::size_t arm_count, Normalization mode)
    : m_mode(mode), m_first(arm_count), m_ready(mode == Normalization::none)
{
}

bool RewardNormalizer::observe(std::size_t arm, double raw_reward)
{
    if (m_ready) {
        return false;
    }
    if (arm >= m_first.size()) {
        throw InvalidArgument("normalizer arm out of range");
    }
    if (m_first[arm]) {
        return false;
    }
    m_first[arm] = raw_reward;
    if (++m_seen < m_first.size()) {
        return false;
    }
    std::vector<double> firsts;
    firsts.reserve(m_first.size());
    for (const auto &value : m_first) {
        firsts.push_back(*value);
    }
    m_scale = normalization_scale(firsts, m_mode);
    m_ready = true;
    return true;
}

}  // namespace energyucb
