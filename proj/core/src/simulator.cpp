// Copyright 2026 The energyucb Authors
// SPDX-License-Identifier: Apache-2.0

#include "energyucb/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "energyucb/error.hpp"

namespace energyucb {

CounterSample step_counters(const ApplicationProfile &profile, std::size_t arm,
                            const CounterSample &prev, std::mt19937_64 &rng)
{
    const auto &point = profile.points.at(arm);
    double power = point.power_mean_w;
    if (point.power_std_w > 0.0) {
        std::normal_distribution<double> noise(point.power_mean_w, point.power_std_w);
        power = std::max(0.0, noise(rng));
    }
    const double step = profile.step_s;
    CounterSample next;
    next.timestamp_s = prev.timestamp_s + step;
    next.energy_j = prev.energy_j + power * step;
    next.core_active_s = prev.core_active_s + point.core_util * step;
    next.uncore_active_s = prev.uncore_active_s + point.uncore_util * step;
    return next;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept
{
    // splitmix64 finalizer over (seed, stream)
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

EpisodeResult run_episode(const ApplicationProfile &profile, Policy &policy,
                          const RewardConfig &reward_cfg, std::uint64_t seed,
                          const EpisodeOptions &options)
{
    profile.validate();
    const std::size_t k = profile.freqs.size();
    if (policy.arm_count() != k) {
        throw InvalidArgument("policy has " + std::to_string(policy.arm_count()) +
                              " arms but profile '" + profile.name + "' has " +
                              std::to_string(k) + " frequencies");
    }
    double max_exec = 0.0;
    for (const auto &point : profile.points) {
        max_exec = std::max(max_exec, point.exec_time_s);
    }
    const std::uint64_t cap = options.step_cap.value_or(
        static_cast<std::uint64_t>(std::ceil(10.0 * max_exec / profile.step_s)));

    EpisodeResult result;
    result.profile = profile.name;
    result.policy = std::string(to_string(policy.kind()));
    result.seed = seed;
    result.history.reserve(static_cast<std::size_t>(std::ceil(max_exec / profile.step_s)) + 1);

    std::mt19937_64 rng(seed);
    RewardNormalizer normalizer(k, reward_cfg.normalization);
    double factor = 1.0;
    CounterSample prev;
    if (options.counter_sink) {
        options.counter_sink(prev);
    }

    double remaining = 1.0;
    while (remaining > kProgressTolerance) {
        if (result.history.size() >= cap) {
            throw Error("profile '" + profile.name + "' did not complete within " +
                        std::to_string(cap) + " steps");
        }
        const std::uint64_t t = policy.step();
        const std::size_t arm = policy.select_arm();
        const CounterSample next = step_counters(profile, arm, prev, rng);
        const StepObservation obs = diff_counters(prev, next);
        const double raw = compute_reward(obs, reward_cfg.guard);

        const bool scale_fixed_now = normalizer.observe(arm, raw);
        const double reward = (normalizer.ready() && !scale_fixed_now) ? raw * factor : raw;
        policy.update(arm, reward);

        const double progress = profile.progress_per_step(arm);
        result.history.push_back({t, arm, reward, obs.energy_j, progress});
        remaining -= progress;

        if (scale_fixed_now) {
            factor = 1.0 / normalizer.scale();
            policy.scale_rewards(factor);
            for (auto &record : result.history) {
                record.reward *= factor;
            }
        }
        if (options.counter_sink) {
            options.counter_sink(next);
        }
        prev = next;
    }

    result.steps = result.history.size();
    result.total_energy_j = prev.energy_j;
    result.exec_time_s = static_cast<double>(result.steps) * profile.step_s;
    return result;
}

std::vector<CounterSample> simulate_static_counters(const ApplicationProfile &profile,
                                                    std::size_t arm, std::uint64_t seed)
{
    PolicyParams params;
    params.static_arm = arm;
    Policy policy(PolicyKind::static_arm, profile.freqs.size(), params);
    std::vector<CounterSample> samples;
    EpisodeOptions options;
    options.counter_sink = [&samples](const CounterSample &s) { samples.push_back(s); };
    run_episode(profile, policy, RewardConfig{kUtilizationFloor, Normalization::none}, seed,
                options);
    return samples;
}

}  // namespace energyucb
