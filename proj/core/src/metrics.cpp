// Copyright 2026 The energyucb Authors
// SPDX-License-Identifier: Apache-2.0

#include "energyucb/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "energyucb/error.hpp"

namespace energyucb {

std::pair<double, double> mean_and_std(std::span<const double> values)
{
    if (values.empty()) {
        throw InvalidArgument("mean of an empty sample");
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (*lo == *hi) {
        return {*lo, 0.0};
    }
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (const double v : values) {
        sum += v;
    }
    const double mean = sum / n;
    double ss = 0.0;
    for (const double v : values) {
        ss += (v - mean) * (v - mean);
    }
    return {mean, std::sqrt(ss / (n - 1.0))};
}

ArmTruth make_truth(std::vector<double> mean_reward, double scale)
{
    if (mean_reward.empty()) {
        throw InvalidArgument("truth needs at least one arm");
    }
    ArmTruth truth;
    truth.scale = scale;
    truth.best_mean = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < mean_reward.size(); ++i) {
        if (mean_reward[i] > truth.best_mean) {
            truth.best_mean = mean_reward[i];
            truth.best_arm = i;
        }
    }
    truth.mean_reward = std::move(mean_reward);
    return truth;
}

ArmTruth oracle_truth(const ApplicationProfile &profile, const RewardConfig &reward_cfg,
                      std::size_t n_samples, std::uint64_t seed)
{
    if (n_samples < kMinOracleSamples) {
        throw InvalidArgument("oracle needs at least " + std::to_string(kMinOracleSamples) +
                              " samples per arm");
    }
    profile.validate();
    std::mt19937_64 rng(seed);
    const CounterSample origin;
    std::vector<double> raw_means;
    raw_means.reserve(profile.freqs.size());
    for (std::size_t arm = 0; arm < profile.freqs.size(); ++arm) {
        double sum = 0.0;
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (std::size_t s = 0; s < n_samples; ++s) {
            const auto next = step_counters(profile, arm, origin, rng);
            const double r = compute_reward(diff_counters(origin, next), reward_cfg.guard);
            sum += r;
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        raw_means.push_back(lo == hi ? lo : sum / static_cast<double>(n_samples));
    }
    const double scale = normalization_scale(raw_means, reward_cfg.normalization);
    const double factor = 1.0 / scale;
    for (auto &mean : raw_means) {
        mean *= factor;
    }
    return make_truth(std::move(raw_means), scale);
}

std::vector<double> cumulative_regret(const EpisodeResult &episode, const ArmTruth &truth)
{
    std::vector<double> series;
    series.reserve(episode.history.size());
    double total = 0.0;
    for (const auto &record : episode.history) {
        if (record.arm >= truth.mean_reward.size()) {
            throw InvalidArgument("episode pulled arm " + std::to_string(record.arm) +
                                  " that the truth does not cover");
        }
        total += truth.best_mean - truth.mean_reward[record.arm];
        series.push_back(total);
    }
    return series;
}

TrialSummary aggregate_trials(std::span<const EpisodeResult> results)
{
    if (results.empty()) {
        throw InvalidArgument("aggregate_trials needs at least one result");
    }
    TrialSummary summary;
    summary.profile = results.front().profile;
    summary.policy = results.front().policy;
    summary.trials = results.size();
    std::vector<double> energy;
    std::vector<double> time;
    std::vector<double> regret;
    for (const auto &r : results) {
        if (r.profile != summary.profile || r.policy != summary.policy) {
            throw InvalidArgument("aggregate_trials mixes (" + summary.profile + ", " +
                                  summary.policy + ") with (" + r.profile + ", " + r.policy + ")");
        }
        energy.push_back(r.total_energy_j);
        time.push_back(r.exec_time_s);
        regret.push_back(r.regret.empty() ? 0.0 : r.regret.back());
    }
    std::tie(summary.mean_energy_j, summary.std_energy_j) = mean_and_std(energy);
    std::tie(summary.mean_exec_time_s, summary.std_exec_time_s) = mean_and_std(time);
    std::tie(summary.mean_final_regret, summary.std_final_regret) = mean_and_std(regret);
    return summary;
}

}  // namespace energyucb
