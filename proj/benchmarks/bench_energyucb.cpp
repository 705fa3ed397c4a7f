// Copyright 2026 The energyucb Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <sstream>

#include "energyucb/bandit.hpp"
#include "energyucb/metrics.hpp"
#include "energyucb/simulator.hpp"
#include "energyucb/trace.hpp"

using namespace energyucb;

namespace {

ApplicationProfile nine_arm_profile()
{
    const auto freqs = FrequencySet::pvc_default();
    std::vector<FrequencyPoint> points;
    for (std::size_t i = 0; i < freqs.size(); ++i) {
        const double x = freqs[i] / freqs.max();
        const double power = 2.0e6 * (0.75 + 0.25 * x * x * x);
        points.push_back({power, 0.02 * power, 0.9 * x, 0.6 * x, 60.0 / (0.5 + 0.5 * x)});
    }
    ApplicationProfile profile{"bench", freqs, points, 0.01};
    profile.validate();
    return profile;
}

void BM_SelectUpdate(benchmark::State &state)
{
    const auto kind = static_cast<PolicyKind>(state.range(0));
    PolicyParams params;
    params.seed = 1;
    Policy policy(kind, 9, params);
    double reward = -1.0;
    for (auto _ : state) {
        const std::size_t arm = policy.select_arm();
        policy.update(arm, reward);
        reward = reward < -2.0 ? -1.0 : reward - 0.01 * static_cast<double>(arm);
        benchmark::DoNotOptimize(arm);
    }
    state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_SelectUpdate)
    ->Arg(static_cast<int>(PolicyKind::energy_ucb))
    ->Arg(static_cast<int>(PolicyKind::epsilon_greedy))
    ->Arg(static_cast<int>(PolicyKind::random))
    ->Arg(static_cast<int>(PolicyKind::round_robin));

void BM_RunEpisode(benchmark::State &state)
{
    const auto profile = nine_arm_profile();
    std::uint64_t seed = 0;
    std::uint64_t steps = 0;
    for (auto _ : state) {
        Policy policy(PolicyKind::energy_ucb, profile.freqs.size(), {});
        const auto episode = run_episode(profile, policy, {}, seed++);
        steps += episode.steps;
        benchmark::DoNotOptimize(episode.total_energy_j);
    }
    state.counters["steps/s"] =
        benchmark::Counter(static_cast<double>(steps), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_RunEpisode)->Unit(benchmark::kMillisecond);

void BM_OracleTruth(benchmark::State &state)
{
    const auto profile = nine_arm_profile();
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            oracle_truth(profile, {}, static_cast<std::size_t>(state.range(0)), 7));
    }
}
BENCHMARK(BM_OracleTruth)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_ParseTrace(benchmark::State &state)
{
    const auto profile = nine_arm_profile();
    const auto records = to_trace(simulate_static_counters(profile, 8, 3), profile.freqs[8]);
    std::ostringstream out;
    write_trace(out, records);
    const std::string text = out.str();
    for (auto _ : state) {
        std::istringstream in(text);
        benchmark::DoNotOptimize(parse_trace(in));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ParseTrace)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
