// Copyright 2026 The energyucb Authors
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "energyucb/bandit.hpp"
#include "energyucb/experiment.hpp"
#include "energyucb/metrics.hpp"
#include "energyucb/reward.hpp"
#include "energyucb/simulator.hpp"

namespace energyucb::testing {

namespace fs = std::filesystem;

ApplicationProfile make_profile(const std::string &name, std::vector<double> ghz,
                                std::vector<FrequencyPoint> points, double step_s)
{
    ApplicationProfile profile{name, FrequencySet(std::move(ghz)), std::move(points), step_s};
    profile.validate();
    return profile;
}

ApplicationProfile toy_profile()
{
    // Dyadic step and utilizations keep every counter difference exact.
    return make_profile("toy", {1.0, 1.2, 1.4},
                        {
                            {2000.0, 0.0, 0.875, 0.4375, 12.0},
                            {2500.0, 0.0, 0.75, 0.75, 10.0},
                            {3000.0, 0.0, 0.875, 0.5, 8.0},
                        },
                        0.015625);
}

double analytic_reward(const FrequencyPoint &point, double step_s, double guard)
{
    const double energy = point.power_mean_w * step_s;
    return -energy * point.core_util / std::max(point.uncore_util, guard);
}

ApplicationProfile random_profile(std::mt19937_64 &rng, std::size_t max_arms, bool noisy,
                                  double max_exec_s)
{
    std::uniform_int_distribution<std::size_t> arms_dist(2, std::max<std::size_t>(2, max_arms));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t k = arms_dist(rng);

    std::vector<double> ghz;
    std::vector<FrequencyPoint> points;
    double exec = 0.5 + (max_exec_s - 0.5) * unit(rng);
    double power = 500.0 + 1500.0 * unit(rng);
    for (std::size_t i = 0; i < k; ++i) {
        ghz.push_back(std::round(8.0 + static_cast<double>(i)) / 10.0);
        FrequencyPoint p;
        p.power_mean_w = power;
        p.power_std_w = noisy ? power * 0.05 * unit(rng) : 0.0;
        p.core_util = 0.05 + 0.95 * unit(rng);
        p.uncore_util = 0.05 + 0.95 * unit(rng);
        p.exec_time_s = exec;
        points.push_back(p);
        exec *= 0.7 + 0.3 * unit(rng);
        exec = std::max(exec, 0.1);
        power *= 1.0 + 0.2 * unit(rng);
    }
    return make_profile("random", std::move(ghz), std::move(points), 0.01);
}

double grid_reward(std::mt19937_64 &rng)
{
    std::uniform_int_distribution<int> dist(0, 8 * 1024);
    return -static_cast<double>(dist(rng)) / 1024.0;
}

namespace {

constexpr PolicyKind kAllKinds[] = {PolicyKind::energy_ucb, PolicyKind::epsilon_greedy,
                                    PolicyKind::random, PolicyKind::round_robin,
                                    PolicyKind::static_arm};

void fail(PropertyResult &result, const std::string &why)
{
    if (result.ok) {
        result.detail = why;
    }
    result.ok = false;
}

PolicyParams random_params(std::mt19937_64 &rng, std::size_t k)
{
    PolicyParams params;
    params.cycles = static_cast<std::uint32_t>(std::uniform_int_distribution<int>(1, 4)(rng));
    params.alpha = std::uniform_real_distribution<double>(0.25, 2.0)(rng);
    params.static_arm = std::uniform_int_distribution<std::size_t>(0, k - 1)(rng);
    params.seed = rng();
    return params;
}

std::string slurp(const fs::path &path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

PropertyResult check_exploration_schedule(std::uint64_t seed, std::size_t cases)
{
    PropertyResult result{"pure-exploration schedule"};
    std::mt19937_64 rng(seed);
    for (std::size_t c = 0; c < cases && result.ok; ++c, ++result.cases) {
        const std::size_t k = std::uniform_int_distribution<std::size_t>(2, 12)(rng);
        PolicyParams params;
        params.cycles = static_cast<std::uint32_t>(std::uniform_int_distribution<int>(0, 6)(rng));
        Policy policy(PolicyKind::energy_ucb, k, params);
        const std::size_t explore = params.cycles * k;
        for (std::size_t t = 1; t <= explore + 3 * k; ++t) {
            if ((t <= explore) != policy.in_pure_exploration()) {
                fail(result, "in_pure_exploration() wrong at t=" + std::to_string(t));
                break;
            }
            const std::size_t arm = policy.select_arm();
            if (t <= explore && arm != (t - 1) % k) {
                fail(result, "K=" + std::to_string(k) + " C=" + std::to_string(params.cycles) +
                                 ": arm " + std::to_string(arm) + " at t=" + std::to_string(t));
                break;
            }
            policy.update(arm, grid_reward(rng));
        }
    }
    return result;
}

PropertyResult check_pull_conservation(std::uint64_t seed, std::size_t cases)
{
    PropertyResult result{"pull-count conservation"};
    std::mt19937_64 rng(seed);
    for (std::size_t c = 0; c < cases && result.ok; ++c, ++result.cases) {
        const auto profile = random_profile(rng);
        const auto kind = kAllKinds[c % std::size(kAllKinds)];
        Policy policy(kind, profile.freqs.size(), random_params(rng, profile.freqs.size()));
        const auto episode = run_episode(profile, policy, RewardConfig{}, rng());
        std::vector<std::uint64_t> counted(profile.freqs.size(), 0);
        for (const auto &record : episode.history) {
            ++counted[record.arm];
        }
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < counted.size(); ++i) {
            total += policy.arms()[i].pulls;
            if (policy.arms()[i].pulls != counted[i]) {
                fail(result, std::string(to_string(kind)) + ": pull count of arm " +
                                 std::to_string(i) + " disagrees with history");
            }
        }
        if (total != episode.steps || episode.steps != episode.history.size() ||
            policy.step() != episode.steps + 1) {
            fail(result, std::string(to_string(kind)) + ": pulls " + std::to_string(total) +
                             " vs steps " + std::to_string(episode.steps));
        }
    }
    return result;
}

PropertyResult check_ucb_spot_values()
{
    PropertyResult result{"UCB spot values"};
    struct Spot {
        ArmStats stats;
        double t;
        double alpha;
        double expected;
    };
    // Expected values evaluated independently in double precision.
    const Spot spots[] = {
        {{1, 0.0}, 1.0, 1.0, 0.0},
        {{4, -8.0}, std::exp(4.0), 1.0, -1.0},
        {{10, -15.0}, 100.0, 0.5, -1.1606929787792444},
    };
    for (const auto &spot : spots) {
        ++result.cases;
        const double got = ucb_value(spot.stats, spot.t, spot.alpha);
        if (std::abs(got - spot.expected) > 1e-12) {
            std::ostringstream why;
            why.precision(17);
            why << "pulls=" << spot.stats.pulls << " t=" << spot.t << ": " << got << " != "
                << spot.expected;
            fail(result, why.str());
        }
    }
    return result;
}

PropertyResult check_reward_sign_and_scale(std::uint64_t seed, std::size_t cases)
{
    PropertyResult result{"reward nonpositivity and scale covariance"};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t c = 0; c < cases && result.ok; ++c, ++result.cases) {
        StepObservation obs{1e5 * unit(rng), unit(rng), unit(rng), 0.01};
        const double r = compute_reward(obs);
        if (r > 0.0) {
            fail(result, "positive reward");
        }
        const double factor = 100.0 * unit(rng) + 1e-3;
        StepObservation scaled = obs;
        scaled.energy_j *= factor;
        const double rs = compute_reward(scaled);
        if (std::abs(rs - factor * r) > 1e-12 * std::max(1.0, std::abs(factor * r))) {
            fail(result, "reward not linear in energy");
        }
    }
    return result;
}

PropertyResult check_counter_monotonicity(std::uint64_t seed, std::size_t cases)
{
    PropertyResult result{"counter monotonicity"};
    std::mt19937_64 rng(seed);
    for (std::size_t c = 0; c < cases && result.ok; ++c, ++result.cases) {
        const auto profile = random_profile(rng);
        std::uniform_int_distribution<std::size_t> arm_dist(0, profile.freqs.size() - 1);
        CounterSample prev;
        for (int step = 0; step < 300; ++step) {
            const auto next = step_counters(profile, arm_dist(rng), prev, rng);
            if (!(next.timestamp_s > prev.timestamp_s) || next.energy_j < prev.energy_j ||
                next.core_active_s < prev.core_active_s ||
                next.uncore_active_s < prev.uncore_active_s) {
                fail(result, "counter regressed at step " + std::to_string(step));
                break;
            }
            prev = next;
        }
    }
    return result;
}

PropertyResult check_progress_bounds(std::uint64_t seed, std::size_t cases)
{
    PropertyResult result{"progress conservation bounds"};
    std::mt19937_64 rng(seed);
    for (std::size_t c = 0; c < cases && result.ok; ++c, ++result.cases) {
        const auto profile = random_profile(rng);
        const auto kind = kAllKinds[c % std::size(kAllKinds)];
        Policy policy(kind, profile.freqs.size(), random_params(rng, profile.freqs.size()));
        const auto episode = run_episode(profile, policy, RewardConfig{}, rng());
        double done = 0.0;
        for (const auto &record : episode.history) {
            done += record.progress;
        }
        const double last = episode.history.back().progress;
        if (done < 1.0 - kProgressTolerance || done - last > 1.0 - kProgressTolerance) {
            fail(result, "accumulated progress " + std::to_string(done));
        }
        const double t_min = profile.points.back().exec_time_s;
        const double t_max = profile.points.front().exec_time_s;
        if (episode.exec_time_s < t_min - profile.step_s ||
            episode.exec_time_s > t_max + profile.step_s) {
            fail(result, "exec time " + std::to_string(episode.exec_time_s) +
                             " outside static range");
        }
    }
    return result;
}

PropertyResult check_regret_shape(std::uint64_t seed, std::size_t cases)
{
    PropertyResult result{"regret monotone and zero on oracle play"};
    std::mt19937_64 rng(seed);
    for (std::size_t c = 0; c < cases && result.ok; ++c, ++result.cases) {
        const auto profile = random_profile(rng);
        const RewardConfig cfg;
        const auto truth = oracle_truth(profile, cfg, kMinOracleSamples, rng());
        const auto kind = kAllKinds[c % 4];
        Policy policy(kind, profile.freqs.size(), random_params(rng, profile.freqs.size()));
        const auto series = cumulative_regret(run_episode(profile, policy, cfg, rng()), truth);
        for (std::size_t t = 1; t < series.size(); ++t) {
            if (series[t] < series[t - 1]) {
                fail(result, "regret decreased at step " + std::to_string(t + 1));
                break;
            }
        }
        PolicyParams params;
        params.static_arm = truth.best_arm;
        Policy oracle(PolicyKind::static_arm, profile.freqs.size(), params);
        const auto zero = cumulative_regret(run_episode(profile, oracle, cfg, rng()), truth);
        if (std::any_of(zero.begin(), zero.end(), [](double v) { return v != 0.0; })) {
            fail(result, "oracle play has nonzero regret");
        }
    }
    return result;
}

PropertyResult check_shift_invariance(std::uint64_t seed, std::size_t cases)
{
    PropertyResult result{"EnergyUCB argmax shift invariance"};
    std::mt19937_64 rng(seed);
    for (std::size_t c = 0; c < cases && result.ok; ++c, ++result.cases) {
        const std::size_t k = std::uniform_int_distribution<std::size_t>(2, 9)(rng);
        const auto params = random_params(rng, k);
        const double shift = std::uniform_int_distribution<int>(-64, 64)(rng) / 8.0;
        std::vector<double> offset(k);
        for (auto &o : offset) {
            o = grid_reward(rng);
        }
        Policy plain(PolicyKind::energy_ucb, k, params);
        Policy shifted(PolicyKind::energy_ucb, k, params);
        for (int step = 0; step < 400; ++step) {
            const std::size_t a = plain.select_arm();
            const std::size_t b = shifted.select_arm();
            if (a != b) {
                fail(result, "selections diverge at t=" + std::to_string(step + 1) +
                                 " with shift " + std::to_string(shift));
                break;
            }
            const double r = offset[a] + grid_reward(rng) / 8.0;
            plain.update(a, r);
            shifted.update(b, r + shift);
        }
    }
    return result;
}

PropertyResult check_seed_determinism(std::uint64_t seed, std::size_t cases)
{
    PropertyResult result{"seed determinism"};
    std::mt19937_64 rng(seed);
    const fs::path root = fs::temp_directory_path() /
                          ("energyucb-determinism-" + std::to_string(seed) + "-" +
                           std::to_string(std::random_device{}()));
    for (std::size_t c = 0; c < cases && result.ok; ++c, ++result.cases) {
        const auto profile = random_profile(rng, 5, true, 2.0);
        const fs::path dir = root / std::to_string(c);
        fs::create_directories(dir);
        write_profile_file(dir / "app.profile", profile);

        ExperimentConfig cfg;
        cfg.profiles = {dir / "app.profile"};
        for (const char *spec : {"energy_ucb", "epsilon_greedy", "random", "round_robin",
                                 "static:all"}) {
            cfg.policies.push_back(PolicySpec::parse(spec));
        }
        cfg.seeds = {rng() % 1000, rng() % 1000, rng() % 1000};
        cfg.oracle_samples = kMinOracleSamples;
        cfg.plots = true;
        cfg.output_dir = dir / "a";
        cfg.jobs = 1;
        const auto first = run_experiment(cfg);
        cfg.output_dir = dir / "b";
        cfg.jobs = 3;
        run_experiment(cfg);
        for (const auto &file : first.files) {
            const auto rel = fs::relative(file, dir / "a");
            if (slurp(file) != slurp(dir / "b" / rel)) {
                fail(result, "output " + rel.string() + " differs between runs");
                break;
            }
        }
    }
    std::error_code ec;
    fs::remove_all(root, ec);
    return result;
}

std::vector<PropertyResult> run_property_suite(std::uint64_t seed, std::size_t cases)
{
    return {
        check_exploration_schedule(seed, cases),
        check_pull_conservation(seed + 1, cases),
        check_ucb_spot_values(),
        check_reward_sign_and_scale(seed + 2, cases * 10),
        check_counter_monotonicity(seed + 3, cases),
        check_progress_bounds(seed + 4, cases),
        check_regret_shape(seed + 5, cases),
        check_shift_invariance(seed + 6, cases),
        check_seed_determinism(seed + 7, std::max<std::size_t>(1, cases / 20)),
    };
}

}  // namespace energyucb::testing
