// Copyright 2026 The energyucb Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "energyucb/calibration.hpp"
#include "energyucb/error.hpp"
#include "energyucb/experiment.hpp"
#include "energyucb/metrics.hpp"
#include "energyucb/profile.hpp"
#include "energyucb/simulator.hpp"
#include "energyucb/trace.hpp"

namespace fs = std::filesystem;
using namespace energyucb;

namespace {

struct RunOptions {
    std::string config_path;
    std::vector<std::string> profiles;
    std::optional<std::uint64_t> seed_count;
    std::string out;
    std::vector<std::string> policies;
    bool no_normalize = false;
    bool plots = false;
    std::optional<std::size_t> jobs;
};

int do_run(const RunOptions &opt)
{
    ExperimentConfig cfg;
    const ExperimentConfig defaults;
    if (!opt.config_path.empty()) {
        cfg = load_config(opt.config_path);
    }
    for (const auto &p : opt.profiles) {
        cfg.profiles.emplace_back(p);
    }
    if (!opt.policies.empty()) {
        cfg.policies.clear();
        for (const auto &p : opt.policies) {
            cfg.policies.push_back(PolicySpec::parse(p));
        }
    }
    if (opt.seed_count) {
        cfg.seeds.clear();
        for (std::uint64_t s = 0; s < *opt.seed_count; ++s) {
            cfg.seeds.push_back(s);
        }
    }
    if (opt.no_normalize) {
        cfg.normalization = Normalization::none;
    }
    if (opt.plots) {
        cfg.plots = true;
    }
    if (opt.jobs) {
        cfg.jobs = *opt.jobs;
    }
    if (!opt.out.empty()) {
        cfg.output_dir = opt.out;
    }
    else if (const char *env = std::getenv(kOutputDirEnv);
             env != nullptr && *env != '\0' && cfg.output_dir == defaults.output_dir) {
        cfg.output_dir = env;
    }

    const auto report = run_experiment(cfg);
    for (const auto &app : report.applications) {
        const auto *ucb = report.find(app, policy_label(PolicyKind::energy_ucb));
        if (ucb != nullptr) {
            std::printf("%-14s energy_ucb %10.3f MJ  %8.2f s\n", app.c_str(),
                        ucb->summary.mean_energy_j / 1e6, ucb->summary.mean_exec_time_s);
        }
    }
    std::printf("wrote %zu files to %s\n", report.files.size(), cfg.output_dir.string().c_str());
    return 0;
}

void emit_profile(const ApplicationProfile &profile, const std::string &out)
{
    if (out.empty() || out == "-") {
        write_profile(std::cout, profile);
    }
    else {
        write_profile_file(out, profile);
    }
}

int do_calibrate(const std::string &input, const std::string &out)
{
    const auto calib = read_calibration_file(input);
    const auto model = fit_power_model(calib);
    const auto profile = calibrate_profile(calib);
    std::fprintf(stderr, "%s: reference power %.0f W at %s GHz, static share %.4f\n",
                 profile.name.c_str(), model.ref_power_w, format_ghz(model.ref_freq_ghz).c_str(),
                 model.static_fraction);
    emit_profile(profile, out);
    return 0;
}

int do_ingest(const std::vector<std::string> &inputs, const std::string &name,
              const std::string &out)
{
    std::vector<std::vector<TraceRecord>> traces;
    for (const auto &path : inputs) {
        traces.push_back(read_trace_file(path));
    }
    emit_profile(fit_profile(traces, name), out);
    return 0;
}

int do_oracle(const std::string &path, std::size_t samples, std::uint64_t seed, bool no_normalize)
{
    const auto profile = read_profile_file(path);
    RewardConfig cfg;
    if (no_normalize) {
        cfg.normalization = Normalization::none;
    }
    const auto truth = oracle_truth(profile, cfg, samples, seed);
    std::printf("# %s  samples=%zu seed=%llu normalization=%s scale=%.9g\n", profile.name.c_str(),
                samples, static_cast<unsigned long long>(seed),
                std::string(to_string(cfg.normalization)).c_str(), truth.scale);
    std::printf("arm,freq_ghz,mean_reward,gap\n");
    for (std::size_t i = 0; i < truth.mean_reward.size(); ++i) {
        std::printf("%zu,%s,%.9g,%.9g%s\n", i, format_ghz(profile.freqs[i]).c_str(),
                    truth.mean_reward[i], truth.best_mean - truth.mean_reward[i],
                    i == truth.best_arm ? ",best" : "");
    }
    return 0;
}

int do_trace(const std::string &path, double ghz, std::uint64_t seed, const std::string &out)
{
    const auto profile = read_profile_file(path);
    const auto arm = profile.freqs.find(ghz);
    if (!arm) {
        throw InvalidArgument("profile '" + profile.name + "' has no " + format_ghz(ghz) +
                              " GHz arm");
    }
    const auto samples = simulate_static_counters(profile, *arm, seed);
    const auto records = to_trace(samples, profile.freqs[*arm]);
    if (out.empty() || out == "-") {
        write_trace(std::cout, records);
    }
    else {
        write_trace_file(out, records);
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Bandit-driven GPU frequency selection: simulator and experiment runner"};
    app.set_version_flag("--version", std::string(library_version()));
    app.require_subcommand(1);

    RunOptions run;
    auto *run_cmd = app.add_subcommand("run", "Sweep applications x policies x seeds");
    run_cmd->add_option("-c,--config", run.config_path, "JSON experiment config")
        ->check(CLI::ExistingFile);
    run_cmd->add_option("--profile", run.profiles, "Extra profile file (repeatable)")
        ->check(CLI::ExistingFile);
    run_cmd->add_option("--seed-count", run.seed_count, "Use seeds 0..N-1")
        ->check(CLI::PositiveNumber);
    run_cmd->add_option("-o,--out", run.out,
                        std::string("Output directory (default: $") + kOutputDirEnv +
                            ", then the config value)");
    run_cmd->add_option("--policy", run.policies,
                        "Policy spec, replaces the config list (repeatable)");
    run_cmd->add_flag("--no-normalize", run.no_normalize, "Use raw rewards");
    run_cmd->add_flag("--plots", run.plots, "Also write regret/<app>.svg");
    run_cmd->add_option("-j,--jobs", run.jobs, "Worker threads")->check(CLI::PositiveNumber);

    std::string calib_in;
    std::string calib_out;
    auto *calib_cmd =
        app.add_subcommand("calibrate", "Build a profile from per-frequency energy totals");
    calib_cmd->add_option("input", calib_in, "Calibration file")
        ->required()
        ->check(CLI::ExistingFile);
    calib_cmd->add_option("-o,--out", calib_out, "Profile output path (default stdout)");

    std::vector<std::string> ingest_in;
    std::string ingest_name;
    std::string ingest_out;
    auto *ingest_cmd = app.add_subcommand("ingest", "Fit a profile from counter traces");
    ingest_cmd->add_option("traces", ingest_in, "Trace CSV files, one per frequency")
        ->required()
        ->check(CLI::ExistingFile);
    ingest_cmd->add_option("-n,--name", ingest_name, "Application name")->required();
    ingest_cmd->add_option("-o,--out", ingest_out, "Profile output path (default stdout)");

    std::string oracle_in;
    std::size_t oracle_samples = 2000;
    std::uint64_t oracle_seed = ExperimentConfig{}.oracle_seed;
    bool oracle_raw = false;
    auto *oracle_cmd = app.add_subcommand("oracle", "Print per-arm mean rewards of a profile");
    oracle_cmd->add_option("profile", oracle_in, "Profile file")
        ->required()
        ->check(CLI::ExistingFile);
    oracle_cmd->add_option("--samples", oracle_samples, "Monte-Carlo samples per arm")
        ->check(CLI::Range(kMinOracleSamples, std::size_t{100000000}));
    oracle_cmd->add_option("--seed", oracle_seed, "Sampling seed");
    oracle_cmd->add_flag("--no-normalize", oracle_raw, "Use raw rewards");

    std::string trace_in;
    double trace_ghz = 0.0;
    std::uint64_t trace_seed = 0;
    std::string trace_out;
    auto *trace_cmd =
        app.add_subcommand("trace", "Simulate a static-frequency run and write its trace");
    trace_cmd->add_option("profile", trace_in, "Profile file")
        ->required()
        ->check(CLI::ExistingFile);
    trace_cmd->add_option("-f,--freq", trace_ghz, "Frequency in GHz")->required();
    trace_cmd->add_option("--seed", trace_seed, "Noise seed");
    trace_cmd->add_option("-o,--out", trace_out, "Trace output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            if (run.config_path.empty() && run.profiles.empty()) {
                throw InvalidArgument("run needs --config or --profile");
            }
            return do_run(run);
        }
        if (*calib_cmd) {
            return do_calibrate(calib_in, calib_out);
        }
        if (*ingest_cmd) {
            return do_ingest(ingest_in, ingest_name, ingest_out);
        }
        if (*oracle_cmd) {
            return do_oracle(oracle_in, oracle_samples, oracle_seed, oracle_raw);
        }
        if (*trace_cmd) {
            return do_trace(trace_in, trace_ghz, trace_seed, trace_out);
        }
    }
    catch (const std::exception &ex) {
        std::fprintf(stderr, "energyucb: error: %s\n", ex.what());
        return 1;
    }
    return 0;
}
