// Copyright 2026 The energyucb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "energyucb/bandit.hpp"
#include "energyucb/metrics.hpp"
#include "energyucb/profile.hpp"
#include "energyucb/reward.hpp"

namespace energyucb {

/// "energy_ucb", "epsilon_greedy", "random", "round_robin", "static:<GHz>" or
/// "static:all" (one static policy per frequency of each profile).
struct PolicySpec {
    PolicyKind kind = PolicyKind::energy_ucb;
    std::optional<double> static_ghz;
    bool all_static = false;

    static PolicySpec parse(std::string_view text);
    std::string to_string() const;
};

/// Table row label of a concrete policy, e.g. "energy_ucb" or "static@1.6GHz".
std::string policy_label(PolicyKind kind, std::optional<double> static_ghz = std::nullopt);

inline constexpr const char *kOutputDirEnv = "ENERGYUCB_OUT_DIR";

struct ExperimentConfig {
    std::vector<std::filesystem::path> profiles;
    std::vector<PolicySpec> policies;
    std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    /// Overrides every profile's control interval when set.
    std::optional<double> step_s;
    std::uint32_t cycles = 4;
    double alpha = 1.0;
    double epsilon = 0.10;
    double guard = kUtilizationFloor;
    Normalization normalization = Normalization::spread;
    std::size_t oracle_samples = 2000;
    std::uint64_t oracle_seed = 20240601;
    std::filesystem::path output_dir = "energyucb-out";
    bool plots = false;
    std::size_t jobs = 1;

    /// Throws InvalidArgument on empty seeds or policies, nonpositive guard, ...
    void validate() const;
};

/// Reads the JSON config schema described in docs/formats.md. Relative
/// profile paths resolve against the config file's directory.
ExperimentConfig load_config(const std::filesystem::path &path);
ExperimentConfig parse_config(std::string_view json_text,
                              const std::filesystem::path &base_dir = {});

/// Per (application, policy) outcome of a sweep.
struct CellSummary {
    TrialSummary summary;
    /// Mean and std of cumulative regret over the common step prefix of all seeds.
    std::vector<double> regret_mean;
    std::vector<double> regret_std;
};

struct TrialRecord {
    std::uint64_t seed = 0;
    double energy_j = 0.0;
    double exec_time_s = 0.0;
    std::uint64_t steps = 0;
    double final_regret = 0.0;
};

struct ExperimentReport {
    std::vector<std::string> applications;
    std::vector<std::string> policies;
    std::vector<CellSummary> cells;  // application-major
    std::vector<std::vector<TrialRecord>> trials;  // parallel to cells
    std::vector<std::filesystem::path> files;

    const CellSummary *find(std::string_view application, std::string_view policy) const;
};

/// Loads profiles, sweeps application x policy x seed, and writes
/// energy_table.csv, exec_time.csv, trials.csv, regret/*.csv and
/// manifest.json (plus regret/*.svg with plots on). Outputs depend only on
/// the config, seeds and profile files, not on `jobs`.
ExperimentReport run_experiment(const ExperimentConfig &config);

/// Same sweep on already-loaded profiles without touching the filesystem.
ExperimentReport run_sweep(const ExperimentConfig &config,
                           const std::vector<ApplicationProfile> &profiles);

std::string_view library_version() noexcept;

}  // namespace energyucb
