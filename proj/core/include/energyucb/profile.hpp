// Copyright 2026 The energyucb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "energyucb/frequency_set.hpp"

namespace energyucb {

/// Ground truth for one application at one static frequency.
struct FrequencyPoint {
    double power_mean_w = 0.0;
    double power_std_w = 0.0;
    double core_util = 0.0;
    double uncore_util = 0.0;
    /// Full-application time when the whole run stays at this frequency.
    double exec_time_s = 0.0;

    bool operator==(const FrequencyPoint &) const = default;
};

/// A simulated workload: one FrequencyPoint per arm.
struct ApplicationProfile {
    std::string name;
    FrequencySet freqs;
    std::vector<FrequencyPoint> points;
    double step_s = 0.01;

    /// Throws ValidationError when an invariant fails: positive power,
    /// utilizations in (0, 1], execution time non-increasing in frequency,
    /// per-step progress in (0, 1).
    void validate() const;

    /// Fraction of the application completed by one step at `arm`.
    double progress_per_step(std::size_t arm) const { return step_s / points.at(arm).exec_time_s; }

    /// Energy of a full static run at `arm`, in joules.
    double static_energy_j(std::size_t arm) const
    {
        return points.at(arm).power_mean_w * points.at(arm).exec_time_s;
    }

    bool operator==(const ApplicationProfile &) const = default;
};

/// Reads the plain-text profile format (see docs/formats.md).
ApplicationProfile read_profile(std::istream &in, const std::string &source = "<profile>");
ApplicationProfile read_profile_file(const std::filesystem::path &path);

void write_profile(std::ostream &out, const ApplicationProfile &profile);
void write_profile_file(const std::filesystem::path &path, const ApplicationProfile &profile);

}  // namespace energyucb
