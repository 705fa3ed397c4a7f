// Copyright 2026 The energyucb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "energyucb/frequency_set.hpp"
#include "energyucb/profile.hpp"

namespace energyucb {

/// Static share of reference power used when no power points are supplied.
inline constexpr double kDefaultStaticFraction = 0.75;

/// Synthetic utilization curves:
///   core_util(f)   = core_util_at_max * (f / f_max)^core_exponent
///   uncore_util(f) = uncore_util_at_max * exec_time(f_max) / exec_time(f)
/// The uncore (copy engine) load follows the application's progress rate.
struct UtilizationModel {
    double core_util_at_max = 0.9;
    double core_exponent = 0.0;
    double uncore_util_at_max = 0.6;
};

/// Per-application inputs: total energy at every static frequency plus one
/// reference operating point.
struct CalibrationInput {
    std::string name;
    std::vector<double> freqs_ghz;
    std::vector<double> energy_mj;
    double ref_freq_ghz = 0.0;
    std::optional<double> ref_power_w;
    std::optional<double> ref_time_s;
    /// Static power share prior; fitted from power_points when absent.
    std::optional<double> static_fraction;
    /// Extra (GHz, W) measurements used to fit the static share.
    std::vector<std::pair<double, double>> power_points;
    /// Explicit (core, uncore) utilization per frequency; overrides the model.
    std::vector<std::pair<double, double>> utilization;
    UtilizationModel util_model;
    /// Per-step power standard deviation as a fraction of mean power.
    double power_noise = 0.02;
    double step_s = 0.01;
};

/// power(f) = P_ref * (s + (1 - s) * (f / f_ref)^3)
struct PowerModel {
    double ref_power_w = 0.0;
    double ref_freq_ghz = 0.0;
    double static_fraction = 0.0;

    double power_w(double ghz) const noexcept;
};

/// Least-squares static share through the reference point.
double fit_static_fraction(double ref_freq_ghz, double ref_power_w,
                           const std::vector<std::pair<double, double>> &power_points);

/// Interval of static shares in [0, 1) for which exec_time = E / power is
/// non-increasing in frequency. Empty when no share works.
std::optional<std::pair<double, double>>
monotone_static_fraction_range(const std::vector<double> &freqs_ghz,
                               const std::vector<double> &energy_j, double ref_freq_ghz);

/// The power model actually used for an input (after the monotonicity cap).
PowerModel fit_power_model(const CalibrationInput &input);

/// Builds a profile whose zero-noise static runs consume exactly energy_mj[i]
/// (up to one step of quantization). Throws ValidationError when no
/// consistent model exists.
ApplicationProfile calibrate_profile(const CalibrationInput &input);

CalibrationInput read_calibration(std::istream &in, const std::string &source = "<calibration>");
CalibrationInput read_calibration_file(const std::filesystem::path &path);

}  // namespace energyucb
