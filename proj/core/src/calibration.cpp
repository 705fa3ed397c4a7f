// Copyright 2026 The energyucb Authors
// SPDX-License-Identifier: Apache-2.0

#include "energyucb/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "energyucb/error.hpp"
#include "text_format.hpp"

namespace energyucb {

namespace {

// Distance kept from the monotonicity bound so that adjacent arms do not end
// up with identical execution times.
constexpr double kMonotoneMargin = 0.005;

// Largest tolerated disagreement between ref_power and energy / ref_time.
constexpr double kRefPointTolerance = 0.05;

double cube_ratio(double ghz, double ref_ghz)
{
    const double r = ghz / ref_ghz;
    return r * r * r;
}

std::size_t reference_arm(const CalibrationInput &input)
{
    for (std::size_t i = 0; i < input.freqs_ghz.size(); ++i) {
        if (std::abs(input.freqs_ghz[i] - input.ref_freq_ghz) <= 1e-6) {
            return i;
        }
    }
    throw ValidationError("calibration '" + input.name + "': reference frequency " +
                          format_ghz(input.ref_freq_ghz) + " GHz has no energy entry");
}

void check_shape(const CalibrationInput &input)
{
    const std::string where = "calibration '" + input.name + "': ";
    if (input.freqs_ghz.size() != input.energy_mj.size()) {
        throw ValidationError(where + "need one energy per frequency");
    }
    if (!input.utilization.empty() && input.utilization.size() != input.freqs_ghz.size()) {
        throw ValidationError(where + "need one utilization pair per frequency");
    }
    for (const double e : input.energy_mj) {
        if (!(e > 0.0) || !std::isfinite(e)) {
            throw ValidationError(where + "energies must be positive");
        }
    }
    if (!(input.power_noise >= 0.0)) {
        throw ValidationError(where + "power_noise must be nonnegative");
    }
    if (!input.ref_power_w && !input.ref_time_s) {
        throw ValidationError(where + "need ref_power_w or ref_time_s");
    }
}

}  // namespace

double PowerModel::power_w(double ghz) const noexcept
{
    return ref_power_w * (static_fraction + (1.0 - static_fraction) * cube_ratio(ghz, ref_freq_ghz));
}

double fit_static_fraction(double ref_freq_ghz, double ref_power_w,
                           const std::vector<std::pair<double, double>> &power_points)
{
    // P_k / P_ref - x_k = s * (1 - x_k), solved for s in the least-squares sense.
    double num = 0.0;
    double den = 0.0;
    for (const auto &[ghz, watts] : power_points) {
        const double x = cube_ratio(ghz, ref_freq_ghz);
        const double y = watts / ref_power_w - x;
        const double z = 1.0 - x;
        num += y * z;
        den += z * z;
    }
    if (!(den > 0.0)) {
        throw ValidationError("static power share needs a power point away from the reference");
    }
    return num / den;
}

std::optional<std::pair<double, double>>
monotone_static_fraction_range(const std::vector<double> &freqs_ghz,
                               const std::vector<double> &energy_j, double ref_freq_ghz)
{
    // exec(lo) >= exec(hi) for every adjacent pair is linear in s:
    //   E_lo * (s + (1-s) x_hi) - E_hi * (s + (1-s) x_lo) >= 0
    double lo = 0.0;
    double hi = 1.0;
    for (std::size_t i = 0; i + 1 < freqs_ghz.size(); ++i) {
        const double x_lo = cube_ratio(freqs_ghz[i], ref_freq_ghz);
        const double x_hi = cube_ratio(freqs_ghz[i + 1], ref_freq_ghz);
        const double a = energy_j[i] * x_hi - energy_j[i + 1] * x_lo;
        const double b = energy_j[i] * (1.0 - x_hi) - energy_j[i + 1] * (1.0 - x_lo);
        if (b > 0.0) {
            lo = std::max(lo, -a / b);
        }
        else if (b < 0.0) {
            hi = std::min(hi, -a / b);
        }
        else if (a < 0.0) {
            return std::nullopt;
        }
    }
    if (lo > hi) {
        return std::nullopt;
    }
    return std::make_pair(lo, hi);
}

PowerModel fit_power_model(const CalibrationInput &input)
{
    check_shape(input);
    const std::string where = "calibration '" + input.name + "': ";
    const std::size_t ref = reference_arm(input);
    const double ref_energy_j = input.energy_mj[ref] * 1e6;

    double ref_power = 0.0;
    if (input.ref_time_s) {
        if (!(*input.ref_time_s > 0.0)) {
            throw ValidationError(where + "ref_time_s must be positive");
        }
        ref_power = ref_energy_j / *input.ref_time_s;
        if (input.ref_power_w &&
            std::abs(ref_power - *input.ref_power_w) > kRefPointTolerance * *input.ref_power_w) {
            throw ValidationError(where + "reference energy / time implies " +
                                  detail::format_double(ref_power) + " W, far from ref_power_w " +
                                  detail::format_double(*input.ref_power_w) + " W");
        }
    }
    else {
        ref_power = *input.ref_power_w;
    }
    if (!(ref_power > 0.0)) {
        throw ValidationError(where + "reference power must be positive");
    }

    double prior = kDefaultStaticFraction;
    if (input.static_fraction) {
        prior = *input.static_fraction;
    }
    else if (!input.power_points.empty()) {
        prior = fit_static_fraction(input.ref_freq_ghz, input.ref_power_w.value_or(ref_power),
                                    input.power_points);
    }

    std::vector<double> energy_j;
    for (const double e : input.energy_mj) {
        energy_j.push_back(e * 1e6);
    }
    const auto range = monotone_static_fraction_range(input.freqs_ghz, energy_j, input.ref_freq_ghz);
    if (!range) {
        throw ValidationError(where +
                              "no power model makes execution time non-increasing in frequency");
    }
    const auto [lo, hi] = *range;
    double share = prior;
    if (hi - kMonotoneMargin >= lo) {
        share = std::clamp(prior, lo, hi - kMonotoneMargin);
    }
    else {
        share = 0.5 * (lo + hi);
    }
    if (!(share >= 0.0 && share < 1.0)) {
        throw ValidationError(where + "fitted static power share " + detail::format_double(share) +
                              " is outside [0, 1)");
    }
    return PowerModel{ref_power, input.ref_freq_ghz, share};
}

ApplicationProfile calibrate_profile(const CalibrationInput &input)
{
    const PowerModel model = fit_power_model(input);
    FrequencySet freqs(input.freqs_ghz);
    const std::size_t k = freqs.size();

    std::vector<FrequencyPoint> points(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double power = model.power_w(freqs[i]);
        if (!(power > 0.0)) {
            throw ValidationError("calibration '" + input.name + "': nonpositive power at " +
                                  format_ghz(freqs[i]) + " GHz");
        }
        points[i].power_mean_w = power;
        points[i].power_std_w = input.power_noise * power;
        points[i].exec_time_s = input.energy_mj[i] * 1e6 / power;
    }

    const double fastest_exec = points[k - 1].exec_time_s;
    for (std::size_t i = 0; i < k; ++i) {
        if (!input.utilization.empty()) {
            points[i].core_util = input.utilization[i].first;
            points[i].uncore_util = input.utilization[i].second;
            continue;
        }
        const auto &m = input.util_model;
        points[i].core_util = m.core_util_at_max * std::pow(freqs[i] / freqs.max(), m.core_exponent);
        points[i].uncore_util = m.uncore_util_at_max * fastest_exec / points[i].exec_time_s;
    }

    ApplicationProfile profile{input.name, std::move(freqs), std::move(points), input.step_s};
    profile.validate();
    return profile;
}

CalibrationInput read_calibration(std::istream &in, const std::string &source)
{
    const auto doc = detail::parse_keyed_document(in, source);
    doc.require_known_keys({"format", "name", "step_s", "ref_freq_ghz", "ref_power_w", "ref_time_s",
                            "static_fraction", "power_point", "power_noise", "core_util_at_max",
                            "core_util_exponent", "uncore_util_at_max"});
    if (const auto *format = doc.find("format");
        format && format->value != "energyucb-calibration/1") {
        throw ParseError(source, format->line,
                         "unsupported calibration format '" + format->value + "'");
    }
    CalibrationInput input;
    input.name = doc.text("name");
    input.step_s = doc.optional_number("step_s").value_or(0.01);
    input.ref_freq_ghz = doc.number("ref_freq_ghz");
    input.ref_power_w = doc.optional_number("ref_power_w");
    input.ref_time_s = doc.optional_number("ref_time_s");
    input.static_fraction = doc.optional_number("static_fraction");
    input.power_noise = doc.optional_number("power_noise").value_or(input.power_noise);
    auto &m = input.util_model;
    m.core_util_at_max = doc.optional_number("core_util_at_max").value_or(m.core_util_at_max);
    m.core_exponent = doc.optional_number("core_util_exponent").value_or(m.core_exponent);
    m.uncore_util_at_max = doc.optional_number("uncore_util_at_max").value_or(m.uncore_util_at_max);

    for (const auto *entry : doc.find_all("power_point")) {
        const auto cells = detail::split_whitespace(entry->value);
        const auto ghz = cells.size() == 2 ? detail::parse_double(cells[0]) : std::nullopt;
        const auto watts = cells.size() == 2 ? detail::parse_double(cells[1]) : std::nullopt;
        if (!ghz || !watts) {
            throw ParseError(source, entry->line, "power_point expects '<GHz> <W>'");
        }
        input.power_points.emplace_back(*ghz, *watts);
    }

    if (doc.columns.empty()) {
        throw ParseError(source, std::nullopt, "calibration has no energy table");
    }
    const std::size_t freq_col = doc.column("freq_ghz");
    const std::size_t energy_col = doc.column("energy_mj");
    const auto core_col = doc.optional_column("core_util");
    const auto uncore_col = doc.optional_column("uncore_util");
    if (core_col.has_value() != uncore_col.has_value()) {
        throw ParseError(source, doc.table_line,
                         "core_util and uncore_util columns must appear together");
    }
    for (const auto &row : doc.rows) {
        input.freqs_ghz.push_back(row.values[freq_col]);
        input.energy_mj.push_back(row.values[energy_col]);
        if (core_col) {
            input.utilization.emplace_back(row.values[*core_col], row.values[*uncore_col]);
        }
    }
    // Tables may list frequencies in any order.
    std::vector<std::size_t> order(input.freqs_ghz.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return input.freqs_ghz[a] < input.freqs_ghz[b]; });
    auto permute = [&order](auto &values) {
        if (values.empty()) {
            return;
        }
        auto copy = values;
        for (std::size_t i = 0; i < order.size(); ++i) {
            values[i] = copy[order[i]];
        }
    };
    permute(input.freqs_ghz);
    permute(input.energy_mj);
    permute(input.utilization);
    return input;
}

CalibrationInput read_calibration_file(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open calibration file " + path.string());
    }
    return read_calibration(in, path.string());
}

}  // namespace energyucb
