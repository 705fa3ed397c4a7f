// Copyright 2026 The energyucb Authors
// SPDX-License-Identifier: Apache-2.0

#include "energyucb/profile.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <string>

#include "energyucb/error.hpp"
#include "text_format.hpp"

namespace energyucb {

namespace {

constexpr std::string_view kProfileColumns[] = {
    "freq_ghz", "power_mean_w", "power_std_w", "core_util", "uncore_util", "exec_time_s",
};

}  // namespace

void ApplicationProfile::validate() const
{
    const std::string where = "profile '" + name + "'";
    if (points.size() != freqs.size()) {
        throw ValidationError(where + ": " + std::to_string(points.size()) +
                              " frequency points for " + std::to_string(freqs.size()) +
                              " frequencies");
    }
    if (!(step_s > 0.0) || !std::isfinite(step_s)) {
        throw ValidationError(where + ": step must be positive");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto &p = points[i];
        const std::string at = where + " at " + format_ghz(freqs[i]) + " GHz: ";
        if (!(p.power_mean_w > 0.0) || !std::isfinite(p.power_mean_w)) {
            throw ValidationError(at + "power_mean_w must be positive");
        }
        if (!(p.power_std_w >= 0.0) || !std::isfinite(p.power_std_w)) {
            throw ValidationError(at + "power_std_w must be nonnegative");
        }
        if (!(p.core_util > 0.0 && p.core_util <= 1.0)) {
            throw ValidationError(at + "core_util must lie in (0, 1]");
        }
        if (!(p.uncore_util > 0.0 && p.uncore_util <= 1.0)) {
            throw ValidationError(at + "uncore_util must lie in (0, 1]");
        }
        if (!(p.exec_time_s > 0.0) || !std::isfinite(p.exec_time_s)) {
            throw ValidationError(at + "exec_time_s must be positive");
        }
        if (!(step_s < p.exec_time_s)) {
            throw ValidationError(at + "per-step progress must be below 1");
        }
        if (i > 0 && p.exec_time_s > points[i - 1].exec_time_s) {
            throw ValidationError(at + "exec_time_s increases with frequency (" +
                                  detail::format_double(points[i - 1].exec_time_s) + " s -> " +
                                  detail::format_double(p.exec_time_s) + " s)");
        }
    }
}

ApplicationProfile read_profile(std::istream &in, const std::string &source)
{
    const auto doc = detail::parse_keyed_document(in, source);
    doc.require_known_keys({"name", "step_s", "format"});
    if (const auto *format = doc.find("format"); format && format->value != "energyucb-profile/1") {
        throw ParseError(source, format->line, "unsupported profile format '" + format->value + "'");
    }
    if (doc.columns.empty()) {
        throw ParseError(source, std::nullopt, "profile has no frequency table");
    }
    std::size_t col[std::size(kProfileColumns)];
    for (std::size_t c = 0; c < std::size(kProfileColumns); ++c) {
        col[c] = doc.column(kProfileColumns[c]);
    }
    std::vector<double> freqs;
    std::vector<FrequencyPoint> points;
    for (const auto &row : doc.rows) {
        freqs.push_back(row.values[col[0]]);
        points.push_back({row.values[col[1]], row.values[col[2]], row.values[col[3]],
                          row.values[col[4]], row.values[col[5]]});
    }
    try {
        ApplicationProfile profile{doc.text("name"), FrequencySet(std::move(freqs)),
                                   std::move(points), doc.optional_number("step_s").value_or(0.01)};
        profile.validate();
        return profile;
    }
    catch (const InvalidArgument &ex) {
        throw ParseError(source, doc.table_line, ex.what());
    }
    catch (const ValidationError &ex) {
        throw ValidationError(source, std::nullopt, ex.what());
    }
}

ApplicationProfile read_profile_file(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open profile file " + path.string());
    }
    return read_profile(in, path.string());
}

void write_profile(std::ostream &out, const ApplicationProfile &profile)
{
    using detail::format_double;
    out << "format: energyucb-profile/1\n"
        << "name: " << profile.name << "\n"
        << "step_s: " << format_double(profile.step_s) << "\n"
        << "table:";
    for (const auto column : kProfileColumns) {
        out << ' ' << column;
    }
    out << '\n';
    for (std::size_t i = 0; i < profile.points.size(); ++i) {
        const auto &p = profile.points[i];
        out << format_ghz(profile.freqs[i]) << ' ' << format_double(p.power_mean_w) << ' '
            << format_double(p.power_std_w) << ' ' << format_double(p.core_util) << ' '
            << format_double(p.uncore_util) << ' ' << format_double(p.exec_time_s) << '\n';
    }
}

void write_profile_file(const std::filesystem::path &path, const ApplicationProfile &profile)
{
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write profile file " + path.string());
    }
    write_profile(out, profile);
    if (!out) {
        throw Error("failed writing profile file " + path.string());
    }
}

}  // namespace energyucb
