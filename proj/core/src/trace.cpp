// Copyright 2026 The energyucb Authors
// SPDX-License-Identifier: Apache-2.0

#include "energyucb/trace.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <string>

#include "energyucb/error.hpp"
#include "energyucb/metrics.hpp"
#include "text_format.hpp"

namespace energyucb {

namespace {

constexpr const char *kColumnNames[] = {
    "timestamp_s", "energy_j", "core_active_s", "uncore_active_s", "freq_ghz",
};

// Relative spread below which per-step power is treated as constant; this is
// the rounding floor of accumulating counters in double precision.
constexpr double kPowerResolution = 1e-9;

}  // namespace

std::vector<TraceRecord> parse_trace(std::istream &in, const std::string &source)
{
    std::string raw;
    if (!std::getline(in, raw)) {
        throw ParseError(source, std::nullopt, "empty trace file");
    }
    if (detail::trim(raw) != kTraceHeader) {
        throw ParseError(source, 1, "expected header '" + std::string(kTraceHeader) + "'");
    }

    std::vector<TraceRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = detail::trim(raw);
        if (line.empty()) {
            throw ParseError(source, line_no, "blank row");
        }
        const auto cells = detail::split(line, ',');
        if (cells.size() != 5) {
            throw ParseError(source, line_no,
                             "expected 5 fields, found " + std::to_string(cells.size()));
        }
        double values[5];
        for (std::size_t c = 0; c < 5; ++c) {
            const auto value = detail::parse_double(cells[c]);
            if (!value) {
                throw ParseError(source, line_no,
                                 std::string(kColumnNames[c]) + " is not a number: '" +
                                     std::string(detail::trim(cells[c])) + "'");
            }
            values[c] = *value;
        }
        const TraceRecord record{values[0], values[1], values[2], values[3], values[4]};
        if (!(record.freq_ghz > 0.0)) {
            throw ValidationError(source, line_no, "freq_ghz must be positive");
        }
        if (record.energy_j < 0.0 || record.core_active_s < 0.0 || record.uncore_active_s < 0.0) {
            throw ValidationError(source, line_no, "counters must be nonnegative");
        }
        if (!records.empty()) {
            const auto &prev = records.back();
            if (std::abs(record.freq_ghz - prev.freq_ghz) > 1e-9) {
                throw ValidationError(source, line_no, "freq_ghz changes within one trace");
            }
            if (!(record.timestamp_s > prev.timestamp_s)) {
                throw ValidationError(source, line_no, "timestamp_s is not strictly increasing");
            }
            if (record.energy_j < prev.energy_j) {
                throw ValidationError(source, line_no, "energy_j counter regressed");
            }
            if (record.core_active_s < prev.core_active_s) {
                throw ValidationError(source, line_no, "core_active_s counter regressed");
            }
            if (record.uncore_active_s < prev.uncore_active_s) {
                throw ValidationError(source, line_no, "uncore_active_s counter regressed");
            }
        }
        records.push_back(record);
    }
    if (in.bad()) {
        throw ParseError(source, std::nullopt, "read failure");
    }
    if (records.empty()) {
        throw ParseError(source, std::nullopt, "trace has a header but no records");
    }
    return records;
}

std::vector<TraceRecord> read_trace_file(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open trace file " + path.string());
    }
    return parse_trace(in, path.string());
}

void write_trace(std::ostream &out, std::span<const TraceRecord> records)
{
    using detail::format_double;
    out << kTraceHeader << '\n';
    for (const auto &r : records) {
        out << format_double(r.timestamp_s) << ',' << format_double(r.energy_j) << ','
            << format_double(r.core_active_s) << ',' << format_double(r.uncore_active_s) << ','
            << format_ghz(r.freq_ghz) << '\n';
    }
}

void write_trace_file(const std::filesystem::path &path, std::span<const TraceRecord> records)
{
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write trace file " + path.string());
    }
    write_trace(out, records);
    if (!out) {
        throw Error("failed writing trace file " + path.string());
    }
}

std::vector<TraceRecord> to_trace(std::span<const CounterSample> samples, double freq_ghz)
{
    std::vector<TraceRecord> out;
    out.reserve(samples.size());
    for (const auto &s : samples) {
        out.push_back({s.timestamp_s, s.energy_j, s.core_active_s, s.uncore_active_s, freq_ghz});
    }
    return out;
}

ApplicationProfile fit_profile(std::span<const std::vector<TraceRecord>> traces,
                               const std::string &name, const FrequencySet *expected)
{
    // Keyed by frequency rounded to 1 kHz.
    std::map<long long, std::vector<const std::vector<TraceRecord> *>> by_freq;
    for (const auto &trace : traces) {
        if (trace.empty()) {
            throw ValidationError("trace for '" + name + "' is empty");
        }
        if (trace.size() < kMinTraceSteps + 1) {
            throw ValidationError("trace at " + format_ghz(trace.front().freq_ghz) + " GHz has " +
                                  std::to_string(trace.size() - 1) + " steps; at least " +
                                  std::to_string(kMinTraceSteps) + " are required");
        }
        by_freq[std::llround(trace.front().freq_ghz * 1e6)].push_back(&trace);
    }
    if (expected != nullptr) {
        for (const double ghz : expected->values()) {
            if (by_freq.find(std::llround(ghz * 1e6)) == by_freq.end()) {
                throw ValidationError("missing frequency coverage: no trace at " + format_ghz(ghz) +
                                      " GHz for '" + name + "'");
            }
        }
    }
    if (by_freq.size() < 2) {
        throw ValidationError("missing frequency coverage: traces for '" + name +
                              "' span fewer than two frequencies");
    }

    std::vector<double> freqs;
    std::vector<FrequencyPoint> points;
    double step_sum = 0.0;
    std::size_t step_count = 0;
    for (const auto &[key, group] : by_freq) {
        freqs.push_back(static_cast<double>(key) / 1e6);
        std::vector<double> powers;
        double core_sum = 0.0;
        double uncore_sum = 0.0;
        double duration_sum = 0.0;
        for (const auto *trace : group) {
            for (std::size_t i = 1; i < trace->size(); ++i) {
                const auto obs = diff_counters((*trace)[i - 1].counters(), (*trace)[i].counters());
                powers.push_back(obs.energy_j / obs.duration_s);
                core_sum += obs.core_util;
                uncore_sum += obs.uncore_util;
                step_sum += obs.duration_s;
                ++step_count;
            }
            duration_sum += trace->back().timestamp_s - trace->front().timestamp_s;
        }
        auto [power_mean, power_std] = mean_and_std(powers);
        if (power_std <= kPowerResolution * power_mean) {
            power_std = 0.0;
        }
        const double n = static_cast<double>(powers.size());
        points.push_back({power_mean, power_std, core_sum / n, uncore_sum / n,
                          duration_sum / static_cast<double>(group.size())});
    }

    // Sampling periods are whole microseconds.
    const double step = std::round(step_sum / static_cast<double>(step_count) * 1e6) / 1e6;
    ApplicationProfile profile{name, FrequencySet(std::move(freqs)), std::move(points), step};
    profile.validate();
    return profile;
}

}  // namespace energyucb
