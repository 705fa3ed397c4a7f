// Copyright 2026 The energyucb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "energyucb/profile.hpp"
#include "energyucb/reward.hpp"

namespace energyucb {

/// One telemetry sample of a static-frequency run.
struct TraceRecord {
    double timestamp_s = 0.0;
    double energy_j = 0.0;
    double core_active_s = 0.0;
    double uncore_active_s = 0.0;
    double freq_ghz = 0.0;

    CounterSample counters() const noexcept
    {
        return {timestamp_s, energy_j, core_active_s, uncore_active_s};
    }
};

inline constexpr std::string_view kTraceHeader =
    "timestamp_s,energy_j,core_active_s,uncore_active_s,freq_ghz";

/// Fewer steps than this in one trace is rejected by fit_profile.
inline constexpr std::size_t kMinTraceSteps = 10;

/// Parses a trace CSV. Malformed rows raise ParseError and counter
/// regressions raise ValidationError; both carry the file line number.
std::vector<TraceRecord> parse_trace(std::istream &in, const std::string &source = "<trace>");
std::vector<TraceRecord> read_trace_file(const std::filesystem::path &path);

void write_trace(std::ostream &out, std::span<const TraceRecord> records);
void write_trace_file(const std::filesystem::path &path, std::span<const TraceRecord> records);

std::vector<TraceRecord> to_trace(std::span<const CounterSample> samples, double freq_ghz);

/// Builds a profile from static-frequency traces. Traces at the same frequency
/// are pooled step by step; the frequency set is the sorted set of trace
/// frequencies.
///
/// When `expected` is given every one of its frequencies must be covered.
ApplicationProfile fit_profile(std::span<const std::vector<TraceRecord>> traces,
                               const std::string &name,
                               const FrequencySet *expected = nullptr);

}  // namespace energyucb
