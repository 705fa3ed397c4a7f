// Copyright 2026 The energyucb Authors
// SPDX-License-Identifier: Apache-2.0

#include "energyucb/frequency_set.hpp"

#include <cmath>
#include <string>

#include "energyucb/error.hpp"
#include "text_format.hpp"

namespace energyucb {

FrequencySet::FrequencySet(std::vector<double> ghz) : m_ghz(std::move(ghz))
{
    if (m_ghz.size() < 2) {
        throw InvalidArgument("FrequencySet needs at least two frequencies");
    }
    for (std::size_t i = 0; i < m_ghz.size(); ++i) {
        if (!(m_ghz[i] > 0.0) || !std::isfinite(m_ghz[i])) {
            throw InvalidArgument("FrequencySet values must be positive, got " +
                                  detail::format_double(m_ghz[i]));
        }
        if (i > 0 && !(m_ghz[i] > m_ghz[i - 1])) {
            throw InvalidArgument("FrequencySet values must be strictly increasing");
        }
    }
}

FrequencySet FrequencySet::uniform(double lo_ghz, double hi_ghz, double stride_ghz)
{
    if (!(stride_ghz > 0.0) || !(hi_ghz > lo_ghz)) {
        throw InvalidArgument("FrequencySet::uniform needs lo < hi and a positive stride");
    }
    const auto count = static_cast<std::size_t>(std::llround((hi_ghz - lo_ghz) / stride_ghz)) + 1;
    std::vector<double> values;
    values.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double raw = lo_ghz + static_cast<double>(i) * stride_ghz;
        values.push_back(std::round(raw * 1e6) / 1e6);
    }
    return FrequencySet(std::move(values));
}

FrequencySet FrequencySet::pvc_default()
{
    return uniform(0.8, 1.6, 0.1);
}

double FrequencySet::at(std::size_t arm) const
{
    if (arm >= m_ghz.size()) {
        throw InvalidArgument("arm " + std::to_string(arm) + " out of range for " +
                              std::to_string(m_ghz.size()) + " frequencies");
    }
    return m_ghz[arm];
}

std::optional<std::size_t> FrequencySet::find(double ghz, double tol_ghz) const noexcept
{
    for (std::size_t i = 0; i < m_ghz.size(); ++i) {
        if (std::abs(m_ghz[i] - ghz) <= tol_ghz) {
            return i;
        }
    }
    return std::nullopt;
}

std::string format_ghz(double ghz)
{
    return detail::format_double(std::round(ghz * 1e6) / 1e6);
}

}  // namespace energyucb
