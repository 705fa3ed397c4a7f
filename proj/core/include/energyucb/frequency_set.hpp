// Copyright 2026 The energyucb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace energyucb {

/// Ordered set of selectable GPU core frequencies in GHz. Each frequency is one
/// bandit arm; arm indices are 0-based and follow increasing frequency.
class FrequencySet {
  public:
    /// Requires at least two strictly increasing, positive values.
    explicit FrequencySet(std::vector<double> ghz);

    /// lo, lo + stride, ..., hi with values rounded to 1 kHz.
    static FrequencySet uniform(double lo_ghz, double hi_ghz, double stride_ghz);

    /// 0.8 GHz to 1.6 GHz in 0.1 GHz steps (nine arms).
    static FrequencySet pvc_default();

    std::size_t size() const noexcept { return m_ghz.size(); }
    double operator[](std::size_t arm) const noexcept { return m_ghz[arm]; }
    double at(std::size_t arm) const;
    std::span<const double> values() const noexcept { return m_ghz; }
    double min() const noexcept { return m_ghz.front(); }
    double max() const noexcept { return m_ghz.back(); }
    std::size_t max_arm() const noexcept { return m_ghz.size() - 1; }

    /// Arm whose frequency is within tol_ghz of the query.
    std::optional<std::size_t> find(double ghz, double tol_ghz = 1e-6) const noexcept;

    bool operator==(const FrequencySet &) const = default;

  private:
    std::vector<double> m_ghz;
};

/// "1.6", "0.85": shortest decimal form used in labels and file names.
std::string format_ghz(double ghz);

}  // namespace energyucb
