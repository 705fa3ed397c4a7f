// Copyright 2026 The energyucb Authors
// SPDX-License-Identifier: Apache-2.0

// Helpers shared by the plain-text profile and calibration formats:
//
//   # comment
//   key: value
//   table: col_a col_b ...
//   1.0 2.0 ...
//
// Everything after the `table:` line is a whitespace-separated numeric row.

#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace energyucb::detail {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);
std::optional<double> parse_double(std::string_view text) noexcept;
std::optional<unsigned long long> parse_unsigned(std::string_view text) noexcept;

std::string_view trim(std::string_view text) noexcept;
std::vector<std::string_view> split(std::string_view text, char delim);
std::vector<std::string_view> split_whitespace(std::string_view text);

struct KeyValue {
    std::string key;
    std::string value;
    std::size_t line = 0;
};

struct TableRow {
    std::vector<double> values;
    std::size_t line = 0;
};

class KeyedDocument {
  public:
    std::string source;
    std::vector<KeyValue> entries;
    std::vector<std::string> columns;
    std::size_t table_line = 0;
    std::vector<TableRow> rows;

    const KeyValue *find(std::string_view key) const noexcept;
    std::vector<const KeyValue *> find_all(std::string_view key) const;
    std::string text(std::string_view key) const;
    double number(std::string_view key) const;
    std::optional<double> optional_number(std::string_view key) const;
    /// Index of a table column; throws ParseError when missing.
    std::size_t column(std::string_view name) const;
    std::optional<std::size_t> optional_column(std::string_view name) const noexcept;
    /// Rejects keys outside `known`, so typos surface instead of being ignored.
    void require_known_keys(std::initializer_list<std::string_view> known) const;
};

KeyedDocument parse_keyed_document(std::istream &in, const std::string &source);

}  // namespace energyucb::detail
