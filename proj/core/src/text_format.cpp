// Copyright 2026 The energyucb Authors
// SPDX-License-Identifier: Apache-2.0

#include "text_format.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <istream>

#include "energyucb/error.hpp"

namespace energyucb {

namespace {

std::string located(const std::string &source, std::optional<std::size_t> line,
                    const std::string &message)
{
    std::string out = source;
    if (line) {
        out += ":" + std::to_string(*line);
    }
    return out + ": " + message;
}

}  // namespace

ParseError::ParseError(const std::string &source, std::optional<std::size_t> line,
                       const std::string &message)
    : Error(located(source, line, message)), m_line(line)
{
}

ValidationError::ValidationError(const std::string &source, std::optional<std::size_t> line,
                                 const std::string &message)
    : Error(located(source, line, message)), m_line(line)
{
}

ValidationError::ValidationError(const std::string &message) : Error(message) {}

namespace detail {

std::string format_double(double value)
{
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) {
        return std::to_string(value);
    }
    return std::string(buf.data(), end);
}

std::optional<double> parse_double(std::string_view text) noexcept
{
    text = trim(text);
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    if (text.empty()) {
        return std::nullopt;
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

std::optional<unsigned long long> parse_unsigned(std::string_view text) noexcept
{
    text = trim(text);
    unsigned long long value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return value;
}

std::string_view trim(std::string_view text) noexcept
{
    constexpr std::string_view ws = " \t\r\n";
    const auto first = text.find_first_not_of(ws);
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(ws);
    return text.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view text, char delim)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(delim, start);
        if (pos == std::string_view::npos) {
            out.push_back(text.substr(start));
            break;
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::vector<std::string_view> split_whitespace(std::string_view text)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) {
            ++i;
        }
        const std::size_t start = i;
        while (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '\r') {
            ++i;
        }
        if (i > start) {
            out.push_back(text.substr(start, i - start));
        }
    }
    return out;
}

const KeyValue *KeyedDocument::find(std::string_view key) const noexcept
{
    const KeyValue *found = nullptr;
    for (const auto &entry : entries) {
        if (entry.key == key) {
            found = &entry;
        }
    }
    return found;
}

std::vector<const KeyValue *> KeyedDocument::find_all(std::string_view key) const
{
    std::vector<const KeyValue *> out;
    for (const auto &entry : entries) {
        if (entry.key == key) {
            out.push_back(&entry);
        }
    }
    return out;
}

std::string KeyedDocument::text(std::string_view key) const
{
    const auto *entry = find(key);
    if (entry == nullptr) {
        throw ParseError(source, std::nullopt, "missing key '" + std::string(key) + "'");
    }
    return entry->value;
}

double KeyedDocument::number(std::string_view key) const
{
    const auto value = optional_number(key);
    if (!value) {
        throw ParseError(source, std::nullopt, "missing key '" + std::string(key) + "'");
    }
    return *value;
}

std::optional<double> KeyedDocument::optional_number(std::string_view key) const
{
    const auto *entry = find(key);
    if (entry == nullptr) {
        return std::nullopt;
    }
    const auto value = parse_double(entry->value);
    if (!value) {
        throw ParseError(source, entry->line,
                         "key '" + entry->key + "' is not a number: '" + entry->value + "'");
    }
    return value;
}

std::optional<std::size_t> KeyedDocument::optional_column(std::string_view name) const noexcept
{
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - columns.begin());
}

std::size_t KeyedDocument::column(std::string_view name) const
{
    const auto index = optional_column(name);
    if (!index) {
        throw ParseError(source, table_line == 0 ? std::nullopt : std::optional(table_line),
                         "table has no column '" + std::string(name) + "'");
    }
    return *index;
}

void KeyedDocument::require_known_keys(std::initializer_list<std::string_view> known) const
{
    for (const auto &entry : entries) {
        if (std::find(known.begin(), known.end(), entry.key) == known.end()) {
            throw ParseError(source, entry.line, "unknown key '" + entry.key + "'");
        }
    }
}

KeyedDocument parse_keyed_document(std::istream &in, const std::string &source)
{
    KeyedDocument doc;
    doc.source = source;
    std::string raw;
    std::size_t line_no = 0;
    bool in_table = false;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (in_table) {
            TableRow row;
            row.line = line_no;
            for (const auto cell : split_whitespace(line)) {
                const auto value = parse_double(cell);
                if (!value) {
                    throw ParseError(source, line_no,
                                     "table cell is not a number: '" + std::string(cell) + "'");
                }
                row.values.push_back(*value);
            }
            if (row.values.size() != doc.columns.size()) {
                throw ParseError(source, line_no,
                                 "expected " + std::to_string(doc.columns.size()) +
                                     " table cells, found " + std::to_string(row.values.size()));
            }
            doc.rows.push_back(std::move(row));
            continue;
        }
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) {
            throw ParseError(source, line_no, "expected 'key: value'");
        }
        const auto key = trim(line.substr(0, colon));
        const auto value = trim(line.substr(colon + 1));
        if (key.empty()) {
            throw ParseError(source, line_no, "empty key");
        }
        if (key == "table") {
            for (const auto column : split_whitespace(value)) {
                doc.columns.emplace_back(column);
            }
            if (doc.columns.empty()) {
                throw ParseError(source, line_no, "table has no columns");
            }
            doc.table_line = line_no;
            in_table = true;
            continue;
        }
        doc.entries.push_back({std::string(key), std::string(value), line_no});
    }
    if (in.bad()) {
        throw ParseError(source, std::nullopt, "read failure");
    }
    return doc;
}

}  // namespace detail
}  // namespace energyucb
