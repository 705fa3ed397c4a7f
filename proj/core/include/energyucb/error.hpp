// Copyright 2026 The energyucb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace energyucb {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition (bad arm index, nonpositive guard, ...).
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// Input text could not be read. Carries the 1-based line number when known.
class ParseError : public Error {
  public:
    ParseError(const std::string &source, std::optional<std::size_t> line,
               const std::string &message);
    std::optional<std::size_t> line() const noexcept { return m_line; }

  private:
    std::optional<std::size_t> m_line;
};

/// Input was well formed but violates a domain invariant
/// (counter regression, non-monotone execution time, ...).
class ValidationError : public Error {
  public:
    ValidationError(const std::string &source, std::optional<std::size_t> line,
                    const std::string &message);
    explicit ValidationError(const std::string &message);
    std::optional<std::size_t> line() const noexcept { return m_line; }

  private:
    std::optional<std::size_t> m_line;
};

}  // namespace energyucb
