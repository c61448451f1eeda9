#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ceda {

// Base for every error the library raises.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad column-role configuration: missing column, unknown role, bad edges.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Malformed CSV content. `row` is the 1-based data row (header excluded).
class ParseError : public Error {
public:
    ParseError(std::size_t row, const std::string& what);
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

// Selected columns contain empty cells; rows are 1-based data rows.
class MissingValueError : public Error {
public:
    explicit MissingValueError(std::vector<std::size_t> rows);
    const std::vector<std::size_t>& rows() const noexcept { return rows_; }

private:
    std::vector<std::size_t> rows_;
};

// Input violates an operation's precondition (empty data, degenerate range,
// infeasible binning, misaligned lengths, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

}  // namespace ceda
