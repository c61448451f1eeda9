#include "ceda/error.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace ceda {

ParseError::ParseError(std::size_t row, const std::string& what)
    : Error(fmt::format("row {}: {}", row, what)), row_(row) {}

MissingValueError::MissingValueError(std::vector<std::size_t> rows)
    : Error(fmt::format("missing values in selected columns at rows {}",
                        fmt::join(rows.size() > 20 ? std::vector<std::size_t>(rows.begin(), rows.begin() + 20) : rows, ", ")) +
            (rows.size() > 20 ? fmt::format(" (and {} more)", rows.size() - 20) : std::string{})),
      rows_(std::move(rows)) {}

}  // namespace ceda
