#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fakerev::csv {

/// Quotes a field when it contains a comma, quote or line break.
std::string field(std::string_view value);

/// Shortest decimal text that round-trips to the same double.
std::string number(double value);

/// Empty field for an undefined value.
std::string number(const std::optional<double>& value);

/// Splits one CSV record (RFC 4180 quoting, no embedded line breaks).
std::vector<std::string> split(std::string_view line);

}  // namespace fakerev::csv
