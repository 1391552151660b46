// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace adamnx {

/// 17 significant digits ("%.17g"), enough to round-trip any double.
std::string format_double(double value);

/// Parses a full field as a double (accepts nan/inf). Throws ParseError.
double parse_double(std::string_view text);

/// Splits one CSV line on commas. No quoting support; none of our files
/// need it.
std::vector<std::string_view> split_csv_line(std::string_view line);

}  // namespace adamnx
