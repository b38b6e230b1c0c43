// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace granular::civil {

constexpr bool is_leap_year(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

//! Day counts of the 12*years months starting January `first_year`.
std::vector<std::int64_t> month_lengths(int first_year, int years);

//! Seconds since 1970-01-01T00:00:00 (no time zones, no leap seconds) for a
//! timestamp read with a strftime-style pattern (%Y %m %d %H %M %S).
std::optional<std::int64_t> parse_timestamp(std::string_view text, const std::string& pattern);

//! Formats seconds since the epoch as `YYYY-MM-DD HH:MM:SS`.
std::string format_timestamp(std::int64_t seconds);

}  // namespace granular::civil
