// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#include "granular/core/civil.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <iomanip>
#include <sstream>

namespace granular::civil {

std::vector<std::int64_t> month_lengths(int first_year, int years) {
    static constexpr std::int64_t days[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(years) * 12);
    for (int y = first_year; y < first_year + years; ++y) {
        for (int m = 0; m < 12; ++m) out.push_back(days[m] + ((m == 1 && is_leap_year(y)) ? 1 : 0));
    }
    return out;
}

std::optional<std::int64_t> parse_timestamp(std::string_view text, const std::string& pattern) {
    std::tm tm{};
    std::istringstream in{std::string(text)};
    in >> std::get_time(&tm, pattern.c_str());
    if (in.fail()) return std::nullopt;
    in >> std::ws;
    if (!in.eof()) return std::nullopt;

    using namespace std::chrono;
    const year_month_day ymd{year{tm.tm_year + 1900}, month{static_cast<unsigned>(tm.tm_mon + 1)},
                             day{static_cast<unsigned>(tm.tm_mday)}};
    if (!ymd.ok() || tm.tm_hour > 23 || tm.tm_min > 59 || tm.tm_sec > 59) return std::nullopt;
    const auto d = sys_days{ymd}.time_since_epoch().count();
    return static_cast<std::int64_t>(d) * 86400 + tm.tm_hour * 3600 + tm.tm_min * 60 + tm.tm_sec;
}

std::string format_timestamp(std::int64_t seconds) {
    using namespace std::chrono;
    const std::int64_t day_count = seconds >= 0 ? seconds / 86400 : -((-seconds + 86399) / 86400);
    const std::int64_t rem = seconds - day_count * 86400;
    const year_month_day ymd{sys_days{days{day_count}}};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u %02d:%02d:%02d", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), static_cast<int>(rem / 3600),
                  static_cast<int>(rem % 3600 / 60), static_cast<int>(rem % 60));
    return buf;
}

}  // namespace granular::civil
