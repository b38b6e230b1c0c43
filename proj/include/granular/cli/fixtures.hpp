// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace granular::fixtures {

//! Calendar text for minute/halfhour/hour/day/week/month/year starting
//! 1 January `first_year` 00:00, with month lengths for `years` years.
//! Weeks start on Sunday and are counted in days within months.
std::string gregorian_calendar(int first_year = 2012, int years = 4);

std::string mayan_calendar();

//! over/inning/match/season, nine seasons from 2008.
std::string cricket_calendar();

//! day/week ladder with a two-category semester event calendar
//! (1 in session, 2 break) over 2012 to 2014.
std::string semester_calendar();

//! Half-hourly readings of two customers over 2012 and 2013.
std::string smart_meter_csv(std::uint64_t seed);

//! Ball-by-ball rows: season, match, inning, over, ball, runs.
std::string cricket_sample_csv(std::uint64_t seed);

std::string smart_meter_session();
std::string cricket_session();

//! Writes every fixture into `dir` and returns the written paths.
std::vector<std::string> write_all(const std::string& dir, std::uint64_t seed);

}  // namespace granular::fixtures
