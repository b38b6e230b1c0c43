// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#include "granular/cli/fixtures.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "granular/core/civil.hpp"
#include "granular/error.hpp"

namespace granular::fixtures {

namespace {

using namespace std::chrono;

double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::int64_t day_number(int y, unsigned m, unsigned d) {
    return sys_days{year_month_day{year{y}, month{m}, day{d}}}.time_since_epoch().count();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::io_error, "cannot write '" + path.string() + "'");
    out << text;
}

constexpr const char* kWeekdays = "Sunday, Monday, Tuesday, Wednesday, Thursday, Friday, Saturday";
constexpr const char* kMonths =
    "January, February, March, April, May, June, July, August, September, October, November, December";

}  // namespace

std::string gregorian_calendar(int first_year, int years) {
    const auto jan1 = sys_days{year_month_day{year{first_year}, January, day{1}}};
    const unsigned weekday_index = weekday{jan1}.c_encoding();
    std::ostringstream out;
    out << "# Civil calendar, no time zones or leap seconds.\n"
        << "[calendar]\n"
        << "name = gregorian\n"
        << "origin = " << first_year << "-01-01 00:00\n"
        << "alignment = 1 January " << first_year << " 00:00 starts every rung\n\n"
        << "[rung minute]\nperiod = 30\nseconds = 60\n\n"
        << "[rung halfhour]\nperiod = 2\nseconds = 1800\n\n"
        << "[rung hour]\nperiod = 24\nseconds = 3600\n\n"
        << "[rung day]\nperiod = 7\nphase = " << weekday_index << "\nseconds = 86400\n\n"
        << "# Weeks run Sunday to Saturday. Within a month they are counted in\n"
        << "# whole days from the first of the month.\n"
        << "[rung week]\ncounted_in = day\ncardinalities =";
    const auto lengths = civil::month_lengths(first_year, years);
    for (auto n : lengths) out << ' ' << n;
    out << "\nseconds = 604800\n\n"
        << "[rung month]\nperiod = 12\n\n"
        << "[rung year]\nperiod = 1\n\n"
        << "[labels day_week]\nvalues = " << kWeekdays << "\n\n"
        << "[labels month_year]\nvalues = " << kMonths << "\n\n"
        << "[labels day_month]\nstart = 1\n\n"
        << "[labels week_month]\nstart = 1\n\n"
        << "[labels day_year]\nstart = 1\n\n"
        << "[derived wknd_wday]\nbase = day_week\nmap = 1 0 0 0 0 0 1\nlabels = weekday, weekend\n";
    return out.str();
}

std::string mayan_calendar() {
    return "[calendar]\n"
           "name = mayan\n"
           "origin = long count 0.0.0.0.0\n"
           "alignment = every rung starts at the origin\n\n"
           "[rung kin]\nperiod = 20\n\n"
           "[rung uinal]\nperiod = 18\n\n"
           "[rung tun]\nperiod = 20\n\n"
           "[rung katun]\nperiod = 20\n\n"
           "[rung baktun]\nperiod = 1\n";
}

std::string cricket_calendar() {
    return "[calendar]\n"
           "name = cricket\n"
           "origin = season 2008, match 1, inning 1, over 1\n"
           "alignment = every rung starts at the origin\n\n"
           "[rung over]\nperiod = 20\n\n"
           "[rung inning]\nperiod = 2\n\n"
           "# Matches per season, 2008 to 2016.\n"
           "[rung match]\ncardinalities = 58 57 60 73 74 76 60 59 60\n\n"
           "[rung season]\nperiod = 1\n\n"
           "[labels over_inning]\nstart = 1\n\n"
           "[labels inning_match]\nstart = 1\n\n"
           "[labels match_season]\nstart = 1\n";
}

std::string semester_calendar() {
    // Orientation 7 days, teaching 42, break 7, teaching 49, study break 7,
    // exams 16: 128 days.
    struct Block {
        std::int64_t length;
        int category;
    };
    static constexpr Block kBlocks[] = {{7, 0}, {42, 1}, {7, 2}, {49, 1}, {7, 2}, {16, 0}};
    static constexpr int kStarts[][3] = {{2012, 2, 27}, {2012, 7, 23}, {2013, 2, 25},
                                         {2013, 7, 22}, {2014, 3, 3},  {2014, 7, 28}};
    const std::int64_t origin = day_number(2012, 1, 1);
    std::ostringstream in_session;
    std::ostringstream breaks;
    for (const auto& s : kStarts) {
        std::int64_t at = day_number(s[0], static_cast<unsigned>(s[1]), static_cast<unsigned>(s[2])) - origin;
        for (const auto& b : kBlocks) {
            if (b.category == 1) in_session << ' ' << at << ':' << at + b.length;
            if (b.category == 2) breaks << ' ' << at << ':' << at + b.length;
            at += b.length;
        }
    }
    return "[calendar]\n"
           "name = semester\n"
           "origin = 2012-01-01\n"
           "alignment = 1 January 2012 is a Sunday and starts a week\n\n"
           "[rung day]\nperiod = 7\nseconds = 86400\n\n"
           "[rung week]\nperiod = 1\n\n"
           "[labels day_week]\nvalues = " + std::string(kWeekdays) + "\n\n"
           "# Day intervals [begin, end); semesters start on different dates each year.\n"
           "[event semester_week_type]\n"
           "category = 1 in_session" + in_session.str() + "\n"
           "category = 2 break" + breaks.str() + "\n";
}

std::string smart_meter_csv(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::string out = "customer_id,reading_datetime,general_supply_kwh\n";
    const std::int64_t first = day_number(2012, 1, 1);
    const std::int64_t last = day_number(2014, 1, 1);
    constexpr double kPi = 3.14159265358979323846;
    const char* ids[] = {"C001", "C002"};
    char line[96];
    for (int c = 0; c < 2; ++c) {
        const double base = 0.12 + 0.08 * c;
        for (std::int64_t d = first; d < last; ++d) {
            const year_month_day ymd{sys_days{days{d}}};
            const unsigned wd = weekday{sys_days{days{d}}}.c_encoding();
            const bool weekend = wd == 0 || wd == 6;
            const double season = 0.15 * std::cos(2 * kPi * static_cast<double>(d - first - 190) / 365.25);
            for (int s = 0; s < 48; ++s) {
                const double hour = s / 2.0;
                const double morning = (weekend ? 0.35 : 0.6) *
                                       std::exp(-std::pow(hour - (weekend ? 9.0 : 7.5), 2) / 2.0);
                const double evening = (0.8 + 0.2 * c) * std::exp(-std::pow(hour - 19.0, 2) / 4.0);
                const double noise = -std::log1p(-uniform(rng)) * (0.08 + 0.1 * morning);
                const double kwh = base + season * (0.5 + morning) + morning + evening + noise;
                const bool missing = uniform(rng) < 0.001;
                const int n = std::snprintf(line, sizeof line, "%s,%04d-%02u-%02u %02d:%02d:00,", ids[c],
                                            static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                                            static_cast<unsigned>(ymd.day()), s / 2, (s % 2) * 30);
                out.append(line, static_cast<std::size_t>(n));
                if (!missing) {
                    std::snprintf(line, sizeof line, "%.3f", std::max(kwh, 0.001));
                    out += line;
                }
                out += '\n';
            }
        }
    }
    return out;
}

std::string cricket_sample_csv(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    static constexpr double kCumulative[] = {0.35, 0.70, 0.78, 0.79, 0.92, 1.0};
    static constexpr int kRuns[] = {0, 1, 2, 3, 4, 6};
    std::string out = "season,match,inning,over,ball,runs\n";
    for (int season = 2008; season <= 2009; ++season) {
        for (int match = 1; match <= 4; ++match) {
            for (int inning = 1; inning <= 2; ++inning) {
                const int overs = inning == 1 ? 20 : 15 + static_cast<int>(uniform(rng) * 6);
                for (int over = 1; over <= overs; ++over) {
                    for (int ball = 1; ball <= 6; ++ball) {
                        const double u = uniform(rng);
                        int i = 0;
                        while (u >= kCumulative[i]) ++i;
                        out += std::to_string(season) + ',' + std::to_string(match) + ',' + std::to_string(inning) +
                               ',' + std::to_string(over) + ',' + std::to_string(ball) + ',' +
                               std::to_string(kRuns[i]) + '\n';
                    }
                }
            }
        }
    }
    return out;
}

std::string smart_meter_session() {
    return "[session]\n"
           "calendar = gregorian.cal\n"
           "data = synthetic_smart_meter.csv\n"
           "timestamp_column = reading_datetime\n"
           "timestamp_pattern = %Y-%m-%d %H:%M:%S\n"
           "bottom = halfhour\n"
           "keys = customer_id\n"
           "measurements = general_supply_kwh\n"
           "from = hour\n"
           "to = month\n"
           "max_levels = 31\n"
           "near_threshold = 0.27\n"
           "probabilities = 0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99\n"
           "output_dir = out\n";
}

std::string cricket_session() {
    return "[session]\n"
           "calendar = cricket.cal\n"
           "data = cricket_sample.csv\n"
           "composite = season:season:2008, match:match:1, inning:inning:1, over:over:1\n"
           "keys = ball\n"
           "measurements = runs\n"
           "from = over\n"
           "to = season\n"
           "output_dir = out\n";
}

std::vector<std::string> write_all(const std::string& dir, std::uint64_t seed) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(Errc::io_error, "cannot create '" + dir + "': " + ec.message());
    const std::pair<const char*, std::string> files[] = {
        {"gregorian.cal", gregorian_calendar()},
        {"mayan.cal", mayan_calendar()},
        {"cricket.cal", cricket_calendar()},
        {"semester.cal", semester_calendar()},
        {"synthetic_smart_meter.csv", smart_meter_csv(seed)},
        {"cricket_sample.csv", cricket_sample_csv(seed)},
        {"smart_meter.ini", smart_meter_session()},
        {"cricket.ini", cricket_session()},
    };
    std::vector<std::string> written;
    for (const auto& [name, text] : files) {
        const auto path = fs::path(dir) / name;
        write_file(path, text);
        written.push_back(path.string());
    }
    return written;
}

}  // namespace granular::fixtures
