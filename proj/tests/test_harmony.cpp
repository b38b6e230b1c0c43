// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "granular/cyclic/engine.hpp"
#include "granular/error.hpp"
#include "granular/harmony/harmony.hpp"
#include "granular/table/table.hpp"
#include "support/oracles.hpp"

using namespace granular;

namespace {

Errc code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return Errc::usage;
}

HierarchyTable daily(int first_year, int years) {
    return select_rungs(oracle::gregorian(first_year, years).hierarchy, {"day", "week", "month", "year"});
}

//! The six hour-to-month pairs plus weekday/weekend, on a half-hourly ladder.
std::vector<CyclicGranularity> meter_descriptors(const HierarchyTable& h) {
    auto ds = enumerate_cyclic(h, "month", "hour");
    ds.push_back(make_remapped(make_cyclic(h, "day", "week"), {1, 0, 0, 0, 0, 0, 1}, "wknd_wday"));
    return ds;
}

struct Expected {
    const char* facet;
    const char* x;
    Level facet_levels;
    Level x_levels;
};

// Reference screen of the seven granularities, in its expected order.
constexpr Expected kReference[] = {
    {"day_week", "hour_day", 7, 24},    {"day_month", "hour_day", 31, 24},  {"week_month", "hour_day", 5, 24},
    {"wknd_wday", "hour_day", 2, 24},   {"hour_day", "day_week", 24, 7},    {"day_month", "day_week", 31, 7},
    {"week_month", "day_week", 5, 7},   {"hour_day", "day_month", 24, 31},  {"day_week", "day_month", 7, 31},
    {"wknd_wday", "day_month", 2, 31},  {"hour_day", "week_month", 24, 5},  {"day_week", "week_month", 7, 5},
    {"wknd_wday", "week_month", 2, 5},  {"hour_day", "wknd_wday", 24, 2},   {"day_month", "wknd_wday", 31, 2},
    {"week_month", "wknd_wday", 5, 2},
};

void check_reference(const std::vector<HarmonyRow>& rows) {
    REQUIRE(rows.size() == std::size(kReference));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].facet == kReference[i].facet);
        CHECK(rows[i].x == kReference[i].x);
        CHECK(rows[i].facet_levels == kReference[i].facet_levels);
        CHECK(rows[i].x_levels == kReference[i].x_levels);
        CHECK(rows[i].verdict == Verdict::harmony);
    }
}

}  // namespace

TEST_SUITE("occupancy") {

TEST_CASE("weekday_by_month_is_full") {
    const auto h = daily(2012, 4);
    const auto o = cross_tab(h, make_cyclic(h, "day", "week"), make_cyclic(h, "month", "year"), IndexInterval{0, 366});
    CHECK(o.k == 7);
    CHECK(o.l == 12);
    CHECK(o.total() == 366);
    CHECK(std::count(o.counts.begin(), o.counts.end(), 0) == 0);
    CHECK(classify_pair(o).verdict == Verdict::harmony);
}

TEST_CASE("day_month_by_week_month_clashes") {
    const auto h = daily(2012, 4);
    const auto o = cross_tab(h, make_cyclic(h, "day", "month"), make_cyclic(h, "week", "month"));
    const auto c = classify_pair(o);
    CHECK(c.verdict == Verdict::clash);
    const bool cited = std::any_of(c.evidence.begin(), c.evidence.end(),
                                   [](const Cell& e) { return e.k == 0 && e.l == 4 && e.count == 0; });
    CHECK(cited);
    for (const auto& e : c.evidence) CHECK(e.count == 0);
}

TEST_CASE("leap_days_are_near_clash") {
    const auto h = daily(2012, 28);
    const std::int64_t days = 28 * 365 + 7;
    const auto o = cross_tab(h, make_cyclic(h, "day", "year"), make_cyclic(h, "day", "week"), IndexInterval{0, days});
    CHECK(o.k == 366);
    const auto c = classify_pair(o);
    CHECK(c.verdict == Verdict::near_clash);
    for (Level w = 0; w < 7; ++w) {
        const bool cited = std::any_of(c.evidence.begin(), c.evidence.end(),
                                       [&](const Cell& e) { return e.k == 365 && e.l == w; });
        CHECK_MESSAGE(cited, "weekday " << w);
        CHECK(o.at(365, w) == 1);
    }
    // Lowering the threshold below the leap-cell ratio gives a harmony.
    CHECK(classify_pair(o, {0.2}).verdict == Verdict::harmony);
}

TEST_CASE("totals_and_transpose") {
    const auto h = daily(2012, 4);
    const auto o = cross_tab(h, make_cyclic(h, "day", "month"), make_cyclic(h, "day", "week"));
    CHECK(o.total() == o.span.size());
    const auto rows = o.row_totals();
    const auto cols = o.column_totals();
    CHECK(std::accumulate(rows.begin(), rows.end(), std::int64_t{0}) == o.total());
    CHECK(std::accumulate(cols.begin(), cols.end(), std::int64_t{0}) == o.total());
    // The default scan covers 28 years; day 31 occurs in seven months of each.
    CHECK(o.span.size() == 10227);
    CHECK(rows[30] == 7 * 28);
    const auto t = o.transposed();
    CHECK(t.k == o.l);
    for (Level a = 0; a < o.k; ++a) {
        for (Level b = 0; b < o.l; ++b) REQUIRE(t.at(b, a) == o.at(a, b));
    }
}

TEST_CASE("verdict_is_symmetric") {
    const auto h = slice(oracle::gregorian().hierarchy, "halfhour", "year");
    const auto ds = meter_descriptors(h);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        for (std::size_t j = i + 1; j < ds.size(); ++j) {
            const auto o = cross_tab(h, ds[i], ds[j]);
            const auto a = classify_pair(o);
            const auto b = classify_pair(o.transposed());
            CHECK(a.verdict == b.verdict);
            CHECK(a.evidence.size() == b.evidence.size());
        }
    }
}

TEST_CASE("span_errors") {
    const auto h = daily(2012, 4);
    const auto dw = make_cyclic(h, "day", "week");
    const auto dm = make_cyclic(h, "day", "month");
    CHECK(code_of([&] { cross_tab(h, dw, dw, IndexInterval{0, 5}); }) == Errc::insufficient_span);
    CHECK(code_of([&] { cross_tab(h, dw, dm, IndexInterval{3, 3}); }) == Errc::empty_span);
    // Periods that do not line up need a declared span.
    const auto sem = oracle::calendar(fixtures::semester_calendar());
    const auto ev = make_aperiodic(sem.events[0]);
    CHECK(code_of([&] { cross_tab(sem.hierarchy, ev, make_cyclic(sem.hierarchy, "day", "week")); }) ==
          Errc::insufficient_span);
    const auto o = cross_tab(sem.hierarchy, ev, make_cyclic(sem.hierarchy, "day", "week"), IndexInterval{0, 1096});
    CHECK(std::count(o.counts.begin(), o.counts.end(), 0) == 0);
    CHECK(classify_pair(o).verdict != Verdict::clash);
}

TEST_CASE("observed_counts") {
    const auto h = slice(oracle::gregorian().hierarchy, "halfhour", "year");
    const GranularTable t({IndexValue{0}, IndexValue{1}, IndexValue{48}}, {}, {});
    const auto a = augment(t, h, {make_cyclic(h, "day", "week"), make_cyclic(h, "hour", "day")});
    const auto o = cross_tab(a, "day_week", "hour_day");
    CHECK(o.mode == OccupancyMode::observed);
    CHECK(o.at(0, 0) == 2);
    CHECK(o.at(1, 0) == 1);
    CHECK(o.total() == 3);
    CHECK(code_of([&] { cross_tab(a, "day_week", "month_year"); }) == Errc::unknown_granularity);
}

}  // TEST_SUITE

TEST_SUITE("screen") {

TEST_CASE("reference_screen_structural") {
    const auto h = slice(oracle::gregorian().hierarchy, "halfhour", "year");
    check_reference(harmony_table(meter_descriptors(h), h, std::nullopt));
}

TEST_CASE("reference_screen_observed") {
    const auto h = slice(oracle::gregorian().hierarchy, "halfhour", "year");
    IngestionSchema s;
    s.timestamp_column = "reading_datetime";
    s.bottom = "halfhour";
    s.keys = {"customer_id"};
    s.measurements = {"general_supply_kwh"};
    std::istringstream in(fixtures::smart_meter_csv(42));
    const auto ds = meter_descriptors(h);
    const auto t = augment(ingest(in, s, h), h, ds);
    const auto rows = harmony_table(ds, t);
    check_reference(rows);

    std::ostringstream csv;
    export_harmony_csv(csv, rows);
    CHECK(csv.str().rfind("facet_variable,x_variable,facet_levels,x_levels\nday_week,hour_day,7,24\n", 0) == 0);
}

TEST_CASE("options") {
    const auto h = slice(oracle::gregorian().hierarchy, "halfhour", "year");
    const auto ds = meter_descriptors(h);
    HarmonyOptions tiny;
    tiny.max_levels = 1;
    CHECK(harmony_table(ds, h, std::nullopt, tiny).empty());
    HarmonyOptions wide;
    wide.max_levels = 1000;
    const auto rows = harmony_table(ds, h, std::nullopt, wide);
    CHECK(rows.size() > std::size(kReference));
    CHECK(code_of([&] { harmony_table({ds[0]}, h, std::nullopt); }) == Errc::usage);

    // Near-clashes show up only when asked for.
    const auto d = daily(2012, 28);
    const std::vector<CyclicGranularity> pair{make_cyclic(d, "day", "year"), make_cyclic(d, "day", "week")};
    HarmonyOptions keep;
    keep.max_levels = 400;
    const IndexInterval span{0, 28 * 365 + 7};
    CHECK(harmony_table(pair, d, span, keep).empty());
    keep.keep_near_clashes = true;
    const auto near = harmony_table(pair, d, span, keep);
    REQUIRE(near.size() == 2);
    CHECK(near[0].verdict == Verdict::near_clash);
}

}  // TEST_SUITE
