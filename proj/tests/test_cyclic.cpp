// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "granular/cyclic/descriptor.hpp"
#include "granular/cyclic/engine.hpp"
#include "granular/error.hpp"
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

HierarchyTable hourly(int first_year = 2012, int years = 4) {
    return select_rungs(oracle::gregorian(first_year, years).hierarchy, {"hour", "day", "week", "month", "year"});
}

//! Ladder with up to four constant rungs and one irregular rung counted in
//! itself, all below a sentinel top.
struct RandomLadder {
    HierarchyTable table;
    oracle::Ladder rules;
};

RandomLadder random_ladder(std::mt19937_64& rng) {
    auto pick = [&](std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    HierarchyDefinition def;
    def.name = "random";
    oracle::Ladder rules;
    const auto below = static_cast<std::size_t>(pick(2, 5));
    const auto irr_at = static_cast<std::size_t>(pick(0, static_cast<std::int64_t>(below)));  // == below: none
    for (std::size_t i = 0; i < below; ++i) {
        const std::string name = "r" + std::to_string(i);
        if (i == irr_at) {
            IrregularMapping m;
            const auto n = pick(1, 4);
            for (std::int64_t k = 0; k < n; ++k) m.cardinalities.push_back(pick(1, 4));
            m.cycle_start = pick(0, n - 1);
            rules.periods.push_back(0);
            rules.phases.push_back(0);
            rules.cards = m.cardinalities;
            rules.cycle_start = m.cycle_start;
            def.rungs.push_back({name, m, 0, std::nullopt});
        } else {
            const auto p = pick(2, 4);
            const auto phase = pick(0, p - 1);
            rules.periods.push_back(p);
            rules.phases.push_back(phase);
            def.rungs.push_back({name, ConstantPeriod{p}, phase, std::nullopt});
        }
    }
    def.rungs.push_back({"top", ConstantPeriod{1}, 0, std::nullopt});
    return {validate_hierarchy(def), rules};
}

}  // namespace

TEST_SUITE("values") {

TEST_CASE("worked_examples") {
    const auto g = oracle::gregorian().hierarchy;
    const auto minute = g.index_of("minute");
    const auto hour = g.index_of("hour");
    const auto day = g.index_of("day");
    // Minute 1500 is 01:00 on 2 January 2012.
    CHECK(compose_up(g, minute, hour, IndexValue{1500}) == 0);
    CHECK(compose_up(g, hour, day, IndexValue{1500}) == 1);
    CHECK(compose_up(g, minute, day, IndexValue{1500}) == 60);

    const auto h = hourly();
    const auto day_month = make_cyclic(h, "day", "month");
    CHECK(day_month.kind() == CyclicKind::quasi_circular);
    // 1 March 2012 is day 60 of the index.
    CHECK(quasi_circular_value(h, day_month, IndexValue{60 * 24}) == 0);
    CHECK(quasi_circular_value(h, day_month, IndexValue{59 * 24}) == 28);
    const auto hour_day = make_cyclic(h, "hour", "day");
    CHECK(circular_value(h, hour_day, IndexValue{49}) == 1);
    CHECK(code_of([&] { circular_value(h, day_month, IndexValue{0}); }) == Errc::kind_mismatch);
    CHECK(code_of([&] { quasi_circular_value(h, hour_day, IndexValue{0}); }) == Errc::kind_mismatch);
    CHECK(code_of([&] { quasi_circular_value(h, make_cyclic(h, "week", "year"), IndexValue{0}); }) ==
          Errc::kind_mismatch);

    const auto mayan = oracle::calendar(fixtures::mayan_calendar()).hierarchy;
    const auto kin_tun = make_cyclic(mayan, "kin", "tun");
    CHECK(kin_tun.level_count() == 360);
    CHECK(circular_value(mayan, kin_tun, IndexValue{7205}) == 5);
}

TEST_CASE("mayan_matches_odometer") {
    const auto mayan = oracle::calendar(fixtures::mayan_calendar()).hierarchy;
    const std::int64_t n = 3 * 144000;
    const auto expected = oracle::mayan(n);
    for (const auto& [name, values] : expected) {
        const auto cut = name.find('_');
        const auto d = make_cyclic(mayan, name.substr(0, cut), name.substr(cut + 1));
        const Evaluator ev(mayan, d);
        for (std::int64_t z = 0; z < n; z += 7) {
            REQUIRE_MESSAGE(ev(IndexValue{z}) == values[static_cast<std::size_t>(z)], name << " at " << z);
        }
    }
}

TEST_CASE("gregorian_matches_chrono") {
    for (int first : {2012, 2013, 1999}) {
        const auto h = hourly(first, 4);
        const auto expected = oracle::gregorian_hourly(first, 4);
        for (const auto& [name, values] : expected) {
            const auto cut = name.find('_');
            const auto d = make_cyclic(h, name.substr(0, cut), name.substr(cut + 1));
            const Evaluator ev(h, d);
            for (std::size_t z = 0; z < values.size(); ++z) {
                REQUIRE_MESSAGE(ev(IndexValue{static_cast<std::int64_t>(z)}) == values[z],
                                first << " " << name << " at " << z);
            }
        }
    }
}

TEST_CASE("random_ladders_match_walk") {
    std::mt19937_64 rng(2026);
    for (int trial = 0; trial < 300; ++trial) {
        const auto [h, rules] = random_ladder(rng);
        const std::int64_t lo = -150;
        const std::int64_t hi = 400;
        const auto starts = oracle::granule_starts(rules, lo, hi);
        for (RungIndex l = 0; l < h.size(); ++l) {
            for (RungIndex m = l + 1; m < h.size(); ++m) {
                const auto d = make_cyclic(h, h.rung(l).name, h.rung(m).name);
                const Evaluator ev(h, d);
                for (std::int64_t z = lo; z < hi; ++z) {
                    const Level v = ev(IndexValue{z});
                    REQUIRE(v == oracle::position(starts, l, m, z));
                    REQUIRE(v >= 0);
                    REQUIRE(v < d.level_count());
                }
            }
        }
    }
}

}  // TEST_SUITE

TEST_SUITE("structure") {

TEST_CASE("level_counts") {
    const auto h = hourly();
    CHECK(make_cyclic(h, "day", "month").level_count() == 31);
    CHECK(make_cyclic(h, "week", "month").level_count() == 5);
    CHECK(make_cyclic(h, "day", "year").level_count() == 366);
    CHECK(make_cyclic(h, "hour", "month").level_count() == 744);
    CHECK(make_cyclic(h, "week", "year").level_count() == 53);
    CHECK(make_cyclic(h, "month", "year").level_count() == 12);
    CHECK(make_cyclic(h, "hour", "week").level_count() == 168);
    CHECK(code_of([&] { make_cyclic(h, "month", "day"); }) == Errc::unknown_rung);
    CHECK(code_of([&] { make_cyclic(h, "day", "fortnight"); }) == Errc::unknown_rung);

    // Three common years only.
    const auto common = hourly(2013, 3);
    CHECK(make_cyclic(common, "day", "year").level_count() == 365);
}

TEST_CASE("two_irregular_rungs_are_refused") {
    const auto cal = oracle::calendar("[calendar]\nname = odd\n"
                                      "[rung a]\ncardinalities = 2 3\n"
                                      "[rung b]\ncardinalities = 4 5\n"
                                      "[rung c]\nperiod = 1\n");
    const auto& h = cal.hierarchy;
    const auto d = make_cyclic(h, "a", "c");
    CHECK_FALSE(d.known_level_count().has_value());
    CHECK(code_of([&] { d.level_count(); }) == Errc::unsupported_span);
    CHECK(code_of([&] { compose_up(h, 0, 2, IndexValue{3}); }) == Errc::unsupported_span);
    CHECK(code_of([&] { Evaluator(h, d); }) == Errc::unsupported_span);
    CHECK(compose_up(h, 0, 1, IndexValue{3}) == 1);
    CHECK(compose_up(h, 1, 2, IndexValue{6}) == 2);
}

TEST_CASE("quasi_values_stay_in_bounds") {
    const auto h = hourly();
    const auto dm = make_cyclic(h, "day", "month");
    const auto wm = make_cyclic(h, "week", "month");
    std::set<Level> seen_dm;
    std::set<Level> seen_wm;
    for (std::int64_t z = 0; z < 1461 * 24; z += 24) {
        seen_dm.insert(cyclic_value(h, dm, IndexValue{z}));
        seen_wm.insert(cyclic_value(h, wm, IndexValue{z}));
    }
    CHECK(seen_dm.size() == 31);
    CHECK(*seen_dm.rbegin() == 30);
    CHECK(seen_wm.size() == 5);
}

TEST_CASE("decomposition_hour_month") {
    const auto h = hourly();
    const Evaluator hm(h, make_cyclic(h, "hour", "month"));
    const Evaluator hd(h, make_cyclic(h, "hour", "day"));
    const Evaluator dm(h, make_cyclic(h, "day", "month"));
    for (std::int64_t z = 0; z < 1461 * 24; ++z) {
        REQUIRE(hm(IndexValue{z}) == hd(IndexValue{z}) + 24 * dm(IndexValue{z}));
    }
}

TEST_CASE("reduce_to_single") {
    const auto g = oracle::gregorian().hierarchy;
    const auto minute = g.index_of("minute");
    const auto hour = g.index_of("hour");
    const auto day = g.index_of("day");
    const auto week = g.index_of("week");
    CHECK(reduce_to_single(g, minute, day, 60, hour, day) == 1);
    CHECK(reduce_to_single(g, minute, day, 60, minute, hour) == 0);
    CHECK(code_of([&] { reduce_to_single(g, minute, day, 1440, hour, day); }) == Errc::out_of_domain);
    CHECK(code_of([&] { reduce_to_single(g, minute, day, -1, hour, day); }) == Errc::out_of_domain);
    CHECK(code_of([&] { reduce_to_single(g, hour, day, 3, minute, day); }) == Errc::unknown_rung);
    CHECK(code_of([&] { reduce_to_single(g, day, g.index_of("month"), 3, day, week); }) == Errc::irregular_span);

    // Property: narrowing minute_week agrees with direct evaluation.
    const Evaluator mw(g, make_cyclic(g, "minute", "week"));
    for (std::int64_t z = 0; z < 4 * 10080; z += 13) {
        const Level v = mw(IndexValue{z});
        for (RungIndex l1 = minute; l1 < week; ++l1) {
            for (RungIndex m1 = l1 + 1; m1 <= week; ++m1) {
                REQUIRE(reduce_to_single(g, minute, week, v, l1, m1) == compose_up(g, l1, m1, IndexValue{z}));
            }
        }
    }
}

TEST_CASE("labels") {
    const auto cal = oracle::gregorian();
    const auto& h = cal.hierarchy;
    const auto dw = make_cyclic(h, "day", "week").with_labels(cal.labels.at("day_week"));
    CHECK(apply_labels(dw, 0) == "Sunday");
    CHECK(apply_labels(dw, 6) == "Saturday");
    CHECK(code_of([&] { apply_labels(dw, 7); }) == Errc::out_of_domain);
    const auto dm = make_cyclic(h, "day", "month").with_labels(cal.labels.at("day_month"));
    CHECK(apply_labels(dm, 0) == "1");
    CHECK(apply_labels(make_cyclic(h, "hour", "day"), 13) == "13");
    CHECK(code_of([&] { make_cyclic(h, "hour", "day").with_labels(LabelMap::named({"a", "b"})); }) ==
          Errc::bad_labels);
}

TEST_CASE("derived_and_aperiodic") {
    const auto cal = oracle::gregorian();
    const auto& h = cal.hierarchy;
    const auto dw = make_cyclic(h, "day", "week");
    const auto wk = make_remapped(dw, {1, 0, 0, 0, 0, 0, 1}, "wknd_wday");
    CHECK(wk.level_count() == 2);
    CHECK(wk.kind() == CyclicKind::circular);
    // 1 January 2012 is a Sunday.
    CHECK(cyclic_value(h, wk, IndexValue{0}) == 1);
    CHECK(cyclic_value(h, wk, IndexValue{1440}) == 0);
    CHECK(bottom_period(h, wk) == 10080);
    CHECK(code_of([&] { make_remapped(dw, {0, 1}, "x"); }) == Errc::partial_remap);
    CHECK(code_of([&] { make_remapped(dw, {0, 2, 2, 2, 2, 2, 0}, "x"); }) == Errc::partial_remap);

    const auto sem = oracle::calendar(fixtures::semester_calendar());
    const auto ev = make_aperiodic(sem.events[0]);
    CHECK(ev.kind() == CyclicKind::aperiodic);
    CHECK(ev.level_count() == 3);
    CHECK(apply_labels(ev, 0) == "none");
    CHECK(apply_labels(ev, 2) == "break");
    CHECK(cyclic_value(sem.hierarchy, ev, IndexValue{70}) == 1);
    CHECK_FALSE(bottom_period(sem.hierarchy, ev).has_value());
    CHECK(code_of([&] { circular_value(sem.hierarchy, ev, IndexValue{0}); }) == Errc::kind_mismatch);
}

TEST_CASE("bottom_periods") {
    const auto h = hourly();
    CHECK(bottom_period(h, make_cyclic(h, "hour", "week")) == 168);
    CHECK(has_constant_bottom_period(h, make_cyclic(h, "hour", "week")));
    CHECK_FALSE(has_constant_bottom_period(h, make_cyclic(h, "day", "month")));
    // Four-year cycle of months, in hours.
    CHECK(bottom_period(h, make_cyclic(h, "day", "month")) == 1461 * 24);
    const auto d = make_cyclic(h, "day", "month");
    const Evaluator ev(h, d);
    const std::int64_t p = *bottom_period(h, d);
    for (std::int64_t z = 0; z < p; z += 5) REQUIRE(ev(IndexValue{z}) == ev(IndexValue{z + p}));
}

TEST_CASE("evaluation_is_independent_of_partition") {
    const auto h = hourly();
    const auto d = make_cyclic(h, "hour", "month");
    const Evaluator ev(h, d);
    std::vector<IndexValue> zs;
    std::mt19937_64 rng(3);
    for (int i = 0; i < 5000; ++i) zs.push_back(IndexValue{static_cast<std::int64_t>(rng() % 40000) - 2000});
    const auto whole = ev.evaluate(zs);
    for (std::size_t chunk : {1U, 7U, 333U}) {
        std::vector<Level> parts;
        for (std::size_t at = 0; at < zs.size(); at += chunk) {
            const auto n = std::min(chunk, zs.size() - at);
            const auto part = ev.evaluate(std::span<const IndexValue>(zs).subspan(at, n));
            parts.insert(parts.end(), part.begin(), part.end());
        }
        CHECK(parts == whole);
    }
    for (std::size_t i = 0; i < zs.size(); ++i) REQUIRE(whole[i] == cyclic_value(h, d, zs[i]));
}

}  // TEST_SUITE
