// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance gate: one PASS or FAIL line per criterion, exit status 1 when
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "granular/cli/cli.hpp"
#include "granular/cyclic/engine.hpp"
#include "granular/distill/distill.hpp"
#include "granular/harmony/harmony.hpp"
#include "granular/table/table.hpp"
#include "support/oracles.hpp"

using namespace granular;
namespace fs = std::filesystem;

namespace {

// Tolerances and budgets.
constexpr double kQuantileTolerance = 1e-12;
constexpr double kPeriodsBudget = 1.0;
constexpr double kHarmonyBudget = 10.0;
constexpr double kOracleBudget = 60.0;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cli(const std::vector<std::string>& args, std::string* out = nullptr) {
    std::ostringstream o;
    std::ostringstream e;
    const int status = cli::run(args, o, e);
    if (out) *out = o.str();
    return status;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path fixtures_dir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / "granular_acceptance";
        fs::remove_all(d);
        fs::create_directories(d);
        fixtures::write_all(d.string(), 42);
        return d;
    }();
    return dir;
}

HierarchyTable days_from(int first_year, int years) {
    return select_rungs(oracle::gregorian(first_year, years).hierarchy, {"day", "week", "month", "year"});
}

Outcome periods() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto h = oracle::gregorian().hierarchy;
    const struct {
        const char* l;
        const char* m;
        std::int64_t p;
    } want[] = {{"minute", "hour", 60}, {"minute", "day", 1440}, {"hour", "day", 24}, {"hour", "week", 168},
                {"day", "week", 7}};
    for (const auto& w : want) {
        const auto got = period_length(h, h.index_of(w.l), h.index_of(w.m));
        o.require(got == w.p, std::string(w.l) + "_" + w.m + " = " + std::to_string(got));
        o.require(make_cyclic(h, w.l, w.m).level_count() == w.p, std::string(w.l) + "_" + w.m + " levels");
    }
    const double s = seconds_since(t0);
    o.require(s < kPeriodsBudget, "took " + std::to_string(s) + " s");
    if (o.pass) o.detail = "60 1440 24 168 7";
    return o;
}

Outcome reference_screen() {
    Outcome o;
    const auto dir = fixtures_dir();
    const auto t0 = std::chrono::steady_clock::now();
    const int status = cli({"--config", (dir / "smart_meter.ini").string(), "--out-dir", (dir / "screen").string(),
                            "harmony", "--max-levels", "31"});
    const double s = seconds_since(t0);
    o.require(status == 0, "harmony exited " + std::to_string(status));
    const std::string want =
        "facet_variable,x_variable,facet_levels,x_levels\n"
        "day_week,hour_day,7,24\nday_month,hour_day,31,24\nweek_month,hour_day,5,24\nwknd_wday,hour_day,2,24\n"
        "hour_day,day_week,24,7\nday_month,day_week,31,7\nweek_month,day_week,5,7\nhour_day,day_month,24,31\n"
        "day_week,day_month,7,31\nwknd_wday,day_month,2,31\nhour_day,week_month,24,5\nday_week,week_month,7,5\n"
        "wknd_wday,week_month,2,5\nhour_day,wknd_wday,24,2\nday_month,wknd_wday,31,2\nweek_month,wknd_wday,5,2\n";
    o.require(slurp(dir / "screen" / "harmony.csv") == want, "harmony.csv differs from the 16 reference rows");
    o.require(s < kHarmonyBudget, "took " + std::to_string(s) + " s");
    if (o.pass) o.detail = "16 rows in order, " + std::to_string(s).substr(0, 4) + " s";
    return o;
}

Outcome clash_evidence() {
    Outcome o;
    const auto h = days_from(2012, 4);
    const auto clash = classify_pair(cross_tab(h, make_cyclic(h, "day", "month"), make_cyclic(h, "week", "month")));
    o.require(clash.verdict == Verdict::clash, "day_month x week_month is not a clash");
    o.require(std::any_of(clash.evidence.begin(), clash.evidence.end(),
                          [](const Cell& c) { return c.k == 0 && c.l == 4 && c.count == 0; }),
              "cell (first day, fifth week) not cited");
    const auto full =
        cross_tab(h, make_cyclic(h, "day", "week"), make_cyclic(h, "month", "year"), IndexInterval{0, 366});
    const auto occupied = std::count_if(full.counts.begin(), full.counts.end(), [](auto c) { return c > 0; });
    o.require(occupied == 84, std::to_string(occupied) + " of 84 cells occupied");
    o.require(classify_pair(full).verdict == Verdict::harmony, "day_week x month_year is not a harmony");
    if (o.pass) o.detail = "clash cites (0,4); 84/84 cells occupied";
    return o;
}

Outcome near_clash() {
    Outcome o;
    const auto h = days_from(2012, 28);
    const auto occ = cross_tab(h, make_cyclic(h, "day", "year"), make_cyclic(h, "day", "week"),
                               IndexInterval{0, 28 * 365 + 7});
    const auto c = classify_pair(occ);
    o.require(c.verdict == Verdict::near_clash, "verdict is " + std::string(to_string(c.verdict)));
    for (Level w = 0; w < 7; ++w) {
        o.require(std::any_of(c.evidence.begin(), c.evidence.end(),
                              [&](const Cell& e) { return e.k == 365 && e.l == w; }),
                  "leap cell (365, " + std::to_string(w) + ") not cited");
    }
    if (o.pass) o.detail = "all 7 day-366 cells cited among " + std::to_string(c.evidence.size());
    return o;
}

//! Compares every enumerated descriptor, compose_up and reduce_to_single
//! result against counter walks.
Outcome oracle_equivalence() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t checked = 0;

    const auto check_ladder = [&](const HierarchyTable& h, const oracle::Counters& want, std::int64_t n,
                                  RungIndex reduce_top) {
        for (const auto& d : enumerate_cyclic(h, h.rung(h.top()).name)) {
            const auto it = want.find(d.name());
            o.require(it != want.end(), "no oracle for " + d.name());
            if (it == want.end()) continue;
            const Evaluator ev(h, d);
            const RungIndex l = h.index_of(d.lower());
            const RungIndex m = h.index_of(d.upper());
            for (std::int64_t z = 0; z < n; ++z) {
                const auto expect = it->second[static_cast<std::size_t>(z)];
                if (ev(IndexValue{z}) != expect || compose_up(h, l, m, IndexValue{z}) != expect) {
                    o.require(false, d.name() + " differs at z = " + std::to_string(z));
                    return;
                }
                ++checked;
            }
        }
        // Narrowing from the widest constant span.
        for (std::int64_t z = 0; z < n; ++z) {
            const Level v = compose_up(h, 0, reduce_top, IndexValue{z});
            for (RungIndex l1 = 0; l1 < reduce_top; ++l1) {
                for (RungIndex m1 = l1 + 1; m1 <= reduce_top; ++m1) {
                    const auto& expect = want.at(h.rung(l1).name + "_" + h.rung(m1).name);
                    if (reduce_to_single(h, 0, reduce_top, v, l1, m1) != expect[static_cast<std::size_t>(z)]) {
                        o.require(false, "reduce_to_single differs at z = " + std::to_string(z));
                        return;
                    }
                    ++checked;
                }
            }
        }
    };

    const auto greg = select_rungs(oracle::gregorian(2012, 4).hierarchy, {"hour", "day", "week", "month", "year"});
    const auto greg_want = oracle::gregorian_hourly(2012, 4);
    check_ladder(greg, greg_want, static_cast<std::int64_t>(greg_want.at("hour_day").size()), greg.index_of("week"));

    const auto mayan = oracle::calendar(fixtures::mayan_calendar()).hierarchy;
    const std::int64_t kin = 3 * 7200;
    check_ladder(mayan, oracle::mayan(kin), kin, mayan.top());

    const double s = seconds_since(t0);
    o.require(s < kOracleBudget, "took " + std::to_string(s) + " s");
    if (o.pass) o.detail = std::to_string(checked) + " values, " + std::to_string(s).substr(0, 4) + " s";
    return o;
}

Outcome round_trip() {
    Outcome o;
    const auto h = oracle::calendar(fixtures::mayan_calendar()).hierarchy;
    const std::int64_t kin = 3 * 7200;
    for (std::int64_t z = 0; z < kin && o.pass; ++z) {
        const Level v = compose_up(h, 0, h.top(), IndexValue{z});
        for (RungIndex l = 0; l + 1 < h.size(); ++l) {
            if (reduce_to_single(h, 0, h.top(), v, l, l + 1) != compose_up(h, l, l + 1, IndexValue{z})) {
                o.require(false, "rung " + h.rung(l).name + " differs at z = " + std::to_string(z));
                break;
            }
        }
    }
    if (o.pass) o.detail = "4 single-order-up values at 21600 kin";
    return o;
}

Outcome quasi_bounds() {
    Outcome o;
    const auto h = days_from(2012, 4);
    const Evaluator dy(h, make_cyclic(h, "day", "year"));
    const Evaluator dm(h, make_cyclic(h, "day", "month"));
    const Evaluator my(h, make_cyclic(h, "month", "year"));
    const RungIndex year = h.index_of("year");
    std::vector<Level> max_level(4, -1);
    std::vector<std::int64_t> days(4, 0);
    std::vector<int> leap_days(4, 0);
    for (std::int64_t z = 0; z < 1461; ++z) {
        const auto y = static_cast<std::size_t>(linear_granule(h, IndexValue{z}, year));
        max_level[y] = std::max(max_level[y], dy(IndexValue{z}));
        ++days[y];
        if (dm(IndexValue{z}) == 28 && my(IndexValue{z}) == 1) ++leap_days[y];
    }
    const std::int64_t periods[] = {366, 365, 365, 365};
    for (std::size_t y = 0; y < 4; ++y) {
        o.require(days[y] == periods[y] && max_level[y] == periods[y] - 1,
                  "year " + std::to_string(2012 + y) + " spans " + std::to_string(max_level[y] + 1) + " levels");
    }
    o.require(leap_days == std::vector<int>{1, 0, 0, 0}, "29 February outside 2012");
    if (o.pass) o.detail = "ranges 366 365 365 365; 29 February only in 2012";
    return o;
}

Outcome quantiles() {
    Outcome o;
    const auto h = oracle::calendar("[calendar]\nname = grid\n[rung slot]\nperiod = 4\n[rung block]\nperiod = 3\n"
                                    "[rung cycle]\nperiod = 1\n")
                       .hierarchy;
    std::mt19937_64 rng(2012);
    std::gamma_distribution<double> dist(2.0, 0.3);
    std::vector<IndexValue> idx;
    MeasurementColumn y{"y", {}};
    std::vector<std::vector<double>> cells(12);
    for (std::int64_t z = 0; z < 12 * 1000; ++z) {
        idx.push_back(IndexValue{z});
        const double v = dist(rng);
        y.values.emplace_back(v);
        cells[static_cast<std::size_t>(z % 12)].push_back(v);
    }
    const auto t = augment(GranularTable(idx, {}, {y}), h, {make_cyclic(h, "slot", "block"), make_cyclic(h, "block", "cycle")});
    double worst = 0;
    for (const auto& c : summarize_cells(t, "slot_block", "block_cycle", "y")) {
        o.require(c.n == 1000, "cell holds " + std::to_string(c.n) + " values");
        for (const auto& [p, q] : c.quantiles) {
            worst = std::max(worst, std::abs(q - oracle::quantile7(cells[static_cast<std::size_t>(c.facet * 4 + c.x)], p)));
        }
    }
    o.require(worst <= kQuantileTolerance, "largest error " + std::to_string(worst));
    if (o.pass) {
        std::ostringstream s;
        s << "12 cells x 7 probabilities, largest error " << worst;
        o.detail = s.str();
    }
    return o;
}

Outcome cricket() {
    Outcome o;
    const auto dir = fixtures_dir();
    std::string text;
    o.require(cli({"calendar", "validate", (dir / "cricket.cal").string()}, &text) == 0, "validate failed");
    o.require(text.find("over\tover_inning\t20\n") != std::string::npos, "over_inning is not 20");
    o.require(text.find("inning\tinning_match\t2\n") != std::string::npos, "inning_match is not 2");
    o.require(text.find("match\tmatch_season\tk(match, season)\n") != std::string::npos, "match_season is not k");

    const auto cal = oracle::calendar(slurp(dir / "cricket.cal"));
    const auto ds = enumerate_cyclic(cal.hierarchy, "season");
    o.require(ds.size() == 6, std::to_string(ds.size()) + " descriptors");

    IngestionSchema s;
    s.bottom = "over";
    s.composite = {{"season", "season", 2008}, {"match", "match", 1}, {"inning", "inning", 1}, {"over", "over", 1}};
    s.keys = {"ball"};
    s.measurements = {"runs"};
    std::ifstream in(dir / "cricket_sample.csv");
    const auto t = augment(ingest(in, s, cal.hierarchy), cal.hierarchy, {make_cyclic(cal.hierarchy, "over", "inning")});
    const auto& v = t.cyclic("over_inning").values;
    o.require(std::all_of(v.begin(), v.end(), [](Level x) { return x >= 0 && x < 20; }), "over_inning outside [0, 20)");
    if (o.pass) o.detail = "20 2 k(match, season); 6 descriptors; " + std::to_string(v.size()) + " rows in [0, 20)";
    return o;
}

Outcome determinism() {
    Outcome o;
    const auto dir = fixtures_dir();
    const auto cfg = (dir / "smart_meter.ini").string();
    const std::vector<std::vector<std::string>> commands{
        {"harmony"},
        {"summarize", "--x", "hour_day", "--facet", "day_week", "--response", "general_supply_kwh"},
        {"plot-spec", "--x", "hour_day", "--facet", "wknd_wday", "--response", "general_supply_kwh"},
    };
    for (const char* run : {"first", "second"}) {
        for (const auto& c : commands) {
            std::vector<std::string> args{"--config", cfg, "--out-dir", (dir / run).string()};
            args.insert(args.end(), c.begin(), c.end());
            o.require(cli(args) == 0, c.front() + " failed");
        }
    }
    for (const char* f : {"harmony.csv", "summaries.csv", "plot_spec.json"}) {
        const auto a = slurp(dir / "first" / f);
        o.require(!a.empty() && a == slurp(dir / "second" / f), std::string(f) + " differs between runs");
    }
    if (o.pass) o.detail = "harmony.csv, summaries.csv, plot_spec.json identical";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"periods of the calendar table", periods},
        {"reference harmony screen", reference_screen},
        {"clash evidence and full occupancy", clash_evidence},
        {"leap-day near-clash", near_clash},
        {"oracle equivalence", oracle_equivalence},
        {"round trip through reduce_to_single", round_trip},
        {"quasi-circular bounds", quasi_bounds},
        {"quantile correctness", quantiles},
        {"cricket hierarchy", cricket},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
                  << o.detail << ")\n";
        failed += o.pass ? 0 : 1;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
    return failed == 0 ? 0 : 1;
}
