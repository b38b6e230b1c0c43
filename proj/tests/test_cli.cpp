// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "granular/cli/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int status;
    std::string out;
    std::string err;
};

Result run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int status = granular::cli::run(args, out, err);
    return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

//! Fresh directory holding the generated fixtures.
fs::path workspace(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("granular_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    REQUIRE(run({"fixtures", "generate", "--out-dir", dir.string()}).status == 0);
    return dir;
}

bool is_error_line(const std::string& text, const std::string& code, int status) {
    const std::regex re("^error: code=" + code + " exit=" + std::to_string(status) + " message=\".*\"\n$");
    return std::regex_match(text, re);
}

}  // namespace

TEST_CASE("fixtures_and_validate") {
    const auto dir = workspace("validate");
    for (const char* f : {"gregorian.cal", "mayan.cal", "cricket.cal", "semester.cal", "smart_meter.ini",
                          "cricket.ini", "synthetic_smart_meter.csv", "cricket_sample.csv"}) {
        CHECK_MESSAGE(fs::exists(dir / f), f);
    }
    const auto r = run({"calendar", "validate", (dir / "cricket.cal").string()});
    CHECK(r.status == 0);
    CHECK(r.out.find("k(match, season)") != std::string::npos);
}

TEST_CASE("exit_codes") {
    const auto dir = workspace("exit");
    auto r = run({});
    CHECK(r.status == 2);
    CHECK(is_error_line(r.err, "usage", 2));
    r = run({"frobnicate"});
    CHECK(r.status == 2);
    r = run({"calendar", "validate", (dir / "absent.cal").string()});
    CHECK(r.status == 4);
    CHECK(is_error_line(r.err, "io-error", 4));

    {
        std::ofstream bad(dir / "bad.cal");
        bad << "[calendar]\nname = x\n[rung day]\nperiod = 7\n[rung week]\nperiod = 2\n";
    }
    r = run({"calendar", "validate", (dir / "bad.cal").string()});
    CHECK(r.status == 3);
    CHECK(is_error_line(r.err, "non-sentinel-top", 3));

    const auto cfg = (dir / "smart_meter.ini").string();
    const auto out = (dir / "out").string();
    r = run({"--config", cfg, "--out-dir", out, "plot-spec", "--x", "week_month", "--facet", "day_month",
             "--response", "general_supply_kwh"});
    CHECK(r.status == 5);
    CHECK(is_error_line(r.err, "refused-clash", 5));
    r = run({"--config", cfg, "--out-dir", out, "summarize", "--x", "hour_fortnight", "--facet", "day_week",
             "--response", "general_supply_kwh"});
    CHECK(r.status == 3);
    r = run({"--config", cfg, "--out-dir", out, "plot-spec", "--x", "hour_day", "--facet", "day_week", "--response",
             "general_supply_kwh", "--geometry", "pie"});
    CHECK(r.status == 5);
    CHECK(is_error_line(r.err, "unsupported-geometry", 5));
}

TEST_CASE("harmony_screen") {
    const auto dir = workspace("harmony");
    const auto cfg = (dir / "smart_meter.ini").string();
    const auto out = dir / "out";
    const auto r = run({"--config", cfg, "--out-dir", out.string(), "harmony"});
    REQUIRE(r.status == 0);
    const auto text = slurp(out / "harmony.csv");
    std::istringstream lines(text);
    std::string first;
    std::getline(lines, first);
    CHECK(first == "facet_variable,x_variable,facet_levels,x_levels");
    int rows = 0;
    for (std::string line; std::getline(lines, line);) ++rows;
    CHECK(rows == 16);

    const auto structural = run({"--config", cfg, "--out-dir", (dir / "s").string(), "harmony", "--mode",
                                 "structural"});
    REQUIRE(structural.status == 0);
    CHECK(slurp(dir / "s" / "harmony.csv") == text);
}

TEST_CASE("outputs_are_deterministic") {
    const auto dir = workspace("determinism");
    const auto cfg = (dir / "smart_meter.ini").string();
    auto all = [&](const fs::path& out) {
        const std::vector<std::vector<std::string>> commands{
            {"harmony"},
            {"summarize", "--x", "hour_day", "--facet", "wknd_wday", "--response", "general_supply_kwh"},
            {"plot-spec", "--x", "hour_day", "--facet", "wknd_wday", "--response", "general_supply_kwh"},
        };
        for (const auto& c : commands) {
            std::vector<std::string> args{"--config", cfg, "--out-dir", out.string()};
            args.insert(args.end(), c.begin(), c.end());
            REQUIRE(run(args).status == 0);
        }
    };
    all(dir / "a");
    all(dir / "b");
    for (const char* f : {"harmony.csv", "summaries.csv", "plot_spec.json"}) {
        const auto a = slurp(dir / "a" / f);
        CHECK_FALSE(a.empty());
        CHECK_MESSAGE(a == slurp(dir / "b" / f), f);
    }
}

TEST_CASE("granularity_commands") {
    const auto dir = workspace("granularity");
    const auto cfg = (dir / "cricket.ini").string();
    auto r = run({"--config", cfg, "granularity", "list"});
    REQUIRE(r.status == 0);
    CHECK(r.out.find("over_inning") != std::string::npos);
    r = run({"--config", cfg, "--out-dir", (dir / "out").string(), "granularity", "compute", "--all", "--labels"});
    REQUIRE(r.status == 0);
    const auto text = slurp(dir / "out" / "augmented.csv");
    CHECK(text.rfind("index,", 0) == 0);
    CHECK(text.find("over_inning") != std::string::npos);
}
