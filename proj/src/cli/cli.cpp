// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#include "granular/cli/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "granular/cli/fixtures.hpp"
#include "granular/cli/session.hpp"
#include "granular/core/calendar_file.hpp"
#include "granular/core/keyvalue.hpp"
#include "granular/distill/distill.hpp"
#include "granular/error.hpp"
#include "granular/harmony/harmony.hpp"
#include "granular/table/table.hpp"

namespace granular::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
    std::string config;
    std::string out_dir;
    std::string calendar;
    std::string data;
    std::string rungs;
    std::string from;
    std::string to;
    std::string output;

    std::string calendar_file;
    std::vector<std::string> names;
    bool all = false;
    bool labels = false;

    std::string mode = "observed";
    std::string span;
    bool keep_near = false;
    std::optional<Level> max_levels;
    std::optional<double> threshold;

    std::string x;
    std::string facet;
    std::string response;
    std::string probs;
    std::string geometry;
    bool force = false;
    bool letter_values = false;

    std::uint64_t seed = 42;
};

std::string quote(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c == '\n' ? ' ' : c;
    }
    return out;
}

void error_line(std::ostream& err, std::string_view code, int status, std::string_view message) {
    err << "error: code=" << code << " exit=" << status << " message=\"" << quote(message) << "\"\n";
}

SessionConfig session_config(const Options& o, bool needs_data) {
    SessionConfig c;
    if (!o.config.empty()) {
        if (!fs::exists(o.config)) throw Error(Errc::invalid_config, "config file '" + o.config + "' does not exist");
        c = load_session_config(o.config);
    }
    if (!o.calendar.empty()) c.calendar = o.calendar;
    if (!o.data.empty()) c.data = o.data;
    if (!o.rungs.empty()) c.rungs = kv::split(o.rungs, ',');
    if (!o.from.empty()) c.from = o.from;
    if (!o.to.empty()) c.to = o.to;
    if (o.max_levels) c.max_levels = *o.max_levels;
    if (o.threshold) c.near_threshold = *o.threshold;
    if (!o.probs.empty()) {
        c.probabilities.clear();
        for (const auto& p : kv::split(o.probs, ',')) c.probabilities.push_back(kv::to_double(p, "probability"));
    }
    if (c.probabilities.empty()) c.probabilities = default_probabilities();
    check_session_config(c, needs_data);
    return c;
}

fs::path output_dir(const Options& o, const SessionConfig* c) {
    fs::path dir = ".";
    if (!o.out_dir.empty()) {
        dir = o.out_dir;
    } else if (const char* env = std::getenv("GRANULAR_OUT_DIR"); env && *env) {
        dir = env;
    } else if (c && !c->output_dir.empty()) {
        dir = c->output_dir;
    }
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(Errc::io_error, "cannot create output directory '" + dir.string() + "': " + ec.message());
    return dir;
}

fs::path write_output(const fs::path& dir, const std::string& name, const std::string& text, std::ostream& out) {
    const auto path = dir / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(Errc::io_error, "cannot write '" + path.string() + "'");
    f << text;
    f.close();
    if (!f) throw Error(Errc::io_error, "failed writing '" + path.string() + "'");
    out << "wrote " << path.string() << "\n";
    return path;
}

GranularTable load_table(const SessionConfig& c, const Session& s, const std::vector<CyclicGranularity>& ds) {
    std::ifstream in(c.data);
    if (!in) throw Error(Errc::io_error, "cannot open data file '" + c.data + "'");
    auto schema = c.schema;
    if (schema.bottom.empty()) schema.bottom = s.ladder.rung(0).name;
    if (schema.origin.empty()) schema.origin = s.calendar.hierarchy.origin().instant;
    return augment(ingest(in, schema, s.ladder), s.ladder, ds);
}

std::string kind_text(const CyclicGranularity& d) {
    if (d.is_derived()) return "derived";
    return std::string(to_string(d.kind()));
}

int calendar_validate(const Options& o, std::ostream& out) {
    const Calendar cal = read_calendar(o.calendar_file);
    const auto& h = cal.hierarchy;
    out << "calendar " << h.name() << ": valid, " << h.size() << " rungs\n";
    out << "linear\tsingle-order-up\tK\n";
    for (RungIndex r = 0; r < h.size(); ++r) {
        if (r == h.top()) {
            out << h.rung(r).name << "\t1\t1\n";
        } else {
            out << h.rung(r).name << '\t' << h.rung(r).name << '_' << h.rung(r + 1).name << '\t'
                << describe_rule(h, r) << '\n';
        }
    }
    out << "labels " << cal.labels.size() << ", derived " << cal.derived.size() << ", events " << cal.events.size()
        << "\n";
    return 0;
}

int granularity_list(const Options& o, std::ostream& out) {
    const auto c = session_config(o, false);
    const Session s = open_session(c);
    out << "name\tkind\tlevels\n";
    for (const auto& d : s.descriptors) {
        const auto n = d.known_level_count();
        out << d.name() << '\t' << kind_text(d) << '\t' << (n ? std::to_string(*n) : "-") << '\n';
    }
    out << "N_C = " << s.descriptors.size() << " (" << s.enumerated << " pairs, " << s.derived << " derived, "
        << s.aperiodic << " aperiodic)\n";
    return 0;
}

int granularity_compute(const Options& o, std::ostream& out) {
    const auto c = session_config(o, true);
    const Session s = open_session(c);
    std::vector<CyclicGranularity> ds;
    if (o.all) ds = s.descriptors;
    for (const auto& n : o.names) ds.push_back(resolve_granularity(s, n));
    if (ds.empty()) throw Error(Errc::usage, "name at least one granularity or pass --all");
    const auto t = load_table(c, s, ds);
    std::ostringstream text;
    export_csv(text, t, {c.schema.delimiter, o.labels});
    write_output(output_dir(o, &c), o.output.empty() ? "augmented.csv" : o.output, text.str(), out);
    return 0;
}

int harmony(const Options& o, std::ostream& out) {
    const bool observed = o.mode == "observed";
    if (!observed && o.mode != "structural") throw Error(Errc::usage, "mode must be observed or structural");
    const auto c = session_config(o, observed);
    const Session s = open_session(c);
    HarmonyOptions opts;
    opts.max_levels = c.max_levels;
    opts.rule.threshold = c.near_threshold;
    opts.keep_near_clashes = o.keep_near;

    std::vector<HarmonyRow> rows;
    if (observed) {
        rows = harmony_table(s.descriptors, load_table(c, s, s.descriptors), opts);
    } else {
        std::optional<IndexInterval> span;
        if (!o.span.empty()) {
            const auto parts = kv::split(o.span, ':');
            if (parts.size() != 2) throw Error(Errc::usage, "span must be BEGIN:END");
            span = IndexInterval{kv::to_int(parts[0], "span begin"), kv::to_int(parts[1], "span end")};
        }
        rows = harmony_table(s.descriptors, s.ladder, span, opts);
    }
    std::ostringstream text;
    export_harmony_csv(text, rows);
    out << text.str();
    write_output(output_dir(o, &c), o.output.empty() ? "harmony.csv" : o.output, text.str(), out);
    return 0;
}

struct Prepared {
    SessionConfig config;
    CyclicGranularity x;
    CyclicGranularity facet;
    std::vector<CellSummary> summaries;
    PairClassification classification;
};

Prepared prepare_summaries(const Options& o, bool letter_values) {
    if (o.x.empty() || o.facet.empty() || o.response.empty()) {
        throw Error(Errc::usage, "--x, --facet and --response are required");
    }
    auto c = session_config(o, true);
    const Session s = open_session(c);
    auto x = resolve_granularity(s, o.x);
    auto facet = resolve_granularity(s, o.facet);
    const auto t = load_table(c, s, {x, facet});
    SummaryOptions so;
    so.probabilities = c.probabilities;
    so.letter_values = letter_values;
    auto summaries = summarize_cells(t, x.name(), facet.name(), o.response, so);
    auto pc = classify_pair(cross_tab(t, facet.name(), x.name()), {c.near_threshold});
    return {std::move(c), std::move(x), std::move(facet), std::move(summaries), std::move(pc)};
}

int summarize(const Options& o, std::ostream& out) {
    const auto p = prepare_summaries(o, false);
    std::ostringstream text;
    export_summaries_csv(text, p.summaries);
    write_output(output_dir(o, &p.config), o.output.empty() ? "summaries.csv" : o.output, text.str(), out);
    return 0;
}

int plot_spec(const Options& o, std::ostream& out) {
    const auto p = prepare_summaries(o, o.letter_values || o.geometry == "letter-value-counts");
    std::vector<std::int64_t> sizes;
    for (const auto& c : p.summaries) sizes.push_back(c.n);
    std::nth_element(sizes.begin(), sizes.begin() + static_cast<std::ptrdiff_t>(sizes.size() / 2), sizes.end());
    const auto rec = recommend(p.x, p.facet, p.classification, sizes[sizes.size() / 2]);
    out << "verdict: " << to_string(rec.verdict) << "\n";
    out << "x levels: " << to_string(rec.x_category) << ", facet levels: " << to_string(rec.facet_category) << "\n";
    for (const auto& n : rec.notes) out << "note: " << n << "\n";

    Geometry g;
    if (!o.geometry.empty()) {
        g = parse_geometry(o.geometry);
    } else if (!rec.geometries.empty()) {
        g = rec.geometries.front();
    } else {
        g = Geometry::box;
    }
    PlotSpecOptions po;
    po.data_source = fs::path(p.config.data).filename().string();
    po.force = o.force;
    po.classification = p.classification;
    const auto doc = emit_plot_spec(p.summaries, p.x, p.facet, o.response, g, po);
    write_output(output_dir(o, &p.config), o.output.empty() ? "plot_spec.json" : o.output, doc.dump(2) + "\n", out);
    return 0;
}

int fixtures_generate(const Options& o, std::ostream& out) {
    const auto dir = output_dir(o, nullptr);
    for (const auto& path : fixtures::write_all(dir.string(), o.seed)) out << "wrote " << path << "\n";
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Cyclic granularities of ordered indexes", "granular"};
    app.require_subcommand(1);
    app.fallthrough();
    app.option_defaults()->always_capture_default();
    app.add_option("--config", o.config, "Session config file ([session] section)");
    app.add_option("--out-dir", o.out_dir, "Output directory (else $GRANULAR_OUT_DIR, else the config's)");
    app.add_option("--calendar", o.calendar, "Calendar definition file");
    app.add_option("--data", o.data, "Delimited data file");
    app.add_option("--rungs", o.rungs, "Comma-separated rungs forming the ladder");
    app.add_option("--from", o.from, "Lowest rung for enumeration");
    app.add_option("--to", o.to, "Highest rung for enumeration");
    app.add_option("--output", o.output, "Output file name inside the output directory");

    auto* cal = app.add_subcommand("calendar", "Calendar definitions");
    cal->require_subcommand(1);
    auto* validate = cal->add_subcommand("validate", "Validate a calendar file and print its hierarchy table");
    validate->add_option("file", o.calendar_file)->required();

    auto* gran = app.add_subcommand("granularity", "Cyclic granularities of the session ladder");
    gran->require_subcommand(1);
    auto* list = gran->add_subcommand("list", "List the session's cyclic granularities");
    auto* compute = gran->add_subcommand("compute", "Augment the data with granularity columns and export it");
    compute->add_option("names", o.names, "Granularity names");
    compute->add_flag("--all", o.all, "Every session granularity");
    compute->add_flag("--labels", o.labels, "Write labels instead of level numbers");

    auto* harm = app.add_subcommand("harmony", "Screen ordered pairs for harmonies");
    harm->add_option("--mode", o.mode, "observed or structural");
    harm->add_option("--span", o.span, "Structural scan span BEGIN:END in bottom granules");
    harm->add_flag("--keep-near", o.keep_near, "Keep near-clashes");
    harm->add_option("--max-levels", o.max_levels, "Largest level count kept");
    harm->add_option("--threshold", o.threshold, "Near-clash threshold");

    auto add_summary_options = [&](CLI::App* sub) {
        sub->add_option("--x", o.x, "Granularity mapped to x");
        sub->add_option("--facet", o.facet, "Granularity mapped to facets");
        sub->add_option("--response", o.response, "Measurement column");
        sub->add_option("--probs", o.probs, "Comma-separated quantile probabilities");
        sub->add_option("--threshold", o.threshold, "Near-clash threshold");
    };
    auto* summ = app.add_subcommand("summarize", "Quantile summaries per (facet, x) cell");
    add_summary_options(summ);
    auto* spec = app.add_subcommand("plot-spec", "Write a declarative plot specification");
    add_summary_options(spec);
    spec->add_option("--geometry", o.geometry, "quantile-area, box, violin-like-density or letter-value-counts");
    spec->add_flag("--force", o.force, "Emit even when cells are empty");
    spec->add_flag("--letter-values", o.letter_values, "Compute letter values");

    auto* fix = app.add_subcommand("fixtures", "Synthetic datasets and calendars");
    fix->require_subcommand(1);
    auto* gen = fix->add_subcommand("generate", "Write every fixture file");
    gen->add_option("--seed", o.seed, "Random seed");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        error_line(err, to_string(Errc::usage), 2, e.what());
        return 2;
    }

    try {
        if (validate->parsed()) return calendar_validate(o, out);
        if (list->parsed()) return granularity_list(o, out);
        if (compute->parsed()) return granularity_compute(o, out);
        if (harm->parsed()) return harmony(o, out);
        if (summ->parsed()) return summarize(o, out);
        if (spec->parsed()) return plot_spec(o, out);
        if (gen->parsed()) return fixtures_generate(o, out);
        error_line(err, to_string(Errc::usage), 2, "unknown command");
        return 2;
    } catch (const Error& e) {
        const int status = exit_code(category_of(e.code()));
        error_line(err, to_string(e.code()), status, e.what());
        return status;
    } catch (const std::exception& e) {
        error_line(err, "internal", 5, e.what());
        return 5;
    }
}

}  // namespace granular::cli
