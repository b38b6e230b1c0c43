// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#include "granular/distill/distill.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

#include "granular/cyclic/engine.hpp"
#include "granular/error.hpp"
#include "granular/table/csv.hpp"

namespace granular {

namespace {

constexpr std::size_t kDensityGrid = 19;

std::string number(double v) {
    std::array<char, 32> buf;
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

std::vector<LetterValue> letter_values(const std::vector<double>& sorted) {
    const auto n = static_cast<double>(sorted.size());
    const int depths = std::max(1, static_cast<int>(std::ceil(std::log2(n))) - 1);
    std::vector<LetterValue> out;
    for (int d = 1; d <= depths; ++d) {
        const double p = std::ldexp(1.0, -d);
        out.push_back({d, quantile_sorted(sorted, p), quantile_sorted(sorted, 1 - p)});
    }
    return out;
}

bool has_probability(const std::vector<CellSummary>& s, double p) {
    for (const auto& c : s) {
        if (c.n == 0) continue;
        return std::any_of(c.quantiles.begin(), c.quantiles.end(), [&](const auto& q) { return q.first == p; });
    }
    return false;
}

std::size_t probability_count(const std::vector<CellSummary>& s) {
    for (const auto& c : s) {
        if (c.n > 0) return c.quantiles.size();
    }
    return 0;
}

nlohmann::ordered_json axis(const CyclicGranularity& d) {
    nlohmann::ordered_json a;
    a["granularity"] = d.name();
    a["levels"] = d.level_count();
    auto labels = nlohmann::ordered_json::array();
    for (Level v = 0; v < d.level_count(); ++v) labels.push_back(apply_labels(d, v));
    a["labels"] = labels;
    return a;
}

}  // namespace

const std::vector<double>& default_probabilities() {
    static const std::vector<double> p{0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99};
    return p;
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

std::vector<CellSummary> summarize_cells(const GranularTable& t, std::string_view x, std::string_view facet,
                                         std::string_view response, const SummaryOptions& opts) {
    const auto& probs = opts.probabilities;
    if (probs.empty()) throw Error(Errc::bad_value, "no quantile probabilities requested");
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (!(probs[i] > 0 && probs[i] < 1) || (i > 0 && probs[i] <= probs[i - 1])) {
            throw Error(Errc::bad_value, "probabilities must be increasing and inside (0, 1)");
        }
    }
    const auto& v = t.measurement(response);
    const auto& xc = t.cyclic(x);
    const auto& fc = t.cyclic(facet);
    const Level nx = xc.descriptor.level_count();
    const Level nf = fc.descriptor.level_count();

    std::vector<std::vector<double>> cells(static_cast<std::size_t>(nx * nf));
    for (std::size_t i = 0; i < t.rows(); ++i) {
        if (!v.values[i]) continue;
        cells[static_cast<std::size_t>(fc.values[i] * nx + xc.values[i])].push_back(*v.values[i]);
    }

    std::vector<CellSummary> out;
    out.reserve(cells.size());
    for (Level f = 0; f < nf; ++f) {
        for (Level k = 0; k < nx; ++k) {
            auto& data = cells[static_cast<std::size_t>(f * nx + k)];
            CellSummary s;
            s.facet = f;
            s.facet_label = apply_labels(fc.descriptor, f);
            s.x = k;
            s.x_label = apply_labels(xc.descriptor, k);
            s.n = static_cast<std::int64_t>(data.size());
            if (!data.empty()) {
                std::sort(data.begin(), data.end());
                for (double p : probs) s.quantiles.emplace_back(p, quantile_sorted(data, p));
                double sum = 0;
                for (double d : data) sum += d;
                s.mean = sum / static_cast<double>(data.size());
                s.min = data.front();
                s.max = data.back();
                if (opts.letter_values) s.letter_values = letter_values(data);
            }
            out.push_back(std::move(s));
        }
    }
    return out;
}

std::string_view to_string(LevelsCategory c) {
    switch (c) {
        case LevelsCategory::low: return "low";
        case LevelsCategory::medium: return "medium";
        case LevelsCategory::high: return "high";
        case LevelsCategory::very_high: return "very-high";
    }
    return "unknown";
}

LevelsCategory categorize_levels(Level n_levels, const LevelBounds& bounds) {
    if (n_levels < 1) throw Error(Errc::bad_value, "a granularity has at least one level");
    if (n_levels <= bounds.low) return LevelsCategory::low;
    if (n_levels <= bounds.medium) return LevelsCategory::medium;
    if (n_levels <= bounds.high) return LevelsCategory::high;
    return LevelsCategory::very_high;
}

std::string_view to_string(Geometry g) {
    switch (g) {
        case Geometry::quantile_area: return "quantile-area";
        case Geometry::box: return "box";
        case Geometry::violin_like_density: return "violin-like-density";
        case Geometry::letter_value_counts: return "letter-value-counts";
    }
    return "unknown";
}

Geometry parse_geometry(std::string_view name) {
    for (auto g : {Geometry::quantile_area, Geometry::box, Geometry::violin_like_density,
                   Geometry::letter_value_counts}) {
        if (to_string(g) == name) return g;
    }
    throw Error(Errc::unsupported_geometry, "unknown geometry '" + std::string(name) + "'");
}

Recommendation recommend(const CyclicGranularity& x, const CyclicGranularity& facet,
                         const PairClassification& classification, std::optional<std::int64_t> typical_cell_n,
                         const LevelBounds& bounds) {
    Recommendation r;
    r.verdict = classification.verdict;
    r.x_category = categorize_levels(x.level_count(), bounds);
    r.facet_category = categorize_levels(facet.level_count(), bounds);

    if (classification.verdict == Verdict::clash) {
        r.refused = true;
        std::string cells;
        const std::size_t shown = std::min<std::size_t>(classification.evidence.size(), 5);
        for (std::size_t i = 0; i < shown; ++i) {
            const auto& c = classification.evidence[i];
            cells += (i ? ", " : "") + std::string("(") + apply_labels(facet, c.k) + ", " + apply_labels(x, c.l) + ")";
        }
        r.notes.push_back("refused: '" + facet.name() + "' and '" + x.name() + "' clash; " +
                          std::to_string(classification.evidence.size()) + " empty cells, e.g. " + cells);
        return r;
    }

    if (r.x_category == LevelsCategory::high || r.x_category == LevelsCategory::very_high) {
        r.geometries = {Geometry::quantile_area, Geometry::violin_like_density};
    } else {
        r.geometries = {Geometry::box, Geometry::violin_like_density};
    }
    if (typical_cell_n && *typical_cell_n >= 1000) r.geometries.push_back(Geometry::letter_value_counts);

    if (r.facet_category == LevelsCategory::very_high) {
        r.notes.push_back("'" + facet.name() + "' has " + std::to_string(facet.level_count()) +
                          " levels; consider a coarser facet");
    }
    if (classification.verdict == Verdict::near_clash) {
        r.notes.push_back("warning: near-clash with " + std::to_string(classification.evidence.size()) +
                          " rare cells; their summaries rest on few observations");
    }
    r.notes.push_back("swapping roles compares '" + facet.name() + "' levels within each '" + x.name() +
                      "' level instead of '" + x.name() + "' levels within each '" + facet.name() + "' level");
    return r;
}

nlohmann::ordered_json emit_plot_spec(const std::vector<CellSummary>& summaries, const CyclicGranularity& x,
                                      const CyclicGranularity& facet, std::string_view response, Geometry geometry,
                                      const PlotSpecOptions& opts) {
    using json = nlohmann::ordered_json;
    if (summaries.empty()) throw Error(Errc::bad_value, "no summaries to plot");

    switch (geometry) {
        case Geometry::quantile_area:
            if (probability_count(summaries) == 0) {
                throw Error(Errc::unsupported_geometry, "quantile-area needs quantiles");
            }
            break;
        case Geometry::box:
            for (double p : {0.25, 0.5, 0.75}) {
                if (!has_probability(summaries, p)) {
                    throw Error(Errc::unsupported_geometry, "box needs the 0.25, 0.5 and 0.75 quantiles");
                }
            }
            break;
        case Geometry::violin_like_density:
            if (probability_count(summaries) < kDensityGrid) {
                throw Error(Errc::unsupported_geometry, "violin-like-density needs a grid of at least " +
                                                            std::to_string(kDensityGrid) +
                                                            " quantiles; no density estimate is computed");
            }
            break;
        case Geometry::letter_value_counts: {
            const bool any = std::any_of(summaries.begin(), summaries.end(),
                                         [](const CellSummary& c) { return !c.letter_values.empty(); });
            if (!any) throw Error(Errc::unsupported_geometry, "letter-value-counts needs letter values");
            break;
        }
    }

    json warnings = json::array();
    const bool clash = opts.classification && opts.classification->verdict == Verdict::clash;
    std::int64_t empty = 0;
    for (const auto& c : summaries) empty += c.n == 0 ? 1 : 0;
    if ((clash || empty > 0) && !opts.force) {
        throw Error(Errc::refused_clash, "'" + facet.name() + "' x '" + x.name() + "' has " + std::to_string(empty) +
                                             " empty cells; pass force to emit anyway");
    }
    if (clash || empty > 0) {
        warnings.push_back(json{{"kind", "clash"}, {"empty_cells", empty}});
    }
    if (opts.classification && opts.classification->verdict == Verdict::near_clash) {
        json cells = json::array();
        for (const auto& c : opts.classification->evidence) {
            cells.push_back(json{{"facet", apply_labels(facet, c.k)}, {"x", apply_labels(x, c.l)}, {"count", c.count}});
        }
        warnings.push_back(json{{"kind", "near-clash"}, {"cells", cells}});
    }
    for (const auto& c : summaries) {
        if (c.n > 0 && c.n < opts.small_cell) {
            warnings.push_back(json{{"kind", "small-cell"}, {"facet", c.facet_label}, {"x", c.x_label}, {"n", c.n}});
        }
    }

    json doc;
    doc["format"] = "granular-plot-spec";
    doc["version"] = 1;
    doc["data"] = json{{"source", opts.data_source}, {"response", std::string(response)}};
    doc["mapping"] = json{{"x", axis(x)}, {"facet", axis(facet)}, {"y", std::string(response)}};
    doc["geometry"] = std::string(to_string(geometry));
    json probs = json::array();
    for (const auto& c : summaries) {
        if (c.n == 0) continue;
        for (const auto& q : c.quantiles) probs.push_back(q.first);
        break;
    }
    doc["probabilities"] = probs;
    doc["warnings"] = warnings;

    json facets = json::array();
    std::optional<Level> current;
    for (const auto& c : summaries) {
        if (!current || *current != c.facet) {
            facets.push_back(json{{"level", c.facet}, {"label", c.facet_label}, {"x", json::array()}});
            current = c.facet;
        }
        json cell;
        cell["level"] = c.x;
        cell["label"] = c.x_label;
        cell["n"] = c.n;
        cell["mean"] = c.mean ? json(*c.mean) : json(nullptr);
        cell["min"] = c.min ? json(*c.min) : json(nullptr);
        cell["max"] = c.max ? json(*c.max) : json(nullptr);
        json qs = json::array();
        for (const auto& q : c.quantiles) qs.push_back(json{{"p", q.first}, {"value", q.second}});
        cell["quantiles"] = qs;
        if (geometry == Geometry::letter_value_counts) {
            json lv = json::array();
            for (const auto& l : c.letter_values) {
                lv.push_back(json{{"depth", l.depth}, {"lower", l.lower}, {"upper", l.upper}});
            }
            cell["letter_values"] = lv;
        }
        facets.back()["x"].push_back(std::move(cell));
    }
    doc["facets"] = facets;
    return doc;
}

void export_summaries_csv(std::ostream& out, const std::vector<CellSummary>& summaries) {
    csv::write_row(out, {"facet", "x", "prob", "value", "n"});
    for (const auto& c : summaries) {
        if (c.n == 0) {
            csv::write_row(out, {c.facet_label, c.x_label, "", "", "0"});
            continue;
        }
        for (const auto& [p, v] : c.quantiles) {
            csv::write_row(out, {c.facet_label, c.x_label, number(p), number(v), std::to_string(c.n)});
        }
    }
}

}  // namespace granular
