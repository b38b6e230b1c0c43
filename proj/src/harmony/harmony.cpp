// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#include "granular/harmony/harmony.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "granular/cyclic/engine.hpp"
#include "granular/error.hpp"
#include "granular/table/csv.hpp"

namespace granular {

namespace {

void check_level(const std::string& name, Level v, Level n) {
    if (v < 0 || v >= n) {
        throw Error(Errc::out_of_domain, "'" + name + "' produced level " + std::to_string(v) + " outside [0, " +
                                             std::to_string(n) + ")");
    }
}

//! Ordered-pair screen shared by both modes; `classify` sees each unordered
//! pair once since verdicts do not depend on orientation.
template <class Classify>
std::vector<HarmonyRow> screen(const std::vector<CyclicGranularity>& ds, const HarmonyOptions& opts,
                               Classify&& classify) {
    if (ds.size() < 2) throw Error(Errc::usage, "harmony screening needs at least two granularities");
    const std::size_t n = ds.size();
    std::vector<std::optional<Level>> levels(n);
    for (std::size_t i = 0; i < n; ++i) levels[i] = ds[i].known_level_count();
    auto fits = [&](std::size_t i) { return levels[i] && *levels[i] <= opts.max_levels; };

    std::map<std::pair<std::size_t, std::size_t>, Verdict> verdicts;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (fits(i) && fits(j)) verdicts[{i, j}] = classify(ds[i], ds[j]).verdict;
        }
    }

    std::vector<HarmonyRow> rows;
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t f = 0; f < n; ++f) {
            if (f == x || !fits(f) || !fits(x)) continue;
            const Verdict v = verdicts.at({std::min(f, x), std::max(f, x)});
            if (v == Verdict::clash || (v == Verdict::near_clash && !opts.keep_near_clashes)) continue;
            rows.push_back({ds[f].name(), ds[x].name(), *levels[f], *levels[x], v});
        }
    }
    return rows;
}

}  // namespace

std::string_view to_string(OccupancyMode m) { return m == OccupancyMode::structural ? "structural" : "observed"; }

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::harmony: return "harmony";
        case Verdict::near_clash: return "near-clash";
        case Verdict::clash: return "clash";
    }
    return "unknown";
}

std::int64_t OccupancyTable::total() const { return std::accumulate(counts.begin(), counts.end(), std::int64_t{0}); }

std::vector<std::int64_t> OccupancyTable::row_totals() const {
    std::vector<std::int64_t> out(static_cast<std::size_t>(k), 0);
    for (Level a = 0; a < k; ++a) {
        for (Level b = 0; b < l; ++b) out[static_cast<std::size_t>(a)] += at(a, b);
    }
    return out;
}

std::vector<std::int64_t> OccupancyTable::column_totals() const {
    std::vector<std::int64_t> out(static_cast<std::size_t>(l), 0);
    for (Level a = 0; a < k; ++a) {
        for (Level b = 0; b < l; ++b) out[static_cast<std::size_t>(b)] += at(a, b);
    }
    return out;
}

OccupancyTable OccupancyTable::transposed() const {
    OccupancyTable t = *this;
    std::swap(t.ci, t.cj);
    std::swap(t.k, t.l);
    for (Level a = 0; a < k; ++a) {
        for (Level b = 0; b < l; ++b) t.counts[static_cast<std::size_t>(b * k + a)] = at(a, b);
    }
    return t;
}

OccupancyTable cross_tab(const HierarchyTable& h, const CyclicGranularity& ci, const CyclicGranularity& cj,
                         std::optional<IndexInterval> span) {
    const auto pi = bottom_period(h, ci);
    const auto pj = bottom_period(h, cj);
    std::optional<std::int64_t> common;
    if (pi && pj) common = std::lcm(*pi, *pj);
    if (!span) {
        if (!common) {
            throw Error(Errc::insufficient_span, "'" + ci.name() + "' and '" + cj.name() +
                                                     "' have no common period; declare a span");
        }
        span = IndexInterval{0, *common};
    }
    if (span->begin < 0 || span->size() <= 0) throw Error(Errc::empty_span, "structural scan over an empty span");
    if (has_constant_bottom_period(h, ci) && has_constant_bottom_period(h, cj) && span->size() < *common) {
        throw Error(Errc::insufficient_span, "span of " + std::to_string(span->size()) +
                                                 " granules is shorter than the common period " +
                                                 std::to_string(*common) + " of '" + ci.name() + "' and '" +
                                                 cj.name() + "'");
    }

    OccupancyTable o;
    o.ci = ci.name();
    o.cj = cj.name();
    o.k = ci.level_count();
    o.l = cj.level_count();
    o.mode = OccupancyMode::structural;
    o.span = *span;
    o.counts.assign(static_cast<std::size_t>(o.k * o.l), 0);

    const Evaluator ei(h, ci);
    const Evaluator ej(h, cj);
    std::vector<std::int64_t> g(h.size());
    for (std::int64_t z = span->begin; z < span->end; ++z) {
        h.granules(IndexValue{z}, g);
        const Level a = ei.from_granules(g, IndexValue{z});
        const Level b = ej.from_granules(g, IndexValue{z});
        check_level(o.ci, a, o.k);
        check_level(o.cj, b, o.l);
        ++o.counts[static_cast<std::size_t>(a * o.l + b)];
    }
    return o;
}

OccupancyTable cross_tab(const GranularTable& t, const std::string& ci, const std::string& cj) {
    const auto& a = t.cyclic(ci);
    const auto& b = t.cyclic(cj);
    OccupancyTable o;
    o.ci = ci;
    o.cj = cj;
    o.k = a.descriptor.level_count();
    o.l = b.descriptor.level_count();
    o.mode = OccupancyMode::observed;
    o.counts.assign(static_cast<std::size_t>(o.k * o.l), 0);
    for (std::size_t i = 0; i < t.rows(); ++i) {
        check_level(ci, a.values[i], o.k);
        check_level(cj, b.values[i], o.l);
        ++o.counts[static_cast<std::size_t>(a.values[i] * o.l + b.values[i])];
    }
    return o;
}

PairClassification classify_pair(const OccupancyTable& o, NearClashRule rule) {
    PairClassification pc;
    pc.mode = o.mode;
    pc.threshold = rule.threshold;
    const auto rows = o.row_totals();
    const auto cols = o.column_totals();
    std::vector<Cell> empty;
    std::vector<Cell> rare;
    for (Level a = 0; a < o.k; ++a) {
        for (Level b = 0; b < o.l; ++b) {
            const std::int64_t c = o.at(a, b);
            if (c == 0) {
                empty.push_back({a, b, 0, 0.0});
                continue;
            }
            const double expect = std::max(static_cast<double>(rows[static_cast<std::size_t>(a)]) / static_cast<double>(o.l),
                                           static_cast<double>(cols[static_cast<std::size_t>(b)]) / static_cast<double>(o.k));
            const double ratio = static_cast<double>(c) / expect;
            if (ratio < rule.threshold) rare.push_back({a, b, c, ratio});
        }
    }
    if (!empty.empty()) {
        pc.verdict = Verdict::clash;
        pc.evidence = std::move(empty);
    } else if (!rare.empty()) {
        pc.verdict = Verdict::near_clash;
        pc.evidence = std::move(rare);
    }
    return pc;
}

std::vector<HarmonyRow> harmony_table(const std::vector<CyclicGranularity>& ds, const GranularTable& t,
                                      const HarmonyOptions& opts) {
    return screen(ds, opts, [&](const CyclicGranularity& a, const CyclicGranularity& b) {
        return classify_pair(cross_tab(t, a.name(), b.name()), opts.rule);
    });
}

std::vector<HarmonyRow> harmony_table(const std::vector<CyclicGranularity>& ds, const HierarchyTable& h,
                                      std::optional<IndexInterval> span, const HarmonyOptions& opts) {
    return screen(ds, opts, [&](const CyclicGranularity& a, const CyclicGranularity& b) {
        return classify_pair(cross_tab(h, a, b, span), opts.rule);
    });
}

void export_harmony_csv(std::ostream& out, const std::vector<HarmonyRow>& rows) {
    csv::write_row(out, {"facet_variable", "x_variable", "facet_levels", "x_levels"});
    for (const auto& r : rows) {
        csv::write_row(out, {r.facet, r.x, std::to_string(r.facet_levels), std::to_string(r.x_levels)});
    }
}

}  // namespace granular
