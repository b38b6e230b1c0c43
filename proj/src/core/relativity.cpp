// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#include "granular/core/relativity.hpp"

#include <algorithm>
#include <map>

#include "granular/error.hpp"

namespace granular {

namespace {

void require_span(const GranuleMap& m) {
    if (m.span.size() <= 0 || m.granules.empty()) {
        throw Error(Errc::empty_span, "granularity has no granules in the materialized span");
    }
}

bool contains(const IndexInterval& outer, const IndexInterval& inner) {
    return outer.begin <= inner.begin && inner.end <= outer.end;
}

}  // namespace

GranuleMap materialize(const HierarchyTable& h, RungIndex m, IndexInterval span) {
    if (span.size() <= 0) throw Error(Errc::empty_span, "span is empty");
    GranuleMap out;
    out.span = span;
    std::int64_t current = linear_granule(h, IndexValue{span.begin}, m);
    std::int64_t start = span.begin;
    for (std::int64_t z = span.begin + 1; z <= span.end; ++z) {
        const bool at_end = z == span.end;
        const std::int64_t g = at_end ? current + 1 : linear_granule(h, IndexValue{z}, m);
        if (g != current) {
            out.granules.push_back({current, {start, z}, true});
            current = g;
            start = z;
        }
    }
    // A granule is complete when its neighbours outside the span differ.
    if (!out.granules.empty()) {
        auto& first = out.granules.front();
        if (span.begin > 0 && linear_granule(h, IndexValue{span.begin - 1}, m) == first.index) first.complete = false;
        auto& last = out.granules.back();
        if (linear_granule(h, IndexValue{span.end}, m) == last.index) last.complete = false;
    }
    return out;
}

GranuleMap make_granule_map(IndexInterval span, std::vector<IndexInterval> extents) {
    GranuleMap out;
    out.span = span;
    std::int64_t idx = 0;
    std::int64_t prev_end = span.begin;
    for (const auto& e : extents) {
        if (e.size() <= 0 || e.begin < prev_end || e.end > span.end) {
            throw Error(Errc::bad_value, "granule extents must be non-empty, ordered, disjoint and inside the span");
        }
        out.granules.push_back({idx++, e, true});
        prev_end = e.end;
    }
    return out;
}

bool finer_than(const GranuleMap& g, const GranuleMap& h) {
    require_span(g);
    require_span(h);
    std::size_t j = 0;
    for (const auto& gi : g.granules) {
        while (j < h.granules.size() && h.granules[j].extent.end <= gi.extent.begin) ++j;
        if (j == h.granules.size() || !contains(h.granules[j].extent, gi.extent)) return false;
    }
    return true;
}

bool groups_into(const GranuleMap& g, const GranuleMap& h) {
    require_span(g);
    require_span(h);
    std::size_t j = 0;
    for (const auto& hi : h.granules) {
        while (j < g.granules.size() && g.granules[j].extent.end <= hi.extent.begin) ++j;
        std::int64_t covered = 0;
        std::size_t k = j;
        for (; k < g.granules.size() && g.granules[k].extent.begin < hi.extent.end; ++k) {
            if (!contains(hi.extent, g.granules[k].extent)) return false;
            covered += g.granules[k].extent.size();
        }
        if (covered != hi.extent.size()) return false;
        j = k;
    }
    return true;
}

std::optional<Periodicity> is_periodical(const GranuleMap& g, const GranuleMap& h) {
    require_span(g);
    require_span(h);

    // Constituent granules of g for each complete granule of h.
    std::map<std::int64_t, std::vector<std::int64_t>> parts;
    std::size_t j = 0;
    for (const auto& hi : h.granules) {
        while (j < g.granules.size() && g.granules[j].extent.end <= hi.extent.begin) ++j;
        std::vector<std::int64_t> s;
        std::int64_t covered = 0;
        std::size_t k = j;
        for (; k < g.granules.size() && g.granules[k].extent.begin < hi.extent.end; ++k) {
            if (!contains(hi.extent, g.granules[k].extent)) return std::nullopt;
            covered += g.granules[k].extent.size();
            s.push_back(g.granules[k].index);
        }
        if (covered != hi.extent.size()) return std::nullopt;
        j = k;
        if (hi.complete && !s.empty()) parts.emplace(hi.index, std::move(s));
    }

    const auto n = static_cast<std::int64_t>(parts.size());
    if (n < 2) {
        throw Error(Errc::insufficient_span, "span holds fewer than two complete granules of the coarser granularity");
    }

    const std::int64_t first = parts.begin()->first;
    for (std::int64_t r = 1; 2 * r <= n; ++r) {
        auto shifted = parts.find(first + r);
        if (shifted == parts.end()) continue;
        const std::int64_t p = shifted->second.front() - parts.begin()->second.front();
        bool ok = p > 0;
        for (auto it = parts.begin(); ok && it != parts.end(); ++it) {
            auto other = parts.find(it->first + r);
            if (other == parts.end()) continue;
            const auto& a = it->second;
            const auto& b = other->second;
            if (a.size() != b.size()) {
                ok = false;
                break;
            }
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (b[i] != a[i] + p) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) return Periodicity{r, p};
    }
    return std::nullopt;
}

}  // namespace granular
