// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#include "granular/core/hierarchy.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "granular/error.hpp"

namespace granular {

namespace {

[[noreturn]] void fail(Errc code, const std::string& message) { throw Error(code, message); }

const ConstantPeriod* as_constant(const RungDefinition& r) {
    return std::get_if<ConstantPeriod>(&r.rule);
}

}  // namespace

std::optional<RungIndex> HierarchyTable::find(std::string_view name) const {
    for (RungIndex i = 0; i < def_.rungs.size(); ++i) {
        if (def_.rungs[i].name == name) return i;
    }
    return std::nullopt;
}

RungIndex HierarchyTable::index_of(std::string_view name) const {
    if (auto r = find(name)) return *r;
    fail(Errc::unknown_rung, "hierarchy '" + def_.name + "' has no rung named '" + std::string(name) + "'");
}

bool HierarchyTable::is_irregular(RungIndex r) const { return irregular_.at(r).has_value(); }

RungIndex HierarchyTable::counted_in(RungIndex r) const {
    return is_irregular(r) ? irregular_[r]->base : r;
}

std::int64_t HierarchyTable::period(RungIndex r) const {
    if (const auto* c = as_constant(rung(r))) return c->period;
    fail(Errc::irregular_span, "rung '" + rung(r).name + "' has an irregular mapping");
}

const HierarchyTable::Irregular& HierarchyTable::irregular(RungIndex r) const {
    const auto& ir = irregular_.at(r);
    if (!ir) fail(Errc::kind_mismatch, "rung '" + rung(r).name + "' has a constant period");
    return *ir;
}

std::int64_t HierarchyTable::cumulative(RungIndex r, std::int64_t k) const {
    const auto& ir = irregular(r);
    const auto reps = static_cast<std::int64_t>(ir.prefix.size()) - 1;
    const std::int64_t aligned = k + ir.start;
    const std::int64_t full = floor_div(aligned, reps);
    const std::int64_t j = aligned - full * reps;
    return full * ir.total + ir.prefix[j] - ir.prefix[ir.start];
}

std::int64_t HierarchyTable::containing(RungIndex r, std::int64_t g) const {
    const auto& ir = irregular(r);
    const auto reps = static_cast<std::int64_t>(ir.prefix.size()) - 1;
    const std::int64_t aligned = g + ir.prefix[ir.start];
    const std::int64_t full = floor_div(aligned, ir.total);
    const std::int64_t rem = aligned - full * ir.total;
    const auto it = std::upper_bound(ir.prefix.begin(), ir.prefix.end(), rem);
    const auto j = static_cast<std::int64_t>(it - ir.prefix.begin()) - 1;
    return full * reps + j - ir.start;
}

std::int64_t HierarchyTable::cardinality(RungIndex r, std::int64_t k) const {
    return cumulative(r, k + 1) - cumulative(r, k);
}

std::int64_t HierarchyTable::cycle_total(RungIndex r) const { return irregular(r).total; }

std::vector<std::int64_t> HierarchyTable::granules(IndexValue z) const {
    std::vector<std::int64_t> g(size());
    granules(z, g);
    return g;
}

void HierarchyTable::granules(IndexValue z, std::span<std::int64_t> g) const {
    g[0] = z.z;
    for (RungIndex i = 0; i + 1 < size(); ++i) {
        if (const auto& ir = irregular_[i]) {
            g[i + 1] = containing(i, g[ir->base]);
        } else {
            g[i + 1] = floor_div(g[i] + def_.rungs[i].phase, std::get<ConstantPeriod>(def_.rungs[i].rule).period);
        }
    }
}

HierarchyTable validate_hierarchy(HierarchyDefinition def) {
    auto& rungs = def.rungs;
    if (rungs.size() < 2) {
        fail(Errc::empty_hierarchy, "hierarchy '" + def.name + "' needs at least two rungs, found " +
                                        std::to_string(rungs.size()));
    }

    std::set<std::string> names;
    for (const auto& r : rungs) {
        if (r.name.empty()) fail(Errc::parse_error, "rung with an empty name");
        if (!names.insert(r.name).second) fail(Errc::duplicate_name, "duplicate rung name '" + r.name + "'");
    }

    const auto* top = as_constant(rungs.back());
    if (top == nullptr || top->period != 1) {
        fail(Errc::non_sentinel_top, "top rung '" + rungs.back().name + "' must carry the sentinel period 1");
    }
    if (rungs.back().phase != 0) fail(Errc::bad_alignment, "top rung cannot carry a phase");

    HierarchyTable h;
    h.irregular_.resize(rungs.size());

    for (RungIndex i = 0; i + 1 < rungs.size(); ++i) {
        auto& r = rungs[i];
        if (const auto* c = as_constant(r)) {
            if (c->period < 2) {
                fail(Errc::bad_period, "rung '" + r.name + "' has period " + std::to_string(c->period) +
                                           "; periods below the top rung must be at least 2");
            }
            if (r.phase < 0 || r.phase >= c->period) {
                fail(Errc::bad_alignment, "phase of rung '" + r.name + "' must lie in [0, " +
                                              std::to_string(c->period) + ")");
            }
            continue;
        }

        auto& m = std::get<IrregularMapping>(r.rule);
        if (m.cardinalities.empty()) fail(Errc::bad_cardinalities, "rung '" + r.name + "' has no cardinalities");
        if (m.repetition == 0) m.repetition = static_cast<std::int64_t>(m.cardinalities.size());
        if (m.repetition != static_cast<std::int64_t>(m.cardinalities.size())) {
            fail(Errc::bad_cardinalities, "rung '" + r.name + "': repetition length " +
                                              std::to_string(m.repetition) + " does not match " +
                                              std::to_string(m.cardinalities.size()) + " cardinalities");
        }
        for (auto c : m.cardinalities) {
            if (c < 1) fail(Errc::bad_cardinalities, "rung '" + r.name + "' has a cardinality below 1");
        }
        if (m.cycle_start < 0 || m.cycle_start >= m.repetition) {
            fail(Errc::bad_alignment, "cycle start of rung '" + r.name + "' lies outside its table");
        }
        if (r.phase != 0) fail(Errc::bad_alignment, "irregular rung '" + r.name + "' cannot carry a phase");

        RungIndex base = i;
        if (!m.counted_in.empty() && m.counted_in != r.name) {
            auto it = std::find_if(rungs.begin(), rungs.begin() + static_cast<std::ptrdiff_t>(i),
                                   [&](const RungDefinition& d) { return d.name == m.counted_in; });
            if (it == rungs.begin() + static_cast<std::ptrdiff_t>(i)) {
                fail(Errc::unknown_rung, "rung '" + r.name + "' is counted in '" + m.counted_in +
                                             "', which is not a lower rung");
            }
            base = static_cast<RungIndex>(it - rungs.begin());
            for (RungIndex j = base; j < i; ++j) {
                if (as_constant(rungs[j]) == nullptr) {
                    fail(Errc::bad_cardinalities, "rungs between '" + m.counted_in + "' and '" + r.name +
                                                      "' must have constant periods");
                }
            }
        }

        HierarchyTable::Irregular ir;
        ir.base = base;
        ir.prefix.resize(m.cardinalities.size() + 1, 0);
        std::partial_sum(m.cardinalities.begin(), m.cardinalities.end(), ir.prefix.begin() + 1);
        ir.total = ir.prefix.back();
        ir.start = m.cycle_start;
        h.irregular_[i] = std::move(ir);
    }

    h.def_ = std::move(def);
    return h;
}

std::int64_t period_length(const HierarchyTable& h, RungIndex lower, RungIndex upper) {
    if (lower > upper || upper >= h.size()) {
        throw Error(Errc::unknown_rung, "invalid rung span");
    }
    std::int64_t p = 1;
    for (RungIndex i = lower; i < upper; ++i) p *= h.period(i);
    return p;
}

std::int64_t linear_granule(const HierarchyTable& h, IndexValue z, RungIndex m) {
    if (m >= h.size()) throw Error(Errc::unknown_rung, "rung index out of range");
    return h.granules(z)[m];
}

std::size_t irregular_count(const HierarchyTable& h, RungIndex lower, RungIndex upper) {
    std::size_t n = 0;
    for (RungIndex i = lower; i < upper; ++i) n += h.is_irregular(i) ? 1 : 0;
    return n;
}

HierarchyTable select_rungs(const HierarchyTable& h, const std::vector<std::string>& names) {
    std::vector<RungIndex> picked;
    for (const auto& n : names) picked.push_back(h.index_of(n));
    std::sort(picked.begin(), picked.end());
    picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
    if (picked.size() < 2) throw Error(Errc::empty_hierarchy, "a sub-ladder needs at least two rungs");

    HierarchyDefinition out;
    out.name = h.name();
    out.origin = h.origin();

    auto picked_pos = [&](RungIndex r) -> std::optional<std::size_t> {
        auto it = std::find(picked.begin(), picked.end(), r);
        if (it == picked.end()) return std::nullopt;
        return static_cast<std::size_t>(it - picked.begin());
    };

    for (std::size_t s = 0; s < picked.size(); ++s) {
        const RungIndex a = picked[s];
        RungDefinition rd;
        rd.name = h.rung(a).name;
        rd.seconds = h.rung(a).seconds;
        if (s + 1 == picked.size()) {
            rd.rule = ConstantPeriod{1};
            out.rungs.push_back(std::move(rd));
            break;
        }
        const RungIndex b = picked[s + 1];
        const std::size_t n_irr = irregular_count(h, a, b);
        if (n_irr == 0) {
            std::int64_t p = 1;
            std::int64_t phase = 0;
            for (RungIndex i = a; i < b; ++i) {
                phase += h.phase(i) * p;
                p *= h.period(i);
            }
            rd.rule = ConstantPeriod{p};
            rd.phase = phase;
        } else {
            if (n_irr > 1) {
                throw Error(Errc::unsupported_span, "cannot merge two irregular rungs between '" + h.rung(a).name +
                                                        "' and '" + h.rung(b).name + "'");
            }
            RungIndex r = a;
            while (!h.is_irregular(r)) ++r;
            if (r + 1 != b) {
                throw Error(Errc::unsupported_span, "rung '" + h.rung(r + 1).name +
                                                        "' sits directly above an irregular mapping and cannot be dropped");
            }
            const RungIndex base = h.counted_in(r);
            IrregularMapping m = std::get<IrregularMapping>(h.rung(r).rule);
            if (base >= a) {
                if (!picked_pos(base)) {
                    // Fold the dropped counting rung into this one.
                    std::int64_t scale = 1;
                    std::int64_t offset = 0;
                    for (RungIndex i = a; i < base; ++i) {
                        offset += h.phase(i) * scale;
                        scale *= h.period(i);
                    }
                    if (offset != 0) {
                        throw Error(Errc::bad_alignment, "origin is not aligned to a '" + h.rung(base).name +
                                                             "' boundary; cannot fold it into '" + rd.name + "'");
                    }
                    for (auto& c : m.cardinalities) c *= scale;
                    m.counted_in.clear();
                } else {
                    m.counted_in = base == a ? std::string() : h.rung(base).name;
                }
            } else {
                if (!picked_pos(base)) {
                    throw Error(Errc::unsupported_span, "rung '" + rd.name + "' is counted in '" +
                                                            h.rung(base).name + "', which was dropped");
                }
                m.counted_in = h.rung(base).name;
            }
            rd.rule = std::move(m);
        }
        out.rungs.push_back(std::move(rd));
    }
    return validate_hierarchy(std::move(out));
}

HierarchyTable slice(const HierarchyTable& h, std::string_view lower, std::string_view upper) {
    const RungIndex lo = h.index_of(lower);
    const RungIndex hi = h.index_of(upper);
    if (lo >= hi) throw Error(Errc::unknown_rung, "slice bounds out of order");
    std::vector<std::string> names;
    for (RungIndex i = lo; i <= hi; ++i) names.push_back(h.rung(i).name);
    return select_rungs(h, names);
}

}  // namespace granular
