// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#include "granular/cyclic/engine.hpp"

#include <array>

#include "granular/error.hpp"

namespace granular {

namespace {

constexpr std::size_t kStackRungs = 32;

//! Calls f with the granules of every rung at z.
template <class F>
auto with_granules(const HierarchyTable& h, IndexValue z, F&& f) {
    if (h.size() <= kStackRungs) {
        std::array<std::int64_t, kStackRungs> buf;
        std::span<std::int64_t> g(buf.data(), h.size());
        h.granules(z, g);
        return f(std::span<const std::int64_t>(g));
    }
    const auto g = h.granules(z);
    return f(std::span<const std::int64_t>(g));
}

//! Position within rung m of the rung-l granule, all of [l, m) constant.
Level compose_constant(const HierarchyTable& h, std::span<const std::int64_t> g, RungIndex l, RungIndex m) {
    Level v = 0;
    std::int64_t scale = 1;
    for (RungIndex i = l; i < m; ++i) {
        const std::int64_t p = h.period(i);
        v += scale * floor_mod(g[i] + h.phase(i), p);
        scale *= p;
    }
    return v;
}

//! Position of the counting granule of irregular rung r within rung m.
Level counting_offset(const HierarchyTable& h, std::span<const std::int64_t> g, RungIndex r, RungIndex m) {
    const RungIndex b = h.counted_in(r);
    const std::int64_t k = g[r + 1];
    Level v = g[b] - h.cumulative(r, k);
    if (m > r + 1) {
        const Level above = compose_constant(h, g, r + 1, m);
        v += h.cumulative(r, k) - h.cumulative(r, k - above);
    }
    return v;
}

Level compose_granules(const HierarchyTable& h, std::span<const std::int64_t> g, RungIndex l, RungIndex m) {
    std::optional<RungIndex> irr;
    for (RungIndex i = l; i < m; ++i) {
        if (!h.is_irregular(i)) continue;
        if (irr) {
            throw Error(Errc::unsupported_span, "span '" + h.rung(l).name + "' to '" + h.rung(m).name +
                                                    "' holds more than one irregular rung");
        }
        irr = i;
    }
    if (!irr) return compose_constant(h, g, l, m);

    const RungIndex r = *irr;
    const RungIndex b = h.counted_in(r);
    const Level offset = counting_offset(h, g, r, m);
    if (l <= b) return compose_constant(h, g, l, b) + period_length(h, l, b) * offset;
    return floor_div(offset, period_length(h, b, l));
}

void check_span(const HierarchyTable& h, RungIndex l, RungIndex m) {
    if (l >= m || m >= h.size()) throw Error(Errc::unknown_rung, "invalid rung span");
}

}  // namespace

Level circular_value(const HierarchyTable& h, const CyclicGranularity& d, IndexValue z) {
    if (d.kind() != CyclicKind::circular || d.is_derived()) {
        throw Error(Errc::kind_mismatch, "'" + d.name() + "' is not a circular granularity");
    }
    const RungIndex l = h.index_of(d.lower());
    const RungIndex m = h.index_of(d.upper());
    if (irregular_count(h, l, m) != 0) {
        throw Error(Errc::kind_mismatch, "'" + d.name() + "' is not circular in hierarchy '" + h.name() + "'");
    }
    return with_granules(h, z, [&](std::span<const std::int64_t> g) {
        std::int64_t shift = 0;
        std::int64_t scale = 1;
        for (RungIndex i = l; i < m; ++i) {
            shift += h.phase(i) * scale;
            scale *= h.period(i);
        }
        return floor_mod(g[l] + shift, scale);
    });
}

Level quasi_circular_value(const HierarchyTable& h, const CyclicGranularity& d, IndexValue z) {
    if (d.kind() != CyclicKind::quasi_circular || d.is_derived()) {
        throw Error(Errc::kind_mismatch, "'" + d.name() + "' is not a quasi-circular granularity");
    }
    const RungIndex l = h.index_of(d.lower());
    const RungIndex m = h.index_of(d.upper());
    const RungIndex r = m - 1;
    if (!h.is_irregular(r) || h.counted_in(r) != l || irregular_count(h, l, m) != 1) {
        throw Error(Errc::kind_mismatch, "'" + d.name() + "' does not run from a counting rung to the rung above " +
                                             "its irregular mapping; use compose_up");
    }
    return with_granules(h, z, [&](std::span<const std::int64_t> g) { return g[l] - h.cumulative(r, g[m]); });
}

Level aperiodic_value(const AperiodicEventCalendar& cal, IndexValue z) { return cal.category_at(z); }

Level compose_up(const HierarchyTable& h, RungIndex l, RungIndex m, IndexValue z) {
    check_span(h, l, m);
    return with_granules(h, z, [&](std::span<const std::int64_t> g) { return compose_granules(h, g, l, m); });
}

Level reduce_to_single(const HierarchyTable& h, RungIndex l2, RungIndex m2, Level v, RungIndex l1, RungIndex m1) {
    if (!(l2 <= l1 && l1 < m1 && m1 <= m2) || m2 >= h.size()) {
        throw Error(Errc::unknown_rung, "target span must lie inside the known span");
    }
    const std::int64_t known = period_length(h, l2, m2);
    if (v < 0 || v >= known) {
        throw Error(Errc::out_of_domain, "level " + std::to_string(v) + " outside [0, " + std::to_string(known) + ")");
    }
    return floor_div(v, period_length(h, l2, l1)) % period_length(h, l1, m1);
}

std::string apply_labels(const CyclicGranularity& d, Level v) {
    const auto n = d.known_level_count();
    if (v < 0 || (n && v >= *n)) {
        throw Error(Errc::out_of_domain, "level " + std::to_string(v) + " is outside '" + d.name() + "'");
    }
    if (const auto& lm = d.labels()) return lm->label(v);
    return std::to_string(v);
}

Level cyclic_value(const HierarchyTable& h, const CyclicGranularity& d, IndexValue z) { return Evaluator(h, d)(z); }

Evaluator::Evaluator(const HierarchyTable& h, const CyclicGranularity& d) : h_(&h), d_(d) {
    if (d.is_derived()) {
        shape_ = Shape::derived;
        base_.emplace_back(h, d.base());
    } else if (d.is_aperiodic_event()) {
        shape_ = Shape::events;
    } else {
        lower_ = h.index_of(d.lower());
        upper_ = h.index_of(d.upper());
        if (lower_ >= upper_) throw Error(Errc::unknown_rung, "'" + d.name() + "' has its rungs out of order");
        if (irregular_count(h, lower_, upper_) > 1) {
            throw Error(Errc::unsupported_span, "'" + d.name() + "' spans more than one irregular rung");
        }
    }
}

Level Evaluator::from_granules(std::span<const std::int64_t> g, IndexValue z) const {
    switch (shape_) {
        case Shape::compose: return compose_granules(*h_, g, lower_, upper_);
        case Shape::events: return d_.events().category_at(z);
        case Shape::derived: {
            const Level v = base_.front().from_granules(g, z);
            return d_.remap()[static_cast<std::size_t>(v)];
        }
    }
    return 0;
}

Level Evaluator::operator()(IndexValue z) const {
    if (shape_ == Shape::events) return d_.events().category_at(z);
    return with_granules(*h_, z, [&](std::span<const std::int64_t> g) { return from_granules(g, z); });
}

std::vector<Level> Evaluator::evaluate(std::span<const IndexValue> zs) const {
    std::vector<Level> out;
    out.reserve(zs.size());
    for (auto z : zs) out.push_back((*this)(z));
    return out;
}

}  // namespace granular
