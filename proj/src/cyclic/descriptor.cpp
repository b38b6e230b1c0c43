// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#include "granular/cyclic/descriptor.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "granular/error.hpp"

namespace granular {

namespace {

//! Largest count of counting-rung granules in one rung-m granule, for the
//! single irregular rung r below m.
std::int64_t widest_upper(const HierarchyTable& h, RungIndex r, RungIndex m) {
    const auto reps = static_cast<std::int64_t>(std::get<IrregularMapping>(h.rung(r).rule).cardinalities.size());
    std::int64_t group = 1;
    std::int64_t phase = 0;
    for (RungIndex i = r + 1; i < m; ++i) {
        phase += h.phase(i) * group;
        group *= h.period(i);
    }
    const std::int64_t cycle = std::lcm(reps, group);
    const std::int64_t first = floor_mod(-phase, group);
    std::int64_t widest = 0;
    for (std::int64_t k = first; k < first + cycle; k += group) {
        std::int64_t sum = 0;
        for (std::int64_t j = 0; j < group; ++j) sum += h.cardinality(r, k + j);
        widest = std::max(widest, sum);
    }
    return widest;
}

std::optional<RungIndex> only_irregular(const HierarchyTable& h, RungIndex lo, RungIndex hi) {
    for (RungIndex i = lo; i < hi; ++i) {
        if (h.is_irregular(i)) return i;
    }
    return std::nullopt;
}

}  // namespace

std::string_view to_string(CyclicKind k) {
    switch (k) {
        case CyclicKind::circular: return "circular";
        case CyclicKind::quasi_circular: return "quasi-circular";
        case CyclicKind::aperiodic: return "aperiodic";
    }
    return "unknown";
}

const AperiodicEventCalendar& CyclicGranularity::events() const {
    if (!events_) throw Error(Errc::kind_mismatch, "'" + name_ + "' is not an event granularity");
    return *events_;
}

const CyclicGranularity& CyclicGranularity::base() const {
    if (!base_) throw Error(Errc::kind_mismatch, "'" + name_ + "' is not a derived granularity");
    return *base_;
}

Level CyclicGranularity::level_count() const {
    if (!levels_) {
        throw Error(Errc::unsupported_span, "'" + name_ + "' spans more than one irregular rung");
    }
    return *levels_;
}

CyclicGranularity CyclicGranularity::with_labels(LabelMap labels) const {
    if (labels.is_named() && levels_ && static_cast<Level>(*labels.size()) != *levels_) {
        throw Error(Errc::bad_labels, "'" + name_ + "' has " + std::to_string(*levels_) + " levels but " +
                                          std::to_string(*labels.size()) + " labels");
    }
    CyclicGranularity out = *this;
    out.labels_ = std::move(labels);
    return out;
}

CyclicGranularity CyclicGranularity::renamed(std::string name) const {
    CyclicGranularity out = *this;
    out.name_ = std::move(name);
    return out;
}

CyclicGranularity make_cyclic(const HierarchyTable& h, std::string_view lower, std::string_view upper,
                              std::string name) {
    const RungIndex l = h.index_of(lower);
    const RungIndex m = h.index_of(upper);
    if (l >= m) {
        throw Error(Errc::unknown_rung, "'" + std::string(lower) + "' is not below '" + std::string(upper) + "'");
    }
    CyclicGranularity d;
    d.name_ = name.empty() ? std::string(lower) + "_" + std::string(upper) : std::move(name);
    d.lower_ = lower;
    d.upper_ = upper;
    const std::size_t n_irr = irregular_count(h, l, m);
    d.kind_ = n_irr == 0 ? CyclicKind::circular : CyclicKind::quasi_circular;
    if (n_irr == 0) {
        d.levels_ = period_length(h, l, m);
    } else if (n_irr == 1) {
        const RungIndex r = *only_irregular(h, l, m);
        const RungIndex b = h.counted_in(r);
        const std::int64_t widest = widest_upper(h, r, m);
        d.levels_ = l <= b ? period_length(h, l, b) * widest : (widest - 1) / period_length(h, b, l) + 1;
    }
    return d;
}

CyclicGranularity make_aperiodic(AperiodicEventCalendar events) {
    CyclicGranularity d;
    d.name_ = events.name();
    d.kind_ = CyclicKind::aperiodic;
    d.levels_ = events.max_category() + 1;
    std::vector<std::string> names(static_cast<std::size_t>(*d.levels_));
    names[0] = "none";
    for (std::size_t i = 1; i < names.size(); ++i) names[i] = "category_" + std::to_string(i);
    for (const auto& c : events.categories()) names[static_cast<std::size_t>(c.index)] = c.label;
    d.labels_ = LabelMap::named(std::move(names));
    d.events_ = std::make_shared<const AperiodicEventCalendar>(std::move(events));
    return d;
}

CyclicGranularity make_remapped(const CyclicGranularity& base, std::vector<Level> remap, std::string name) {
    const Level k = base.level_count();
    if (static_cast<Level>(remap.size()) != k) {
        throw Error(Errc::partial_remap, "remap for '" + name + "' covers " + std::to_string(remap.size()) +
                                             " of the " + std::to_string(k) + " levels of '" + base.name() + "'");
    }
    std::set<Level> image(remap.begin(), remap.end());
    if (*image.begin() < 0 || *image.rbegin() != static_cast<Level>(image.size()) - 1) {
        throw Error(Errc::partial_remap, "remap for '" + name + "' must be onto 0.." +
                                             std::to_string(image.size() - 1));
    }
    CyclicGranularity d;
    d.name_ = std::move(name);
    d.kind_ = base.kind();
    d.levels_ = static_cast<Level>(image.size());
    d.base_ = std::make_shared<const CyclicGranularity>(base);
    d.remap_ = std::move(remap);
    return d;
}

std::optional<std::int64_t> bottom_period(const HierarchyTable& h, const CyclicGranularity& d) {
    if (d.is_derived()) return bottom_period(h, d.base());
    if (d.is_aperiodic_event()) return std::nullopt;
    const RungIndex m = h.index_of(d.upper());
    const std::size_t n_irr = irregular_count(h, 0, m);
    if (n_irr == 0) return period_length(h, 0, m);
    if (n_irr > 1) return std::nullopt;
    const RungIndex r = *only_irregular(h, 0, m);
    const auto reps = static_cast<std::int64_t>(std::get<IrregularMapping>(h.rung(r).rule).cardinalities.size());
    const std::int64_t cycle = std::lcm(reps, period_length(h, r + 1, m));
    return period_length(h, 0, h.counted_in(r)) * (cycle / reps) * h.cycle_total(r);
}

bool has_constant_bottom_period(const HierarchyTable& h, const CyclicGranularity& d) {
    if (d.is_derived()) return has_constant_bottom_period(h, d.base());
    if (d.is_aperiodic_event()) return false;
    return irregular_count(h, 0, h.index_of(d.upper())) == 0;
}

}  // namespace granular
