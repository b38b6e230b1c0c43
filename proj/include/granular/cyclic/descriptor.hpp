// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "granular/core/events.hpp"
#include "granular/core/hierarchy.hpp"
#include "granular/core/labels.hpp"

namespace granular {

enum class CyclicKind { circular, quasi_circular, aperiodic };

std::string_view to_string(CyclicKind k);

//! Names a cyclic granularity and says how to compute it. Three shapes:
//!  - a (lower, upper) pair of hierarchy rungs, circular or quasi-circular;
//!  - an aperiodic event calendar;
//!  - a relabelling (`remap`) of another descriptor's levels.
//! Descriptors refer to rungs by name so they stay valid across sub-ladders
//! of the hierarchy they were built from.
class CyclicGranularity {
 public:
    const std::string& name() const { return name_; }
    CyclicKind kind() const { return kind_; }

    const std::string& lower() const { return lower_; }
    const std::string& upper() const { return upper_; }

    bool is_aperiodic_event() const { return events_ != nullptr; }
    const AperiodicEventCalendar& events() const;

    bool is_derived() const { return base_ != nullptr; }
    const CyclicGranularity& base() const;
    const std::vector<Level>& remap() const { return remap_; }

    //! Number of levels; for quasi-circular granularities the largest
    //! possible count (day_month -> 31). Throws Errc::unsupported_span for
    //! spans this engine cannot evaluate.
    Level level_count() const;
    //! Same, or nullopt instead of throwing.
    std::optional<Level> known_level_count() const { return levels_; }

    const std::optional<LabelMap>& labels() const { return labels_; }
    //! Copy carrying `labels`; a named map must label every level exactly once.
    //! Throws Errc::bad_labels.
    CyclicGranularity with_labels(LabelMap labels) const;
    CyclicGranularity renamed(std::string name) const;

    friend CyclicGranularity make_cyclic(const HierarchyTable& h, std::string_view lower, std::string_view upper,
                                         std::string name);
    friend CyclicGranularity make_aperiodic(AperiodicEventCalendar events);
    friend CyclicGranularity make_remapped(const CyclicGranularity& base, std::vector<Level> remap,
                                           std::string name);

 private:
    CyclicGranularity() = default;

    std::string name_;
    CyclicKind kind_ = CyclicKind::circular;
    std::string lower_;
    std::string upper_;
    std::shared_ptr<const AperiodicEventCalendar> events_;
    std::shared_ptr<const CyclicGranularity> base_;
    std::vector<Level> remap_;
    std::optional<Level> levels_;
    std::optional<LabelMap> labels_;
};

//! Descriptor for the (lower, upper) rung pair of h; the name defaults to
//! `lower_upper`. Kind is circular iff every rung in [lower, upper) has a
//! constant period. Throws Errc::unknown_rung when lower >= upper.
CyclicGranularity make_cyclic(const HierarchyTable& h, std::string_view lower, std::string_view upper,
                              std::string name = {});

//! Descriptor whose level is the category of an event calendar, labelled
//! `none` for level 0 and with the category labels above it.
CyclicGranularity make_aperiodic(AperiodicEventCalendar events);

//! Descriptor whose level is remap[base level]. `remap` must be total on the
//! base levels and onto 0..max(remap). Throws Errc::partial_remap.
CyclicGranularity make_remapped(const CyclicGranularity& base, std::vector<Level> remap, std::string name);

//! Period of the descriptor's values in bottom granules, or nullopt when the
//! values do not repeat (aperiodic) or the span is unsupported.
std::optional<std::int64_t> bottom_period(const HierarchyTable& h, const CyclicGranularity& d);

//! True when the value repeats with a constant period in bottom granules
//! (no irregular rung between the bottom and the upper rung).
bool has_constant_bottom_period(const HierarchyTable& h, const CyclicGranularity& d);

}  // namespace granular
