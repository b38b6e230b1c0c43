// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "granular/core/hierarchy.hpp"

namespace granular {

//! Half-open interval [begin, end) of bottom granules.
struct IndexInterval {
    std::int64_t begin = 0;
    std::int64_t end = 0;

    std::int64_t size() const { return end - begin; }
    friend bool operator==(const IndexInterval&, const IndexInterval&) = default;
};

struct Granule {
    std::int64_t index = 0;
    IndexInterval extent;
    //! False when the span cut the granule short.
    bool complete = true;
};

//! A linear granularity materialized over a finite span: its non-empty
//! granules in increasing order, clipped to the span.
struct GranuleMap {
    IndexInterval span;
    std::vector<Granule> granules;
};

//! Materializes rung m of h over `span` (bottom-granule units).
GranuleMap materialize(const HierarchyTable& h, RungIndex m, IndexInterval span);

//! Builds a map from explicit granule extents; the extents must be ordered
//! and pairwise disjoint.
GranuleMap make_granule_map(IndexInterval span, std::vector<IndexInterval> extents);

//! True iff every granule of g lies inside some granule of h.
//! Verdicts are relative to the materialized span. Throws Errc::empty_span.
bool finer_than(const GranuleMap& g, const GranuleMap& h);

//! True iff every granule of h is exactly a union of granules of g.
//! Throws Errc::empty_span.
bool groups_into(const GranuleMap& g, const GranuleMap& h);

struct Periodicity {
    std::int64_t repeat = 0;  //!< R: shift in granules of the coarser map
    std::int64_t period = 0;  //!< P: matching shift in granules of the finer map

    friend bool operator==(const Periodicity&, const Periodicity&) = default;
};

//! Smallest R (with its P) such that shifting every complete granule of h by R
//! matches shifting its constituent granules of g by P, checked across the
//! span. A candidate R is only accepted when the span holds at least 2R
//! complete granules of h. Returns nullopt when no such R exists.
//! Throws Errc::insufficient_span when h has fewer than two complete granules.
std::optional<Periodicity> is_periodical(const GranuleMap& g, const GranuleMap& h);

}  // namespace granular
