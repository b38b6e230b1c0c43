// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "granular/core/events.hpp"
#include "granular/core/hierarchy.hpp"
#include "granular/cyclic/descriptor.hpp"

namespace granular {

//! Position of the lower granule within its upper granule for a span of
//! constant periods. Throws Errc::kind_mismatch for other descriptors.
Level circular_value(const HierarchyTable& h, const CyclicGranularity& d, IndexValue z);

//! Offset of z's counting granule within its upper granule, for a descriptor
//! spanning exactly one irregular rung from its counting rung (day_month).
//! Throws Errc::kind_mismatch otherwise; use compose_up for wider spans.
Level quasi_circular_value(const HierarchyTable& h, const CyclicGranularity& d, IndexValue z);

//! Category of the event holding z, or 0.
Level aperiodic_value(const AperiodicEventCalendar& cal, IndexValue z);

//! Position of z's rung-l granule within its rung-m granule, built from the
//! single-order-up values of the rungs in between. At most one irregular
//! rung may lie in [l, m); otherwise throws Errc::unsupported_span.
Level compose_up(const HierarchyTable& h, RungIndex l, RungIndex m, IndexValue z);

//! Narrows a known value of (l2, m2) to (l1, m1) without touching the index.
//! Requires l2 <= l1 < m1 <= m2 and constant periods across [l2, m2).
//! Errors: unknown-rung, irregular-span, out-of-domain.
Level reduce_to_single(const HierarchyTable& h, RungIndex l2, RungIndex m2, Level v, RungIndex l1, RungIndex m1);

//! Display label of level v: the descriptor's label map, or decimal text.
std::string apply_labels(const CyclicGranularity& d, Level v);

//! Value of any descriptor at z (dispatches on its shape).
Level cyclic_value(const HierarchyTable& h, const CyclicGranularity& d, IndexValue z);

//! A descriptor bound to a hierarchy, with rung lookups resolved once.
//! Cheap to copy; holds a pointer to `h`, which must outlive it.
class Evaluator {
 public:
    Evaluator(const HierarchyTable& h, const CyclicGranularity& d);

    Level operator()(IndexValue z) const;
    //! Same, given the granules of every rung at z (HierarchyTable::granules).
    Level from_granules(std::span<const std::int64_t> g, IndexValue z) const;

    std::vector<Level> evaluate(std::span<const IndexValue> zs) const;

 private:
    enum class Shape { compose, events, derived };

    const HierarchyTable* h_;
    Shape shape_ = Shape::compose;
    RungIndex lower_ = 0;
    RungIndex upper_ = 0;
    CyclicGranularity d_;
    std::vector<Evaluator> base_;  // 0 or 1 entries
};

}  // namespace granular
