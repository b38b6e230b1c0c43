// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "granular/core/hierarchy.hpp"
#include "granular/core/relativity.hpp"

namespace granular {

//! One event type of an aperiodic calendar (e.g. "in session"). Category
//! index 0 is reserved for instants outside every event.
struct EventCategory {
    Level index = 1;
    std::string label;
    std::vector<IndexInterval> intervals;  // half-open, bottom-granule units
};

//! Recurring events without a finite repetition pattern, given extensionally.
class AperiodicEventCalendar {
 public:
    //! Errors: bad-value (category index < 1 or repeated), overlapping-events.
    AperiodicEventCalendar(std::string name, std::vector<EventCategory> categories);

    const std::string& name() const { return name_; }
    const std::vector<EventCategory>& categories() const { return categories_; }

    //! Category holding z, or 0.
    Level category_at(IndexValue z) const;
    //! Largest category index (the level set is 0..max_category()).
    Level max_category() const { return max_category_; }

 private:
    struct Entry {
        IndexInterval extent;
        Level category;
    };

    std::string name_;
    std::vector<EventCategory> categories_;
    std::vector<Entry> sorted_;
    Level max_category_ = 0;
};

}  // namespace granular
