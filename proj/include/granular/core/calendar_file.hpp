// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "granular/core/events.hpp"
#include "granular/core/hierarchy.hpp"
#include "granular/core/labels.hpp"

namespace granular {

//! A user-declared granularity obtained by relabelling the levels of another
//! one (`day_week` -> `wknd_wday`).
struct DerivedDefinition {
    std::string name;
    std::string base;
    std::vector<Level> remap;  // remap[i] = new level of base level i
    std::optional<LabelMap> labels;
};

//! Everything a calendar-definition file declares.
struct Calendar {
    HierarchyTable hierarchy;
    std::vector<AperiodicEventCalendar> events;
    std::map<std::string, LabelMap> labels;  // keyed by granularity name
    std::vector<DerivedDefinition> derived;
};

//! Reads the `.cal` key/value format:
//!
//!     [calendar]   name, origin, alignment
//!     [rung NAME]  period | cardinalities (+ counted_in, cycle_start, repetition),
//!                  phase, seconds           -- one section per rung, bottom first
//!     [labels G]   values = a, b, ...  |  start = N
//!     [derived G]  base, map (space separated), labels
//!     [event G]    category = INDEX LABEL BEGIN:END ...   (repeatable)
//!
//! Throws Error (parse-error or any validate_hierarchy error).
Calendar parse_calendar(std::istream& in);
Calendar read_calendar(const std::string& path);

//! Serializes a calendar back to the `.cal` format (stable ordering).
std::string write_calendar(const Calendar& cal);

//! Human-readable rule of rung r: the period, or `k(name, next)`.
std::string describe_rule(const HierarchyTable& h, RungIndex r);

}  // namespace granular
