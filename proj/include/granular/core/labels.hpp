// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "granular/core/hierarchy.hpp"

namespace granular {

//! Display labels for the levels of a cyclic granularity: either an explicit
//! list (level i -> names[i]) or decimal numbering from a start value
//! (day-of-month level 0 -> "1").
class LabelMap {
 public:
    static LabelMap named(std::vector<std::string> names);
    static LabelMap numbered(Level start);

    bool is_named() const { return !names_.empty(); }
    const std::vector<std::string>& names() const { return names_; }
    Level start() const { return start_; }
    //! Number of labelled levels, or nullopt for numbered maps.
    std::optional<std::size_t> size() const;

    //! Throws Errc::out_of_domain when `level` has no label.
    std::string label(Level level) const;

 private:
    std::vector<std::string> names_;
    Level start_ = 0;
};

}  // namespace granular
