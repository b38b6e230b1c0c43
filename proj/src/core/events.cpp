// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#include "granular/core/events.hpp"

#include <algorithm>
#include <set>

#include "granular/error.hpp"

namespace granular {

AperiodicEventCalendar::AperiodicEventCalendar(std::string name, std::vector<EventCategory> categories)
    : name_(std::move(name)), categories_(std::move(categories)) {
    std::set<Level> seen;
    for (const auto& c : categories_) {
        if (c.index < 1) {
            throw Error(Errc::bad_value, "event calendar '" + name_ + "': category index 0 is reserved");
        }
        if (!seen.insert(c.index).second) {
            throw Error(Errc::bad_value, "event calendar '" + name_ + "': category " + std::to_string(c.index) +
                                             " declared twice");
        }
        max_category_ = std::max(max_category_, c.index);
        for (const auto& iv : c.intervals) {
            if (iv.begin < 0 || iv.size() <= 0) {
                throw Error(Errc::bad_value, "event calendar '" + name_ + "': empty or negative interval");
            }
            sorted_.push_back({iv, c.index});
        }
    }
    std::sort(sorted_.begin(), sorted_.end(),
              [](const Entry& a, const Entry& b) { return a.extent.begin < b.extent.begin; });
    for (std::size_t i = 1; i < sorted_.size(); ++i) {
        if (sorted_[i].extent.begin < sorted_[i - 1].extent.end) {
            throw Error(Errc::overlapping_events,
                        "event calendar '" + name_ + "': intervals [" + std::to_string(sorted_[i - 1].extent.begin) +
                            ", " + std::to_string(sorted_[i - 1].extent.end) + ") and [" +
                            std::to_string(sorted_[i].extent.begin) + ", " + std::to_string(sorted_[i].extent.end) +
                            ") overlap");
        }
    }
}

Level AperiodicEventCalendar::category_at(IndexValue z) const {
    auto it = std::upper_bound(sorted_.begin(), sorted_.end(), z.z,
                               [](std::int64_t v, const Entry& e) { return v < e.extent.begin; });
    if (it == sorted_.begin()) return 0;
    --it;
    return z.z < it->extent.end ? it->category : 0;
}

}  // namespace granular
