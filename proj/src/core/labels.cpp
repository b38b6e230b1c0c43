// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#include "granular/core/labels.hpp"

#include <set>

#include "granular/error.hpp"

namespace granular {

LabelMap LabelMap::named(std::vector<std::string> names) {
    if (names.empty()) throw Error(Errc::bad_labels, "a label map needs at least one label");
    std::set<std::string> unique(names.begin(), names.end());
    if (unique.size() != names.size()) throw Error(Errc::bad_labels, "labels must be distinct");
    LabelMap m;
    m.names_ = std::move(names);
    return m;
}

LabelMap LabelMap::numbered(Level start) {
    LabelMap m;
    m.start_ = start;
    return m;
}

std::optional<std::size_t> LabelMap::size() const {
    if (is_named()) return names_.size();
    return std::nullopt;
}

std::string LabelMap::label(Level level) const {
    if (level < 0 || (is_named() && level >= static_cast<Level>(names_.size()))) {
        throw Error(Errc::out_of_domain, "level " + std::to_string(level) + " is outside the label map");
    }
    if (is_named()) return names_[static_cast<std::size_t>(level)];
    return std::to_string(level + start_);
}

}  // namespace granular
