// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "granular/core/calendar_file.hpp"
#include "granular/cyclic/descriptor.hpp"
#include "granular/table/table.hpp"

namespace granular {

//! Settings read from the `[session]` section of a config file. Relative
//! paths are resolved against the config file's directory.
struct SessionConfig {
    std::string calendar;
    std::string data;
    IngestionSchema schema;
    std::vector<std::string> rungs;
    std::string from;
    std::string to;
    std::string output_dir;
    double near_threshold = 0.27;
    Level max_levels = 31;
    std::vector<double> probabilities;
};

//! Errors: io-error, parse-error, invalid-config.
SessionConfig load_session_config(const std::string& path);

//! Checks ranges and that referenced files exist. Throws Errc::invalid_config.
void check_session_config(const SessionConfig& c, bool needs_data);

//! A calendar, the ladder chosen from it and the granularities in play.
struct Session {
    Calendar calendar;
    HierarchyTable ladder;
    //! Pairs from `from` to `to`, then derived and event granularities.
    std::vector<CyclicGranularity> descriptors;
    std::size_t enumerated = 0;
    std::size_t derived = 0;
    std::size_t aperiodic = 0;
};

//! Ladder: the named rungs, else everything from the schema's bottom rung
//! up, else the whole calendar. Derived granularities whose base cannot be
//! built on the ladder are left out.
Session open_session(const SessionConfig& c);

//! Finds a session granularity by name, or builds `lower_upper` from the
//! ladder with the calendar's labels. Throws Errc::unknown_granularity.
CyclicGranularity resolve_granularity(const Session& s, const std::string& name);

}  // namespace granular
