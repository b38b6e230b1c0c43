// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#include "granular/cli/session.hpp"

#include <filesystem>

#include "granular/core/keyvalue.hpp"
#include "granular/error.hpp"

namespace granular {

namespace {

namespace fs = std::filesystem;

std::string resolve(const fs::path& dir, const std::string& p) {
    if (p.empty() || fs::path(p).is_absolute()) return p;
    return (dir / p).lexically_normal().string();
}

std::vector<std::string> list(const std::string& text) {
    std::vector<std::string> out;
    for (auto& item : kv::split(text, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::optional<CyclicGranularity> build_pair(const Session& s, const std::string& name) {
    for (std::size_t cut = name.find('_'); cut != std::string::npos; cut = name.find('_', cut + 1)) {
        const auto lower = s.ladder.find(name.substr(0, cut));
        const auto upper = s.ladder.find(name.substr(cut + 1));
        if (!lower || !upper || *lower >= *upper) continue;
        auto d = make_cyclic(s.ladder, s.ladder.rung(*lower).name, s.ladder.rung(*upper).name);
        if (auto it = s.calendar.labels.find(name); it != s.calendar.labels.end()) d = d.with_labels(it->second);
        return d;
    }
    return std::nullopt;
}

}  // namespace

SessionConfig load_session_config(const std::string& path) {
    const auto sections = kv::parse_file(path);
    const kv::Section* session = nullptr;
    for (const auto& s : sections) {
        if (s.kind == "session") session = &s;
    }
    if (!session) throw Error(Errc::invalid_config, "'" + path + "' has no [session] section");
    const auto dir = fs::path(path).parent_path();
    const auto& s = *session;

    SessionConfig c;
    c.calendar = resolve(dir, s.get("calendar").value_or(""));
    c.data = resolve(dir, s.get("data").value_or(""));
    if (auto d = s.get("delimiter")) {
        if (d->size() != 1) throw Error(Errc::invalid_config, "delimiter must be one character");
        c.schema.delimiter = (*d)[0];
    }
    c.schema.timestamp_column = s.get("timestamp_column").value_or("");
    if (auto p = s.get("timestamp_pattern")) c.schema.timestamp_pattern = *p;
    c.schema.bottom = s.get("bottom").value_or("");
    c.schema.origin = s.get("origin").value_or("");
    if (auto k = s.get("keys")) c.schema.keys = list(*k);
    if (auto m = s.get("measurements")) c.schema.measurements = list(*m);
    if (auto comp = s.get("composite")) {
        for (const auto& item : list(*comp)) {
            const auto parts = kv::split(item, ':');
            if (parts.size() < 2 || parts.size() > 3) {
                throw Error(Errc::invalid_config, "composite field '" + item + "' is not COLUMN:RUNG[:OFFSET]");
            }
            c.schema.composite.push_back(
                {parts[0], parts[1], parts.size() == 3 ? kv::to_int(parts[2], "composite offset") : 0});
        }
    }
    if (auto r = s.get("rungs")) c.rungs = list(*r);
    c.from = s.get("from").value_or("");
    c.to = s.get("to").value_or("");
    c.output_dir = resolve(dir, s.get("output_dir").value_or(""));
    if (auto t = s.get("near_threshold")) c.near_threshold = kv::to_double(*t, "near_threshold");
    if (auto m = s.get("max_levels")) c.max_levels = kv::to_int(*m, "max_levels");
    if (auto p = s.get("probabilities")) {
        for (const auto& item : list(*p)) c.probabilities.push_back(kv::to_double(item, "probability"));
    }
    return c;
}

void check_session_config(const SessionConfig& c, bool needs_data) {
    auto bad = [](const std::string& m) { throw Error(Errc::invalid_config, m); };
    if (c.calendar.empty()) bad("no calendar file given");
    if (!fs::exists(c.calendar)) bad("calendar file '" + c.calendar + "' does not exist");
    if (needs_data) {
        if (c.data.empty()) bad("no data file given");
        if (!fs::exists(c.data)) bad("data file '" + c.data + "' does not exist");
        if (c.schema.measurements.empty()) bad("no measurement columns given");
    }
    if (!(c.near_threshold >= 0 && c.near_threshold < 1)) bad("near_threshold must lie in [0, 1)");
    if (c.max_levels < 1) bad("max_levels must be at least 1");
    for (std::size_t i = 0; i < c.probabilities.size(); ++i) {
        const double p = c.probabilities[i];
        if (!(p > 0 && p < 1) || (i && p <= c.probabilities[i - 1])) {
            bad("probabilities must be increasing and inside (0, 1)");
        }
    }
}

Session open_session(const SessionConfig& c) {
    Calendar cal = read_calendar(c.calendar);
    const auto& full = cal.hierarchy;
    HierarchyTable ladder = [&] {
        if (!c.rungs.empty()) return select_rungs(full, c.rungs);
        if (!c.schema.bottom.empty() && c.schema.bottom != full.rung(0).name) {
            return slice(full, c.schema.bottom, full.rung(full.top()).name);
        }
        return full;
    }();
    Session s{std::move(cal), std::move(ladder), {}, 0, 0, 0};

    const std::string to = c.to.empty() ? s.ladder.rung(s.ladder.top()).name : c.to;
    for (auto& d : enumerate_cyclic(s.ladder, to, c.from)) {
        if (auto it = s.calendar.labels.find(d.name()); it != s.calendar.labels.end()) d = d.with_labels(it->second);
        s.descriptors.push_back(std::move(d));
    }
    s.enumerated = s.descriptors.size();

    for (const auto& def : s.calendar.derived) {
        std::optional<CyclicGranularity> base;
        for (const auto& d : s.descriptors) {
            if (d.name() == def.base) base = d;
        }
        if (!base) base = build_pair(s, def.base);
        if (!base) continue;
        s.descriptors.push_back(derive_custom(*base, def.remap, def.name, def.labels));
        ++s.derived;
    }
    if (s.ladder.rung(0).name == s.calendar.hierarchy.rung(0).name) {
        for (const auto& e : s.calendar.events) {
            s.descriptors.push_back(make_aperiodic(e));
            ++s.aperiodic;
        }
    }
    return s;
}

CyclicGranularity resolve_granularity(const Session& s, const std::string& name) {
    for (const auto& d : s.descriptors) {
        if (d.name() == name) return d;
    }
    if (auto d = build_pair(s, name)) return *d;
    throw Error(Errc::unknown_granularity, "no granularity named '" + name + "' on this ladder");
}

}  // namespace granular
