// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#include "granular/core/calendar_file.hpp"

#include <fstream>
#include <sstream>

#include "granular/core/keyvalue.hpp"
#include "granular/error.hpp"

namespace granular {

namespace {

RungDefinition parse_rung(const kv::Section& s) {
    RungDefinition r;
    r.name = s.name;
    if (r.name.empty()) throw Error(Errc::parse_error, "line " + std::to_string(s.line) + ": rung without a name");
    const auto period = s.get("period");
    const auto cards = s.get("cardinalities");
    if (period && cards) {
        throw Error(Errc::parse_error, "rung '" + r.name + "' declares both a period and cardinalities");
    }
    if (cards) {
        IrregularMapping m;
        for (const auto& tok : kv::split_ws(*cards)) m.cardinalities.push_back(kv::to_int(tok, "cardinality"));
        if (auto rep = s.get("repetition")) m.repetition = kv::to_int(*rep, "repetition");
        if (auto c = s.get("counted_in")) m.counted_in = *c;
        if (auto c = s.get("cycle_start")) m.cycle_start = kv::to_int(*c, "cycle_start");
        r.rule = std::move(m);
    } else if (period) {
        r.rule = ConstantPeriod{kv::to_int(*period, "period")};
    } else {
        throw Error(Errc::parse_error, "rung '" + r.name + "' needs a period or cardinalities");
    }
    if (auto p = s.get("phase")) r.phase = kv::to_int(*p, "phase");
    if (auto sec = s.get("seconds")) r.seconds = kv::to_int(*sec, "seconds");
    return r;
}

LabelMap parse_labels(const kv::Section& s) {
    if (auto v = s.get("values")) return LabelMap::named(kv::split(*v, ','));
    if (auto st = s.get("start")) return LabelMap::numbered(kv::to_int(*st, "label start"));
    throw Error(Errc::parse_error, "labels '" + s.name + "' need 'values' or 'start'");
}

AperiodicEventCalendar parse_event(const kv::Section& s) {
    std::vector<EventCategory> cats;
    for (const auto& line : s.get_all("category")) {
        const auto words = kv::split_ws(line);
        if (words.size() < 2) {
            throw Error(Errc::parse_error, "event '" + s.name + "': category needs an index and a label");
        }
        EventCategory c;
        c.index = kv::to_int(words[0], "category index");
        c.label = words[1];
        for (std::size_t i = 2; i < words.size(); ++i) {
            const auto parts = kv::split(words[i], ':');
            if (parts.size() != 2) {
                throw Error(Errc::parse_error, "event '" + s.name + "': interval '" + words[i] + "' is not BEGIN:END");
            }
            c.intervals.push_back({kv::to_int(parts[0], "interval begin"), kv::to_int(parts[1], "interval end")});
        }
        cats.push_back(std::move(c));
    }
    if (cats.empty()) throw Error(Errc::parse_error, "event '" + s.name + "' declares no categories");
    return AperiodicEventCalendar(s.name, std::move(cats));
}

}  // namespace

Calendar parse_calendar(std::istream& in) {
    const auto sections = kv::parse(in);
    HierarchyDefinition def;
    std::vector<AperiodicEventCalendar> events;
    std::map<std::string, LabelMap> labels;
    std::vector<DerivedDefinition> derived;

    for (const auto& s : sections) {
        if (s.kind == "calendar") {
            def.name = s.get("name").value_or("");
            def.origin.instant = s.get("origin").value_or("");
            def.origin.alignment = s.get("alignment").value_or("");
        } else if (s.kind == "rung") {
            def.rungs.push_back(parse_rung(s));
        } else if (s.kind == "labels") {
            labels.insert_or_assign(s.name, parse_labels(s));
        } else if (s.kind == "derived") {
            DerivedDefinition d;
            d.name = s.name;
            d.base = s.require("base");
            for (const auto& tok : kv::split_ws(s.require("map"))) d.remap.push_back(kv::to_int(tok, "map entry"));
            if (auto l = s.get("labels")) d.labels = LabelMap::named(kv::split(*l, ','));
            derived.push_back(std::move(d));
        } else if (s.kind == "event") {
            events.push_back(parse_event(s));
        } else {
            throw Error(Errc::parse_error, "line " + std::to_string(s.line) + ": unknown section kind '" + s.kind + "'");
        }
    }
    if (def.rungs.empty()) throw Error(Errc::empty_hierarchy, "calendar declares no rungs");
    return Calendar{validate_hierarchy(std::move(def)), std::move(events), std::move(labels), std::move(derived)};
}

Calendar read_calendar(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io_error, "cannot open calendar file '" + path + "'");
    return parse_calendar(in);
}

std::string describe_rule(const HierarchyTable& h, RungIndex r) {
    if (h.is_irregular(r)) return "k(" + h.rung(h.counted_in(r)).name + ", " + h.rung(r + 1).name + ")";
    return std::to_string(h.period(r));
}

std::string write_calendar(const Calendar& cal) {
    std::ostringstream out;
    const auto& h = cal.hierarchy;
    out << "[calendar]\n";
    out << "name = " << h.name() << "\n";
    if (!h.origin().instant.empty()) out << "origin = " << h.origin().instant << "\n";
    if (!h.origin().alignment.empty()) out << "alignment = " << h.origin().alignment << "\n";

    for (RungIndex i = 0; i < h.size(); ++i) {
        const auto& r = h.rung(i);
        out << "\n[rung " << r.name << "]\n";
        if (const auto* m = std::get_if<IrregularMapping>(&r.rule)) {
            out << "cardinalities =";
            for (auto c : m->cardinalities) out << ' ' << c;
            out << "\n";
            if (!m->counted_in.empty()) out << "counted_in = " << m->counted_in << "\n";
            if (m->cycle_start != 0) out << "cycle_start = " << m->cycle_start << "\n";
        } else {
            out << "period = " << std::get<ConstantPeriod>(r.rule).period << "\n";
        }
        if (r.phase != 0) out << "phase = " << r.phase << "\n";
        if (r.seconds) out << "seconds = " << *r.seconds << "\n";
    }

    for (const auto& [name, lm] : cal.labels) {
        out << "\n[labels " << name << "]\n";
        if (lm.is_named()) {
            out << "values = ";
            for (std::size_t i = 0; i < lm.names().size(); ++i) out << (i ? ", " : "") << lm.names()[i];
            out << "\n";
        } else {
            out << "start = " << lm.start() << "\n";
        }
    }

    for (const auto& d : cal.derived) {
        out << "\n[derived " << d.name << "]\n";
        out << "base = " << d.base << "\n";
        out << "map =";
        for (auto v : d.remap) out << ' ' << v;
        out << "\n";
        if (d.labels && d.labels->is_named()) {
            out << "labels = ";
            for (std::size_t i = 0; i < d.labels->names().size(); ++i) out << (i ? ", " : "") << d.labels->names()[i];
            out << "\n";
        }
    }

    for (const auto& e : cal.events) {
        out << "\n[event " << e.name() << "]\n";
        for (const auto& c : e.categories()) {
            out << "category = " << c.index << ' ' << c.label;
            for (const auto& iv : c.intervals) out << ' ' << iv.begin << ':' << iv.end;
            out << "\n";
        }
    }
    return out.str();
}

}  // namespace granular
