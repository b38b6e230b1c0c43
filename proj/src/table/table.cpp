// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#include "granular/table/table.hpp"

#include <array>
#include <charconv>
#include <unordered_set>

#include "granular/core/civil.hpp"
#include "granular/core/keyvalue.hpp"
#include "granular/cyclic/engine.hpp"
#include "granular/error.hpp"
#include "granular/table/csv.hpp"

namespace granular {

namespace {

std::string row_key(const std::vector<KeyColumn>& keys, std::size_t row, IndexValue z) {
    std::string k = std::to_string(z.z);
    for (const auto& c : keys) {
        k += '\x1f';
        k += c.values[row];
    }
    return k;
}

std::optional<double> read_measurement(const std::string& text, std::size_t line, const std::string& column) {
    const std::string t = kv::trim(text);
    if (t.empty() || t == "NA") return std::nullopt;
    double v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size()) {
        throw Error(Errc::bad_value, "line " + std::to_string(line) + ": column '" + column + "' holds '" + t +
                                         "', which is not a number");
    }
    return v;
}

std::int64_t read_position(const std::string& text, std::size_t line, const std::string& column) {
    const std::string t = kv::trim(text);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size()) {
        throw Error(Errc::bad_value, "line " + std::to_string(line) + ": column '" + column + "' holds '" + t +
                                         "', which is not an integer");
    }
    return v;
}

std::string format_number(double v) {
    std::array<char, 32> buf;
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

}  // namespace

GranularTable::GranularTable(std::vector<IndexValue> index, std::vector<KeyColumn> keys,
                             std::vector<MeasurementColumn> measurements, std::optional<KeyColumn> timestamps)
    : index_(std::move(index)),
      keys_(std::move(keys)),
      measurements_(std::move(measurements)),
      timestamps_(std::move(timestamps)) {
    const std::size_t n = index_.size();
    auto check = [&](const std::string& name, std::size_t size) {
        if (size != n) {
            throw Error(Errc::bad_value, "column '" + name + "' has " + std::to_string(size) + " rows, index has " +
                                             std::to_string(n));
        }
    };
    for (const auto& k : keys_) check(k.name, k.values.size());
    for (const auto& m : measurements_) check(m.name, m.values.size());
    if (timestamps_) check(timestamps_->name, timestamps_->values.size());

    std::unordered_set<std::string> seen;
    seen.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (index_[i].z < 0) {
            throw Error(Errc::pre_origin, "row " + std::to_string(i + 1) + " lies before the origin");
        }
        if (!seen.insert(row_key(keys_, i, index_[i])).second) {
            throw Error(Errc::duplicate_row, "row " + std::to_string(i + 1) + " repeats the keys and index " +
                                                 std::to_string(index_[i].z) + " of an earlier row");
        }
    }
}

const MeasurementColumn& GranularTable::measurement(std::string_view name) const {
    for (const auto& m : measurements_) {
        if (m.name == name) return m;
    }
    throw Error(Errc::unknown_column, "no measurement named '" + std::string(name) + "'");
}

const CyclicColumn& GranularTable::cyclic(std::string_view name) const {
    for (const auto& c : cyclic_) {
        if (c.descriptor.name() == name) return c;
    }
    throw Error(Errc::unknown_granularity, "table has no cyclic column '" + std::string(name) + "'");
}

bool GranularTable::has_cyclic(std::string_view name) const {
    for (const auto& c : cyclic_) {
        if (c.descriptor.name() == name) return true;
    }
    return false;
}

std::int64_t origin_seconds(std::string_view text) {
    for (const char* pattern : {"%Y-%m-%d %H:%M:%S", "%Y-%m-%d %H:%M", "%Y-%m-%d"}) {
        if (auto s = civil::parse_timestamp(kv::trim(text), pattern)) return *s;
    }
    throw Error(Errc::unparseable_timestamp, "cannot read origin '" + std::string(text) + "'");
}

std::int64_t first_granule(const HierarchyTable& h, RungIndex lower, RungIndex upper, std::int64_t g) {
    if (lower > upper || upper >= h.size()) throw Error(Errc::unknown_rung, "invalid rung span");
    RungIndex i = upper;
    while (i > lower) {
        const RungIndex r = i - 1;
        if (!h.is_irregular(r)) {
            g = g * h.period(r) - h.phase(r);
            i = r;
            continue;
        }
        const RungIndex b = h.counted_in(r);
        if (b < lower) {
            throw Error(Errc::unsupported_span, "'" + h.rung(r).name + "' granules do not nest in '" +
                                                    h.rung(i).name + "' granules");
        }
        g = h.cumulative(r, g);
        i = b;
    }
    return g;
}

GranularTable ingest(std::istream& source, const IngestionSchema& schema, const HierarchyTable& h) {
    if (!schema.bottom.empty() && schema.bottom != h.rung(0).name) {
        h.index_of(schema.bottom);
        throw Error(Errc::invalid_config, "bottom rung '" + schema.bottom + "' is not the bottom of hierarchy '" +
                                              h.name() + "'; select a ladder that starts there");
    }
    const bool by_time = !schema.timestamp_column.empty();
    if (by_time == !schema.composite.empty()) {
        throw Error(Errc::invalid_config, "schema needs exactly one of a timestamp column or a composite index");
    }
    if (schema.measurements.empty()) throw Error(Errc::invalid_config, "schema names no measurement columns");

    const auto doc = csv::read(source, schema.delimiter);
    std::vector<std::size_t> key_cols;
    for (const auto& k : schema.keys) key_cols.push_back(doc.column(k));
    std::vector<std::size_t> value_cols;
    for (const auto& m : schema.measurements) value_cols.push_back(doc.column(m));

    std::int64_t origin = 0;
    std::int64_t unit = 1;
    std::size_t ts_col = 0;
    std::vector<std::size_t> comp_cols;
    std::vector<RungIndex> comp_rungs;
    if (by_time) {
        ts_col = doc.column(schema.timestamp_column);
        if (!h.rung(0).seconds) {
            throw Error(Errc::invalid_config, "bottom rung '" + h.rung(0).name + "' has no duration in seconds");
        }
        unit = *h.rung(0).seconds;
        origin = origin_seconds(schema.origin.empty() ? h.origin().instant : schema.origin);
    } else {
        for (const auto& f : schema.composite) {
            comp_cols.push_back(doc.column(f.column));
            comp_rungs.push_back(h.index_of(f.rung));
            if (comp_rungs.size() > 1 && comp_rungs.back() >= comp_rungs[comp_rungs.size() - 2]) {
                throw Error(Errc::invalid_config, "composite fields must run from coarse to fine rungs");
            }
        }
    }

    const std::size_t n = doc.rows.size();
    std::vector<IndexValue> index(n);
    std::vector<KeyColumn> keys;
    for (const auto& k : schema.keys) keys.push_back({k, std::vector<std::string>(n)});
    std::vector<MeasurementColumn> values;
    for (const auto& m : schema.measurements) values.push_back({m, std::vector<std::optional<double>>(n)});
    std::optional<KeyColumn> stamps;
    if (by_time) stamps = KeyColumn{schema.timestamp_column, std::vector<std::string>(n)};

    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = doc.rows[i];
        if (by_time) {
            const auto& text = row.fields[ts_col];
            const auto t = civil::parse_timestamp(kv::trim(text), schema.timestamp_pattern);
            if (!t) {
                throw Error(Errc::unparseable_timestamp, "line " + std::to_string(row.line) + ": cannot read '" +
                                                             text + "' with pattern '" + schema.timestamp_pattern + "'");
            }
            if (*t < origin) {
                throw Error(Errc::pre_origin, "line " + std::to_string(row.line) + ": '" + text +
                                                  "' lies before the origin");
            }
            index[i].z = (*t - origin) / unit;
            stamps->values[i] = text;
        } else {
            RungIndex u = comp_rungs[0];
            std::int64_t g = 0;
            for (std::size_t f = 0; f < comp_cols.size(); ++f) {
                const auto& field = schema.composite[f];
                const std::int64_t pos = read_position(row.fields[comp_cols[f]], row.line, field.column) - field.offset;
                const RungIndex r = comp_rungs[f];
                if (f == 0) {
                    g = pos;
                } else {
                    const std::int64_t first = first_granule(h, r, u, g);
                    const std::int64_t size = first_granule(h, r, u, g + 1) - first;
                    if (pos < 0 || pos >= size) {
                        throw Error(Errc::bad_value, "line " + std::to_string(row.line) + ": '" + field.column +
                                                         "' position " + std::to_string(pos) + " outside [0, " +
                                                         std::to_string(size) + ")");
                    }
                    g = first + pos;
                }
                u = r;
            }
            index[i].z = first_granule(h, 0, u, g);
            if (index[i].z < 0) {
                throw Error(Errc::pre_origin, "line " + std::to_string(row.line) + " lies before the origin");
            }
        }
        for (std::size_t k = 0; k < key_cols.size(); ++k) keys[k].values[i] = row.fields[key_cols[k]];
        for (std::size_t m = 0; m < value_cols.size(); ++m) {
            values[m].values[i] = read_measurement(row.fields[value_cols[m]], row.line, schema.measurements[m]);
        }
    }
    return GranularTable(std::move(index), std::move(keys), std::move(values), std::move(stamps));
}

std::vector<CyclicGranularity> enumerate_cyclic(const HierarchyTable& h, std::string_view max_upper,
                                                std::string_view min_lower) {
    const RungIndex lo = min_lower.empty() ? 0 : h.index_of(min_lower);
    const RungIndex hi = h.index_of(max_upper);
    std::vector<CyclicGranularity> out;
    for (RungIndex l = lo; l < hi; ++l) {
        for (RungIndex m = l + 1; m <= hi; ++m) out.push_back(make_cyclic(h, h.rung(l).name, h.rung(m).name));
    }
    return out;
}

CyclicGranularity derive_custom(const CyclicGranularity& base, std::vector<Level> remap, std::string name,
                                std::optional<LabelMap> labels) {
    auto d = make_remapped(base, std::move(remap), std::move(name));
    if (labels) d = d.with_labels(std::move(*labels));
    return d;
}

GranularTable augment(const GranularTable& t, const HierarchyTable& h, const std::vector<CyclicGranularity>& ds) {
    std::vector<Evaluator> evals;
    evals.reserve(ds.size());
    for (const auto& d : ds) evals.emplace_back(h, d);

    std::vector<std::vector<Level>> cols(ds.size(), std::vector<Level>(t.rows()));
    std::vector<std::int64_t> g(h.size());
    for (std::size_t i = 0; i < t.rows(); ++i) {
        h.granules(t.index()[i], g);
        for (std::size_t c = 0; c < ds.size(); ++c) cols[c][i] = evals[c].from_granules(g, t.index()[i]);
    }

    GranularTable out = t;
    for (std::size_t c = 0; c < ds.size(); ++c) {
        CyclicColumn col{ds[c], std::move(cols[c])};
        bool replaced = false;
        for (auto& existing : out.cyclic_) {
            if (existing.descriptor.name() == ds[c].name()) {
                existing = col;
                replaced = true;
            }
        }
        if (!replaced) out.cyclic_.push_back(std::move(col));
    }
    return out;
}

std::vector<std::string> stale_columns(const GranularTable& t, const HierarchyTable& h) {
    std::vector<std::string> stale;
    for (const auto& c : t.cyclic()) {
        const Evaluator e(h, c.descriptor);
        for (std::size_t i = 0; i < t.rows(); ++i) {
            if (e(t.index()[i]) != c.values[i]) {
                stale.push_back(c.descriptor.name());
                break;
            }
        }
    }
    return stale;
}

void export_csv(std::ostream& out, const GranularTable& t, const ExportOptions& opts) {
    std::vector<std::string> fields{"index"};
    if (t.timestamps()) fields.push_back(t.timestamps()->name);
    for (const auto& k : t.keys()) fields.push_back(k.name);
    for (const auto& m : t.measurements()) fields.push_back(m.name);
    for (const auto& c : t.cyclic()) fields.push_back(c.descriptor.name());
    csv::write_row(out, fields, opts.delimiter);

    for (std::size_t i = 0; i < t.rows(); ++i) {
        fields.clear();
        fields.push_back(std::to_string(t.index()[i].z));
        if (t.timestamps()) fields.push_back(t.timestamps()->values[i]);
        for (const auto& k : t.keys()) fields.push_back(k.values[i]);
        for (const auto& m : t.measurements()) fields.push_back(m.values[i] ? format_number(*m.values[i]) : "");
        for (const auto& c : t.cyclic()) {
            fields.push_back(opts.labels ? apply_labels(c.descriptor, c.values[i]) : std::to_string(c.values[i]));
        }
        csv::write_row(out, fields, opts.delimiter);
    }
}

}  // namespace granular
