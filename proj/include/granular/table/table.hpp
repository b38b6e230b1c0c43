// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "granular/core/hierarchy.hpp"
#include "granular/cyclic/descriptor.hpp"

namespace granular {

struct KeyColumn {
    std::string name;
    std::vector<std::string> values;
};

//! Numeric column; absent entries are missing observations.
struct MeasurementColumn {
    std::string name;
    std::vector<std::optional<double>> values;
};

//! Cached values of one cyclic granularity, row aligned with the index.
struct CyclicColumn {
    CyclicGranularity descriptor;
    std::vector<Level> values;
};

//! Indexed observations: index, keys identifying the observational units,
//! measurements and cached cyclic granularity columns. Immutable; `augment`
//! returns a new table.
class GranularTable {
 public:
    //! Errors: bad-value (column lengths differ), pre-origin (negative
    //! index), duplicate (repeated keys and index).
    GranularTable(std::vector<IndexValue> index, std::vector<KeyColumn> keys,
                  std::vector<MeasurementColumn> measurements, std::optional<KeyColumn> timestamps = std::nullopt);

    std::size_t rows() const { return index_.size(); }
    const std::vector<IndexValue>& index() const { return index_; }
    const std::vector<KeyColumn>& keys() const { return keys_; }
    const std::vector<MeasurementColumn>& measurements() const { return measurements_; }
    //! Original timestamp text, kept for presentation only.
    const std::optional<KeyColumn>& timestamps() const { return timestamps_; }
    const std::vector<CyclicColumn>& cyclic() const { return cyclic_; }

    //! Throws Errc::unknown_column.
    const MeasurementColumn& measurement(std::string_view name) const;
    //! Throws Errc::unknown_granularity.
    const CyclicColumn& cyclic(std::string_view name) const;
    bool has_cyclic(std::string_view name) const;

    friend GranularTable augment(const GranularTable& t, const HierarchyTable& h,
                                 const std::vector<CyclicGranularity>& ds);

 private:
    std::vector<IndexValue> index_;
    std::vector<KeyColumn> keys_;
    std::vector<MeasurementColumn> measurements_;
    std::optional<KeyColumn> timestamps_;
    std::vector<CyclicColumn> cyclic_;
};

//! One column of a positional (composite) index, coarsest first: `column`
//! holds the position within the next listed rung, minus `offset`.
struct CompositeField {
    std::string column;
    std::string rung;
    std::int64_t offset = 0;
};

//! How to read a delimited file into a table. Either `timestamp_column` or
//! `composite` locates each row on the index set.
struct IngestionSchema {
    char delimiter = ',';
    std::string timestamp_column;
    std::string timestamp_pattern = "%Y-%m-%d %H:%M:%S";
    //! Bottom rung the index counts; must be rung 0 of the hierarchy and
    //! carry a duration in timestamp mode.
    std::string bottom;
    //! Origin instant; defaults to the hierarchy's declared origin.
    std::string origin;
    std::vector<CompositeField> composite;
    std::vector<std::string> keys;
    std::vector<std::string> measurements;
};

//! Reads rows into a table. Empty and `NA` measurement fields are missing.
//! Errors: unknown-column, unparseable-timestamp (with the line), pre-origin,
//! duplicate, bad-value, unknown-rung, invalid-config.
GranularTable ingest(std::istream& source, const IngestionSchema& schema, const HierarchyTable& h);

//! Seconds since the epoch of an origin text such as `2012-01-01 00:00`.
//! Throws Errc::unparseable_timestamp.
std::int64_t origin_seconds(std::string_view text);

//! Index of the first rung-`lower` granule inside granule g of rung `upper`.
//! Throws Errc::unsupported_span when an irregular rung in between is
//! counted in a lower rung.
std::int64_t first_granule(const HierarchyTable& h, RungIndex lower, RungIndex upper, std::int64_t g);

//! Every (lower, upper) descriptor with min_lower <= lower < upper <= max_upper,
//! ordered by lower then upper; n rungs give n(n-1)/2 descriptors.
std::vector<CyclicGranularity> enumerate_cyclic(const HierarchyTable& h, std::string_view max_upper,
                                                std::string_view min_lower = {});

//! Descriptor whose level is remap[base level], with optional labels.
//! Throws Errc::partial_remap.
CyclicGranularity derive_custom(const CyclicGranularity& base, std::vector<Level> remap, std::string name,
                                std::optional<LabelMap> labels = std::nullopt);

//! Adds one column per descriptor, computed from the index. A descriptor
//! whose name is already present replaces that column in place.
GranularTable augment(const GranularTable& t, const HierarchyTable& h, const std::vector<CyclicGranularity>& ds);

//! Names of cyclic columns whose cached values differ from recomputation.
std::vector<std::string> stale_columns(const GranularTable& t, const HierarchyTable& h);

struct ExportOptions {
    char delimiter = ',';
    //! Write display labels instead of level numbers.
    bool labels = false;
};

//! Writes index, timestamps, keys, measurements and cyclic columns.
void export_csv(std::ostream& out, const GranularTable& t, const ExportOptions& opts = {});

}  // namespace granular
