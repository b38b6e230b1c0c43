// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace granular {

//! Position on the index set: number of bottom granules since the origin.
struct IndexValue {
    std::int64_t z = 0;

    friend auto operator<=>(const IndexValue&, const IndexValue&) = default;
};

using Level = std::int64_t;
using RungIndex = std::size_t;

//! Regular grouping: `period` granules of this rung form one granule of the
//! next rung. The top rung carries the sentinel period 1.
struct ConstantPeriod {
    std::int64_t period = 1;
};

//! Irregular grouping described extensionally. Granule w of the next rung
//! holds `cardinalities[w mod repetition]` granules of the counting rung.
//!
//! The counting rung defaults to the rung itself. A lower rung may be named
//! instead when this rung's granules do not nest in the next rung (weeks in
//! months): the position of such a rung within the next one is then measured
//! in whole blocks of its own length from the start of the next granule.
struct IrregularMapping {
    std::vector<std::int64_t> cardinalities;
    std::int64_t repetition = 0;
    std::string counted_in;
    //! Table position of the granule (of the next rung) holding the origin.
    std::int64_t cycle_start = 0;
};

using ConversionRule = std::variant<ConstantPeriod, IrregularMapping>;

struct LinearGranularityDef {
    std::string name;
    std::size_t order = 0;
};

struct RungDefinition {
    std::string name;
    ConversionRule rule;
    //! Position of the origin's granule within its granule of the next rung
    //! (constant rules only).
    std::int64_t phase = 0;
    //! Fixed duration in seconds, when the rung has one. Used to map
    //! timestamps onto the index set.
    std::optional<std::int64_t> seconds;
};

//! Where index 0 sits in civil time. The alignment text is descriptive; the
//! machine-readable alignment lives in the rung phases and cycle starts.
struct Origin {
    std::string instant;
    std::string alignment;
};

struct HierarchyDefinition {
    std::string name;
    Origin origin;
    std::vector<RungDefinition> rungs;  // bottom first
};

//! Validated, immutable ladder of linear granularities.
class HierarchyTable {
 public:
    const std::string& name() const { return def_.name; }
    const Origin& origin() const { return def_.origin; }
    const HierarchyDefinition& definition() const { return def_; }

    std::size_t size() const { return def_.rungs.size(); }
    RungIndex top() const { return size() - 1; }
    const RungDefinition& rung(RungIndex r) const { return def_.rungs.at(r); }
    LinearGranularityDef granularity(RungIndex r) const { return {rung(r).name, r}; }

    std::optional<RungIndex> find(std::string_view name) const;
    //! Throws Errc::unknown_rung.
    RungIndex index_of(std::string_view name) const;

    bool is_irregular(RungIndex r) const;
    //! Counting rung of an irregular rule; `r` itself for constant rules.
    RungIndex counted_in(RungIndex r) const;
    //! Constant period of rung r. Throws Errc::irregular_span.
    std::int64_t period(RungIndex r) const;
    std::int64_t phase(RungIndex r) const { return rung(r).phase; }

    //! Irregular rung r: counting-rung granules before relative granule k of
    //! the next rung (k may be negative).
    std::int64_t cumulative(RungIndex r, std::int64_t k) const;
    //! Irregular rung r: next-rung granule holding counting granule `g`.
    std::int64_t containing(RungIndex r, std::int64_t g) const;
    //! Irregular rung r: cardinality of relative next-rung granule k.
    std::int64_t cardinality(RungIndex r, std::int64_t k) const;
    //! Irregular rung r: counting granules in one full repetition.
    std::int64_t cycle_total(RungIndex r) const;

    //! Linear granule index of every rung for bottom granule z.
    std::vector<std::int64_t> granules(IndexValue z) const;
    //! Same, written into `out` (size() entries).
    void granules(IndexValue z, std::span<std::int64_t> out) const;

 private:
    friend HierarchyTable validate_hierarchy(HierarchyDefinition def);

    HierarchyTable() = default;

    struct Irregular {
        RungIndex base = 0;
        std::vector<std::int64_t> prefix;  // size R'+1
        std::int64_t total = 0;
        std::int64_t start = 0;
    };

    const Irregular& irregular(RungIndex r) const;

    HierarchyDefinition def_;
    std::vector<std::optional<Irregular>> irregular_;
};

//! Checks every ladder invariant and builds the lookup caches.
//! Errors: empty-hierarchy, duplicate-name, non-sentinel-top, bad-period,
//! bad-cardinalities, bad-alignment, unknown-rung.
HierarchyTable validate_hierarchy(HierarchyDefinition def);

//! Product of the constant periods of rungs [lower, upper). P(r, r) = 1.
//! Throws Errc::irregular_span if an irregular rung lies in the span.
std::int64_t period_length(const HierarchyTable& h, RungIndex lower, RungIndex upper);

//! Index of the granule of rung m containing bottom granule z.
std::int64_t linear_granule(const HierarchyTable& h, IndexValue z, RungIndex m);

//! Sub-ladder made of the named rungs (kept in hierarchy order). Dropped
//! constant rungs are folded into the periods of their neighbours.
HierarchyTable select_rungs(const HierarchyTable& h, const std::vector<std::string>& names);

//! Sub-ladder running from rung `lower` to rung `upper`, inclusive.
HierarchyTable slice(const HierarchyTable& h, std::string_view lower, std::string_view upper);

//! Number of irregular rungs in [lower, upper).
std::size_t irregular_count(const HierarchyTable& h, RungIndex lower, RungIndex upper);

//! floor(a / b) for b > 0.
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    return (a % b != 0 && a < 0) ? q - 1 : q;
}

constexpr std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
    return a - floor_div(a, b) * b;
}

}  // namespace granular
