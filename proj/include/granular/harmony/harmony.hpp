// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "granular/core/hierarchy.hpp"
#include "granular/core/relativity.hpp"
#include "granular/cyclic/descriptor.hpp"
#include "granular/table/table.hpp"

namespace granular {

enum class OccupancyMode { structural, observed };
enum class Verdict { harmony, near_clash, clash };

std::string_view to_string(OccupancyMode m);
std::string_view to_string(Verdict v);

//! K x L counts of (ci level, cj level) co-occurrences.
struct OccupancyTable {
    std::string ci;
    std::string cj;
    Level k = 0;
    Level l = 0;
    OccupancyMode mode = OccupancyMode::structural;
    IndexInterval span;  // structural mode only
    std::vector<std::int64_t> counts;  // row-major, k rows of l

    std::int64_t at(Level a, Level b) const { return counts[static_cast<std::size_t>(a * l + b)]; }
    std::int64_t total() const;
    std::vector<std::int64_t> row_totals() const;
    std::vector<std::int64_t> column_totals() const;
    OccupancyTable transposed() const;
};

//! Counts over every bottom granule of `span`. Without a span the scan covers
//! one common period of the pair. A declared span must cover that period when
//! both values repeat with a constant bottom period.
//! Errors: insufficient-span, unsupported-span, out-of-domain.
OccupancyTable cross_tab(const HierarchyTable& h, const CyclicGranularity& ci, const CyclicGranularity& cj,
                         std::optional<IndexInterval> span = std::nullopt);

//! Counts the rows of a table augmented with both columns.
//! Errors: unknown-granularity, out-of-domain.
OccupancyTable cross_tab(const GranularTable& t, const std::string& ci, const std::string& cj);

struct Cell {
    Level k = 0;
    Level l = 0;
    std::int64_t count = 0;
    //! Count over the larger of the row and column expectations under
    //! independence within that row or column.
    double ratio = 0;
    friend bool operator==(const Cell&, const Cell&) = default;
};

//! A non-empty cell is rare when count / max(row_total / L, col_total / K)
//! falls below `threshold`.
struct NearClashRule {
    double threshold = 0.27;
};

struct PairClassification {
    Verdict verdict = Verdict::harmony;
    //! Empty cells for a clash, rare cells for a near-clash.
    std::vector<Cell> evidence;
    OccupancyMode mode = OccupancyMode::structural;
    double threshold = 0;
};

PairClassification classify_pair(const OccupancyTable& o, NearClashRule rule = {});

struct HarmonyOptions {
    Level max_levels = 31;
    NearClashRule rule;
    bool keep_near_clashes = false;
};

struct HarmonyRow {
    std::string facet;
    std::string x;
    Level facet_levels = 0;
    Level x_levels = 0;
    Verdict verdict = Verdict::harmony;
};

//! Screens every ordered pair of `ds` against observed rows of `t` (which
//! must carry a column per descriptor). Rows are ordered by x, then facet,
//! both in the order of `ds`.
std::vector<HarmonyRow> harmony_table(const std::vector<CyclicGranularity>& ds, const GranularTable& t,
                                      const HarmonyOptions& opts = {});

//! Same screen from structural scans of h.
std::vector<HarmonyRow> harmony_table(const std::vector<CyclicGranularity>& ds, const HierarchyTable& h,
                                      std::optional<IndexInterval> span, const HarmonyOptions& opts = {});

//! Columns facet_variable, x_variable, facet_levels, x_levels.
void export_harmony_csv(std::ostream& out, const std::vector<HarmonyRow>& rows);

}  // namespace granular
