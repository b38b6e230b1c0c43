// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "granular/harmony/harmony.hpp"
#include "granular/table/table.hpp"

namespace granular {

//! Probabilities of the median, quartile, decile and percentile bands.
const std::vector<double>& default_probabilities();

//! Type 7 quantile (linear interpolation between order statistics) of
//! sorted, non-empty data.
double quantile_sorted(const std::vector<double>& sorted, double p);

struct LetterValue {
    int depth = 0;
    double lower = 0;
    double upper = 0;
};

struct CellSummary {
    Level facet = 0;
    std::string facet_label;
    Level x = 0;
    std::string x_label;
    std::int64_t n = 0;
    //! Empty when n = 0, like every statistic below.
    std::vector<std::pair<double, double>> quantiles;
    std::optional<double> mean;
    std::optional<double> min;
    std::optional<double> max;
    std::vector<LetterValue> letter_values;
};

struct SummaryOptions {
    std::vector<double> probabilities = default_probabilities();
    //! Also compute letter values at depths 1..max(1, ceil(log2 n) - 1).
    bool letter_values = false;
};

//! One summary per (facet level, x level), facet major, empty cells
//! included. Missing measurements are skipped.
//! Errors: unknown-column, unknown-granularity, bad-value (probabilities
//! empty, outside (0, 1) or unsorted).
std::vector<CellSummary> summarize_cells(const GranularTable& t, std::string_view x, std::string_view facet,
                                         std::string_view response, const SummaryOptions& opts = {});

enum class LevelsCategory { low, medium, high, very_high };
std::string_view to_string(LevelsCategory c);

//! Inclusive upper bounds of the first three categories.
struct LevelBounds {
    Level low = 7;
    Level medium = 14;
    Level high = 31;
};

//! Throws Errc::bad_value when n_levels < 1.
LevelsCategory categorize_levels(Level n_levels, const LevelBounds& bounds = {});

enum class Geometry { quantile_area, box, violin_like_density, letter_value_counts };
std::string_view to_string(Geometry g);
//! Throws Errc::unsupported_geometry for unknown names.
Geometry parse_geometry(std::string_view name);

struct Recommendation {
    Verdict verdict = Verdict::harmony;
    LevelsCategory x_category = LevelsCategory::low;
    LevelsCategory facet_category = LevelsCategory::low;
    //! Empty when refused.
    std::vector<Geometry> geometries;
    bool refused = false;
    std::vector<std::string> notes;
};

//! Plotting advice for `facet` against `x`. `typical_cell_n` (median cell
//! size) brings in letter-value displays from 1000 observations per cell.
Recommendation recommend(const CyclicGranularity& x, const CyclicGranularity& facet,
                         const PairClassification& classification,
                         std::optional<std::int64_t> typical_cell_n = std::nullopt, const LevelBounds& bounds = {});

struct PlotSpecOptions {
    std::string data_source;
    //! Emit even when some cell is empty.
    bool force = false;
    std::optional<PairClassification> classification;
    std::int64_t small_cell = 30;
};

//! Declarative plot document: facets, each holding its x positions, each
//! holding the cell statistics. Serialize with dump(2) for stable text.
//! Errors: bad-value (no summaries), unsupported-geometry, refused-clash.
nlohmann::ordered_json emit_plot_spec(const std::vector<CellSummary>& summaries, const CyclicGranularity& x,
                                      const CyclicGranularity& facet, std::string_view response, Geometry geometry,
                                      const PlotSpecOptions& opts = {});

//! Columns facet, x, prob, value, n; one row per cell and probability.
void export_summaries_csv(std::ostream& out, const std::vector<CellSummary>& summaries);

}  // namespace granular
