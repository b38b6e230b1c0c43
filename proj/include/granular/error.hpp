// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace granular {

//! Stable error codes. The spelling returned by `to_string` is part of the
//! CLI contract (it appears in the machine-readable error line).
enum class Errc {
    // validation
    empty_hierarchy,
    duplicate_name,
    non_sentinel_top,
    bad_period,
    bad_cardinalities,
    bad_alignment,
    overlapping_events,
    unknown_rung,
    unknown_granularity,
    partial_remap,
    bad_labels,
    parse_error,
    invalid_config,
    // data
    io_error,
    unparseable_timestamp,
    duplicate_row,
    pre_origin,
    unknown_column,
    bad_value,
    // computation
    irregular_span,
    unsupported_span,
    kind_mismatch,
    out_of_domain,
    empty_span,
    insufficient_span,
    unsupported_geometry,
    refused_clash,
    // cli
    usage,
};

enum class ErrorCategory { usage, validation, data, computation };

constexpr std::string_view to_string(Errc code) {
    switch (code) {
        case Errc::empty_hierarchy: return "empty-hierarchy";
        case Errc::duplicate_name: return "duplicate-name";
        case Errc::non_sentinel_top: return "non-sentinel-top";
        case Errc::bad_period: return "bad-period";
        case Errc::bad_cardinalities: return "bad-cardinalities";
        case Errc::bad_alignment: return "bad-alignment";
        case Errc::overlapping_events: return "overlapping-events";
        case Errc::unknown_rung: return "unknown-rung";
        case Errc::unknown_granularity: return "unknown-granularity";
        case Errc::partial_remap: return "partial-remap";
        case Errc::bad_labels: return "bad-labels";
        case Errc::parse_error: return "parse-error";
        case Errc::invalid_config: return "invalid-config";
        case Errc::io_error: return "io-error";
        case Errc::unparseable_timestamp: return "unparseable-timestamp";
        case Errc::duplicate_row: return "duplicate";
        case Errc::pre_origin: return "pre-origin";
        case Errc::unknown_column: return "unknown-column";
        case Errc::bad_value: return "bad-value";
        case Errc::irregular_span: return "irregular-span";
        case Errc::unsupported_span: return "unsupported-span";
        case Errc::kind_mismatch: return "kind-mismatch";
        case Errc::out_of_domain: return "out-of-domain";
        case Errc::empty_span: return "empty-span";
        case Errc::insufficient_span: return "insufficient-span";
        case Errc::unsupported_geometry: return "unsupported-geometry";
        case Errc::refused_clash: return "refused-clash";
        case Errc::usage: return "usage";
    }
    return "unknown";
}

constexpr ErrorCategory category_of(Errc code) {
    switch (code) {
        case Errc::usage:
            return ErrorCategory::usage;
        case Errc::io_error:
        case Errc::unparseable_timestamp:
        case Errc::duplicate_row:
        case Errc::pre_origin:
        case Errc::unknown_column:
        case Errc::bad_value:
            return ErrorCategory::data;
        case Errc::irregular_span:
        case Errc::unsupported_span:
        case Errc::kind_mismatch:
        case Errc::out_of_domain:
        case Errc::empty_span:
        case Errc::insufficient_span:
        case Errc::unsupported_geometry:
        case Errc::refused_clash:
            return ErrorCategory::computation;
        default:
            return ErrorCategory::validation;
    }
}

//! Process exit status for an error category: 2 usage, 3 validation, 4 data,
//! 5 computation.
constexpr int exit_code(ErrorCategory c) {
    switch (c) {
        case ErrorCategory::usage: return 2;
        case ErrorCategory::validation: return 3;
        case ErrorCategory::data: return 4;
        case ErrorCategory::computation: return 5;
    }
    return 1;
}

class Error : public std::runtime_error {
 public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const noexcept { return code_; }

 private:
    Errc code_;
};

}  // namespace granular
