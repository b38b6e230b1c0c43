// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace granular::kv {

//! One `[kind name]` block of a key/value document. Keys may repeat.
struct Section {
    std::string kind;
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;
    int line = 0;

    std::optional<std::string> get(std::string_view key) const;
    std::vector<std::string> get_all(std::string_view key) const;
    //! Throws Errc::parse_error naming the section when absent.
    std::string require(std::string_view key) const;
};

//! Parses `[kind name]` headers, `key = value` lines and `#` comments.
//! Throws Errc::parse_error with the offending line number.
std::vector<Section> parse(std::istream& in);
std::vector<Section> parse_file(const std::string& path);

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::vector<std::string> split_ws(std::string_view s);
std::int64_t to_int(std::string_view s, std::string_view what);
double to_double(std::string_view s, std::string_view what);

}  // namespace granular::kv
