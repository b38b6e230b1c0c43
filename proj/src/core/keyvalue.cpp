// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#include "granular/core/keyvalue.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "granular/error.hpp"

namespace granular::kv {

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::int64_t to_int(std::string_view s, std::string_view what) {
    const auto t = trim(s);
    std::int64_t v = 0;
    const auto* end = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(t.data(), end, v);
    if (ec != std::errc() || ptr != end || t.empty()) {
        throw Error(Errc::parse_error, "expected an integer for " + std::string(what) + ", got '" + t + "'");
    }
    return v;
}

double to_double(std::string_view s, std::string_view what) {
    const auto t = trim(s);
    try {
        std::size_t used = 0;
        const double v = std::stod(t, &used);
        if (used == t.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(Errc::parse_error, "expected a number for " + std::string(what) + ", got '" + t + "'");
}

std::optional<std::string> Section::get(std::string_view key) const {
    for (const auto& [k, v] : entries) {
        if (k == key) return v;
    }
    return std::nullopt;
}

std::vector<std::string> Section::get_all(std::string_view key) const {
    std::vector<std::string> out;
    for (const auto& [k, v] : entries) {
        if (k == key) out.push_back(v);
    }
    return out;
}

std::string Section::require(std::string_view key) const {
    if (auto v = get(key)) return *v;
    throw Error(Errc::parse_error, "section [" + kind + (name.empty() ? "" : " " + name) + "] at line " +
                                       std::to_string(line) + " is missing '" + std::string(key) + "'");
}

std::vector<Section> parse(std::istream& in) {
    std::vector<Section> out;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const auto line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw Error(Errc::parse_error, "line " + std::to_string(line_no) + ": unterminated section header");
            }
            const auto words = split_ws(std::string_view(line).substr(1, line.size() - 2));
            if (words.empty() || words.size() > 2) {
                throw Error(Errc::parse_error, "line " + std::to_string(line_no) + ": malformed section header");
            }
            out.push_back({words[0], words.size() == 2 ? words[1] : std::string(), {}, line_no});
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(Errc::parse_error, "line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        if (out.empty()) {
            throw Error(Errc::parse_error, "line " + std::to_string(line_no) + ": entry outside of any section");
        }
        out.back().entries.emplace_back(trim(std::string_view(line).substr(0, eq)),
                                        trim(std::string_view(line).substr(eq + 1)));
    }
    return out;
}

std::vector<Section> parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io_error, "cannot open '" + path + "'");
    return parse(in);
}

}  // namespace granular::kv
