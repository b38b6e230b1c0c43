// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#include "granular/table/csv.hpp"

#include <fstream>

#include "granular/error.hpp"

namespace granular::csv {

namespace {

//! Splits one record, reading further physical lines while a quote is open.
bool next_record(std::istream& in, char delimiter, std::size_t& line, std::vector<std::string>& out) {
    out.clear();
    std::string text;
    if (!std::getline(in, text)) return false;
    ++line;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0;; ++i) {
        if (i == text.size()) {
            if (quoted) {
                std::string more;
                if (!std::getline(in, more)) throw Error(Errc::parse_error, "line " + std::to_string(line) + ": unterminated quote");
                ++line;
                field += '\n';
                text = std::move(more);
                i = static_cast<std::size_t>(-1);
                continue;
            }
            break;
        }
        const char c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == delimiter) {
            out.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    out.push_back(std::move(field));
    return true;
}

}  // namespace

std::size_t Document::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw Error(Errc::unknown_column, "no column named '" + std::string(name) + "'");
}

Document read(std::istream& in, char delimiter) {
    Document doc;
    std::size_t line = 0;
    if (!next_record(in, delimiter, line, doc.header)) throw Error(Errc::io_error, "input has no header row");
    std::vector<std::string> fields;
    while (true) {
        const std::size_t start = line + 1;
        if (!next_record(in, delimiter, line, fields)) break;
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (fields.size() != doc.header.size()) {
            throw Error(Errc::parse_error, "line " + std::to_string(start) + ": expected " +
                                               std::to_string(doc.header.size()) + " fields, found " +
                                               std::to_string(fields.size()));
        }
        doc.rows.push_back({start, fields});
    }
    return doc;
}

Document read_file(const std::string& path, char delimiter) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io_error, "cannot open '" + path + "'");
    return read(in, delimiter);
}

std::string escape(std::string_view field, char delimiter) {
    if (field.find_first_of(std::string{delimiter, '"', '\n', '\r'}) == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields, char delimiter) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << delimiter;
        out << escape(fields[i], delimiter);
    }
    out << '\n';
}

}  // namespace granular::csv
