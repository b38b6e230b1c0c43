// SPDX-FileCopyrightText: 2026 The granular authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace granular::csv {

struct Row {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

struct Document {
    std::vector<std::string> header;
    std::vector<Row> rows;

    //! Position of a header column. Throws Errc::unknown_column.
    std::size_t column(std::string_view name) const;
};

//! Reads delimited text with a header row. Fields may be double-quoted
//! (`""` escapes a quote). Throws Errc::parse_error on ragged rows and
//! Errc::io_error on an empty stream.
Document read(std::istream& in, char delimiter = ',');
Document read_file(const std::string& path, char delimiter = ',');

//! Quotes a field when it holds the delimiter, a quote or a line break.
std::string escape(std::string_view field, char delimiter = ',');
void write_row(std::ostream& out, const std::vector<std::string>& fields, char delimiter = ',');

}  // namespace granular::csv
