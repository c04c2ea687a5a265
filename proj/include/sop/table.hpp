#pragma once

#include <string>
#include <variant>
#include <vector>

#include "sop/types.hpp"

namespace sop {

// Deterministic 12-significant-digit formatting used by every emitter.
std::string fmt12(double v);
std::string fmt12(cxd v);  // "re,im" pair

using Cell = std::variant<std::string, double, long>;

// Column-labelled rows; every numeric cell is formatted with fmt12 at
// serialization time so identical runs produce identical bytes.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> cells) {
        if (cells.size() != columns.size())
            throw std::invalid_argument("Table: row width does not match columns");
        rows.push_back(std::move(cells));
    }
};

std::string cell_text(const Cell& c);

// Writers; `metadata` lines are emitted as "# key: value" header comments
// (CSV) or an object field (JSON).
using Metadata = std::vector<std::pair<std::string, std::string>>;

std::string table_to_csv(const Table& t, const Metadata& meta);
std::string table_to_json(const Table& t, const Metadata& meta);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace sop
