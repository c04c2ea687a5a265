#include "sop/table.hpp"

#include <cstdio>
#include <fstream>

namespace sop {

std::string fmt12(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt12(cxd v) { return fmt12(v.real()) + "," + fmt12(v.imag()); }

std::string cell_text(const Cell& c) {
    if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
    if (std::holds_alternative<double>(c)) return fmt12(std::get<double>(c));
    return std::to_string(std::get<long>(c));
}

std::string table_to_csv(const Table& t, const Metadata& meta) {
    std::string out;
    for (const auto& [k, v] : meta) out += "# " + k + ": " + v + "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ',';
        out += t.columns[i];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += cell_text(row[i]);
        }
        out += '\n';
    }
    return out;
}

namespace {

std::string json_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string table_to_json(const Table& t, const Metadata& meta) {
    std::string out = "{\n  \"metadata\": {";
    for (std::size_t i = 0; i < meta.size(); ++i) {
        if (i) out += ',';
        out += "\n    " + json_quote(meta[i].first) + ": " + json_quote(meta[i].second);
    }
    out += "\n  },\n  \"columns\": [";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ',';
        out += json_quote(t.columns[i]);
    }
    out += "],\n  \"rows\": [";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        if (r) out += ',';
        out += "\n    [";
        for (std::size_t i = 0; i < t.rows[r].size(); ++i) {
            if (i) out += ',';
            out += json_quote(cell_text(t.rows[r][i]));
        }
        out += ']';
    }
    out += "\n  ]\n}\n";
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    f << content;
    if (!f) throw IoError("write failed: " + path);
}

}  // namespace sop
