#include "qg/qgio.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace qg {

namespace {

bool next_data_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        size_t i = line.find_first_not_of(" \t\r");
        if (i == std::string::npos) continue;  // blank
        if (line[i] == '#') continue;          // comment
        return true;
    }
    return false;
}

std::vector<int> parse_ints(const std::string& line) {
    std::istringstream ss(line);
    std::vector<int> out;
    long long v;
    while (ss >> v) out.push_back(static_cast<int>(v));
    std::string rest;
    if (ss.fail() && !ss.eof() && ss >> rest)
        throw FormatError("non-integer token in table row: '" + rest + "'");
    ss.clear();
    if (ss >> rest) throw FormatError("non-integer token in table row: '" + rest + "'");
    return out;
}

} // namespace

QuasigroupTable read_qg(std::istream& in, std::string name) {
    std::string line;
    if (!next_data_line(in, line)) throw FormatError("missing order line");
    std::vector<int> head = parse_ints(line);
    if (head.size() != 1 || head[0] < 1)
        throw FormatError("order line must hold a single positive integer");
    const int n = head[0];
    std::vector<std::vector<int>> rows;
    for (int r = 0; r < n; ++r) {
        if (!next_data_line(in, line))
            throw FormatError("expected " + std::to_string(n) + " rows, got " + std::to_string(r));
        std::vector<int> row = parse_ints(line);
        if (static_cast<int>(row.size()) != n)
            throw FormatError("row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                              " entries, expected " + std::to_string(n));
        rows.push_back(std::move(row));
    }
    return QuasigroupTable::from_rows(rows, std::move(name));
}

QuasigroupTable read_qg_string(const std::string& text, std::string name) {
    std::istringstream in(text);
    return read_qg(in, std::move(name));
}

QuasigroupTable read_qg_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return read_qg(in, path);
}

void write_qg(std::ostream& out, const QuasigroupTable& q) {
    const int n = q.order();
    out << n << '\n';
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            if (y) out << ' ';
            out << q.mul(x, y);
        }
        out << '\n';
    }
}

std::string write_qg_string(const QuasigroupTable& q) {
    std::ostringstream out;
    write_qg(out, q);
    return out.str();
}

void write_qg_file(const std::string& path, const QuasigroupTable& q) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    write_qg(out, q);
}

} // namespace qg
