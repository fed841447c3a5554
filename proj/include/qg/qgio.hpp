#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "qg/table.hpp"

namespace qg {

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// .qg text format: optional '#' comment lines, then the order n, then n lines
// of n whitespace-separated integers in [0, n). The writer emits no comments,
// single spaces and a trailing newline, so write/read round-trips byte-exactly.
QuasigroupTable read_qg(std::istream& in, std::string name = "");
QuasigroupTable read_qg_string(const std::string& text, std::string name = "");
QuasigroupTable read_qg_file(const std::string& path);

void write_qg(std::ostream& out, const QuasigroupTable& q);
std::string write_qg_string(const QuasigroupTable& q);
void write_qg_file(const std::string& path, const QuasigroupTable& q);

} // namespace qg
