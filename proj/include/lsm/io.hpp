#ifndef LSM_IO_HPP
#define LSM_IO_HPP

#include <iosfwd>
#include <string>
#include <variant>

#include "lsm/arrays.hpp"
#include "lsm/designcore.hpp"
#include "lsm/hdesign.hpp"

namespace lsm {

// Text formats, UTF-8, LF line endings, '#' starts a comment.
//   DESIGN <t> <k> <n> <blockcount>      then one block per line
//   LARGESET <t> <k> <n> <mu> <count>    then SYSTEM <idx> headers + blocks
//   HDESIGN <n> <g> <k> <t> <blockcount> flat group-major points
//   LARGESETH <n> <g> <k> <t> <count>    then SYSTEM <idx> headers + blocks
//   ARRAY <OA|PA|OD|LATIN> <t-or-lambda> <strength-k-or-0> <v> <rows> <cols>
// Parsers reject unsorted blocks, duplicate blocks and dimension mismatches
// by throwing std::runtime_error with a line reference.

void write_design(std::ostream& os, const Design& d);
void write_large_set(std::ostream& os, const LargeSet& ls);
void write_hdesign(std::ostream& os, const GroupedDesign& d);
void write_large_set_h(std::ostream& os, const LargeSetH& ls);
void write_array(std::ostream& os, const CodeArray& a);
// Serialized as LARGESET 1 2 n 1 (n-1): a one-factor is an S(1,2,n).
void write_one_factorization(std::ostream& os, const OneFactorization& f);

Design read_design(std::istream& is);
LargeSet read_large_set(std::istream& is);
GroupedDesign read_hdesign(std::istream& is);
LargeSetH read_large_set_h(std::istream& is);
CodeArray read_array(std::istream& is);
OneFactorization large_set_as_one_factorization(const LargeSet& ls);

using ParsedFile = std::variant<Design, LargeSet, GroupedDesign, LargeSetH, CodeArray>;

// Dispatches on the header keyword.
ParsedFile read_any(std::istream& is);
ParsedFile read_any_file(const std::string& path);

void write_any_file(const std::string& path, const ParsedFile& payload);

std::string kind_name(const ParsedFile& payload);

}  // namespace lsm

#endif
