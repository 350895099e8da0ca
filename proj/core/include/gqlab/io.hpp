#pragma once

#include "gqlab/incidence.hpp"

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace gqlab {

// File-format error carrying the 1-based input line.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// "GQ v1" text format:
//   # comment
//   point <id> [label]
//   line <id> [label]
//   flag <pid> <lid>
// Ids must be dense from 0 on each side; labels run to end of line.
// serialize_gq emits points, lines, then flags, each ascending, so
// parse(serialize(S)) == S and serialize(parse(text)) == text whenever text
// is already in that canonical order.
std::string serialize_gq(const IncidenceStructure& S);
IncidenceStructure parse_gq(std::istream& in);  // returns frozen; throws ParseError

// FNV-1a over the bytes; manifest content digests.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

}  // namespace gqlab
