#include "gqlab/io.hpp"

#include <istream>
#include <sstream>
#include <vector>

namespace gqlab {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string serialize_gq(const IncidenceStructure& S) {
  std::ostringstream out;
  out << "# GQ v1\n";
  for (std::size_t p = 0; p < S.points(); ++p) {
    out << "point " << p;
    if (!S.point_label(p).empty()) out << ' ' << S.point_label(p);
    out << '\n';
  }
  for (std::size_t l = 0; l < S.lines(); ++l) {
    out << "line " << l;
    if (!S.line_label(l).empty()) out << ' ' << S.line_label(l);
    out << '\n';
  }
  for (std::size_t p = 0; p < S.points(); ++p)
    S.point_lines(p).for_each([&](int l) { out << "flag " << p << ' ' << l << '\n'; });
  return out.str();
}

IncidenceStructure parse_gq(std::istream& in) {
  struct Decl {
    std::size_t id;
    std::string label;
    int line;
  };
  struct Flag {
    std::size_t p, l;
    int line;
  };
  std::vector<Decl> points, lines;
  std::vector<Flag> flags;

  std::string raw;
  for (int lineno = 1; std::getline(in, raw); ++lineno) {
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    std::istringstream ss(s);
    std::string head;
    ss >> head;
    if (head == "point" || head == "line") {
      long long id = -1;
      if (!(ss >> id) || id < 0) throw ParseError(lineno, head + " needs a nonnegative id");
      std::string label;
      std::getline(ss, label);
      (head == "point" ? points : lines)
          .push_back({std::size_t(id), trim(label), lineno});
    } else if (head == "flag") {
      long long p = -1, l = -1;
      if (!(ss >> p >> l) || p < 0 || l < 0)
        throw ParseError(lineno, "flag needs two nonnegative ids");
      std::string tail;
      if (ss >> tail) throw ParseError(lineno, "trailing tokens after flag");
      flags.push_back({std::size_t(p), std::size_t(l), lineno});
    } else {
      throw ParseError(lineno, "unknown directive \"" + head + "\"");
    }
  }

  auto check_dense = [](std::vector<Decl>& v, const char* side) {
    std::vector<int> seen(v.size(), 0);
    for (const Decl& d : v) {
      if (d.id >= v.size())
        throw ParseError(d.line, std::string(side) + " ids are not dense from 0");
      if (seen[d.id]++)
        throw ParseError(d.line, std::string(side) + " id " + std::to_string(d.id) +
                                     " declared twice");
    }
  };
  check_dense(points, "point");
  check_dense(lines, "line");

  IncidenceStructure S(points.size(), lines.size());
  for (const Decl& d : points)
    if (!d.label.empty()) S.set_point_label(d.id, d.label);
  for (const Decl& d : lines)
    if (!d.label.empty()) S.set_line_label(d.id, d.label);
  for (const Flag& f : flags) {
    if (f.p >= points.size()) throw ParseError(f.line, "flag names undeclared point");
    if (f.l >= lines.size()) throw ParseError(f.line, "flag names undeclared line");
    if (S.incident(f.p, f.l)) throw ParseError(f.line, "duplicate flag");
    S.add_flag(f.p, f.l);
  }
  S.freeze();
  return S;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* d = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[std::size_t(i)] = d[v & 15];
    v >>= 4;
  }
  return s;
}

}  // namespace gqlab
