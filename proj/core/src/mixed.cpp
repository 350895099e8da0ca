#include "gqlab/mixed.hpp"

#include <bit>
#include <cctype>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace gqlab {
namespace {

std::uint64_t full_mask(uint32_t order) {
  return order >= 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << order) - 1;
}

// Closure of {0,1} + gens under field addition and multiplication.  The
// result is finite and closed under both ring operations, hence a subfield.
std::uint64_t subfield_closure(const Gf2n& f, std::uint64_t seed) {
  std::uint64_t m = seed | 0b11;
  for (bool grew = true; grew;) {
    grew = false;
    for (uint32_t a = 0; a < f.order(); ++a) {
      if (!(m >> a & 1)) continue;
      for (uint32_t b = a; b < f.order(); ++b) {
        if (!(m >> b & 1)) continue;
        for (uint32_t c : {f.add(a, b), f.mul(a, b)}) {
          if (!(m >> c & 1)) { m |= std::uint64_t(1) << c; grew = true; }
        }
      }
    }
  }
  return m;
}

// Closure of gens under addition and scalar multiplication from base.
std::uint64_t module_closure(const Gf2n& f, std::uint64_t base, std::uint64_t seed) {
  std::uint64_t m = seed | 1;
  for (bool grew = true; grew;) {
    grew = false;
    for (uint32_t a = 0; a < f.order(); ++a) {
      if (!(m >> a & 1)) continue;
      for (uint32_t b = 0; b < f.order(); ++b) {
        uint32_t c;
        if (m >> b & 1) c = f.add(a, b);
        else if (base >> b & 1) c = f.mul(a, b);
        else continue;
        if (!(m >> c & 1)) { m |= std::uint64_t(1) << c; grew = true; }
      }
    }
  }
  return m;
}

std::uint64_t seed_mask(const Gf2n& f, const std::vector<unsigned>& gens,
                        const char* space) {
  std::uint64_t m = 0;
  for (unsigned g : gens) {
    if (g >= f.order())
      throw std::invalid_argument(std::string(space) + " generator " +
                                  std::to_string(g) + " is outside GF(" +
                                  std::to_string(f.order()) + ")");
    m |= std::uint64_t(1) << g;
  }
  return m;
}

unsigned klein_subgroup(unsigned class_bits) {
  unsigned g = class_bits | 1;  // class 0 = K^2
  for (bool grew = true; grew;) {
    grew = false;
    for (unsigned a = 0; a < 4; ++a)
      for (unsigned b = 0; b < 4; ++b)
        if ((g >> a & 1) && (g >> b & 1) && !(g >> (a ^ b) & 1)) {
          g |= 1u << (a ^ b);
          grew = true;
        }
  }
  return g;
}

const char* class_name(unsigned c) {
  static const char* names[4] = {"even", "odd in s", "odd in t", "odd in s and t"};
  return names[c & 3];
}

void require_pure(const std::vector<RatFn>& gens, const char* space) {
  for (const RatFn& g : gens) {
    if (g.is_zero())
      throw std::invalid_argument(std::string(space) + " has a zero generator");
    unsigned m = class_support(g);
    if (std::popcount(m) != 1)
      throw std::invalid_argument(
          std::string(space) + " generator " + g.to_string() +
          " is not class-pure: its monomial parity classes mix, so parity "
          "support cannot certify membership");
  }
}

unsigned sole_class(const RatFn& g) {
  return unsigned(std::countr_zero(class_support(g)));
}

std::string trim(std::string s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void desc_error(int line, const std::string& what) {
  throw std::invalid_argument("descriptor line " + std::to_string(line) + ": " + what);
}

}  // namespace

const char* to_string(MixedSpace space) {
  switch (space) {
    case MixedSpace::KSquared: return "K^2";
    case MixedSpace::KPrime: return "K'";
    case MixedSpace::L: return "L";
    case MixedSpace::LPrime: return "L'";
  }
  return "?";
}

unsigned class_support(const RatFn& x) {
  return (x.num() * x.den()).parity_class_mask();
}

bool class_pure(const RatFn& x) { return std::popcount(class_support(x)) <= 1; }

FiniteMixed FiniteMixed::build(Gf2n field,
                               const std::vector<unsigned>& kprime_gens,
                               const std::vector<unsigned>& l_gens,
                               const std::vector<unsigned>& lprime_gens) {
  if (field.degree() > 6)
    throw std::invalid_argument("finite towers support GF(2^n) only up to n = 6");
  FiniteMixed t(std::move(field));
  const Gf2n& f = t.field_;
  const std::uint64_t all = full_mask(f.order());

  t.kprime_mask_ = subfield_closure(f, seed_mask(f, kprime_gens, "K'"));
  if (t.kprime_mask_ != all)
    throw std::invalid_argument(
        "K' generators span only GF(" +
        std::to_string(std::popcount(t.kprime_mask_)) + "); GF(" +
        std::to_string(f.order()) +
        ") is perfect, its squares exhaust it, so any field between the "
        "squares and the field itself must be the whole field");

  t.l_mask_ = module_closure(f, t.kprime_mask_, seed_mask(f, l_gens, "L"));
  if ((t.l_mask_ & t.kprime_mask_) != t.kprime_mask_)
    throw std::invalid_argument("K' is not contained in L: the L generators span only the zero space");

  t.lprime_mask_ = module_closure(f, all, seed_mask(f, lprime_gens, "L'"));
  if (t.lprime_mask_ != all)
    throw std::invalid_argument("K^2 is not contained in L': the L' generators span only the zero space");

  return t;
}

bool FiniteMixed::member(unsigned element, MixedSpace space) const {
  if (element >= field_.order())
    throw std::invalid_argument("element code outside the field");
  return mask(space) >> element & 1;
}

std::uint64_t FiniteMixed::mask(MixedSpace space) const {
  switch (space) {
    case MixedSpace::KSquared: return full_mask(field_.order());  // perfect field
    case MixedSpace::KPrime: return kprime_mask_;
    case MixedSpace::L: return l_mask_;
    case MixedSpace::LPrime: return lprime_mask_;
  }
  return 0;
}

RationalMixed RationalMixed::build(const std::vector<RatFn>& kprime_gens,
                                   const std::vector<RatFn>& l_gens,
                                   const std::vector<RatFn>& lprime_gens) {
  require_pure(kprime_gens, "K'");
  require_pure(l_gens, "L");
  require_pure(lprime_gens, "L'");

  RationalMixed t;
  unsigned cs = 1;
  for (const RatFn& g : kprime_gens) cs |= 1u << sole_class(g);
  t.kprime_mask_ = klein_subgroup(cs);

  t.l_mask_ = 0;
  for (const RatFn& g : l_gens) {
    unsigned c = sole_class(g);
    for (unsigned k = 0; k < 4; ++k)
      if (t.kprime_mask_ >> k & 1) t.l_mask_ |= 1u << (k ^ c);
  }
  if ((t.l_mask_ & t.kprime_mask_) != t.kprime_mask_)
    throw std::invalid_argument(
        "K' is not contained in L: no L generator lies in K' (add 1, or any "
        "element of K', to the L generators)");

  t.lprime_mask_ = 0;
  for (const RatFn& g : lprime_gens) t.lprime_mask_ |= 1u << sole_class(g);
  if (!(t.lprime_mask_ & 1))
    throw std::invalid_argument(
        "K^2 is not contained in L': no L' generator has even parity class "
        "(add 1, or any square, to the L' generators)");
  if (t.lprime_mask_ & ~t.kprime_mask_) {
    unsigned c = unsigned(std::countr_zero(t.lprime_mask_ & ~t.kprime_mask_));
    throw std::invalid_argument(std::string("L' is not contained in K': class \"") +
                                class_name(c) + "\" lies outside K'");
  }

  t.kprime_gens_ = kprime_gens;
  t.l_gens_ = l_gens;
  t.lprime_gens_ = lprime_gens;
  return t;
}

bool RationalMixed::member(const RatFn& x, MixedSpace space) const {
  return (class_support(x) & ~class_mask(space)) == 0;
}

unsigned RationalMixed::class_mask(MixedSpace space) const {
  switch (space) {
    case MixedSpace::KSquared: return 1;
    case MixedSpace::KPrime: return kprime_mask_;
    case MixedSpace::L: return l_mask_;
    case MixedSpace::LPrime: return lprime_mask_;
  }
  return 0;
}

bool RationalMixed::proper() const {
  return kprime_mask_ != 0xf || l_mask_ != 0xf || lprime_mask_ != 0xf;
}

MixedGenerators parse_descriptor(std::istream& in) {
  MixedGenerators g;
  bool have_field = false;
  std::string raw;
  for (int line = 1; std::getline(in, raw); ++line) {
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    std::istringstream ss(s);
    std::string head;
    ss >> head;
    if (head == "field") {
      if (have_field) desc_error(line, "duplicate field line");
      std::string kind;
      ss >> kind;
      if (kind == "rational") {
        g.finite = false;
      } else if (kind == "gf") {
        unsigned q = 0;
        if (!(ss >> q) || q < 2 || q > 64 || std::popcount(q) != 1)
          desc_error(line, "field gf <q> needs a power of two between 2 and 64");
        g.finite = true;
        g.q = q;
      } else {
        desc_error(line, "unknown field kind \"" + kind + "\" (want rational or gf <q>)");
      }
      have_field = true;
      continue;
    }
    if (head != "kprime" && head != "l" && head != "lprime")
      desc_error(line, "unknown directive \"" + head + "\"");
    if (!have_field) desc_error(line, "generator before the field line");
    std::string rest;
    std::getline(ss, rest);
    rest = trim(rest);
    if (rest.empty()) desc_error(line, head + " line has no generator");
    if (g.finite) {
      unsigned code = 0;
      std::size_t used = 0;
      try {
        code = unsigned(std::stoul(rest, &used, 16));
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != rest.size() || code >= g.q)
        desc_error(line, "bad field element \"" + rest + "\" (hex code below " +
                             std::to_string(g.q) + ")");
      (head == "kprime" ? g.fin_kprime : head == "l" ? g.fin_l : g.fin_lprime)
          .push_back(code);
    } else {
      std::optional<RatFn> x = parse_sparse(rest);
      if (!x) x = RatFn::parse(rest);
      if (!x) desc_error(line, "bad rational function \"" + rest + "\"");
      (head == "kprime" ? g.rat_kprime : head == "l" ? g.rat_l : g.rat_lprime)
          .push_back(*x);
    }
  }
  if (!have_field) throw std::invalid_argument("descriptor has no field line");
  return g;
}

std::string serialize_descriptor(const MixedGenerators& g) {
  std::ostringstream out;
  if (g.finite) {
    out << "field gf " << g.q << "\n";
    Gf2n f(unsigned(std::countr_zero(g.q)));
    auto dump = [&](const char* name, const std::vector<unsigned>& v) {
      for (unsigned e : v) out << name << ' ' << f.to_string(e) << "\n";
    };
    dump("kprime", g.fin_kprime);
    dump("l", g.fin_l);
    dump("lprime", g.fin_lprime);
  } else {
    out << "field rational\n";
    auto dump = [&](const char* name, const std::vector<RatFn>& v) {
      for (const RatFn& x : v) out << name << ' ' << to_sparse(x) << "\n";
    };
    dump("kprime", g.rat_kprime);
    dump("l", g.rat_l);
    dump("lprime", g.rat_lprime);
  }
  return out.str();
}

MixedTower build_tower(const MixedGenerators& g) {
  if (g.finite)
    return FiniteMixed::build(Gf2n(unsigned(std::countr_zero(g.q))), g.fin_kprime,
                              g.fin_l, g.fin_lprime);
  return RationalMixed::build(g.rat_kprime, g.rat_l, g.rat_lprime);
}

std::string to_sparse(const Poly2& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::uint64_t key : p.keys()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(uint32_t(key & 0xffffffffu));
    out += ',';
    out += std::to_string(uint32_t(key >> 32));
    out += ":1";
  }
  return out;
}

std::string to_sparse(const RatFn& x) {
  std::string out = to_sparse(x.num());
  if (!x.den().is_one()) {
    out += '/';
    out += to_sparse(x.den());
  }
  return out;
}

std::optional<Poly2> parse_sparse_poly(std::string_view text) {
  std::string s = trim(std::string(text));
  if (s == "0") return Poly2();
  Poly2 p;
  std::istringstream ss(s);
  std::string tok;
  bool any = false;
  while (ss >> tok) {
    any = true;
    std::size_t comma = tok.find(',');
    std::size_t colon = tok.find(':');
    if (comma == std::string::npos || colon == std::string::npos || colon < comma)
      return std::nullopt;
    if (tok.substr(colon + 1) != "1") return std::nullopt;
    unsigned long es = 0, et = 0;
    try {
      std::size_t u1 = 0, u2 = 0;
      es = std::stoul(tok.substr(0, comma), &u1, 10);
      et = std::stoul(tok.substr(comma + 1, colon - comma - 1), &u2, 10);
      if (u1 != comma || u2 != colon - comma - 1) return std::nullopt;
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (es > 0x7fffffff || et > 0x7fffffff) return std::nullopt;
    p += Poly2::monomial(uint32_t(es), uint32_t(et));
  }
  if (!any) return std::nullopt;
  return p;
}

std::optional<RatFn> parse_sparse(std::string_view text) {
  std::string s(text);
  std::size_t slash = s.find('/');
  if (slash == std::string::npos) {
    std::optional<Poly2> n = parse_sparse_poly(s);
    if (!n) return std::nullopt;
    return RatFn::of(*n);
  }
  if (s.find('/', slash + 1) != std::string::npos) return std::nullopt;
  std::optional<Poly2> n = parse_sparse_poly(s.substr(0, slash));
  std::optional<Poly2> d = parse_sparse_poly(s.substr(slash + 1));
  if (!n || !d || d->is_zero()) return std::nullopt;
  return RatFn::of(*n, *d);
}

}  // namespace gqlab
