#include "gqlab/coordinates.hpp"

#include "gqlab/parallel.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace gqlab {

namespace {

// Single evaluation site for the coordinate incidence relations.  Everything
// below arity 3 is the hat chain; the arity-3/arity-3 case is
//   a' = a k + b,   k' = a^2 k + l - 2 a a'
// with -2 a a' identically zero in characteristic 2.
template <typename E, typename Add, typename Mul>
bool incident_eval(const CoordPoint<E>& p, const CoordLine<E>& m, Add add, Mul mul) {
  switch (p.kind) {
    case CKind::Inf:
      return m.kind == CKind::Inf || m.kind == CKind::One;
    case CKind::One:
      return m.kind == CKind::Inf || (m.kind == CKind::Two && p.x == m.x);
    case CKind::Two:
      return (m.kind == CKind::One && p.x == m.x) ||
             (m.kind == CKind::Three && p.x == m.x && p.y == m.y);
    case CKind::Three:
      if (m.kind == CKind::Two) return p.x == m.x && p.y == m.y;
      if (m.kind == CKind::Three)
        return p.z == add(mul(p.x, m.x), m.y) &&
               m.z == add(mul(mul(p.x, p.x), m.x), p.y);
      return false;
  }
  return false;
}

template <typename E, typename Member, typename Name>
void check_space(const E& v, MixedSpace space, Member member, Name name,
                 const char* slot, const char* shape) {
  if (!member(v, space))
    throw std::invalid_argument(std::string("coordinate ") + slot + " = " + name(v) +
                                " of " + shape + " lies outside " + to_string(space));
}

template <typename E, typename Member, typename Name>
void validate_point(const CoordPoint<E>& p, Member member, Name name) {
  switch (p.kind) {
    case CKind::Inf:
      return;
    case CKind::One:
      check_space(p.x, MixedSpace::L, member, name, "a", "point (a)");
      return;
    case CKind::Two:
      check_space(p.x, MixedSpace::LPrime, member, name, "k", "point (k,b)");
      check_space(p.y, MixedSpace::L, member, name, "b", "point (k,b)");
      return;
    case CKind::Three:
      check_space(p.x, MixedSpace::L, member, name, "a", "point (a,l,a')");
      check_space(p.y, MixedSpace::LPrime, member, name, "l", "point (a,l,a')");
      check_space(p.z, MixedSpace::L, member, name, "a'", "point (a,l,a')");
      return;
  }
}

template <typename E, typename Member, typename Name>
void validate_line(const CoordLine<E>& m, Member member, Name name) {
  switch (m.kind) {
    case CKind::Inf:
      return;
    case CKind::One:
      check_space(m.x, MixedSpace::LPrime, member, name, "k", "line [k]");
      return;
    case CKind::Two:
      check_space(m.x, MixedSpace::L, member, name, "a", "line [a,l]");
      check_space(m.y, MixedSpace::LPrime, member, name, "l", "line [a,l]");
      return;
    case CKind::Three:
      check_space(m.x, MixedSpace::LPrime, member, name, "k", "line [k,b,k']");
      check_space(m.y, MixedSpace::L, member, name, "b", "line [k,b,k']");
      check_space(m.z, MixedSpace::LPrime, member, name, "k'", "line [k,b,k']");
      return;
  }
}

std::string coords_body(const Gf2n& f, CKind kind, uint32_t x, uint32_t y, uint32_t z) {
  switch (kind) {
    case CKind::Inf:
      return "inf";
    case CKind::One:
      return f.to_string(x);
    case CKind::Two:
      return f.to_string(x) + "," + f.to_string(y);
    case CKind::Three:
      return f.to_string(x) + "," + f.to_string(y) + "," + f.to_string(z);
  }
  return "?";
}

std::string coords_body(CKind kind, const RatFn& x, const RatFn& y, const RatFn& z) {
  switch (kind) {
    case CKind::Inf:
      return "inf";
    case CKind::One:
      return x.to_string();
    case CKind::Two:
      return x.to_string() + "," + y.to_string();
    case CKind::Three:
      return x.to_string() + "," + y.to_string() + "," + z.to_string();
  }
  return "?";
}

}  // namespace

std::string to_string(const Gf2n& f, const CoordPoint<uint32_t>& p) {
  return "(" + coords_body(f, p.kind, p.x, p.y, p.z) + ")";
}
std::string to_string(const Gf2n& f, const CoordLine<uint32_t>& m) {
  return "[" + coords_body(f, m.kind, m.x, m.y, m.z) + "]";
}
std::string to_string(const CoordPoint<RatFn>& p) {
  return "(" + coords_body(p.kind, p.x, p.y, p.z) + ")";
}
std::string to_string(const CoordLine<RatFn>& m) {
  return "[" + coords_body(m.kind, m.x, m.y, m.z) + "]";
}

bool incident(const Gf2n& f, const CoordPoint<uint32_t>& p, const CoordLine<uint32_t>& m) {
  return incident_eval(
      p, m, [&](uint32_t a, uint32_t b) { return f.add(a, b); },
      [&](uint32_t a, uint32_t b) { return f.mul(a, b); });
}

bool incident(const FiniteMixed& tower, const CoordPoint<uint32_t>& p,
              const CoordLine<uint32_t>& m) {
  const Gf2n& f = tower.field();
  auto member = [&](uint32_t v, MixedSpace s) { return tower.member(v, s); };
  auto name = [&](uint32_t v) { return f.to_string(v); };
  validate_point(p, member, name);
  validate_line(m, member, name);
  return incident(f, p, m);
}

bool incident(const RationalMixed& tower, const CoordPoint<RatFn>& p,
              const CoordLine<RatFn>& m) {
  auto member = [&](const RatFn& v, MixedSpace s) { return tower.member(v, s); };
  auto name = [&](const RatFn& v) { return v.to_string(); };
  validate_point(p, member, name);
  validate_line(m, member, name);
  return incident_eval(
      p, m, [](const RatFn& a, const RatFn& b) { return a + b; },
      [](const RatFn& a, const RatFn& b) { return a * b; });
}

std::size_t SymplecticGq::point_id(const CoordPoint<uint32_t>& p) const {
  std::size_t q = field.order();
  switch (p.kind) {
    case CKind::Inf:
      return 0;
    case CKind::One:
      return 1 + p.x;
    case CKind::Two:
      return 1 + q + p.x * q + p.y;
    case CKind::Three:
      return 1 + q + q * q + (p.x * q + p.y) * q + p.z;
  }
  return SIZE_MAX;
}

std::size_t SymplecticGq::line_id(const CoordLine<uint32_t>& m) const {
  std::size_t q = field.order();
  switch (m.kind) {
    case CKind::Inf:
      return 0;
    case CKind::One:
      return 1 + m.x;
    case CKind::Two:
      return 1 + q + m.x * q + m.y;
    case CKind::Three:
      return 1 + q + q * q + (m.x * q + m.y) * q + m.z;
  }
  return SIZE_MAX;
}

SymplecticGq build_symplectic(const Gf2n& field) {
  const std::size_t q = field.order();
  const std::size_t n = 1 + q + q * q + q * q * q;
  SymplecticGq W{field, IncidenceStructure(n, n), {}, {}};
  W.point_coords.reserve(n);
  W.line_coords.reserve(n);

  W.point_coords.push_back(CoordPoint<uint32_t>::inf());
  for (uint32_t a = 0; a < q; ++a)
    W.point_coords.push_back(CoordPoint<uint32_t>::one(a));
  for (uint32_t k = 0; k < q; ++k)
    for (uint32_t b = 0; b < q; ++b)
      W.point_coords.push_back(CoordPoint<uint32_t>::two(k, b));
  for (uint32_t a = 0; a < q; ++a)
    for (uint32_t l = 0; l < q; ++l)
      for (uint32_t ap = 0; ap < q; ++ap)
        W.point_coords.push_back(CoordPoint<uint32_t>::three(a, l, ap));

  W.line_coords.push_back(CoordLine<uint32_t>::inf());
  for (uint32_t k = 0; k < q; ++k)
    W.line_coords.push_back(CoordLine<uint32_t>::one(k));
  for (uint32_t a = 0; a < q; ++a)
    for (uint32_t l = 0; l < q; ++l)
      W.line_coords.push_back(CoordLine<uint32_t>::two(a, l));
  for (uint32_t k = 0; k < q; ++k)
    for (uint32_t b = 0; b < q; ++b)
      for (uint32_t kp = 0; kp < q; ++kp)
        W.line_coords.push_back(CoordLine<uint32_t>::three(k, b, kp));

  auto pid = [&](const CoordPoint<uint32_t>& p) { return W.point_id(p); };
  auto lid = [&](const CoordLine<uint32_t>& m) { return W.line_id(m); };
  using P = CoordPoint<uint32_t>;
  using M = CoordLine<uint32_t>;

  W.S.add_flag(pid(P::inf()), lid(M::inf()));
  for (uint32_t a = 0; a < q; ++a) {
    W.S.add_flag(pid(P::one(a)), lid(M::inf()));
    for (uint32_t l = 0; l < q; ++l) W.S.add_flag(pid(P::one(a)), lid(M::two(a, l)));
  }
  for (uint32_t k = 0; k < q; ++k) {
    W.S.add_flag(pid(P::inf()), lid(M::one(k)));
    for (uint32_t b = 0; b < q; ++b) {
      W.S.add_flag(pid(P::two(k, b)), lid(M::one(k)));
      for (uint32_t kp = 0; kp < q; ++kp)
        W.S.add_flag(pid(P::two(k, b)), lid(M::three(k, b, kp)));
    }
  }
  for (uint32_t a = 0; a < q; ++a)
    for (uint32_t l = 0; l < q; ++l)
      for (uint32_t ap = 0; ap < q; ++ap) {
        W.S.add_flag(pid(P::three(a, l, ap)), lid(M::two(a, l)));
        // partner on [k,b,k']: b = a' + a k, k' = a^2 k + l
        for (uint32_t k = 0; k < q; ++k) {
          uint32_t b = field.add(ap, field.mul(a, k));
          uint32_t kp = field.add(field.mul(field.sqr(a), k), l);
          W.S.add_flag(pid(P::three(a, l, ap)), lid(M::three(k, b, kp)));
        }
      }

  for (std::size_t i = 0; i < n; ++i) {
    W.S.set_point_label(i, to_string(field, W.point_coords[i]));
    W.S.set_line_label(i, to_string(field, W.line_coords[i]));
  }
  W.S.freeze();
  return W;
}

std::optional<std::size_t> MixedPatch::point_id(const CoordPoint<RatFn>& p) const {
  for (std::size_t i = 0; i < point_coords.size(); ++i)
    if (point_coords[i] == p) return i;
  return std::nullopt;
}

std::optional<std::size_t> MixedPatch::line_id(const CoordLine<RatFn>& m) const {
  for (std::size_t i = 0; i < line_coords.size(); ++i)
    if (line_coords[i] == m) return i;
  return std::nullopt;
}

MixedPatch build_mixed_patch(const RationalMixed& tower, std::vector<RatFn> generators,
                             unsigned depth, std::size_t budget) {
  if (generators.empty())
    throw std::invalid_argument("mixed patch needs a nonempty generator set");

  // Scalar closure under +, *, / in rounds.
  std::vector<RatFn> scalars;
  std::unordered_set<RatFn, RatFnHash> seen;
  auto push = [&](const RatFn& x) {
    if (seen.insert(x).second) {
      scalars.push_back(x);
      if (scalars.size() > budget)
        throw BudgetError("scalar closure exceeded the element budget after " +
                              std::to_string(scalars.size()) + " elements",
                          budget, scalars.size());
    }
  };
  for (const RatFn& g : generators) push(g);
  for (unsigned round = 0; round < depth; ++round) {
    std::size_t base = scalars.size();
    for (std::size_t i = 0; i < base; ++i)
      for (std::size_t j = 0; j < base; ++j) {
        push(scalars[i] + scalars[j]);
        push(scalars[i] * scalars[j]);
        if (!scalars[j].is_zero()) push(scalars[i] / scalars[j]);
      }
  }

  std::vector<RatFn> in_l, in_lp;
  for (const RatFn& x : scalars) {
    if (tower.member(x, MixedSpace::L)) in_l.push_back(x);
    if (tower.member(x, MixedSpace::LPrime)) in_lp.push_back(x);
  }

  MixedPatch patch{tower, {}, {}, {}, scalars, {}};
  PatchReport& rep = patch.report;
  rep.scalar_count = scalars.size();
  rep.depth = depth;
  rep.budget = budget;

  std::size_t total = scalars.size();
  auto fits = [&](std::size_t want, const char* what) {
    if (total + want <= budget) {
      total += want;
      return true;
    }
    rep.notes.push_back(std::string(what) + " skipped: would need " +
                        std::to_string(want) + " more elements against budget " +
                        std::to_string(budget));
    return false;
  };

  using P = CoordPoint<RatFn>;
  using M = CoordLine<RatFn>;
  std::map<P, std::size_t> pid;
  std::map<M, std::size_t> lid;
  auto add_point = [&](const P& p) {
    if (pid.emplace(p, patch.point_coords.size()).second) patch.point_coords.push_back(p);
  };
  auto add_line = [&](const M& m) {
    if (lid.emplace(m, patch.line_coords.size()).second) patch.line_coords.push_back(m);
  };

  // Arity 0 and 1 always fit a sane budget; shells beyond that are optional.
  fits(2, "base shell");
  add_point(P::inf());
  add_line(M::inf());
  fits(in_l.size() + in_lp.size(), "arity-1 shell");
  for (const RatFn& a : in_l) add_point(P::one(a));
  for (const RatFn& k : in_lp) add_line(M::one(k));

  if ((rep.arity2_points = fits(in_lp.size() * in_l.size(), "arity-2 point shell")))
    for (const RatFn& k : in_lp)
      for (const RatFn& b : in_l) add_point(P::two(k, b));
  if ((rep.arity2_lines = fits(in_l.size() * in_lp.size(), "arity-2 line shell")))
    for (const RatFn& a : in_l)
      for (const RatFn& l : in_lp) add_line(M::two(a, l));
  if ((rep.arity3_points =
           fits(in_l.size() * in_lp.size() * in_l.size(), "arity-3 point shell")))
    for (const RatFn& a : in_l)
      for (const RatFn& l : in_lp)
        for (const RatFn& ap : in_l) add_point(P::three(a, l, ap));
  if ((rep.arity3_lines =
           fits(in_lp.size() * in_l.size() * in_lp.size(), "arity-3 line shell")))
    for (const RatFn& k : in_lp)
      for (const RatFn& b : in_l)
        for (const RatFn& kp : in_lp) add_line(M::three(k, b, kp));

  patch.S = IncidenceStructure(patch.point_coords.size(), patch.line_coords.size());
  auto flag = [&](const P& p, const M& m) {
    auto ip = pid.find(p);
    if (ip == pid.end()) return;
    auto im = lid.find(m);
    if (im == lid.end()) return;
    patch.S.add_flag(ip->second, im->second);
  };

  // Constructive incidence: walk the lines, solve for the partner point.
  flag(P::inf(), M::inf());
  for (const RatFn& a : in_l) flag(P::one(a), M::inf());
  for (const RatFn& k : in_lp) {
    flag(P::inf(), M::one(k));
    for (const RatFn& b : in_l) flag(P::two(k, b), M::one(k));
  }
  if (rep.arity2_lines)
    for (const RatFn& a : in_l)
      for (const RatFn& l : in_lp) {
        flag(P::one(a), M::two(a, l));
        if (rep.arity3_points)
          for (const RatFn& ap : in_l) flag(P::three(a, l, ap), M::two(a, l));
      }
  if (rep.arity3_lines)
    for (const RatFn& k : in_lp)
      for (const RatFn& b : in_l)
        for (const RatFn& kp : in_lp) {
          M m = M::three(k, b, kp);
          flag(P::two(k, b), m);
          if (!rep.arity3_points) continue;
          for (const RatFn& a : in_l) {
            RatFn ap = a * k + b;
            RatFn l = a * a * k + kp;
            flag(P::three(a, l, ap), m);
          }
        }

  for (std::size_t i = 0; i < patch.point_coords.size(); ++i)
    patch.S.set_point_label(i, to_string(patch.point_coords[i]));
  for (std::size_t i = 0; i < patch.line_coords.size(); ++i)
    patch.S.set_line_label(i, to_string(patch.line_coords[i]));
  patch.S.freeze();
  return patch;
}

std::optional<CoordPoint<RatFn>> block_meet(const RationalMixed& tower,
                                            const SymBlock& b1, const SymBlock& b2) {
  if (b1.a == b2.a && b1.ap == b2.ap)
    throw std::invalid_argument("block_meet needs two distinct blocks");
  if (b1.a == b2.a) return CoordPoint<RatFn>::one(b1.a);
  RatFn xs = (b1.ap + b2.ap) / (b1.a + b2.a);
  if (!tower.member(xs, MixedSpace::LPrime)) return std::nullopt;
  return CoordPoint<RatFn>::two(xs, b1.a * xs + b1.ap);
}

VyWitnessReport mixed_vy_witness(const RationalMixed& tower) {
  const unsigned lp = tower.class_mask(MixedSpace::LPrime);
  auto rep_elem = [](unsigned c) {
    switch (c) {
      case 1: return RatFn::s();
      case 2: return RatFn::t();
      case 3: return RatFn::s() * RatFn::t();
      default: return RatFn::one();
    }
  };

  // Pick classes c1, c2 covered by L' whose product class escapes L' if any
  // such pair exists; otherwise the first covered pair (the check then
  // confirms the meet).  k = 1 would degenerate u = k/(1+k), so class 0 is
  // represented by s^2 on the k side.
  int c1 = -1, c2 = -1;
  for (unsigned i = 0; i < 4 && c1 < 0; ++i)
    for (unsigned j = 0; j < 4 && c1 < 0; ++j)
      if ((lp >> i & 1) && (lp >> j & 1) && !(lp >> (i ^ j) & 1)) {
        c1 = int(i);
        c2 = int(j);
      }
  if (c1 < 0)
    for (unsigned i = 1; i < 4 && c1 < 0; ++i)
      for (unsigned j = i + 1; j < 4 && c1 < 0; ++j)
        if ((lp >> i & 1) && (lp >> j & 1)) {
          c1 = int(i);
          c2 = int(j);
        }
  if (c1 < 0)
    for (unsigned i = 1; i < 4 && c1 < 0; ++i)
      if (lp >> i & 1) c1 = c2 = int(i);
  if (c1 < 0) c1 = c2 = 0;

  VyWitnessReport w;
  w.k = c1 == 0 ? RatFn::s() * RatFn::s() : rep_elem(unsigned(c1));
  w.kprime = rep_elem(unsigned(c2));
  w.x_star = w.k * w.kprime;

  RatFn one = RatFn::one(), zero = RatFn::zero();
  w.side_a = {zero, zero};
  w.side_b = {zero, one};
  w.side_c = {one, zero};
  RatFn u = w.k / (one + w.k);
  w.crossing = {u, u * w.kprime};

  // Triangle vertices must exist and the crossing must hit the first two
  // sides; anything else means the block algebra is broken.
  auto need = [&](const SymBlock& p, const SymBlock& q) {
    auto m = block_meet(tower, p, q);
    if (!m) throw std::logic_error("symbolic block meet unexpectedly empty");
    return *m;
  };
  need(w.side_a, w.side_b);
  need(w.side_a, w.side_c);
  need(w.side_b, w.side_c);
  w.meet_a = need(w.side_a, w.crossing);
  w.meet_b = need(w.side_b, w.crossing);

  RatFn third = (w.crossing.ap + w.side_c.ap) / (w.crossing.a + w.side_c.a);
  if (third != w.x_star)
    throw std::logic_error("third-side meet parameter is not k*k'");
  w.meet_c = block_meet(tower, w.side_c, w.crossing);
  w.vy_holds = w.meet_c.has_value();

  // narrative only: parenthesise multi-term halves so s/(s+1) reads correctly
  auto pretty = [](const RatFn& r) {
    if (r.den().is_one()) return r.num().to_string();
    auto wrap = [](const Poly2& p) {
      std::string s = p.to_string();
      return s.find('+') == std::string::npos ? s : "(" + s + ")";
    };
    return wrap(r.num()) + "/" + wrap(r.den());
  };
  auto pretty_pt = [&](const CoordPoint<RatFn>& p) {
    if (p.kind == CKind::One) return "(" + pretty(p.x) + ")";
    return "(" + pretty(p.x) + "," + pretty(p.y) + ")";
  };
  std::ostringstream n;
  n << "k = " << pretty(w.k) << ", k' = " << pretty(w.kprime)
    << ", both in L'\n";
  n << "triangle sides T[a,a']: T[0,0], T[0,1], T[1,0]; crossing T[u,u*k'] with u = "
    << pretty(u) << "\n";
  n << "crossing meets T[0,0] at " << pretty_pt(w.meet_a) << " and T[0,1] at "
    << pretty_pt(w.meet_b) << "\n";
  n << "meet with T[1,0] requires x = k*k' = " << pretty(w.x_star) << " in L'\n";
  if (w.vy_holds)
    n << "k*k' lies in L': third side met at " << to_string(*w.meet_c)
      << ", no counterexample here";
  else
    n << "k*k' lies outside L': the crossing meets two sides of the triangle "
         "in distinct points and misses the third";
  w.narrative = n.str();
  return w;
}

}  // namespace gqlab
