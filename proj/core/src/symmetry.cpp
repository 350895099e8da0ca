#include "gqlab/symmetry.hpp"

#include <algorithm>

#include "gqlab/gf2n.hpp"
#include "gqlab/parallel.hpp"

namespace gqlab {

namespace {

constexpr std::size_t kUnset = SIZE_MAX;

// Lines meeting every transversal of {l1, l2}; contains l1 and l2.  For a
// regular l1 and opposite l2 the members are pairwise opposite, so a point
// lies on at most one of them.
DynBitset line_span(const IncidenceStructure& S, std::size_t l1, std::size_t l2) {
  DynBitset per = S.line_adj(l1) & S.line_adj(l2);
  DynBitset sp(S.lines());
  bool first = true;
  per.for_each([&](std::size_t k) {
    if (first) {
      sp = S.line_adj(k);
      first = false;
    } else {
      sp &= S.line_adj(k);
    }
  });
  return sp;
}

[[noreturn]] void fail_transport(const IncidenceStructure& S, const DualNet& net,
                                 int cL, const std::string& what) {
  std::string msg = "symmetry transport failed: " + what;
  CheckOptions opt;
  opt.exhaustive = true;
  LdOutcome ld = check_ld(net, cL, opt);
  if (!ld.pass && ld.cex) {
    const LdCounterexample& c = *ld.cex;
    auto tri = [&](const std::array<uint32_t, 3>& sides) {
      std::string t = "{B" + std::to_string(sides[0]) + ",B" + std::to_string(sides[1]) +
                      ",B" + std::to_string(sides[2]) + "}";
      return t;
    };
    msg += "; the dual net at " + S.point_name(net.center) +
           " violates the little Desargues condition for vertical V" +
           std::to_string(c.vertical) + ": triangles " + tri(c.sides_a) + " and " +
           tri(c.sides_b);
  }
  throw SymmetryError(msg);
}

}  // namespace

bool Collineation::is_identity() const {
  for (std::size_t i = 0; i < pmap.size(); ++i)
    if (pmap[i] != i) return false;
  for (std::size_t i = 0; i < lmap.size(); ++i)
    if (lmap[i] != i) return false;
  return true;
}

Collineation compose(const Collineation& first, const Collineation& second) {
  Collineation c;
  c.pmap.resize(first.pmap.size());
  c.lmap.resize(first.lmap.size());
  for (std::size_t i = 0; i < c.pmap.size(); ++i) c.pmap[i] = second.pmap[first.pmap[i]];
  for (std::size_t i = 0; i < c.lmap.size(); ++i) c.lmap[i] = second.lmap[first.lmap[i]];
  return c;
}

Collineation identity_collineation(const IncidenceStructure& S) {
  Collineation c;
  c.pmap.resize(S.points());
  c.lmap.resize(S.lines());
  for (std::size_t i = 0; i < c.pmap.size(); ++i) c.pmap[i] = i;
  for (std::size_t i = 0; i < c.lmap.size(); ++i) c.lmap[i] = i;
  return c;
}

void verify_collineation(const IncidenceStructure& S, const Collineation& c) {
  if (c.pmap.size() != S.points() || c.lmap.size() != S.lines())
    throw std::logic_error("collineation size mismatch");
  std::vector<char> seen(S.points(), 0);
  for (std::size_t i = 0; i < c.pmap.size(); ++i) {
    if (c.pmap[i] >= S.points() || seen[c.pmap[i]])
      throw std::logic_error("point map is not a permutation at " + S.point_name(i));
    seen[c.pmap[i]] = 1;
  }
  std::vector<char> seenl(S.lines(), 0);
  for (std::size_t i = 0; i < c.lmap.size(); ++i) {
    if (c.lmap[i] >= S.lines() || seenl[c.lmap[i]])
      throw std::logic_error("line map is not a permutation at " + S.line_name(i));
    seenl[c.lmap[i]] = 1;
  }
  // Bijection plus flag preservation in one direction forces the converse:
  // both structures carry the same number of flags.
  for (std::size_t l = 0; l < S.lines(); ++l) {
    const DynBitset& img = S.line_points(c.lmap[l]);
    bool ok = true;
    S.line_points(l).for_each([&](std::size_t pt) {
      if (!img.test(c.pmap[pt])) ok = false;
    });
    if (!ok)
      throw std::logic_error("incidence not preserved on line " + S.line_name(l));
  }
}

void verify_polarity(const IncidenceStructure& S, const Polarity& rho) {
  const std::size_t np = S.points(), nl = S.lines();
  if (np != nl) throw std::logic_error("polarity requires equally many points and lines");
  if (rho.point_to_line.size() != np || rho.line_to_point.size() != nl)
    throw std::logic_error("polarity size mismatch");
  for (std::size_t i = 0; i < np; ++i) {
    std::size_t l = rho.point_to_line[i];
    if (l >= nl || rho.line_to_point[l] != i)
      throw std::logic_error("polarity is not an involution at " + S.point_name(i));
  }
  for (std::size_t j = 0; j < nl; ++j) {
    std::size_t x = rho.line_to_point[j];
    if (x >= np || rho.point_to_line[x] != j)
      throw std::logic_error("polarity is not an involution at " + S.line_name(j));
  }
  for (std::size_t j = 0; j < nl; ++j) {
    const DynBitset& row = S.line_points(j);
    const std::size_t xj = rho.line_to_point[j];
    for (std::size_t i = 0; i < np; ++i)
      if (row.test(i) != S.line_points(rho.point_to_line[i]).test(xj))
        throw std::logic_error("polarity breaks incidence between " + S.point_name(i) +
                               " and " + S.line_name(j));
  }
}

Collineation build_symmetry(const IncidenceStructure& S, std::size_t L, std::size_t p,
                            std::size_t a, std::size_t aprime, const DualNet& net) {
  if (!S.frozen()) throw std::invalid_argument("structure must be frozen");
  if (L >= S.lines() || p >= S.points() || a >= S.points() || aprime >= S.points())
    throw std::invalid_argument("symmetry input out of range");
  if (net.center != p) throw std::invalid_argument("dual net is centered elsewhere");
  if (!S.line_points(L).test(p))
    throw std::invalid_argument("the base point must lie on the axis");
  const std::ptrdiff_t ia = net.net_index[a];
  const std::ptrdiff_t iap = net.net_index[aprime];
  if (ia < 0 || iap < 0)
    throw std::invalid_argument("a and a' must be collinear with the base point");
  const int cL = net.vertical_of_line(L);
  const int cM = net.vclass[std::size_t(ia)];
  if (cM != net.vclass[std::size_t(iap)])
    throw std::invalid_argument("a and a' must share a line through the base point");
  if (cM == cL) throw std::invalid_argument("a and a' must avoid the axis");

  const std::size_t NP = S.points(), NL = S.lines();
  Collineation c;
  c.pmap.assign(NP, kUnset);
  c.lmap.assign(NL, kUnset);

  S.line_points(L).for_each([&](std::size_t pt) { c.pmap[pt] = pt; });
  const DynBitset& meetsL = S.line_adj(L);
  meetsL.for_each([&](std::size_t l) { c.lmap[l] = l; });

  // Points collinear with p off the base line: the perp through a and q cuts
  // L in b; the image is the crossing of q's line through p with the perp
  // through a' and b.
  const std::size_t n = net.points();
  for (std::size_t iq = 0; iq < n; ++iq) {
    const int cq = net.vclass[iq];
    if (cq == cL || cq == cM) continue;
    int32_t alpha = net.join(std::size_t(ia), iq);
    if (alpha < 0)
      fail_transport(S, net, cL, "no unique perp through a and " + net.labels[iq]);
    int32_t b = net.vmeet(std::size_t(cL), std::size_t(alpha));
    if (b < 0) fail_transport(S, net, cL, "perp misses the axis vertical");
    int32_t beta = net.join(std::size_t(iap), std::size_t(b));
    if (beta < 0)
      fail_transport(S, net, cL,
                     "no unique perp through a' and " + net.labels[std::size_t(b)]);
    int32_t img = net.vmeet(std::size_t(cq), std::size_t(beta));
    if (img < 0) fail_transport(S, net, cL, "translated perp misses the vertical of " +
                                                net.labels[iq]);
    c.pmap[net.pts[iq]] = net.pts[std::size_t(img)];
  }

  // Points on the base line of a: transport through a helper point on a third
  // line, whose image is already known.
  int helper = -1;
  for (std::size_t v = 0; v < net.verticals.size(); ++v)
    if (int(v) != cL && int(v) != cM) {
      helper = net.verticals[v].first();
      break;
    }
  if (helper < 0) fail_transport(S, net, cL, "no third line through the base point");
  const std::ptrdiff_t ih = net.net_index[c.pmap[net.pts[std::size_t(helper)]]];
  for (std::size_t ic = 0; ic < n; ++ic) {
    if (net.vclass[ic] != cM) continue;
    int32_t gamma = net.join(std::size_t(helper), ic);
    if (gamma < 0)
      fail_transport(S, net, cL, "no unique perp through the helper and " + net.labels[ic]);
    int32_t b = net.vmeet(std::size_t(cL), std::size_t(gamma));
    if (b < 0) fail_transport(S, net, cL, "helper perp misses the axis vertical");
    int32_t delta = net.join(std::size_t(ih), std::size_t(b));
    if (delta < 0)
      fail_transport(S, net, cL, "no unique perp through the helper image and " +
                                     net.labels[std::size_t(b)]);
    int32_t img = net.vmeet(std::size_t(cM), std::size_t(delta));
    if (img < 0) fail_transport(S, net, cL, "translated helper perp misses the base line");
    c.pmap[net.pts[ic]] = net.pts[std::size_t(img)];
  }
  if (c.pmap[a] != aprime)
    fail_transport(S, net, cL, "transport does not carry a to a'");

  // Lines opposite the axis: the image is the line of the span of {L, N}
  // through the image of the projection of p onto N.
  for (std::size_t N = 0; N < NL; ++N) {
    if (meetsL.test(N)) continue;
    int q = (S.adj(p) & S.line_points(N)).sole();
    if (q < 0) fail_transport(S, net, cL, "projection of the base point onto " +
                                              S.line_name(N) + " is not unique");
    DynBitset span = line_span(S, L, N);
    int img = (span & S.point_lines(c.pmap[std::size_t(q)])).sole();
    if (img < 0)
      fail_transport(S, net, cL, "span of the axis and " + S.line_name(N) +
                                     " has no unique line through the image of " +
                                     S.point_name(std::size_t(q)));
    c.lmap[N] = std::size_t(img);
  }

  // Remaining points: crossing of the translated line with the unique line
  // to the axis, which is fixed as a set.
  for (std::size_t t = 0; t < NP; ++t) {
    if (c.pmap[t] != kUnset) continue;
    const DynBitset& pls = S.point_lines(t);
    int K = (pls & meetsL).sole();
    if (K < 0) fail_transport(S, net, cL, "no unique line from " + S.point_name(t) +
                                              " to the axis");
    DynBitset rest = pls;
    rest.andnot_assign(meetsL);
    int N = rest.first();
    if (N < 0) fail_transport(S, net, cL, S.point_name(t) + " lies on no line opposite the axis");
    int img = (S.line_points(c.lmap[std::size_t(N)]) & S.line_points(std::size_t(K))).sole();
    if (img < 0)
      fail_transport(S, net, cL, "translated line misses the axis line of " + S.point_name(t));
    c.pmap[t] = std::size_t(img);
  }

  try {
    verify_collineation(S, c);
  } catch (const std::logic_error& e) {
    fail_transport(S, net, cL, e.what());
  }
  return c;
}

Collineation build_symmetry(const IncidenceStructure& S, std::size_t L, std::size_t p,
                            std::size_t a, std::size_t aprime) {
  if (L >= S.lines()) throw std::invalid_argument("symmetry input out of range");
  if (!is_regular_line(S, L))
    throw std::invalid_argument("the axis must be a regular line");
  DualNet net = extract_dual_net(S, p);
  return build_symmetry(S, L, p, a, aprime, net);
}

std::vector<Collineation> symmetries_about(const IncidenceStructure& S, std::size_t L) {
  if (L >= S.lines()) throw std::invalid_argument("line id out of range");
  if (!is_regular_line(S, L))
    throw std::invalid_argument("axis test requires a regular line");
  std::ptrdiff_t p = -1;
  S.line_points(L).for_each([&](std::size_t q) {
    if (p < 0 && is_regular_point(S, q)) p = std::ptrdiff_t(q);
  });
  if (p < 0) throw std::invalid_argument("axis test requires a regular point on the line");
  DualNet net = extract_dual_net(S, std::size_t(p));
  const int cL = net.vertical_of_line(L);
  const std::size_t h = (cL == 0) ? 1 : 0;
  const DynBitset& base = net.verticals[h];
  const std::size_t a0 = net.pts[std::size_t(base.first())];
  std::vector<Collineation> out;
  base.for_each([&](std::size_t idx) {
    out.push_back(build_symmetry(S, L, std::size_t(p), a0, net.pts[idx], net));
  });
  return out;
}

bool is_axis_of_symmetry(const IncidenceStructure& S, std::size_t L) {
  std::vector<Collineation> elems;
  try {
    elems = symmetries_about(S, L);
  } catch (const SymmetryError&) {
    return false;
  }

  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j) {
      Collineation ij = compose(elems[i], elems[j]);
      if (!(ij == compose(elems[j], elems[i]))) return false;
      if (std::find(elems.begin(), elems.end(), ij) == elems.end()) return false;
    }

  // The group must act regularly on the span of {L, N} minus the axis.
  auto orbit_covers = [&](std::size_t N) {
    DynBitset span = line_span(S, L, N);
    DynBitset seen(S.lines());
    for (const Collineation& e : elems) {
      const std::size_t im = e.lmap[N];
      if (im == L || !span.test(im) || seen.test(im)) return false;
      seen.set(im);
    }
    return seen.count() + 1 == span.count();
  };
  const DynBitset& meetsL = S.line_adj(L);
  std::ptrdiff_t w1 = -1, w2 = -1;
  for (std::size_t l = 0; l < S.lines() && w2 < 0; ++l)
    if (!meetsL.test(l)) (w1 < 0 ? w1 : w2) = std::ptrdiff_t(l);
  if (w1 < 0) return false;
  if (!orbit_covers(std::size_t(w1))) return false;
  return w2 < 0 || orbit_covers(std::size_t(w2));
}

bool is_center_of_symmetry(const IncidenceStructure& S, std::size_t x) {
  if (x >= S.points()) throw std::invalid_argument("point id out of range");
  return is_axis_of_symmetry(S.dual(), x);
}

std::optional<Polarity> find_polarity(const SymplecticGq& W) {
  std::optional<TitsEndo> th = tits_endomorphism(W.field);
  if (!th) return std::nullopt;
  const std::size_t np = W.S.points(), nl = W.S.lines();
  Polarity rho;
  rho.point_to_line.resize(np);
  rho.line_to_point.resize(nl);
  using CP = CoordPoint<uint32_t>;
  using CL = CoordLine<uint32_t>;
  for (std::size_t i = 0; i < np; ++i) {
    const CP& c = W.point_coords[i];
    CL m;
    switch (c.kind) {
      case CKind::Inf: m = CL::inf(); break;
      case CKind::One: m = CL::one(th->theta(c.x)); break;
      case CKind::Two: m = CL::two(th->theta_inv(c.x), th->theta(c.y)); break;
      case CKind::Three:
        m = CL::three(th->theta(c.x), th->theta_inv(c.y), th->theta(c.z));
        break;
    }
    rho.point_to_line[i] = W.line_id(m);
  }
  for (std::size_t j = 0; j < nl; ++j) {
    const CL& m = W.line_coords[j];
    CP c;
    switch (m.kind) {
      case CKind::Inf: c = CP::inf(); break;
      case CKind::One: c = CP::one(th->theta_inv(m.x)); break;
      case CKind::Two: c = CP::two(th->theta(m.x), th->theta_inv(m.y)); break;
      case CKind::Three:
        c = CP::three(th->theta_inv(m.x), th->theta(m.y), th->theta_inv(m.z));
        break;
    }
    rho.line_to_point[j] = W.point_id(c);
  }
  verify_polarity(W.S, rho);
  return rho;
}

AbsoluteElements absolute_elements(const IncidenceStructure& S, const Polarity& rho) {
  verify_polarity(S, rho);
  AbsoluteElements abs;
  abs.points = DynBitset(S.points());
  abs.lines = DynBitset(S.lines());
  for (std::size_t i = 0; i < S.points(); ++i)
    if (S.line_points(rho.point_to_line[i]).test(i)) abs.points.set(i);
  for (std::size_t j = 0; j < S.lines(); ++j)
    if (S.line_points(j).test(rho.line_to_point[j])) abs.lines.set(j);
  for (std::size_t j = 0; j < S.lines(); ++j) {
    const std::size_t k = S.line_points(j).intersection_count(abs.points);
    if (k != 1)
      throw std::runtime_error("absolute points do not form an ovoid: " + S.line_name(j) +
                               " carries " + std::to_string(k));
  }
  return abs;
}

CentricReport check_centric_subquadrangle(const IncidenceStructure& S,
                                          const IncidenceStructure& sub,
                                          const std::vector<std::size_t>& point_embed,
                                          const std::vector<std::size_t>& line_embed,
                                          const CheckOptions& opt) {
  if (!S.frozen() || !sub.frozen())
    throw std::invalid_argument("both structures must be frozen");
  if (point_embed.size() != sub.points() || line_embed.size() != sub.lines())
    throw std::invalid_argument("embedding size mismatch");
  for (std::size_t x = 0; x < sub.points(); ++x)
    if (sub.point_lines(x).count() < 3)
      throw std::invalid_argument("subquadrangle is not thick: " + sub.point_name(x) +
                                  " lies on " + std::to_string(sub.point_lines(x).count()) +
                                  " lines");
  for (std::size_t l = 0; l < sub.lines(); ++l)
    if (sub.line_points(l).count() < 3)
      throw std::invalid_argument("subquadrangle is not thick: " + sub.line_name(l) +
                                  " carries " + std::to_string(sub.line_points(l).count()) +
                                  " points");
  {
    std::vector<char> seen(S.points(), 0);
    for (std::size_t v : point_embed) {
      if (v >= S.points() || seen[v])
        throw std::invalid_argument("point embedding is not injective into the host");
      seen[v] = 1;
    }
    std::vector<char> seenl(S.lines(), 0);
    for (std::size_t v : line_embed) {
      if (v >= S.lines() || seenl[v])
        throw std::invalid_argument("line embedding is not injective into the host");
      seenl[v] = 1;
    }
  }
  for (std::size_t l = 0; l < sub.lines(); ++l) {
    const DynBitset& host = S.line_points(line_embed[l]);
    for (std::size_t x = 0; x < sub.points(); ++x)
      if (sub.line_points(l).test(x) != host.test(point_embed[x]))
        throw std::invalid_argument("embedding does not preserve incidence between " +
                                    sub.point_name(x) + " and " + sub.line_name(l));
  }
  const std::size_t n = sub.points();
  CentricReport rep;
  rep.stats.total = n * (n - 1) * (n - 2) / 6;
  // Pairwise opposite in sub, center sought in the host.
  auto eval = [&](std::size_t x, std::size_t y, std::size_t z) {
    if (sub.adj(x).test(y) || sub.adj(x).test(z) || sub.adj(y).test(z)) return true;
    DynBitset ctr = S.adj(point_embed[x]) & S.adj(point_embed[y]);
    ctr &= S.adj(point_embed[z]);
    if (ctr.any()) return true;
    rep.pass = false;
    rep.witness = {x, y, z};
    return false;
  };
  if (opt.exhaustive || rep.stats.total <= opt.budget) {
    rep.stats.exhaustive = true;
    for (std::size_t x = 0; x < n && rep.pass; ++x)
      for (std::size_t y = x + 1; y < n && rep.pass; ++y)
        for (std::size_t z = y + 1; z < n && rep.pass; ++z) {
          ++rep.stats.checked;
          eval(x, y, z);
        }
  } else {
    rep.stats.exhaustive = false;
    for (std::size_t i = 0; i < opt.budget && rep.pass; ++i) {
      uint64_t u = sample_at(opt.seed, i);
      std::size_t x = std::size_t(u % n);
      std::size_t y = std::size_t((u >> 20) % n);
      std::size_t z = std::size_t((u >> 40) % n);
      if (x == y || x == z || y == z) continue;
      ++rep.stats.checked;
      eval(x, y, z);
    }
  }
  return rep;
}

}  // namespace gqlab
