#include "gqlab/reconstruction.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "gqlab/parallel.hpp"

namespace gqlab {

namespace {

// Axioms the rebuild leans on.  The exact-circle strengthening and the two
// deep closure conditions are deliberately absent: the construction needs
// uniqueness and the touching behaviour, nothing more.
constexpr InvAxiom kGate[] = {InvAxiom::MP1, InvAxiom::MP2, InvAxiom::CH1,
                              InvAxiom::CH2, InvAxiom::ST1, InvAxiom::ST2};

}  // namespace

Reconstruction reconstruct(const CircleGeometry& G) {
  CheckOptions gate_opt;
  gate_opt.exhaustive = true;  // every gate axiom is low-degree polynomial
  for (InvAxiom ax : kGate) {
    InvOutcome o = check_axiom(G, ax, gate_opt);
    if (!o.pass) {
      std::string msg =
          "reconstruction requires axiom " + axiom_name(ax) + ", which fails";
      if (o.cex && !o.cex->note.empty()) msg += ": " + o.cex->note;
      throw std::invalid_argument(msg);
    }
  }

  const std::size_t n = G.n, nc = G.size(), total = n + nc;
  Reconstruction R;
  R.base_points = n;
  R.S = IncidenceStructure(total, total);

  for (std::size_t x = 0; x < n; ++x) {
    R.S.add_flag(x, x);
    R.S.set_point_label(x, G.point_name(x));
    R.S.set_line_label(x, G.point_name(x));
  }
  for (std::size_t c = 0; c < nc; ++c) {
    const std::size_t g = G.gnarl[c];
    if (g >= n)
      throw std::invalid_argument("circle " + std::to_string(c) +
                                  " carries no valid mark");
    R.S.add_flag(g, n + c);
    R.S.add_flag(n + c, g);
    R.S.set_point_label(n + c, "C" + std::to_string(c));
    R.S.set_line_label(n + c, "C" + std::to_string(c));
  }
  // circle point on circle line: each mark lies on the other circle and the
  // marks differ (symmetric, so both ordered flags appear)
  for (std::size_t c = 0; c < nc; ++c)
    for (std::size_t d = 0; d < nc; ++d) {
      if (c == d) continue;
      const std::size_t gc = G.gnarl[c], gd = G.gnarl[d];
      if (gc != gd && G.circles[d].test(gc) && G.circles[c].test(gd))
        R.S.add_flag(n + c, n + d);
    }
  R.S.freeze();

  R.rho.point_to_line.resize(total);
  R.rho.line_to_point.resize(total);
  for (std::size_t i = 0; i < total; ++i)
    R.rho.point_to_line[i] = R.rho.line_to_point[i] = i;
  verify_polarity(R.S, R.rho);

  // the mirroring fixes exactly the original points
  for (std::size_t i = 0; i < total; ++i)
    if (R.S.incident(i, i) != (i < n))
      throw std::logic_error("self-incident elements must be the original "
                             "points exactly, but " +
                             R.S.point_name(i) + " breaks the rule");
  return R;
}

CollinearityReport check_collinearity(const CircleGeometry& G,
                                      const Reconstruction& R) {
  CollinearityReport rep;
  const IncidenceStructure& S = R.S;
  const std::size_t n = G.n, nc = G.size(), total = n + nc;

  for (std::size_t x = 0; x < n && rep.base_pairs.pass; ++x) {
    const DynBitset& ax = S.adj(x);
    for (int y = ax.next(x + 1); y >= 0; y = ax.next(std::size_t(y) + 1)) {
      if (std::size_t(y) >= n) break;
      rep.base_pairs = {false, x, std::size_t(y),
                        "original points " + S.point_name(x) + " and " +
                            S.point_name(y) + " are collinear"};
      break;
    }
  }

  for (std::size_t x = 0; x < n && rep.base_circle.pass; ++x)
    for (std::size_t c = 0; c < nc; ++c) {
      const bool want = G.circles[c].test(x);
      const bool got = S.adj(x).test(n + c);
      if (want != got) {
        rep.base_circle = {false, x, n + c,
                           S.point_name(x) + " and circle " +
                               std::to_string(c) + ": on-circle " +
                               (want ? "yes" : "no") + ", collinear " +
                               (got ? "yes" : "no")};
        break;
      }
    }

  for (std::size_t c = 0; c < nc && rep.circle_pairs.pass; ++c)
    for (std::size_t d = c + 1; d < nc; ++d) {
      const bool want = G.touch_point(c, d) >= 0;
      const bool got = S.adj(n + c).test(n + d);
      if (want != got) {
        rep.circle_pairs = {false, n + c, n + d,
                            "circles " + std::to_string(c) + " and " +
                                std::to_string(d) + ": touch " +
                                (want ? "yes" : "no") + ", collinear " +
                                (got ? "yes" : "no")};
        break;
      }
    }

  for (std::size_t a = 0; a < total && rep.unique_joins.pass; ++a)
    for (std::size_t b = a + 1; b < total; ++b)
      if (S.point_lines(a).intersection_count(S.point_lines(b)) > 1) {
        rep.unique_joins = {false, a, b,
                            S.point_name(a) + " and " + S.point_name(b) +
                                " lie on two common lines"};
        break;
      }

  rep.all_pass = rep.base_pairs.pass && rep.base_circle.pass &&
                 rep.circle_pairs.pass && rep.unique_joins.pass;
  return rep;
}

NaturalIso natural_isomorphism(const IncidenceStructure& src,
                               const Polarity& src_rho,
                               const CircleGeometry& G,
                               const Reconstruction& R) {
  NaturalIso iso;
  const std::size_t np = src.points(), nl = src.lines();
  const std::size_t n = G.n;
  if (np != R.S.points() || nl != R.S.lines()) {
    iso.why = "element counts differ between source and reconstruction";
    return iso;
  }
  try {
    verify_polarity(src, src_rho);
  } catch (const std::exception& e) {
    iso.why = e.what();
    return iso;
  }

  // invert the provenance tables: an absolute point keeps its id in G, any
  // other point is named by the circle it cuts
  std::vector<std::ptrdiff_t> target(np, -1);
  for (std::size_t i = 0; i < G.ambient_point.size(); ++i)
    target[G.ambient_point[i]] = std::ptrdiff_t(i);
  for (std::size_t c = 0; c < G.ambient_source.size(); ++c)
    target[G.ambient_source[c]] = std::ptrdiff_t(n + c);

  iso.point_map.resize(np);
  for (std::size_t y = 0; y < np; ++y) {
    if (target[y] < 0) {
      iso.why = "point " + src.point_name(y) + " has no image";
      return iso;
    }
    iso.point_map[y] = std::size_t(target[y]);
  }
  // the reconstruction's pairing is the identity on ids, so commuting with
  // both pairings forces the line rule
  iso.line_map.resize(nl);
  for (std::size_t l = 0; l < nl; ++l)
    iso.line_map[l] = iso.point_map[src_rho.line_to_point[l]];

  std::vector<char> seen(np, 0);
  for (std::size_t v : iso.point_map)
    if (seen[v]++) {
      iso.why = "point map is not injective at id " + std::to_string(v);
      return iso;
    }
  std::fill(seen.begin(), seen.end(), 0);
  for (std::size_t v : iso.line_map)
    if (seen[v]++) {
      iso.why = "line map is not injective at id " + std::to_string(v);
      return iso;
    }

  // equal flag counts plus one-directional preservation give the both-ways
  // equivalence
  std::size_t src_flags = 0, dst_flags = 0;
  for (std::size_t l = 0; l < nl; ++l) {
    src_flags += src.line_points(l).count();
    dst_flags += R.S.line_points(l).count();
  }
  if (src_flags != dst_flags) {
    iso.why = "flag counts differ: " + std::to_string(src_flags) + " vs " +
              std::to_string(dst_flags);
    return iso;
  }
  for (std::size_t l = 0; l < nl; ++l) {
    const DynBitset& lp = src.line_points(l);
    for (int p = lp.first(); p >= 0; p = lp.next(std::size_t(p) + 1))
      if (!R.S.incident(iso.point_map[p], iso.line_map[l])) {
        iso.why = "flag (" + src.point_name(p) + ", " + src.line_name(l) +
                  ") is not preserved";
        return iso;
      }
  }
  iso.ok = true;
  return iso;
}

ReconLemmas check_reconstruction_lemmas(const Reconstruction& R,
                                        const CheckOptions& opt) {
  ReconLemmas rep;
  const IncidenceStructure& S = R.S;
  const std::size_t total = S.points();
  const std::size_t n = R.base_points;

  // pairwise-collinear triples share a line: enough to scan collinear pairs
  // and demand every common neighbour sits on the joining line
  for (std::size_t a = 0; a < total && rep.triangle_free.pass; ++a) {
    const DynBitset& na = S.adj(a);
    for (int b = na.next(a + 1); b >= 0; b = na.next(std::size_t(b) + 1)) {
      DynBitset common = S.point_lines(a) & S.point_lines(std::size_t(b));
      const int l = common.sole();
      if (l < 0) {
        rep.triangle_free = {false, a, std::size_t(b),
                             "collinear pair without a unique joining line"};
        break;
      }
      DynBitset tri = na & S.adj(std::size_t(b));
      tri.andnot_assign(S.line_points(std::size_t(l)));
      if (tri.any()) {
        rep.triangle_free = {false, a, std::size_t(b),
                             "triangle through " + S.point_name(a) + ", " +
                                 S.point_name(b) + ", " +
                                 S.point_name(tri.first())};
        break;
      }
    }
  }

  for (std::size_t p = 0; p < total && rep.distance_three.pass; ++p)
    for (std::size_t l = 0; l < total; ++l) {
      if (S.incident(p, l)) continue;
      if (!S.adj(p).intersects(S.line_points(l))) {
        rep.distance_three = {false, p, l,
                              "no point of line " + S.line_name(l) +
                                  " is collinear with " + S.point_name(p)};
        break;
      }
    }

  for (std::size_t x = 0; x < n && rep.absolute_regular.pass; ++x) {
    if (!is_regular_point(S, x)) {
      rep.absolute_regular = {false, x, x,
                              "self-paired point " + S.point_name(x) +
                                  " is not regular"};
      break;
    }
    if (!is_regular_line(S, x)) {
      rep.absolute_regular = {false, x, x,
                              "self-paired line " + S.line_name(x) +
                                  " is not regular"};
      break;
    }
  }

  // spans meeting the self-paired set contain exactly two of its members
  DynBitset base(total);
  for (std::size_t x = 0; x < n; ++x) base.set(x);
  auto eval_pair = [&](std::size_t x, std::size_t y) -> bool {
    PointSetHandle sp = span(S, x, y);
    if (!sp.pts.intersects(base)) return true;
    if (sp.pts.intersection_count(base) == 2) return true;
    rep.span_absolutes = {false, x, y,
                          "span of " + S.point_name(x) + ", " +
                              S.point_name(y) + " holds " +
                              std::to_string(sp.pts.intersection_count(base)) +
                              " self-paired points"};
    return false;
  };
  // adj includes the point itself, so the ordered count needs no +1 fixup
  std::size_t opposite_pairs = 0;
  for (std::size_t x = 0; x < total; ++x)
    opposite_pairs += total - S.adj(x).count();
  opposite_pairs /= 2;
  rep.span_stats.total = opposite_pairs;
  const bool run_all = opt.exhaustive || opt.budget == SIZE_MAX;
  if (run_all) {
    rep.span_stats.exhaustive = true;
    for (std::size_t x = 0; x < total && rep.span_absolutes.pass; ++x) {
      const DynBitset& ax = S.adj(x);
      for (std::size_t y = x + 1; y < total; ++y) {
        if (ax.test(y)) continue;
        ++rep.span_stats.checked;
        if (!eval_pair(x, y)) break;
      }
    }
  } else {
    rep.span_stats.exhaustive = false;
    for (std::size_t i = 0; i < opt.budget && rep.span_absolutes.pass; ++i) {
      uint64_t u = sample_at(opt.seed, i);
      const std::size_t x = std::size_t(u % total);
      u = splitmix64(u);
      const std::size_t y = std::size_t(u % total);
      if (x == y || S.adj(x).test(y)) continue;
      ++rep.span_stats.checked;
      eval_pair(x, y);
    }
  }

  rep.all_pass = rep.triangle_free.pass && rep.distance_three.pass &&
                 rep.absolute_regular.pass && rep.span_absolutes.pass;
  return rep;
}

DualNetMatch check_dual_net_description(const CircleGeometry& G,
                                        const Reconstruction& R,
                                        std::size_t x) {
  DualNetMatch m;
  const std::size_t n = G.n;
  if (x >= n)
    throw std::invalid_argument("x must name an original point");
  DualNet net;
  try {
    net = extract_dual_net(R.S, x);
  } catch (const std::exception& e) {
    m.pass = false;
    m.why = e.what();
    return m;
  }

  if (net.points() != G.at[x].count()) {
    m.pass = false;
    m.why = "net at " + G.point_name(x) + " has " +
            std::to_string(net.points()) + " points, expected one per circle "
            "through it (" + std::to_string(G.at[x].count()) + ")";
    return m;
  }
  for (std::size_t i = 0; i < net.points(); ++i) {
    const std::size_t id = net.pts[i];
    if (id < n || !G.circles[id - n].test(x)) {
      m.pass = false;
      m.why = "net point " + R.S.point_name(id) + " is not a circle through " +
              G.point_name(x);
      return m;
    }
  }

  // one block per other original point: the circles through both
  std::set<DynBitset> expect;
  for (std::size_t y = 0; y < n; ++y) {
    if (y == x) continue;
    DynBitset blk(net.points());
    for (int c = G.at[x].first(); c >= 0; c = G.at[x].next(std::size_t(c) + 1))
      if (G.circles[c].test(y)) blk.set(std::size_t(net.net_index[n + c]));
    expect.insert(blk);
  }
  std::set<DynBitset> got(net.blocks.begin(), net.blocks.end());
  if (got != expect) {
    m.pass = false;
    m.why = "blocks of the net at " + G.point_name(x) +
            " do not match the pencils cut by the other original points";
    return m;
  }

  const int k = net.vertical_of_line(x);
  if (k < 0) {
    m.pass = false;
    m.why = "the mirror line of " + G.point_name(x) +
            " does not pass through it";
    return m;
  }
  for (std::size_t i = 0; i < net.points(); ++i) {
    const bool in_class = net.vclass[i] == k;
    const bool marked_here = G.gnarl[net.pts[i] - n] == x;
    if (in_class != marked_here) {
      m.pass = false;
      m.why = "vertical class of the mirror line differs from the circles "
              "marked at " + G.point_name(x) + " (circle " +
              std::to_string(net.pts[i] - n) + ")";
      return m;
    }
  }
  return m;
}

}  // namespace gqlab
