#include "gqlab/dual_net.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "gqlab/parallel.hpp"

namespace gqlab {

namespace {

// Intersection of adj over a set, seeded with an extra constraint so the
// running set never starts from all-ones.
DynBitset meet_of_perps(const IncidenceStructure& S, const DynBitset& set,
                        const DynBitset& seed) {
  DynBitset r = seed;
  set.for_each([&](std::size_t w) { r &= S.adj(w); });
  return r;
}

}  // namespace

int DualNet::vertical_of_line(std::size_t ambient_line) const {
  for (std::size_t v = 0; v < vertical_lines.size(); ++v)
    if (vertical_lines[v] == ambient_line) return int(v);
  return -1;
}

IncidenceStructure DualNet::net_structure() const {
  IncidenceStructure N(pts.size(), blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    blocks[b].for_each([&](std::size_t p) { N.add_flag(p, b); });
    N.set_line_label(b, "B" + std::to_string(b));
  }
  for (std::size_t p = 0; p < pts.size(); ++p) N.set_point_label(p, labels[p]);
  N.freeze();
  return N;
}

IncidenceStructure DualNet::completion() const {
  std::size_t n = pts.size();
  IncidenceStructure C(n + 1, blocks.size() + verticals.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    blocks[b].for_each([&](std::size_t p) { C.add_flag(p, b); });
    C.set_line_label(b, "B" + std::to_string(b));
  }
  for (std::size_t v = 0; v < verticals.size(); ++v) {
    std::size_t l = blocks.size() + v;
    verticals[v].for_each([&](std::size_t p) { C.add_flag(p, l); });
    C.add_flag(n, l);
    C.set_line_label(l, "V" + std::to_string(v));
  }
  for (std::size_t p = 0; p < n; ++p) C.set_point_label(p, labels[p]);
  C.set_point_label(n, "inf");
  C.freeze();
  return C;
}

DualNet extract_dual_net(const IncidenceStructure& S, std::size_t x) {
  if (!S.frozen()) throw std::logic_error("extract_dual_net needs a frozen structure");
  if (x >= S.points()) throw std::invalid_argument("extract_dual_net: no such point");
  if (!is_regular_point(S, x))
    throw std::invalid_argument("dual net needs a regular center, " + S.point_name(x) +
                                " is not regular");

  DualNet net;
  net.center = x;
  net.net_index.assign(S.points(), -1);
  const DynBitset& ax = S.adj(x);
  ax.for_each([&](std::size_t p) {
    if (p == x) return;
    net.net_index[p] = std::ptrdiff_t(net.pts.size());
    net.pts.push_back(p);
  });
  const std::size_t n = net.pts.size();
  net.labels.reserve(n);
  for (std::size_t p : net.pts) net.labels.push_back(S.point_name(p));

  net.vclass.assign(n, -1);
  S.point_lines(x).for_each([&](std::size_t l) {
    DynBitset v(n);
    S.line_points(l).for_each([&](std::size_t p) {
      if (p != x) v.set(std::size_t(net.net_index[p]));
    });
    int vi = int(net.verticals.size());
    v.for_each([&](std::size_t p) {
      if (net.vclass[p] != -1)
        throw std::logic_error("net point " + net.labels[p] + " on two verticals");
      net.vclass[p] = vi;
    });
    net.verticals.push_back(std::move(v));
    net.vertical_lines.push_back(l);
  });
  for (std::size_t p = 0; p < n; ++p)
    if (net.vclass[p] == -1)
      throw std::logic_error("net point " + net.labels[p] + " on no vertical");

  std::set<DynBitset> bset;
  for (std::size_t y = 0; y < S.points(); ++y) {
    if (ax.test(y)) continue;
    DynBitset b(n);
    (ax & S.adj(y)).for_each([&](std::size_t p) {
      b.set(std::size_t(net.net_index[p]));
    });
    bset.insert(std::move(b));
  }
  net.blocks.assign(bset.begin(), bset.end());
  const std::size_t nb = net.blocks.size();

  // Dual-net axiom: an off-block point sees exactly one block point across no
  // common block.  Regularity of the center makes this a theorem, so any
  // violation is an internal fault.
  std::vector<DynBitset> nadj(n, DynBitset(n));
  for (const DynBitset& b : net.blocks)
    b.for_each([&](std::size_t p) { nadj[p] |= b; });
  for (std::size_t bi = 0; bi < nb; ++bi) {
    const DynBitset& b = net.blocks[bi];
    std::size_t bsz = b.count();
    for (std::size_t z = 0; z < n; ++z) {
      if (b.test(z)) continue;
      if (bsz - b.intersection_count(nadj[z]) != 1)
        throw std::logic_error("dual-net axiom fails at point " + net.labels[z] +
                               " against block B" + std::to_string(bi));
    }
  }

  net.vmeet_table.assign(net.verticals.size() * nb, -1);
  for (std::size_t v = 0; v < net.verticals.size(); ++v)
    for (std::size_t b = 0; b < nb; ++b) {
      DynBitset c = net.verticals[v] & net.blocks[b];
      if (c.count() != 1)
        throw std::logic_error("block B" + std::to_string(b) +
                               " does not cross vertical V" + std::to_string(v) +
                               " exactly once");
      net.vmeet_table[v * nb + b] = int32_t(c.sole());
    }

  net.meet_table.assign(nb * nb, -1);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      std::size_t c = net.blocks[i].intersection_count(net.blocks[j]);
      net.meet_table[i * nb + j] =
          c == 0 ? -1 : c > 1 ? -2 : int32_t((net.blocks[i] & net.blocks[j]).sole());
    }

  net.join_table.assign(n * n, -1);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (net.vclass[u] == net.vclass[v]) net.join_table[u * n + v] = -3;
  for (std::size_t b = 0; b < nb; ++b) {
    auto ids = net.blocks[b].to_ids();
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = 0; j < ids.size(); ++j) {
        if (i == j) continue;
        int32_t& slot = net.join_table[std::size_t(ids[i]) * n + std::size_t(ids[j])];
        slot = slot == -1 ? int32_t(b) : -2;
      }
  }
  return net;
}

namespace {

struct BlockTriangle {
  uint32_t s[3];
  int32_t v[3];  // vertices: s0^s1, s0^s2, s1^s2
};

std::vector<BlockTriangle> block_triangles(const DualNet& net) {
  std::vector<BlockTriangle> tris;
  const std::size_t nb = net.blocks.size();
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = i + 1; j < nb; ++j) {
      int32_t vij = net.meet(i, j);
      if (vij < 0) continue;
      for (std::size_t k = j + 1; k < nb; ++k) {
        int32_t vik = net.meet(i, k), vjk = net.meet(j, k);
        if (vik < 0 || vjk < 0) continue;
        if (vij == vik || vij == vjk || vik == vjk) continue;
        tris.push_back({{uint32_t(i), uint32_t(j), uint32_t(k)}, {vij, vik, vjk}});
      }
    }
  return tris;
}

// Two distinct points, one from each intersection set; entries may repeat
// when a meet has several points.
void pick_two(const DynBitset& a, const DynBitset& b, uint32_t& u, uint32_t& v) {
  auto ia = a.to_ids(), ib = b.to_ids();
  u = uint32_t(ia[0]);
  v = uint32_t(ib[0]);
  if (u != v) return;
  if (ia.size() > 1) u = uint32_t(ia[1]);
  else if (ib.size() > 1) v = uint32_t(ib[1]);
}

// Rotation with conclusion side r fails when the other two sides are met in
// two distinct points but side r is missed.  m[s] = meet of the line with
// side s (-1 none, -2 several).
int vy_violation(const int32_t m[3]) {
  for (int r = 0; r < 3; ++r) {
    int i = r == 0 ? 1 : 0, j = r == 2 ? 1 : 2;
    bool hyp = m[i] != -1 && m[j] != -1 && (m[i] == -2 || m[j] == -2 || m[i] != m[j]);
    if (hyp && m[r] == -1) return r;
  }
  return -1;
}

void run_vy(const DualNet& net, const std::vector<BlockTriangle>& tris, bool vertical,
            const CheckOptions& opt, bool& pass, std::optional<VyCounterexample>& cex,
            CheckStats& stats) {
  const std::size_t nl = vertical ? net.verticals.size() : net.blocks.size();
  stats.total = tris.size() * nl;
  pass = true;
  if (stats.total == 0) return;

  auto line_set = [&](std::size_t l) -> const DynBitset& {
    return vertical ? net.verticals[l] : net.blocks[l];
  };
  auto eval = [&](std::size_t ti, std::size_t l) {
    const BlockTriangle& T = tris[ti];
    if (!vertical && (l == T.s[0] || l == T.s[1] || l == T.s[2])) return;
    int32_t m[3];
    for (int s = 0; s < 3; ++s)
      m[s] = vertical ? net.vmeet(l, T.s[s]) : net.meet(l, T.s[s]);
    int r = vy_violation(m);
    if (r < 0) return;
    int i = r == 0 ? 1 : 0, j = r == 2 ? 1 : 2;
    VyCounterexample c;
    c.triangle.sides = {T.s[0], T.s[1], T.s[2]};
    c.triangle.vertices = {uint32_t(T.v[0]), uint32_t(T.v[1]), uint32_t(T.v[2])};
    c.line = l;
    c.vertical = vertical;
    c.met_sides = {i, j};
    pick_two(line_set(l) & net.blocks[T.s[i]], line_set(l) & net.blocks[T.s[j]],
             c.met_points[0], c.met_points[1]);
    c.missed_side = r;
    pass = false;
    cex = c;
  };

  if (opt.exhaustive || stats.total <= opt.budget) {
    stats.exhaustive = true;
    for (std::size_t ti = 0; ti < tris.size() && pass; ++ti)
      for (std::size_t l = 0; l < nl && pass; ++l) {
        eval(ti, l);
        ++stats.checked;
      }
  } else {
    stats.exhaustive = false;
    for (std::size_t i = 0; i < opt.budget && pass; ++i) {
      std::size_t idx = std::size_t(sample_at(opt.seed, i) % stats.total);
      eval(idx / nl, idx % nl);
      ++stats.checked;
    }
  }
}

}  // namespace

VyOutcome check_vy(const DualNet& net, const CheckOptions& opt) {
  auto tris = block_triangles(net);
  VyOutcome out;
  run_vy(net, tris, false, opt, out.pass, out.cex, out.stats);
  run_vy(net, tris, true, opt, out.vertical_pass, out.vertical_cex,
         out.vertical_stats);
  return out;
}

namespace {

struct PtTriangle {
  uint32_t p[3];
  int32_t s[3];  // joins of pairs 01, 02, 12
};

std::vector<PtTriangle> point_triangles(const DualNet& net) {
  std::vector<PtTriangle> tris;
  const std::size_t n = net.pts.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      if (net.vclass[a] == net.vclass[b]) continue;
      int32_t sab = net.join(a, b);
      if (sab < 0) continue;
      for (std::size_t c = b + 1; c < n; ++c) {
        if (net.vclass[c] == net.vclass[a] || net.vclass[c] == net.vclass[b]) continue;
        int32_t sac = net.join(a, c), sbc = net.join(b, c);
        if (sac < 0 || sbc < 0) continue;
        if (sab == sac || sab == sbc || sac == sbc) continue;
        tris.push_back({{uint32_t(a), uint32_t(b), uint32_t(c)}, {sab, sac, sbc}});
      }
    }
  return tris;
}

}  // namespace

LdOutcome check_ld(const DualNet& net, int vertical, const CheckOptions& opt) {
  if (vertical >= int(net.verticals.size()))
    throw std::invalid_argument("check_ld: no such vertical");
  auto tris = point_triangles(net);
  LdOutcome out;

  std::vector<std::vector<uint32_t>> cls(net.verticals.size());
  for (std::size_t v = 0; v < net.verticals.size(); ++v)
    for (int id : net.verticals[v].to_ids()) cls[v].push_back(uint32_t(id));
  std::size_t mc = 0;
  for (auto& c : cls) mc = std::max(mc, c.size());

  // "Two pairs of corresponding sides meet on V" reads as: each pair has a
  // unique common point, the two points are distinct, and both lie on V.
  // Coincident meet points force a shared vertex (each vertex is its side's
  // sole crossing of its vertical), the textbook degenerate configuration
  // that carries no conclusion.  Evaluates one (triangle, classmate choice)
  // tuple; d encodes the three classmate offsets in base mc.
  auto eval = [&](std::size_t ti, std::size_t d) {
    const PtTriangle& T = tris[ti];
    uint32_t pb[3];
    int32_t sb[3];
    for (int i = 0; i < 3; ++i) {
      const auto& members = cls[std::size_t(net.vclass[T.p[i]])];
      std::size_t off = d % mc;
      d /= mc;
      if (off >= members.size()) return;
      pb[i] = members[off];
    }
    sb[0] = net.join(pb[0], pb[1]);
    sb[1] = net.join(pb[0], pb[2]);
    sb[2] = net.join(pb[1], pb[2]);
    if (sb[0] < 0 || sb[1] < 0 || sb[2] < 0) return;
    if (sb[0] == sb[1] || sb[0] == sb[2] || sb[1] == sb[2]) return;
    int32_t mt[3];
    for (int r = 0; r < 3; ++r)
      mt[r] = T.s[r] == sb[r] ? -9 : net.meet(std::size_t(T.s[r]), std::size_t(sb[r]));
    for (int r = 0; r < 3; ++r) {
      int i = r == 0 ? 1 : 0, j = r == 2 ? 1 : 2;
      if (mt[i] < 0 || mt[j] < 0 || mt[i] == mt[j]) continue;
      int cv = net.vclass[std::size_t(mt[i])];
      if (cv != net.vclass[std::size_t(mt[j])]) continue;
      if (vertical >= 0 && cv != vertical) continue;
      if (mt[r] >= 0 && net.vclass[std::size_t(mt[r])] == cv) continue;
      LdCounterexample c;
      c.verts_a = {T.p[0], T.p[1], T.p[2]};
      c.verts_b = {pb[0], pb[1], pb[2]};
      c.sides_a = {uint32_t(T.s[0]), uint32_t(T.s[1]), uint32_t(T.s[2])};
      c.sides_b = {uint32_t(sb[0]), uint32_t(sb[1]), uint32_t(sb[2])};
      c.vertical = cv;
      c.met_pairs = {i, j};
      c.failed_pair = r;
      out.pass = false;
      out.cex = c;
      return;
    }
  };

  const std::size_t choices = mc * mc * mc;
  out.stats.total = tris.size() * choices;
  if (out.stats.total == 0) return out;
  if (opt.exhaustive || out.stats.total <= opt.budget) {
    out.stats.exhaustive = true;
    for (std::size_t ti = 0; ti < tris.size() && out.pass; ++ti)
      for (std::size_t d = 0; d < choices && out.pass; ++d) {
        eval(ti, d);
        ++out.stats.checked;
      }
  } else {
    out.stats.exhaustive = false;
    for (std::size_t i = 0; i < opt.budget && out.pass; ++i) {
      std::size_t idx = std::size_t(sample_at(opt.seed, i) % out.stats.total);
      eval(idx / choices, idx % choices);
      ++out.stats.checked;
    }
  }
  return out;
}

DeltaPlane build_delta_plane(const DualNet& net, std::size_t L, std::size_t M,
                             const CheckOptions& opt) {
  const std::size_t nb = net.blocks.size();
  if (L >= nb || M >= nb || L == M)
    throw std::invalid_argument("build_delta_plane needs two distinct blocks");
  int32_t x0 = net.meet(L, M);
  if (x0 == -1)
    throw std::invalid_argument("blocks B" + std::to_string(L) + " and B" +
                                std::to_string(M) + " do not meet");
  if (x0 == -2)
    throw std::invalid_argument("blocks B" + std::to_string(L) + " and B" +
                                std::to_string(M) + " meet in more than one point");

  auto vy = check_vy(net, opt);
  if (!vy.pass) {
    const auto& c = *vy.cex;
    throw std::runtime_error(
        "triangle axiom fails: line B" + std::to_string(c.line) + " meets sides B" +
        std::to_string(c.triangle.sides[std::size_t(c.met_sides[0])]) + ", B" +
        std::to_string(c.triangle.sides[std::size_t(c.met_sides[1])]) + " at " +
        net.labels[c.met_points[0]] + ", " + net.labels[c.met_points[1]] +
        " but misses B" + std::to_string(c.triangle.sides[std::size_t(c.missed_side)]));
  }

  // first kind: meets L and M in two distinct points
  std::vector<char> first(nb, 0), in_star(nb, 0);
  for (std::size_t b = 0; b < nb; ++b) {
    if (b == L || b == M) continue;
    int32_t uL = net.meet(b, L), uM = net.meet(b, M);
    first[b] = uL != -1 && uM != -1 && (uL == -2 || uM == -2 || uL != uM);
    in_star[b] = first[b];
  }
  // second kind: through L^M and meeting some line of the first kind
  for (std::size_t b = 0; b < nb; ++b) {
    if (in_star[b] || !net.blocks[b].test(std::size_t(x0))) continue;
    for (std::size_t k = 0; k < nb && !in_star[b]; ++k)
      if (first[k] && net.meet(b, k) != -1) in_star[b] = 1;
  }

  DynBitset covered(net.pts.size());
  for (std::size_t b = 0; b < nb; ++b)
    if (in_star[b]) covered |= net.blocks[b];

  DeltaPlane d;
  std::vector<std::ptrdiff_t> to_plane(net.pts.size(), -1);
  covered.for_each([&](std::size_t p) {
    to_plane[p] = std::ptrdiff_t(d.plane_point.size());
    d.plane_point.push_back(std::ptrdiff_t(p));
  });
  std::size_t inf = d.plane_point.size();
  d.plane_point.push_back(-1);

  for (std::size_t b = 0; b < nb; ++b)
    if (in_star[b]) d.plane_block.push_back(std::ptrdiff_t(b));
  std::size_t star = d.plane_block.size();
  for (std::size_t v = 0; v < net.verticals.size(); ++v)
    d.plane_block.push_back(-1 - std::ptrdiff_t(v));

  d.plane = IncidenceStructure(d.plane_point.size(), d.plane_block.size());
  for (std::size_t li = 0; li < d.plane_block.size(); ++li) {
    std::ptrdiff_t id = d.plane_block[li];
    const DynBitset& set = id >= 0 ? net.blocks[std::size_t(id)]
                                   : net.verticals[std::size_t(-1 - id)];
    set.for_each([&](std::size_t p) {
      if (to_plane[p] >= 0) d.plane.add_flag(std::size_t(to_plane[p]), li);
    });
    if (li >= star) d.plane.add_flag(inf, li);
    d.plane.set_line_label(li, id >= 0 ? "B" + std::to_string(id)
                                       : "V" + std::to_string(-1 - id));
  }
  for (std::size_t p = 0; p < inf; ++p)
    d.plane.set_point_label(p, net.labels[std::size_t(d.plane_point[p])]);
  d.plane.set_point_label(inf, "inf");
  d.plane.freeze();

  auto res = verify_projective_plane(d.plane);
  if (!res.ok)
    throw std::runtime_error("generated structure is not a projective plane: " +
                             res.why);
  return d;
}

PerpGeometry build_perp_geometry(const IncidenceStructure& S, std::size_t p) {
  if (!S.frozen()) throw std::logic_error("build_perp_geometry needs a frozen structure");
  if (p >= S.points()) throw std::invalid_argument("build_perp_geometry: no such point");
  PerpGeometry g;
  g.center = p;
  for (int id : S.adj(p).to_ids()) g.pts.push_back(std::size_t(id));
  std::set<DynBitset> traces;
  for (std::size_t y = 0; y < S.points(); ++y)
    if (y != p) traces.insert(S.adj(p) & S.adj(y));
  g.blocks.assign(traces.begin(), traces.end());

  g.plane = IncidenceStructure(g.pts.size(), g.blocks.size());
  for (std::size_t b = 0; b < g.blocks.size(); ++b) {
    for (std::size_t i = 0; i < g.pts.size(); ++i)
      if (g.blocks[b].test(g.pts[i])) g.plane.add_flag(i, b);
    g.plane.set_line_label(b, "T" + std::to_string(b));
  }
  for (std::size_t i = 0; i < g.pts.size(); ++i)
    g.plane.set_point_label(i, S.point_name(g.pts[i]));
  g.plane.freeze();
  return g;
}

std::ptrdiff_t PerpGeometry::point_index(std::size_t ambient) const {
  auto it = std::lower_bound(pts.begin(), pts.end(), ambient);
  if (it == pts.end() || *it != ambient) return -1;
  return it - pts.begin();
}

std::ptrdiff_t PerpGeometry::block_index(const DynBitset& ambient_set) const {
  auto it = std::lower_bound(blocks.begin(), blocks.end(), ambient_set);
  if (it == blocks.end() || !(*it == ambient_set)) return -1;
  return it - blocks.begin();
}

ThetaIso theta_iso(const IncidenceStructure& S, std::size_t p, std::size_t q) {
  if (p >= S.points() || q >= S.points())
    throw std::invalid_argument("theta_iso: no such point");
  if (S.adj(p).test(q))
    throw std::invalid_argument("theta_iso needs opposite points, " + S.point_name(p) +
                                " and " + S.point_name(q) + " are collinear");
  for (std::size_t c : {p, q})
    if (!is_projective_point(S, c))
      throw std::invalid_argument("theta_iso needs projective points, " +
                                  S.point_name(c) + " is not projective");

  ThetaIso th;
  th.p = p;
  th.q = q;
  th.dom = build_perp_geometry(S, p);
  th.cod = build_perp_geometry(S, q);

  th.point_to_block.reserve(th.dom.pts.size());
  for (std::size_t x : th.dom.pts) {
    std::ptrdiff_t idx = th.cod.block_index(S.adj(q) & S.adj(x));
    if (idx < 0)
      throw std::logic_error("theta image of " + S.point_name(x) +
                             " is not a block of the target geometry");
    th.point_to_block.push_back(std::size_t(idx));
  }
  th.block_to_point.reserve(th.dom.blocks.size());
  for (const DynBitset& alpha : th.dom.blocks) {
    DynBitset z = meet_of_perps(S, alpha, S.adj(q));
    std::size_t zi = z.sole();
    if (zi == SIZE_MAX)
      throw std::logic_error("theta image of a block is not a single point");
    std::ptrdiff_t idx = th.cod.point_index(zi);
    if (idx < 0) throw std::logic_error("theta image of a block is off the geometry");
    th.block_to_point.push_back(std::size_t(idx));
  }

  // Gate: both maps bijective, incidence reversed exactly.
  std::vector<char> seen(th.cod.blocks.size(), 0);
  for (std::size_t i : th.point_to_block) {
    if (seen[i]) throw std::logic_error("theta point map is not injective");
    seen[i] = 1;
  }
  if (th.point_to_block.size() != th.cod.blocks.size())
    throw std::logic_error("theta point map is not onto");
  seen.assign(th.cod.pts.size(), 0);
  for (std::size_t i : th.block_to_point) {
    if (seen[i]) throw std::logic_error("theta block map is not injective");
    seen[i] = 1;
  }
  if (th.block_to_point.size() != th.cod.pts.size())
    throw std::logic_error("theta block map is not onto");
  for (std::size_t i = 0; i < th.dom.pts.size(); ++i)
    for (std::size_t b = 0; b < th.dom.blocks.size(); ++b) {
      bool before = th.dom.blocks[b].test(th.dom.pts[i]);
      bool after = th.cod.blocks[th.point_to_block[i]].test(
          th.cod.pts[th.block_to_point[b]]);
      if (before != after)
        throw std::logic_error("theta does not reverse incidence at " +
                               S.point_name(th.dom.pts[i]));
    }
  return th;
}

PhiMap phi_map(const IncidenceStructure& S, const PerpGeometry& g1,
               const PerpGeometry& g2, std::size_t p3) {
  if (p3 >= S.points()) throw std::invalid_argument("phi_map: no such point");
  if (S.adj(g1.center).test(p3) || S.adj(g2.center).test(p3))
    throw std::invalid_argument("phi_map needs " + S.point_name(p3) +
                                " opposite both centers");

  PhiMap out;
  out.via = p3;
  out.point_image.reserve(g1.pts.size());
  for (std::size_t x : g1.pts) {
    DynBitset tr = S.adj(p3) & S.adj(x);
    std::size_t z = meet_of_perps(S, tr, S.adj(g2.center)).sole();
    if (z == SIZE_MAX)
      throw std::logic_error("phi image of " + S.point_name(x) + " is not unique");
    out.point_image.push_back(z);
  }
  out.block_image.reserve(g1.blocks.size());
  for (const DynBitset& alpha : g1.blocks) {
    std::size_t z = meet_of_perps(S, alpha, S.adj(p3)).sole();
    if (z == SIZE_MAX)
      throw std::logic_error("phi block image via the middle point is not unique");
    std::ptrdiff_t idx = g2.block_index(S.adj(g2.center) & S.adj(z));
    if (idx < 0) throw std::logic_error("phi block image is not a block");
    out.block_image.push_back(std::size_t(idx));
  }
  return out;
}

}  // namespace gqlab
