#include "gqlab/inversive.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <sstream>

#include "gqlab/io.hpp"
#include "gqlab/parallel.hpp"

namespace gqlab {

std::string CircleGeometry::point_name(std::size_t i) const {
  if (i < point_labels.size() && !point_labels[i].empty()) return point_labels[i];
  return "p" + std::to_string(i);
}

int CircleGeometry::touch_point(std::size_t c, std::size_t d) const {
  if (c == d) return -1;
  if (circles[c].intersection_count(circles[d]) != 1) return -1;
  return (circles[c] & circles[d]).first();
}

void CircleGeometry::rebuild_index() {
  circle_pts.assign(circles.size(), {});
  at.assign(n, DynBitset(circles.size()));
  for (std::size_t c = 0; c < circles.size(); ++c) {
    circles[c].for_each([&](std::size_t p) {
      circle_pts[c].push_back(uint32_t(p));
      at[p].set(c);
    });
  }
}

CircleGeometry build_circle_geometry(const IncidenceStructure& S, const Polarity& rho) {
  AbsoluteElements abs = absolute_elements(S, rho);
  CircleGeometry G;
  G.n = abs.points.count();
  std::vector<std::ptrdiff_t> oid(S.points(), -1);
  abs.points.for_each([&](std::size_t p) {
    oid[p] = std::ptrdiff_t(G.ambient_point.size());
    G.ambient_point.push_back(p);
    G.point_labels.push_back(S.point_name(p));
  });

  std::map<DynBitset, std::size_t> seen;
  for (std::size_t x = 0; x < S.points(); ++x) {
    if (abs.points.test(x)) continue;
    DynBitset amb = abs.points & S.adj(x);
    DynBitset c(G.n);
    amb.for_each([&](std::size_t p) { c.set(std::size_t(oid[p])); });
    if (c.count() < 3)
      throw std::runtime_error("circle from " + S.point_name(x) + " has only " +
                               std::to_string(c.count()) + " points");
    auto [it, fresh] = seen.emplace(c, x);
    if (!fresh)
      throw std::runtime_error("points " + S.point_name(it->second) + " and " +
                               S.point_name(x) + " cut the same circle");
    int g = (amb & S.line_points(rho.point_to_line[x])).sole();
    if (g < 0)
      throw std::runtime_error("no unique mark on the circle of " + S.point_name(x));
    G.circles.push_back(std::move(c));
    G.gnarl.push_back(uint32_t(oid[std::size_t(g)]));
    G.ambient_source.push_back(x);
  }
  G.rebuild_index();
  return G;
}

std::string axiom_name(InvAxiom ax) {
  switch (ax) {
    case InvAxiom::MP1: return "MP1";
    case InvAxiom::MP1p: return "MP1'";
    case InvAxiom::MP2: return "MP2";
    case InvAxiom::CH1: return "CH1";
    case InvAxiom::CH2: return "CH2";
    case InvAxiom::ST1: return "ST1";
    case InvAxiom::ST2: return "ST2";
    case InvAxiom::TR: return "TR";
    case InvAxiom::F: return "F";
  }
  return "?";
}

std::optional<InvAxiom> axiom_from_name(std::string_view name) {
  if (name == "MP1") return InvAxiom::MP1;
  if (name == "MP1'" || name == "MP1p") return InvAxiom::MP1p;
  if (name == "MP2") return InvAxiom::MP2;
  if (name == "CH1") return InvAxiom::CH1;
  if (name == "CH2") return InvAxiom::CH2;
  if (name == "ST1") return InvAxiom::ST1;
  if (name == "ST2") return InvAxiom::ST2;
  if (name == "TR") return InvAxiom::TR;
  if (name == "F") return InvAxiom::F;
  return std::nullopt;
}

namespace {

// Dense touch table: -1 or the single common point.
std::vector<int32_t> touch_matrix(const CircleGeometry& G) {
  const std::size_t nc = G.size();
  std::vector<int32_t> tm(nc * nc, -1);
  for (std::size_t c = 0; c < nc; ++c)
    for (std::size_t d = c + 1; d < nc; ++d) {
      int t = G.touch_point(c, d);
      tm[c * nc + d] = t;
      tm[d * nc + c] = t;
    }
  return tm;
}

InvWitness witness(std::initializer_list<uint32_t> pts,
                   std::initializer_list<uint32_t> crc, std::string note) {
  InvWitness w;
  w.points.assign(pts);
  w.circles.assign(crc);
  w.note = std::move(note);
  return w;
}

// MP1 / MP1': three distinct points lie in at most (exactly) one circle.
InvOutcome check_mp1(const CircleGeometry& G, bool exact, const CheckOptions& opt) {
  InvOutcome out;
  const std::size_t n = G.n;
  out.stats.total = n >= 3 ? n * (n - 1) * (n - 2) / 6 : 0;
  auto eval = [&](uint32_t x, uint32_t y, uint32_t z) {
    DynBitset thru = G.at[x] & G.at[y];
    thru &= G.at[z];
    const std::size_t k = thru.count();
    if (k > 1) {
      int c1 = thru.first();
      int c2 = thru.next(std::size_t(c1) + 1);
      out.pass = false;
      out.cex = witness({x, y, z}, {uint32_t(c1), uint32_t(c2)},
                        std::to_string(k) + " circles through the triple");
      return false;
    }
    if (exact && k == 0) {
      out.pass = false;
      out.cex = witness({x, y, z}, {}, "no circle through the triple");
      return false;
    }
    return true;
  };
  if (opt.exhaustive || out.stats.total <= opt.budget) {
    out.stats.exhaustive = true;
    for (uint32_t x = 0; x < n && out.pass; ++x)
      for (uint32_t y = x + 1; y < n && out.pass; ++y)
        for (uint32_t z = y + 1; z < n && out.pass; ++z) {
          ++out.stats.checked;
          eval(x, y, z);
        }
  } else {
    out.stats.exhaustive = false;
    for (std::size_t i = 0; i < opt.budget && out.pass; ++i) {
      uint64_t u = sample_at(opt.seed, i);
      uint32_t x = uint32_t(u % n);
      u = splitmix64(u);
      uint32_t y = uint32_t(u % n);
      u = splitmix64(u);
      uint32_t z = uint32_t(u % n);
      if (x == y || x == z || y == z) continue;
      ++out.stats.checked;
      eval(x, y, z);
    }
  }
  return out;
}

// MP2: for x on C and y off C, a unique circle through y touches C at x.
InvOutcome check_mp2(const CircleGeometry& G, const CheckOptions& opt) {
  InvOutcome out;
  const std::size_t n = G.n, nc = G.size();
  for (std::size_t c = 0; c < nc; ++c)
    out.stats.total += G.circle_pts[c].size() * (n - G.circle_pts[c].size());
  auto eval = [&](uint32_t c, uint32_t x, uint32_t y) {
    int found = -1;
    std::size_t k = 0;
    int second = -1;
    G.at[y].for_each([&](std::size_t f) {
      if (G.touch_point(f, c) == int(x)) {
        ++k;
        (found < 0 ? found : second) = int(f);
      }
    });
    if (k == 1) return true;
    out.pass = false;
    if (k == 0)
      out.cex = witness({x, y}, {c}, "no circle through the outside point touches here");
    else
      out.cex = witness({x, y}, {c, uint32_t(found), uint32_t(second)},
                        std::to_string(k) + " touching circles through the pair");
    return false;
  };
  if (opt.exhaustive || out.stats.total <= opt.budget) {
    out.stats.exhaustive = true;
    for (uint32_t c = 0; c < nc && out.pass; ++c)
      for (uint32_t x : G.circle_pts[c]) {
        if (!out.pass) break;
        for (uint32_t y = 0; y < n && out.pass; ++y) {
          if (G.circles[c].test(y)) continue;
          ++out.stats.checked;
          eval(c, x, y);
        }
      }
  } else {
    out.stats.exhaustive = false;
    for (std::size_t i = 0; i < opt.budget && out.pass; ++i) {
      uint64_t u = sample_at(opt.seed, i);
      uint32_t c = uint32_t(u % nc);
      if (G.circle_pts[c].empty()) continue;
      u = splitmix64(u);
      uint32_t x = G.circle_pts[c][u % G.circle_pts[c].size()];
      u = splitmix64(u);
      uint32_t y = uint32_t(u % n);
      if (G.circles[c].test(y)) continue;
      ++out.stats.checked;
      eval(c, x, y);
    }
  }
  return out;
}

// CH1: no three circles pairwise touching in distinct points.
InvOutcome check_ch1(const CircleGeometry& G, const CheckOptions& opt) {
  InvOutcome out;
  const std::size_t nc = G.size();
  out.stats.total = nc >= 3 ? nc * (nc - 1) * (nc - 2) / 6 : 0;
  std::vector<int32_t> tm = touch_matrix(G);
  auto eval = [&](uint32_t c, uint32_t d, uint32_t e) {
    int p = tm[c * nc + d], q = tm[c * nc + e], r = tm[d * nc + e];
    if (p < 0 || q < 0 || r < 0) return true;
    if (p == q && q == r) return true;
    out.pass = false;
    out.cex = witness({uint32_t(p), uint32_t(q), uint32_t(r)}, {c, d, e},
                      "pairwise touching in distinct points");
    return false;
  };
  if (opt.exhaustive || out.stats.total <= opt.budget) {
    out.stats.exhaustive = true;
    for (uint32_t c = 0; c < nc && out.pass; ++c)
      for (uint32_t d = c + 1; d < nc && out.pass; ++d) {
        if (tm[c * nc + d] < 0) {
          out.stats.checked += nc - d - 1;
          continue;  // no triple through this pair can violate
        }
        for (uint32_t e = d + 1; e < nc && out.pass; ++e) {
          ++out.stats.checked;
          eval(c, d, e);
        }
      }
  } else {
    out.stats.exhaustive = false;
    for (std::size_t i = 0; i < opt.budget && out.pass; ++i) {
      uint64_t u = sample_at(opt.seed, i);
      uint32_t c = uint32_t(u % nc);
      u = splitmix64(u);
      uint32_t d = uint32_t(u % nc);
      u = splitmix64(u);
      uint32_t e = uint32_t(u % nc);
      if (c == d || c == e || d == e) continue;
      ++out.stats.checked;
      eval(c, d, e);
    }
  }
  return out;
}

// CH2: of the circles through two points off C, none, one, or all touch C.
InvOutcome check_ch2(const CircleGeometry& G, const CheckOptions& opt) {
  InvOutcome out;
  const std::size_t n = G.n, nc = G.size();
  for (std::size_t c = 0; c < nc; ++c) {
    const std::size_t off = n - G.circle_pts[c].size();
    out.stats.total += off >= 2 ? off * (off - 1) / 2 : 0;
  }
  auto eval = [&](uint32_t c, uint32_t x, uint32_t y) {
    DynBitset thru = G.at[x] & G.at[y];
    std::size_t tot = 0, k = 0;
    int hit = -1, miss = -1;
    thru.for_each([&](std::size_t f) {
      ++tot;
      if (G.touch_point(f, c) >= 0) {
        ++k;
        hit = int(f);
      } else {
        miss = int(f);
      }
    });
    if (k == 0 || k == 1 || k == tot) return true;
    out.pass = false;
    out.cex = witness({x, y}, {c, uint32_t(hit), uint32_t(miss)},
                      std::to_string(k) + " of " + std::to_string(tot) +
                          " circles through the pair touch");
    return false;
  };
  if (opt.exhaustive || out.stats.total <= opt.budget) {
    out.stats.exhaustive = true;
    for (uint32_t c = 0; c < nc && out.pass; ++c)
      for (uint32_t x = 0; x < n && out.pass; ++x) {
        if (G.circles[c].test(x)) continue;
        for (uint32_t y = x + 1; y < n && out.pass; ++y) {
          if (G.circles[c].test(y)) continue;
          ++out.stats.checked;
          eval(c, x, y);
        }
      }
  } else {
    out.stats.exhaustive = false;
    for (std::size_t i = 0; i < opt.budget && out.pass; ++i) {
      uint64_t u = sample_at(opt.seed, i);
      uint32_t c = uint32_t(u % nc);
      u = splitmix64(u);
      uint32_t x = uint32_t(u % n);
      u = splitmix64(u);
      uint32_t y = uint32_t(u % n);
      if (x == y || G.circles[c].test(x) || G.circles[c].test(y)) continue;
      ++out.stats.checked;
      eval(c, x, y);
    }
  }
  return out;
}

// ST1: for x != y a unique circle contains x and is marked at y.
InvOutcome check_st1(const CircleGeometry& G, const CheckOptions& opt) {
  InvOutcome out;
  (void)opt;  // the pair space is always fully scanned
  const std::size_t n = G.n, nc = G.size();
  out.stats.total = n * (n - 1);
  std::vector<std::vector<uint32_t>> marked(n);
  for (std::size_t c = 0; c < nc; ++c)
    if (G.gnarl[c] < n) marked[G.gnarl[c]].push_back(uint32_t(c));
  auto eval = [&](uint32_t x, uint32_t y) {
    std::size_t k = 0;
    int c1 = -1, c2 = -1;
    for (uint32_t c : marked[y])
      if (G.circles[c].test(x)) {
        ++k;
        (c1 < 0 ? c1 : c2) = int(c);
      }
    if (k == 1) return true;
    out.pass = false;
    if (k == 0)
      out.cex = witness({x, y}, {}, "no circle through the point marked at the other");
    else
      out.cex = witness({x, y}, {uint32_t(c1), uint32_t(c2)},
                        std::to_string(k) + " circles through the point share the mark");
    return false;
  };
  out.stats.exhaustive = true;
  for (uint32_t x = 0; x < n && out.pass; ++x)
    for (uint32_t y = 0; y < n && out.pass; ++y) {
      if (x == y) continue;
      ++out.stats.checked;
      eval(x, y);
    }
  return out;
}

// ST2: for x off C, at most one circle through x and the mark of C has its
// own mark on C at a point other than the mark of C.  Without that exclusion
// the statement is void: the circle through x marked at the mark of C always
// qualifies, and the unique secant circle is a second one.
InvOutcome check_st2(const CircleGeometry& G, const CheckOptions& opt) {
  InvOutcome out;
  const std::size_t n = G.n, nc = G.size();
  for (std::size_t c = 0; c < nc; ++c) out.stats.total += n - G.circle_pts[c].size();
  auto eval = [&](uint32_t c, uint32_t x) {
    const uint32_t m = G.gnarl[c];
    if (m >= n) return true;
    std::size_t k = 0;
    int c1 = -1, c2 = -1;
    DynBitset cand = G.at[x] & G.at[m];
    cand.for_each([&](std::size_t f) {
      if (G.gnarl[f] < n && G.gnarl[f] != m && G.circles[c].test(G.gnarl[f])) {
        ++k;
        (c1 < 0 ? c1 : c2) = int(f);
      }
    });
    if (k <= 1) return true;
    out.pass = false;
    out.cex = witness({x, m}, {c, uint32_t(c1), uint32_t(c2)},
                      std::to_string(k) + " circles through the pair marked on it");
    return false;
  };
  out.stats.exhaustive = true;
  (void)opt;
  for (uint32_t c = 0; c < nc && out.pass; ++c)
    for (uint32_t x = 0; x < n && out.pass; ++x) {
      if (G.circles[c].test(x)) continue;
      ++out.stats.checked;
      eval(c, x);
    }
  return out;
}

// TR: see the header comment; the union of the intersections must fit in one
// circle through the mark, existentially per (C, x, y, D).
InvOutcome check_tr(const CircleGeometry& G, const CheckOptions& opt) {
  InvOutcome out;
  const std::size_t n = G.n, nc = G.size();
  std::vector<int32_t> tm = touch_matrix(G);

  // circles through the mark of c with a different mark, per c
  std::vector<std::vector<uint32_t>> dcand(nc);
  for (uint32_t c = 0; c < nc; ++c) {
    const uint32_t m = G.gnarl[c];
    if (m >= n) continue;
    G.at[m].for_each([&](std::size_t d) {
      if (G.gnarl[d] != m) dcand[c].push_back(uint32_t(d));
    });
  }
  for (uint32_t c = 0; c < nc; ++c) {
    const uint32_t m = G.gnarl[c];
    const std::size_t onc =
        m < n && G.circles[c].test(m) ? G.circle_pts[c].size() - 1 : G.circle_pts[c].size();
    if (onc >= 2) out.stats.total += onc * (onc - 1) * dcand[c].size();
  }

  auto eval = [&](uint32_t c, uint32_t x, uint32_t y, uint32_t d) {
    const uint32_t m = G.gnarl[c];
    DynBitset uni(n);
    bool any = false;
    DynBitset es = G.at[x] & G.at[m];
    bool ok = true;
    es.for_each([&](std::size_t e) {
      if (!ok || e == c) return;
      DynBitset ed = G.circles[e] & G.circles[d];
      if (ed.count() != 2 || !ed.test(m)) return;
      ed.reset(m);
      const std::size_t z = std::size_t(ed.first());
      int estar = -1, estar2 = -1;
      G.at[z].for_each([&](std::size_t f) {
        if (tm[f * nc + c] == int(m)) (estar < 0 ? estar : estar2) = int(f);
      });
      if (estar < 0 || estar2 >= 0) return;  // hypothesis of the step fails
      int estst = -1, estst2 = -1;
      G.at[y].for_each([&](std::size_t f) {
        if (tm[f * nc + e] == int(m)) (estst < 0 ? estst : estst2) = int(f);
      });
      if (estst < 0 || estst2 >= 0) return;
      uni |= G.circles[std::size_t(estar)] & G.circles[std::size_t(estst)];
      any = true;
    });
    if (!any) return true;
    bool contained = false;
    G.at[m].for_each([&](std::size_t f) {
      if (!contained && uni.is_subset_of(G.circles[f])) contained = true;
    });
    if (contained) return true;
    out.pass = false;
    out.cex = witness({x, y, m}, {c, d},
                      "no circle through the mark contains the union of the intersections");
    return false;
  };

  std::size_t budget = opt.budget;
  if (!opt.exhaustive && budget == SIZE_MAX) budget = 1'000'000;
  if (opt.exhaustive || out.stats.total <= budget) {
    out.stats.exhaustive = true;
    for (uint32_t c = 0; c < nc && out.pass; ++c) {
      const uint32_t m = G.gnarl[c];
      for (uint32_t x : G.circle_pts[c]) {
        if (!out.pass || x == m) continue;
        for (uint32_t y : G.circle_pts[c]) {
          if (!out.pass || y == m || y == x) continue;
          for (uint32_t d : dcand[c]) {
            if (!out.pass) break;
            ++out.stats.checked;
            eval(c, x, y, d);
          }
        }
      }
    }
  } else {
    out.stats.exhaustive = false;
    for (std::size_t i = 0; i < budget && out.pass; ++i) {
      uint64_t u = sample_at(opt.seed, i);
      uint32_t c = uint32_t(u % nc);
      const uint32_t m = G.gnarl[c];
      const auto& pts = G.circle_pts[c];
      if (pts.size() < 3 || dcand[c].empty()) continue;
      u = splitmix64(u);
      uint32_t x = pts[u % pts.size()];
      u = splitmix64(u);
      uint32_t y = pts[u % pts.size()];
      u = splitmix64(u);
      uint32_t d = dcand[c][u % dcand[c].size()];
      if (x == m || y == m || x == y) continue;
      ++out.stats.checked;
      eval(c, x, y, d);
    }
  }
  return out;
}

// F: cocircularity closure over five points.
InvOutcome check_f(const CircleGeometry& G, const CheckOptions& opt) {
  InvOutcome out;
  const std::size_t n = G.n;
  out.stats.total = n >= 4 ? n * (n - 1) * (n - 2) * (n - 3) * (n - 3) : 0;
  auto coc3 = [&](uint32_t a, uint32_t b, uint32_t c) {
    DynBitset t = G.at[a] & G.at[b];
    t &= G.at[c];
    return t.any();
  };
  auto eval = [&](uint32_t x, uint32_t x1, uint32_t x2, uint32_t x3, uint32_t y) {
    if (!coc3(x, x1, x2) || !coc3(x, x1, x3) || !coc3(x, x2, x3)) return true;
    DynBitset all = G.at[x] & G.at[x1];
    all &= G.at[x2];
    DynBitset all4 = all & G.at[x3];
    if (all4.any()) return true;  // jointly cocircular
    if (!coc3(y, x, x1) || !coc3(y, x, x2)) return true;
    if ((all & G.at[y]).any()) return true;  // y,x,x1,x2 cocircular
    if (coc3(y, x, x3)) return true;
    out.pass = false;
    out.cex = witness({x, x1, x2, x3, y}, {}, "closure point is not cocircular");
    return false;
  };
  std::size_t budget = opt.budget;
  if (!opt.exhaustive && budget == SIZE_MAX) budget = 1'000'000;
  if (opt.exhaustive || out.stats.total <= budget) {
    out.stats.exhaustive = true;
    for (uint32_t x = 0; x < n && out.pass; ++x)
      for (uint32_t x1 = 0; x1 < n && out.pass; ++x1) {
        if (x1 == x) continue;
        for (uint32_t x2 = 0; x2 < n && out.pass; ++x2) {
          if (x2 == x || x2 == x1) continue;
          for (uint32_t x3 = 0; x3 < n && out.pass; ++x3) {
            if (x3 == x || x3 == x1 || x3 == x2) continue;
            for (uint32_t y = 0; y < n && out.pass; ++y) {
              if (y == x || y == x1 || y == x2) continue;
              ++out.stats.checked;
              eval(x, x1, x2, x3, y);
            }
          }
        }
      }
  } else {
    out.stats.exhaustive = false;
    for (std::size_t i = 0; i < budget && out.pass; ++i) {
      uint64_t u = sample_at(opt.seed, i);
      uint32_t x = uint32_t(u % n);
      u = splitmix64(u);
      uint32_t x1 = uint32_t(u % n);
      u = splitmix64(u);
      uint32_t x2 = uint32_t(u % n);
      u = splitmix64(u);
      uint32_t x3 = uint32_t(u % n);
      u = splitmix64(u);
      uint32_t y = uint32_t(u % n);
      if (x1 == x || x2 == x || x2 == x1 || x3 == x || x3 == x1 || x3 == x2) continue;
      if (y == x || y == x1 || y == x2) continue;
      ++out.stats.checked;
      eval(x, x1, x2, x3, y);
    }
  }
  return out;
}

}  // namespace

InvOutcome check_axiom(const CircleGeometry& G, InvAxiom ax, const CheckOptions& opt) {
  switch (ax) {
    case InvAxiom::MP1: return check_mp1(G, false, opt);
    case InvAxiom::MP1p: return check_mp1(G, true, opt);
    case InvAxiom::MP2: return check_mp2(G, opt);
    case InvAxiom::CH1: return check_ch1(G, opt);
    case InvAxiom::CH2: return check_ch2(G, opt);
    case InvAxiom::ST1: return check_st1(G, opt);
    case InvAxiom::ST2: return check_st2(G, opt);
    case InvAxiom::TR: return check_tr(G, opt);
    case InvAxiom::F: return check_f(G, opt);
  }
  throw std::invalid_argument("unknown axiom");
}

InvReport check_all_axioms(const CircleGeometry& G, const CheckOptions& opt) {
  InvReport rep;
  for (std::size_t i = 0; i < kAllInvAxioms.size(); ++i) {
    rep.outcomes[i] = check_axiom(G, kAllInvAxioms[i], opt);
    rep.all_pass = rep.all_pass && rep.outcomes[i].pass;
  }
  return rep;
}

InvLemmas check_circle_lemmas(const CircleGeometry& G) {
  InvLemmas out;
  const std::size_t n = G.n, nc = G.size();
  std::vector<int32_t> tm = touch_matrix(G);

  {
    InvOutcome& o = out.touch_propagation;
    o.stats.total = nc >= 3 ? nc * (nc - 1) * (nc - 2) / 2 : 0;  // {C,E} x D
    for (uint32_t c = 0; c < nc && o.pass; ++c)
      for (uint32_t e = c + 1; e < nc && o.pass; ++e)
        for (uint32_t d = 0; d < nc && o.pass; ++d) {
          if (d == c || d == e) continue;
          ++o.stats.checked;
          int t1 = tm[c * nc + d];
          if (t1 < 0 || t1 != tm[e * nc + d]) continue;
          if (tm[c * nc + e] == t1) continue;
          o.pass = false;
          o.cex = witness({uint32_t(t1)}, {c, d, e},
                          "both touch the middle circle here yet not each other");
        }
  }

  {
    InvOutcome& o = out.unique_gnarl_secant;
    for (std::size_t c = 0; c < nc; ++c) o.stats.total += n - G.circle_pts[c].size();
    for (uint32_t c = 0; c < nc && o.pass; ++c) {
      const uint32_t m = G.gnarl[c];
      if (m >= n) continue;
      for (uint32_t x = 0; x < n && o.pass; ++x) {
        if (G.circles[c].test(x)) continue;
        ++o.stats.checked;
        std::size_t k = 0;
        int d1 = -1, d2 = -1;
        (G.at[x] & G.at[m]).for_each([&](std::size_t d) {
          if (G.gnarl[d] < n && G.gnarl[d] != m && G.circles[c].test(G.gnarl[d])) {
            ++k;
            (d1 < 0 ? d1 : d2) = int(d);
          }
        });
        if (k == 1) continue;
        o.pass = false;
        if (k == 0)
          o.cex = witness({x, m}, {c}, "no secant circle marked on the base circle");
        else
          o.cex = witness({x, m}, {c, uint32_t(d1), uint32_t(d2)},
                          std::to_string(k) + " secant circles marked on the base circle");
      }
    }
  }

  {
    InvOutcome& o = out.gnarl_touch;
    o.stats.total = nc * (nc - 1);
    for (uint32_t c = 0; c < nc && o.pass; ++c)
      for (uint32_t d = 0; d < nc && o.pass; ++d) {
        if (c == d) continue;
        ++o.stats.checked;
        if (G.gnarl[d] >= n || tm[c * nc + d] != int(G.gnarl[d])) continue;
        if (G.gnarl[c] == G.gnarl[d]) continue;
        o.pass = false;
        o.cex = witness({G.gnarl[c], G.gnarl[d]}, {c, d},
                        "touching at a mark with different marks");
      }
  }

  out.all_pass =
      out.touch_propagation.pass && out.unique_gnarl_secant.pass && out.gnarl_touch.pass;
  return out;
}

std::vector<Mutation> enumerate_mutations(const CircleGeometry& G, MutationKind kind) {
  std::vector<Mutation> out;
  for (uint32_t c = 0; c < G.size(); ++c) {
    switch (kind) {
      case MutationKind::GnarlSwap:
        for (uint32_t p : G.circle_pts[c])
          if (p != G.gnarl[c]) out.push_back({kind, c, p});
        break;
      case MutationKind::FlagRemove:
        for (uint32_t p : G.circle_pts[c]) out.push_back({kind, c, p});
        break;
      case MutationKind::FlagAdd:
        for (uint32_t p = 0; p < G.n; ++p)
          if (!G.circles[c].test(p)) out.push_back({kind, c, p});
        break;
    }
  }
  return out;
}

CircleGeometry apply_mutation(const CircleGeometry& G, const Mutation& m) {
  CircleGeometry out = G;
  switch (m.kind) {
    case MutationKind::GnarlSwap:
      out.gnarl[m.circle] = m.point;
      break;
    case MutationKind::FlagRemove:
      out.circles[m.circle].reset(m.point);
      out.rebuild_index();
      break;
    case MutationKind::FlagAdd:
      out.circles[m.circle].set(m.point);
      out.rebuild_index();
      break;
  }
  return out;
}

std::string describe_mutation(const CircleGeometry& G, const Mutation& m) {
  switch (m.kind) {
    case MutationKind::GnarlSwap:
      return "mark of circle " + std::to_string(m.circle) + " moved to " +
             G.point_name(m.point);
    case MutationKind::FlagRemove:
      return G.point_name(m.point) + " removed from circle " + std::to_string(m.circle);
    case MutationKind::FlagAdd:
      return G.point_name(m.point) + " added to circle " + std::to_string(m.circle);
  }
  return "?";
}

std::string serialize_circle_geometry(const CircleGeometry& G) {
  std::ostringstream out;
  out << "# CG v1\n";
  for (std::size_t p = 0; p < G.n; ++p) {
    out << "point " << p;
    if (p < G.point_labels.size() && !G.point_labels[p].empty())
      out << ' ' << G.point_labels[p];
    out << '\n';
  }
  for (std::size_t c = 0; c < G.size(); ++c) {
    out << "circle " << c;
    for (uint32_t p : G.circle_pts[c]) out << ' ' << p;
    out << " gnarl " << G.gnarl[c] << '\n';
  }
  return out.str();
}

CircleGeometry parse_circle_geometry(std::istream& in) {
  CircleGeometry G;
  std::vector<std::ptrdiff_t> declared;  // point ids in order
  struct Circ {
    std::size_t id;
    std::vector<uint32_t> pts;
    uint32_t gnarl;
    int line;
  };
  std::vector<Circ> circs;
  std::string raw;
  for (int lineno = 1; std::getline(in, raw); ++lineno) {
    std::size_t b = raw.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) continue;
    std::string s = raw.substr(b);
    if (s[0] == '#') continue;
    std::istringstream ss(s);
    std::string head;
    ss >> head;
    if (head == "point") {
      long long id = -1;
      if (!(ss >> id) || id < 0) throw ParseError(lineno, "point needs a nonnegative id");
      if (std::size_t(id) != declared.size())
        throw ParseError(lineno, "point ids must be dense from 0");
      declared.push_back(id);
      std::string label;
      std::getline(ss, label);
      std::size_t lb = label.find_first_not_of(" \t");
      G.point_labels.push_back(lb == std::string::npos ? "" : label.substr(lb));
    } else if (head == "circle") {
      Circ c;
      c.line = lineno;
      long long id = -1;
      if (!(ss >> id) || id < 0) throw ParseError(lineno, "circle needs a nonnegative id");
      if (std::size_t(id) != circs.size())
        throw ParseError(lineno, "circle ids must be dense from 0");
      c.id = std::size_t(id);
      std::string tok;
      bool got_gnarl = false;
      while (ss >> tok) {
        if (tok == "gnarl") {
          long long g = -1;
          if (!(ss >> g) || g < 0) throw ParseError(lineno, "gnarl needs a point id");
          c.gnarl = uint32_t(g);
          got_gnarl = true;
          break;
        }
        try {
          c.pts.push_back(uint32_t(std::stoul(tok)));
        } catch (...) {
          throw ParseError(lineno, "bad point id '" + tok + "' in circle");
        }
      }
      if (!got_gnarl) throw ParseError(lineno, "circle line is missing its gnarl");
      circs.push_back(std::move(c));
    } else {
      throw ParseError(lineno, "unknown directive '" + head + "'");
    }
  }
  if (declared.empty()) throw ParseError(1, "no points declared");
  G.n = declared.size();
  for (const Circ& c : circs) {
    DynBitset b(G.n);
    for (uint32_t p : c.pts) {
      if (p >= G.n) throw ParseError(c.line, "circle references unknown point");
      b.set(p);
    }
    if (c.gnarl >= G.n) throw ParseError(c.line, "gnarl references unknown point");
    G.circles.push_back(std::move(b));
    G.gnarl.push_back(c.gnarl);
  }
  G.rebuild_index();
  return G;
}

}  // namespace gqlab
