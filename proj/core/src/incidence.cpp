#include "gqlab/incidence.hpp"

#include "gqlab/parallel.hpp"

#include <set>
#include <stdexcept>

namespace gqlab {

namespace {

const std::string kEmptyLabel;

void require_frozen(const IncidenceStructure& S) {
  if (!S.frozen()) throw std::logic_error("structure must be frozen before queries");
}

DynBitset all_points(const IncidenceStructure& S) {
  DynBitset b(S.points());
  for (std::size_t i = 0; i < S.points(); ++i) b.set(i);
  return b;
}

}  // namespace

IncidenceStructure::IncidenceStructure(std::size_t points, std::size_t lines) {
  pt_lines_.assign(points, DynBitset(lines));
  ln_pts_.assign(lines, DynBitset(points));
}

void IncidenceStructure::add_flag(std::size_t p, std::size_t l) {
  if (frozen_) throw std::logic_error("structure is frozen");
  if (p >= points() || l >= lines()) throw std::out_of_range("flag id out of range");
  pt_lines_[p].set(l);
  ln_pts_[l].set(p);
}

void IncidenceStructure::freeze() {
  if (frozen_) return;
  adj_.assign(points(), DynBitset(points()));
  for (std::size_t p = 0; p < points(); ++p) {
    adj_[p].set(p);
    pt_lines_[p].for_each([&](int l) { adj_[p] |= ln_pts_[l]; });
  }
  line_adj_.assign(lines(), DynBitset(lines()));
  for (std::size_t l = 0; l < lines(); ++l) {
    line_adj_[l].set(l);
    ln_pts_[l].for_each([&](int p) { line_adj_[l] |= pt_lines_[p]; });
  }
  frozen_ = true;
}

const DynBitset& IncidenceStructure::adj(std::size_t p) const {
  require_frozen(*this);
  return adj_[p];
}

const DynBitset& IncidenceStructure::line_adj(std::size_t l) const {
  require_frozen(*this);
  return line_adj_[l];
}

void IncidenceStructure::set_point_label(std::size_t p, std::string label) {
  if (pt_labels_.size() < points()) pt_labels_.resize(points());
  pt_labels_[p] = std::move(label);
}

void IncidenceStructure::set_line_label(std::size_t l, std::string label) {
  if (ln_labels_.size() < lines()) ln_labels_.resize(lines());
  ln_labels_[l] = std::move(label);
}

const std::string& IncidenceStructure::point_label(std::size_t p) const {
  return p < pt_labels_.size() ? pt_labels_[p] : kEmptyLabel;
}

const std::string& IncidenceStructure::line_label(std::size_t l) const {
  return l < ln_labels_.size() ? ln_labels_[l] : kEmptyLabel;
}

std::string IncidenceStructure::point_name(std::size_t p) const {
  const std::string& s = point_label(p);
  return s.empty() ? "p" + std::to_string(p) : s;
}

std::string IncidenceStructure::line_name(std::size_t l) const {
  const std::string& s = line_label(l);
  return s.empty() ? "l" + std::to_string(l) : s;
}

IncidenceStructure IncidenceStructure::dual() const {
  IncidenceStructure d;
  d.pt_lines_ = ln_pts_;
  d.ln_pts_ = pt_lines_;
  d.adj_ = line_adj_;
  d.line_adj_ = adj_;
  d.pt_labels_ = ln_labels_;
  d.ln_labels_ = pt_labels_;
  d.frozen_ = frozen_;
  return d;
}

std::string GqViolation::describe(const IncidenceStructure& S) const {
  auto pn = [&](std::size_t i) { return S.point_name(i); };
  auto ln = [&](std::size_t i) { return S.line_name(i); };
  auto en = [&](std::size_t i) { return on_points ? pn(i) : ln(i); };
  const char* side = on_points ? "point" : "line";
  switch (kind) {
    case Kind::Empty:
      return "structure has no points or no lines";
    case Kind::RepeatedPair:
      return "points " + pn(a) + " and " + pn(b) + " both lie on lines " +
             ln(m) + " and " + ln(n);
    case Kind::LowDegree:
      return std::string(side) + " " + en(a) + " is incident with fewer than two elements";
    case Kind::Thin:
      return std::string(side) + " " + en(a) + " has degree two, structure is not thick";
    case Kind::UnevenLineSize:
      return "lines " + ln(a) + " and " + ln(b) + " carry different point counts";
    case Kind::UnevenPointDegree:
      return "points " + pn(a) + " and " + pn(b) + " carry different line counts";
    case Kind::Projection:
      return "anti-flag (" + pn(a) + ", " + ln(m) + ") has " +
             std::to_string(count) + " projection points instead of one";
  }
  return "?";
}

bool gq_ok(const GqResult& r) { return std::holds_alternative<GQCertificate>(r); }

GqResult verify_gq(const IncidenceStructure& S, unsigned threads) {
  require_frozen(S);
  if (threads == 0) threads = default_threads();
  const std::size_t P = S.points(), L = S.lines();

  if (P == 0 || L == 0) return GqViolation{GqViolation::Kind::Empty};

  // (PL) part one: no two points on two common lines.
  for (std::size_t m = 0; m < L; ++m)
    for (std::size_t n = m + 1; n < L; ++n)
      if (S.line_points(m).intersection_count(S.line_points(n)) >= 2) {
        DynBitset common = S.line_points(m) & S.line_points(n);
        int a = common.first();
        int b = common.next(std::size_t(a) + 1);
        GqViolation v{GqViolation::Kind::RepeatedPair};
        v.a = std::size_t(a);
        v.b = std::size_t(b);
        v.m = m;
        v.n = n;
        return v;
      }

  // (PL) part two plus thickness, both sides.
  for (int side = 0; side < 2; ++side) {
    bool on_points = side == 0;
    std::size_t count = on_points ? P : L;
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t deg = on_points ? S.point_lines(i).count() : S.line_points(i).count();
      if (deg < 2) {
        GqViolation v{GqViolation::Kind::LowDegree};
        v.a = i;
        v.on_points = on_points;
        return v;
      }
    }
  }
  for (int side = 0; side < 2; ++side) {
    bool on_points = side == 0;
    std::size_t count = on_points ? P : L;
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t deg = on_points ? S.point_lines(i).count() : S.line_points(i).count();
      if (deg == 2) {
        GqViolation v{GqViolation::Kind::Thin};
        v.a = i;
        v.on_points = on_points;
        return v;
      }
    }
  }

  // A thick quadrangle has an order; uneven sizes give a cheaper witness than
  // hunting for the anti-flag that must also fail.
  std::size_t line_size = S.line_points(0).count();
  for (std::size_t l = 1; l < L; ++l)
    if (S.line_points(l).count() != line_size) {
      GqViolation v{GqViolation::Kind::UnevenLineSize};
      v.a = 0;
      v.b = l;
      v.on_points = false;
      return v;
    }
  std::size_t point_deg = S.point_lines(0).count();
  for (std::size_t p = 1; p < P; ++p)
    if (S.point_lines(p).count() != point_deg) {
      GqViolation v{GqViolation::Kind::UnevenPointDegree};
      v.a = 0;
      v.b = p;
      return v;
    }

  // (GQ): every anti-flag has exactly one projection point.
  std::vector<MinWitness> hits(std::max(1u, threads));
  parallel_chunks(P, threads, [&](std::size_t b, std::size_t e, unsigned w) {
    for (std::size_t x = b; x < e; ++x)
      for (std::size_t l = 0; l < L; ++l) {
        if (S.incident(x, l)) continue;
        if (S.adj(x).intersection_count(S.line_points(l)) != 1) {
          hits[w].offer(x * L + l);
          break;
        }
      }
  });
  MinWitness min;
  for (const auto& h : hits) min.merge(h);
  if (min.found()) {
    std::size_t x = min.idx / L, l = min.idx % L;
    GqViolation v{GqViolation::Kind::Projection};
    v.a = x;
    v.m = l;
    v.count = S.adj(x).intersection_count(S.line_points(l));
    return v;
  }

  GQCertificate c;
  c.s = unsigned(line_size - 1);
  c.t = unsigned(point_deg - 1);
  c.pair_axiom = c.thick = c.projection = true;
  return c;
}

PointSetHandle perp(const IncidenceStructure& S, std::size_t x, std::size_t y) {
  require_frozen(S);
  if (x == y) throw std::invalid_argument("perp needs two distinct points");
  return {S.adj(x) & S.adj(y), TraceKind::Perp};
}

DynBitset perp_of_set(const IncidenceStructure& S, const DynBitset& set) {
  require_frozen(S);
  DynBitset r;
  bool started = false;
  set.for_each([&](int u) {
    if (!started) {
      r = S.adj(std::size_t(u));
      started = true;
    } else {
      r &= S.adj(std::size_t(u));
    }
  });
  if (!started) return all_points(S);
  return r;
}

PointSetHandle span(const IncidenceStructure& S, std::size_t x, std::size_t y) {
  PointSetHandle p = perp(S, x, y);
  return {perp_of_set(S, p.pts), TraceKind::Span};
}

bool is_regular_point(const IncidenceStructure& S, std::size_t x) {
  require_frozen(S);
  const DynBitset& ax = S.adj(x);
  for (std::size_t y = 0; y < S.points(); ++y) {
    if (ax.test(y)) continue;
    DynBitset pr = ax & S.adj(y);
    std::size_t span_size = perp_of_set(S, pr).count();
    std::vector<int> ids = pr.to_ids();
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = i + 1; j < ids.size(); ++j)
        if (S.adj(std::size_t(ids[i])).intersection_count(S.adj(std::size_t(ids[j]))) !=
            span_size)
          return false;
  }
  return true;
}

bool is_regular_point_by_search(const IncidenceStructure& S, std::size_t x) {
  require_frozen(S);
  const DynBitset& ax = S.adj(x);
  for (std::size_t y = 0; y < S.points(); ++y) {
    if (ax.test(y)) continue;
    DynBitset sp = perp_of_set(S, ax & S.adj(y));
    bool hit = false;
    for (std::size_t u = 0; u < S.points() && !hit; ++u)
      for (std::size_t v = u + 1; v < S.points() && !hit; ++v)
        if ((S.adj(u) & S.adj(v)) == sp) hit = true;
    if (!hit) return false;
  }
  return true;
}

bool is_regular_line(const IncidenceStructure& S, std::size_t l) {
  return is_regular_point(S.dual(), l);
}

PointSetHandle triad_centers(const IncidenceStructure& S, std::size_t x,
                             std::size_t y, std::size_t z) {
  require_frozen(S);
  std::size_t ids[3] = {x, y, z};
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (ids[i] == ids[j] || S.adj(ids[i]).test(ids[j]))
        throw std::invalid_argument("not a triad: points " + S.point_name(ids[i]) +
                                    " and " + S.point_name(ids[j]) +
                                    " are collinear");
  return {S.adj(x) & S.adj(y) & S.adj(z), TraceKind::Trace};
}

bool is_projective_point(const IncidenceStructure& S, std::size_t x) {
  if (!is_regular_point(S, x))
    throw std::invalid_argument("point " + S.point_name(x) +
                                " is not regular; projectivity is defined for "
                                "regular points");
  const DynBitset& ax = S.adj(x);
  std::vector<int> opp;
  for (std::size_t y = 0; y < S.points(); ++y)
    if (!ax.test(y)) opp.push_back(int(y));
  for (std::size_t i = 0; i < opp.size(); ++i) {
    DynBitset xy = ax & S.adj(std::size_t(opp[i]));
    for (std::size_t j = i + 1; j < opp.size(); ++j) {
      std::size_t z = std::size_t(opp[j]);
      if (S.adj(std::size_t(opp[i])).test(z)) continue;  // y ~ z: not a triad
      if (!xy.intersects(S.adj(z))) return false;        // acentric triad
    }
  }
  return true;
}

IncidenceStructure perp_plane(const IncidenceStructure& S, std::size_t x) {
  if (!is_projective_point(S, x))
    throw std::invalid_argument("point " + S.point_name(x) + " is not projective");
  const DynBitset& ax = S.adj(x);
  std::vector<int> pts = ax.to_ids();
  std::vector<int> local(S.points(), -1);
  for (std::size_t i = 0; i < pts.size(); ++i) local[std::size_t(pts[i])] = int(i);

  std::set<DynBitset> blocks;
  for (std::size_t y = 0; y < S.points(); ++y) {
    if (y == x) continue;
    DynBitset tr = ax & S.adj(y);
    DynBitset b(pts.size());
    tr.for_each([&](int p) { b.set(std::size_t(local[std::size_t(p)])); });
    blocks.insert(b);
  }

  IncidenceStructure plane(pts.size(), blocks.size());
  std::size_t li = 0;
  for (const DynBitset& b : blocks) {
    b.for_each([&](int p) { plane.add_flag(std::size_t(p), li); });
    ++li;
  }
  for (std::size_t i = 0; i < pts.size(); ++i)
    plane.set_point_label(i, S.point_name(std::size_t(pts[i])));
  plane.freeze();
  return plane;
}

PlaneResult verify_projective_plane(const IncidenceStructure& S) {
  PlaneResult r;
  if (!S.frozen()) {
    r.why = "structure not frozen";
    return r;
  }
  const std::size_t P = S.points(), L = S.lines();
  if (P == 0 || L == 0) {
    r.why = "empty structure";
    return r;
  }
  std::size_t k = S.line_points(0).count();
  if (k < 3) {
    r.why = "line " + S.line_name(0) + " has fewer than three points";
    return r;
  }
  for (std::size_t l = 0; l < L; ++l)
    if (S.line_points(l).count() != k) {
      r.why = "lines carry different point counts";
      return r;
    }
  for (std::size_t p = 0; p < P; ++p)
    if (S.point_lines(p).count() != k) {
      r.why = "point " + S.point_name(p) + " has degree different from the line size";
      return r;
    }
  unsigned n = unsigned(k - 1);
  if (P != std::size_t(n) * n + n + 1 || L != P) {
    r.why = "point/line counts do not match order " + std::to_string(n);
    return r;
  }
  for (std::size_t p = 0; p < P; ++p)
    for (std::size_t q = p + 1; q < P; ++q)
      if (S.point_lines(p).intersection_count(S.point_lines(q)) != 1) {
        r.why = "points " + S.point_name(p) + " and " + S.point_name(q) +
                " do not lie on exactly one common line";
        return r;
      }
  for (std::size_t l = 0; l < L; ++l)
    for (std::size_t m = l + 1; m < L; ++m)
      if (S.line_points(l).intersection_count(S.line_points(m)) != 1) {
        r.why = "lines " + S.line_name(l) + " and " + S.line_name(m) +
                " do not meet in exactly one point";
        return r;
      }

  // Quadrangle witness: a,b on line 0, c,d on line 1, away from the meet.
  DynBitset common = S.line_points(0) & S.line_points(1);
  int z = common.sole();
  std::vector<int> ab, cd;
  S.line_points(0).for_each([&](int p) { if (p != z && ab.size() < 2) ab.push_back(p); });
  S.line_points(1).for_each([&](int p) { if (p != z && cd.size() < 2) cd.push_back(p); });
  int quad[4] = {ab[0], ab[1], cd[0], cd[1]};
  for (int skip = 0; skip < 4; ++skip) {
    DynBitset meet;
    bool started = false;
    for (int i = 0; i < 4; ++i) {
      if (i == skip) continue;
      if (!started) {
        meet = S.point_lines(std::size_t(quad[i]));
        started = true;
      } else {
        meet &= S.point_lines(std::size_t(quad[i]));
      }
    }
    if (meet.any()) {
      r.why = "no quadrangle in general position";
      return r;
    }
  }

  r.ok = true;
  r.order = n;
  return r;
}

}  // namespace gqlab
