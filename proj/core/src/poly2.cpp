#include "gqlab/poly2.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <stdexcept>

namespace gqlab {

// ---------------------------------------------------------------- UPoly

void UPoly::trim() {
  while (!w_.empty() && w_.back() == 0) w_.pop_back();
}

UPoly UPoly::monomial(unsigned e) {
  UPoly p;
  p.w_.assign(e / 64 + 1, 0);
  p.w_[e / 64] = uint64_t(1) << (e % 64);
  return p;
}

int UPoly::degree() const {
  if (w_.empty()) return -1;
  return int((w_.size() - 1) * 64) + std::bit_width(w_.back()) - 1;
}

bool UPoly::coeff(unsigned e) const {
  std::size_t wi = e / 64;
  return wi < w_.size() && ((w_[wi] >> (e % 64)) & 1);
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.w_.size() > w_.size()) w_.resize(o.w_.size(), 0);
  for (std::size_t i = 0; i < o.w_.size(); ++i) w_[i] ^= o.w_[i];
  trim();
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  UPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.w_.assign(a.w_.size() + b.w_.size(), 0);
  for (std::size_t i = 0; i < a.w_.size(); ++i) {
    uint64_t wa = a.w_[i];
    while (wa) {
      unsigned bit = unsigned(std::countr_zero(wa));
      wa &= wa - 1;
      std::size_t shift = i * 64 + bit;
      std::size_t wo = shift / 64;
      unsigned so = unsigned(shift % 64);
      for (std::size_t j = 0; j < b.w_.size(); ++j) {
        r.w_[wo + j] ^= b.w_[j] << so;
        if (so) r.w_[wo + j + 1] ^= b.w_[j] >> (64 - so);
      }
    }
  }
  r.trim();
  return r;
}

void UPoly::divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  int db = b.degree();
  q = UPoly();
  r = a;
  while (!r.is_zero() && r.degree() >= db) {
    unsigned k = unsigned(r.degree() - db);
    q += monomial(k);
    r += monomial(k) * b;
  }
}

UPoly UPoly::gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::optional<UPoly> UPoly::divided_exactly(const UPoly& d) const {
  UPoly q, r;
  divmod(*this, d, q, r);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

// ---------------------------------------------------------------- Poly2

namespace {
constexpr uint64_t kEsMask = 0xffffffffull;

// xor-merge of two strictly increasing key lists: keys present in exactly one
// input survive (coefficients live in F2).
std::vector<uint64_t> merge_xor(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
  std::vector<uint64_t> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) out.push_back(a[i++]);
    else if (b[j] < a[i]) out.push_back(b[j++]);
    else { ++i; ++j; }
  }
  out.insert(out.end(), a.begin() + i, a.end());
  out.insert(out.end(), b.begin() + j, b.end());
  return out;
}
}  // namespace

Poly2 Poly2::monomial(uint32_t es, uint32_t et) {
  Poly2 p;
  p.k_.push_back((uint64_t(et) << 32) | es);
  return p;
}

Poly2 Poly2::from_upoly_in_s(const UPoly& p) {
  Poly2 r;
  for (int e = 0; e <= p.degree(); ++e)
    if (p.coeff(unsigned(e))) r.k_.push_back(uint64_t(e));
  return r;
}

int Poly2::deg_s() const {
  int d = -1;
  for (Key k : k_) d = std::max(d, int(k & kEsMask));
  return d;
}

Poly2& Poly2::operator+=(const Poly2& o) {
  k_ = merge_xor(k_, o.k_);
  return *this;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
  Poly2 r;
  if (a.k_.empty() || b.k_.empty()) return r;
  std::vector<uint64_t> acc;
  acc.reserve(a.k_.size() * b.k_.size());
  for (uint64_t ka : a.k_)
    for (uint64_t kb : b.k_) acc.push_back(ka + kb);  // exponent pairs add componentwise
  std::sort(acc.begin(), acc.end());
  // keep keys with odd multiplicity
  std::size_t i = 0;
  while (i < acc.size()) {
    std::size_t j = i;
    while (j < acc.size() && acc[j] == acc[i]) ++j;
    if ((j - i) & 1) r.k_.push_back(acc[i]);
    i = j;
  }
  return r;
}

UPoly Poly2::coeff_t(uint32_t et) const {
  UPoly c;
  uint64_t lo = uint64_t(et) << 32;
  auto it = std::lower_bound(k_.begin(), k_.end(), lo);
  for (; it != k_.end() && (*it >> 32) == et; ++it) c += UPoly::monomial(unsigned(*it & kEsMask));
  return c;
}

UPoly Poly2::content_t() const {
  UPoly g;
  for (std::size_t i = 0; i < k_.size();) {
    uint32_t et = uint32_t(k_[i] >> 32);
    g = UPoly::gcd(std::move(g), coeff_t(et));
    while (i < k_.size() && uint32_t(k_[i] >> 32) == et) ++i;
    if (g.is_one()) break;
  }
  return g;
}

Poly2 Poly2::primitive_t() const {
  if (is_zero()) return *this;
  UPoly c = content_t();
  if (c.is_one()) return *this;
  auto q = divided_exactly(from_upoly_in_s(c));
  if (!q) throw std::logic_error("content does not divide its polynomial");
  return *q;
}

std::optional<Poly2> Poly2::divided_exactly(const Poly2& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  if (is_zero()) return Poly2();
  if (d.is_one()) return *this;
  int dt = d.deg_t();
  Poly2 q;
  if (dt == 0) {
    // divisor lies in F2[s]: divide every t-coefficient separately
    UPoly ds = d.coeff_t(0);
    Poly2 r = *this;
    for (std::size_t i = 0; i < r.k_.size();) {
      uint32_t et = uint32_t(r.k_[i] >> 32);
      auto qc = r.coeff_t(et).divided_exactly(ds);
      if (!qc) return std::nullopt;
      q += Poly2::monomial(0, et) * from_upoly_in_s(*qc);
      while (i < r.k_.size() && uint32_t(r.k_[i] >> 32) == et) ++i;
    }
    return q;
  }
  // Long division in t over Frac(F2[s]); exact divisibility forces every
  // leading-coefficient division to stay in F2[s].
  UPoly lcd = d.lc_t();
  Poly2 r = *this;
  while (!r.is_zero()) {
    if (r.deg_t() < dt) return std::nullopt;
    auto qc = r.lc_t().divided_exactly(lcd);
    if (!qc) return std::nullopt;
    Poly2 term = Poly2::monomial(0, uint32_t(r.deg_t() - dt)) * from_upoly_in_s(*qc);
    q += term;
    r += term * d;  // char 2 subtraction
  }
  return q;
}

namespace {
// Incremental pseudo-remainder in t: repeatedly scale by the divisor's leading
// coefficient and cancel the top term.  Any associate works for the primitive
// Euclid below, content removal mops up the extra factors.
Poly2 pseudo_rem_t(Poly2 r, const Poly2& b) {
  int db = b.deg_t();
  Poly2 lcb = Poly2::from_upoly_in_s(b.lc_t());
  while (!r.is_zero() && r.deg_t() >= db) {
    Poly2 lcr = Poly2::from_upoly_in_s(r.coeff_t(uint32_t(r.deg_t())));
    Poly2 shift = Poly2::monomial(0, uint32_t(r.deg_t() - db));
    r = lcb * r + shift * lcr * b;
  }
  return r;
}
}  // namespace

Poly2 Poly2::gcd(const Poly2& a, const Poly2& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  UPoly c = UPoly::gcd(a.content_t(), b.content_t());
  Poly2 pa = a.primitive_t();
  Poly2 pb = b.primitive_t();
  // primitive Euclid: dt strictly decreases, a primitive dt-0 polynomial is 1
  while (!pb.is_zero()) {
    if (pa.deg_t() < pb.deg_t()) std::swap(pa, pb);
    Poly2 r = pseudo_rem_t(pa, pb).primitive_t();
    pa = std::move(pb);
    pb = std::move(r);
  }
  return from_upoly_in_s(c) * pa;
}

Poly2::ParityParts Poly2::parity_decompose() const {
  ParityParts p;
  for (Key k : k_) {
    uint32_t es = uint32_t(k & kEsMask), et = uint32_t(k >> 32);
    Poly2 half = monomial(es >> 1, et >> 1);
    switch ((es & 1) | ((et & 1) << 1)) {
      case 0: p.even += half; break;
      case 1: p.odd_s += half; break;
      case 2: p.odd_t += half; break;
      case 3: p.odd_st += half; break;
    }
  }
  return p;
}

Poly2 Poly2::parity_compose(const ParityParts& p) {
  auto sq = [](const Poly2& f) { return f * f; };
  return sq(p.even) + sq(p.odd_s) * s() + sq(p.odd_t) * t() + sq(p.odd_st) * s() * t();
}

unsigned Poly2::parity_class_mask() const {
  unsigned m = 0;
  for (Key k : k_) m |= 1u << ((k & 1) | ((k >> 32 & 1) << 1));
  return m;
}

uint32_t Poly2::eval(const Gf2n& f, uint32_t sv, uint32_t tv) const {
  uint32_t acc = 0;
  for (Key k : k_) {
    uint32_t es = uint32_t(k & kEsMask), et = uint32_t(k >> 32);
    acc ^= f.mul(f.pow(sv, es), f.pow(tv, et));
  }
  return acc;
}

std::string Poly2::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (auto it = k_.rbegin(); it != k_.rend(); ++it) {
    if (!out.empty()) out += '+';
    uint32_t es = uint32_t(*it & kEsMask), et = uint32_t(*it >> 32);
    if (es == 0 && et == 0) { out += '1'; continue; }
    if (es) {
      out += 's';
      if (es > 1) out += std::to_string(es);
    }
    if (et) {
      out += 't';
      if (et > 1) out += std::to_string(et);
    }
  }
  return out;
}

std::optional<Poly2> Poly2::parse(const std::string& str) {
  if (str.empty()) return std::nullopt;
  if (str == "0") return Poly2();
  Poly2 acc;
  std::size_t pos = 0;
  while (pos < str.size()) {
    std::size_t end = str.find('+', pos);
    if (end == std::string::npos) end = str.size();
    std::string term = str.substr(pos, end - pos);
    pos = end + 1;
    if (term.empty()) return std::nullopt;
    uint64_t es = 0, et = 0;
    std::size_t i = 0;
    if (term == "1") {
      acc += one();
      continue;
    }
    auto read_exp = [&](uint64_t& e) -> bool {
      ++i;
      if (i >= term.size() || !std::isdigit(static_cast<unsigned char>(term[i]))) {
        e = 1;
        return true;
      }
      e = 0;
      while (i < term.size() && std::isdigit(static_cast<unsigned char>(term[i]))) {
        e = e * 10 + uint64_t(term[i] - '0');
        if (e > 0x7fffffff) return false;
        ++i;
      }
      return e >= 1;
    };
    if (i < term.size() && term[i] == 's') {
      if (!read_exp(es)) return std::nullopt;
    }
    if (i < term.size() && term[i] == 't') {
      if (!read_exp(et)) return std::nullopt;
    }
    if (i != term.size() || (es == 0 && et == 0)) return std::nullopt;
    acc += monomial(uint32_t(es), uint32_t(et));
  }
  return acc;
}

uint64_t Poly2::hash() const {
  uint64_t h = 0xcbf29ce484222325ull;
  for (Key k : k_) {
    h ^= k;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace gqlab
