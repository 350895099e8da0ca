#include "gqlab/gf2n.hpp"

#include <bit>
#include <stdexcept>

namespace gqlab {
namespace {

int poly_degree(uint32_t p) { return p ? std::bit_width(p) - 1 : -1; }

uint32_t poly_mod(uint64_t a, uint32_t m) {
  int dm = poly_degree(m);
  while (true) {
    int da = a ? std::bit_width(a) - 1 : -1;
    if (da < dm) return uint32_t(a);
    a ^= uint64_t(m) << (da - dm);
  }
}

uint64_t poly_mul(uint32_t a, uint32_t b) {
  uint64_t r = 0;
  while (b) {
    r ^= uint64_t(a) << std::countr_zero(b);
    b &= b - 1;
  }
  return r;
}

bool poly_irreducible(uint32_t m, unsigned n) {
  if (poly_degree(m) != int(n)) return false;
  if (n == 1) return true;
  // No divisor of degree 1 .. n/2.  Degrees are <= 16, brute force is instant.
  for (unsigned d = 1; 2 * d <= n; ++d) {
    for (uint32_t lo = 0; lo < (uint32_t(1) << d); ++lo) {
      uint32_t div = (uint32_t(1) << d) | lo;
      // Remainder of m by div via the same shift-xor loop.
      if (poly_mod(m, div) == 0) return false;
    }
  }
  return true;
}

uint32_t canonical_modulus(unsigned n) {
  switch (n) {
    case 1: return 0b10;        // x
    case 2: return 0b111;       // x^2+x+1
    case 3: return 0b1011;      // x^3+x+1
    case 4: return 0b10011;     // x^4+x+1
    case 5: return 0b100101;    // x^5+x^2+1
    case 6: return 0b1000011;   // x^6+x+1
    default: break;
  }
  // Smallest irreducible of the degree, found by scan.
  for (uint32_t lo = 0; lo < (uint32_t(1) << n); ++lo) {
    uint32_t m = (uint32_t(1) << n) | lo;
    if (poly_irreducible(m, n)) return m;
  }
  throw std::logic_error("no irreducible modulus found");
}

}  // namespace

Gf2n::Gf2n(unsigned n) : n_(n), mod_(canonical_modulus(n)) { init(); }

Gf2n::Gf2n(unsigned n, uint32_t modulus) : n_(n), mod_(modulus) {
  if (!poly_irreducible(modulus, n))
    throw std::invalid_argument("modulus is not irreducible of the requested degree");
  init();
}

void Gf2n::init() {
  if (n_ == 0 || n_ > 16) throw std::invalid_argument("field degree must be in [1, 16]");
  if (order() <= 256) {
    mul_table_.resize(std::size_t(order()) << n_);
    for (uint32_t a = 0; a < order(); ++a)
      for (uint32_t b = 0; b < order(); ++b)
        mul_table_[(std::size_t(a) << n_) | b] = poly_mod(poly_mul(a, b), mod_);
  }
}

uint32_t Gf2n::mul_slow(uint32_t a, uint32_t b) const {
  return poly_mod(poly_mul(a, b), mod_);
}

uint32_t Gf2n::pow(uint32_t a, uint64_t e) const {
  uint32_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = sqr(a);
    e >>= 1;
  }
  return r;
}

uint32_t Gf2n::inv(uint32_t a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  // a^(2^n - 2) = a^-1 in the multiplicative group of order 2^n - 1.
  return pow(a, (uint64_t(1) << n_) - 2);
}

std::string Gf2n::to_string(uint32_t a) const {
  static const char* digits = "0123456789abcdef";
  if (a < 16) return std::string(1, digits[a]);
  std::string s;
  while (a) {
    s.insert(s.begin(), digits[a & 15]);
    a >>= 4;
  }
  return s;
}

std::optional<uint32_t> Gf2n::parse(const std::string& s) const {
  if (s.empty() || s.size() > 8) return std::nullopt;
  uint32_t v = 0;
  for (char c : s) {
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else return std::nullopt;
    v = (v << 4) | uint32_t(d);
    if (v >= order()) return std::nullopt;
  }
  return v;
}

std::vector<uint32_t> Gf2n::elements() const {
  std::vector<uint32_t> e(order());
  for (uint32_t i = 0; i < order(); ++i) e[i] = i;
  return e;
}

std::optional<TitsEndo> tits_endomorphism(const Gf2n& field) {
  unsigned n = field.degree();
  if (n % 2 == 0) return std::nullopt;
  TitsEndo t(field, (n - 1) / 2);
  for (uint32_t a = 0; a < field.order(); ++a) {
    if (t.theta(t.theta(a)) != field.frobenius(a))
      throw std::logic_error("theta^2 != Frobenius, field arithmetic is inconsistent");
    if (t.theta(t.theta_inv(a)) != a || t.theta_inv(t.theta(a)) != a)
      throw std::logic_error("theta_inv is not inverse to theta");
  }
  return t;
}

}  // namespace gqlab
