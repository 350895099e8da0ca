#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gqlab {

// GF(2^n) with elements coded as bit patterns 0 .. 2^n-1 over a fixed
// irreducible modulus.  Degrees stay tiny here (n <= 16, geometry uses
// n <= 5), so multiplication is a table lookup for small orders and
// shift-xor reduction otherwise.
class Gf2n {
public:
  // Canonical modulus for the degree (x^2+x+1, x^3+x+1, x^4+x+1, x^5+x^2+1, ...).
  explicit Gf2n(unsigned n);
  // Explicit modulus given as polynomial bits (bit i = coefficient of x^i).
  // Throws std::invalid_argument unless it is irreducible of degree n.
  Gf2n(unsigned n, uint32_t modulus);

  unsigned degree() const { return n_; }
  uint32_t order() const { return uint32_t(1) << n_; }
  uint32_t modulus() const { return mod_; }

  uint32_t add(uint32_t a, uint32_t b) const { return a ^ b; }
  uint32_t mul(uint32_t a, uint32_t b) const {
    return mul_table_.empty() ? mul_slow(a, b) : mul_table_[(std::size_t(a) << n_) | b];
  }
  uint32_t sqr(uint32_t a) const { return mul(a, a); }
  uint32_t pow(uint32_t a, uint64_t e) const;
  // Multiplicative inverse; throws std::domain_error for a == 0.
  uint32_t inv(uint32_t a) const;
  uint32_t frobenius(uint32_t a) const { return sqr(a); }

  // Element code as lowercase hex, no prefix.
  std::string to_string(uint32_t a) const;
  // Parses what to_string produces; std::nullopt on malformed input or a
  // code outside the field.
  std::optional<uint32_t> parse(const std::string& s) const;

  std::vector<uint32_t> elements() const;

private:
  uint32_t mul_slow(uint32_t a, uint32_t b) const;
  void init();

  unsigned n_ = 1;
  uint32_t mod_ = 2;
  std::vector<uint32_t> mul_table_;  // filled when order() <= 256
};

// Square root of the Frobenius map: theta(theta(x)) == x^2 for every x.
// Exists exactly when the degree is odd; theta(x) = x^(2^(e+1)) and
// theta_inv(x) = x^(2^e) with degree = 2e+1.  theta_inv composes with theta
// to the identity in both orders.
class TitsEndo {
public:
  TitsEndo(const Gf2n& field, unsigned e) : f_(&field), e_(e) {}
  uint32_t theta(uint32_t a) const { return pow2k(a, e_ + 1); }
  uint32_t theta_inv(uint32_t a) const { return pow2k(a, e_); }
  unsigned half_exponent() const { return e_; }
  const Gf2n& field() const { return *f_; }

private:
  uint32_t pow2k(uint32_t a, unsigned k) const {
    for (unsigned i = 0; i < k; ++i) a = f_->sqr(a);
    return a;
  }
  const Gf2n* f_;
  unsigned e_;
};

// Returns the endomorphism after exhaustively confirming theta^2 == Frobenius
// on every element, or std::nullopt for even degree (no power of Frobenius
// halves it there).  A gate failure on odd degree means the arithmetic is
// broken and throws std::logic_error.
std::optional<TitsEndo> tits_endomorphism(const Gf2n& field);

}  // namespace gqlab
