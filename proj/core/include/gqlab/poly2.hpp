#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gqlab/gf2n.hpp"

namespace gqlab {

// Univariate polynomial over F2, bit i of the word array = coefficient of x^i.
// Invariant: no trailing zero words, so degree() reads off the top word.
class UPoly {
public:
  UPoly() = default;  // zero
  static UPoly one() { return monomial(0); }
  static UPoly monomial(unsigned e);

  bool is_zero() const { return w_.empty(); }
  bool is_one() const { return w_.size() == 1 && w_[0] == 1; }
  int degree() const;  // -1 for zero
  bool coeff(unsigned e) const;

  UPoly& operator+=(const UPoly& o);  // char 2: addition doubles as subtraction
  friend UPoly operator+(UPoly a, const UPoly& b) { a += b; return a; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);

  // Quotient and remainder; throws std::domain_error for zero divisor.
  static void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
  static UPoly gcd(UPoly a, UPoly b);
  // Quotient when the division is exact, std::nullopt otherwise.
  std::optional<UPoly> divided_exactly(const UPoly& d) const;

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.w_ == b.w_; }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

private:
  void trim();
  std::vector<uint64_t> w_;
};

// Bivariate polynomial over F2 in s and t.  A monomial s^es t^et is one key
// (et << 32) | es; keys are kept strictly increasing, which is t-major order,
// so the Euclidean loop in t works on contiguous key ranges.
class Poly2 {
public:
  using Key = uint64_t;

  Poly2() = default;  // zero
  static Poly2 one() { return monomial(0, 0); }
  static Poly2 s() { return monomial(1, 0); }
  static Poly2 t() { return monomial(0, 1); }
  static Poly2 monomial(uint32_t es, uint32_t et);
  static Poly2 from_upoly_in_s(const UPoly& p);

  bool is_zero() const { return k_.empty(); }
  bool is_one() const { return k_.size() == 1 && k_[0] == 0; }
  int deg_s() const;
  int deg_t() const { return k_.empty() ? -1 : int(k_.back() >> 32); }
  std::size_t term_count() const { return k_.size(); }
  const std::vector<Key>& keys() const { return k_; }

  Poly2& operator+=(const Poly2& o);
  friend Poly2 operator+(Poly2 a, const Poly2& b) { a += b; return a; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b);

  // Coefficient of t^et as a polynomial in s.
  UPoly coeff_t(uint32_t et) const;
  UPoly lc_t() const { return coeff_t(uint32_t(deg_t())); }
  // gcd of all t-coefficients; the polynomial splits as content * primitive.
  UPoly content_t() const;
  Poly2 primitive_t() const;

  static Poly2 gcd(const Poly2& a, const Poly2& b);
  std::optional<Poly2> divided_exactly(const Poly2& d) const;

  // p = even^2 + odd_s^2 s + odd_t^2 t + odd_st^2 st.  Unique: monomials sort
  // by exponent parity and the parts take the halved exponents.
  struct ParityParts;
  ParityParts parity_decompose() const;
  static Poly2 parity_compose(const ParityParts& p);
  // Bit c set when the part for class c (c = (es&1) | ((et&1)<<1)) is nonzero.
  unsigned parity_class_mask() const;

  uint32_t eval(const Gf2n& f, uint32_t sv, uint32_t tv) const;

  // "0", "1", "s3t2+s+1": terms in descending key order, exponent 1 implicit.
  std::string to_string() const;
  static std::optional<Poly2> parse(const std::string& str);

  friend bool operator==(const Poly2& a, const Poly2& b) { return a.k_ == b.k_; }
  friend bool operator!=(const Poly2& a, const Poly2& b) { return !(a == b); }
  friend bool operator<(const Poly2& a, const Poly2& b) { return a.k_ < b.k_; }
  uint64_t hash() const;

private:
  std::vector<Key> k_;
};

struct Poly2::ParityParts {
  Poly2 even, odd_s, odd_t, odd_st;
};

}  // namespace gqlab
