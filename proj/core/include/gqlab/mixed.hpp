#pragma once

#include "gqlab/gf2n.hpp"
#include "gqlab/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace gqlab {

// The four members of the characteristic-2 tower
//
//     K^2  <=  L'  <=  K'  <=  L  <=  K
//
// where K' is a field between K^2 and K, L is a K'-subspace of K containing
// K', and L' is a K^2-subspace of K' containing K^2.
enum class MixedSpace { KSquared, KPrime, L, LPrime };

const char* to_string(MixedSpace space);

// Tower over GF(2^n).  Finite fields of characteristic 2 are perfect (the
// squaring map is onto), so K^2 = K and the whole tower collapses: the only
// valid finite tower is K' = L = L' = K.  Generator lists are still closed
// honestly (subfield closure for K', scalar-module closure for L and L'),
// and a build whose closure falls short of the full field is rejected.
class FiniteMixed {
public:
  static FiniteMixed build(Gf2n field,
                           const std::vector<unsigned>& kprime_gens,
                           const std::vector<unsigned>& l_gens,
                           const std::vector<unsigned>& lprime_gens);

  const Gf2n& field() const { return field_; }

  bool member(unsigned element, MixedSpace space) const;

  // Bit e set = element with code e belongs to the space.
  std::uint64_t mask(MixedSpace space) const;

private:
  explicit FiniteMixed(Gf2n field) : field_(std::move(field)) {}

  Gf2n field_;
  std::uint64_t kprime_mask_ = 0;
  std::uint64_t l_mask_ = 0;
  std::uint64_t lprime_mask_ = 0;
};

// Tower over K = F2(s,t).
//
// Monomials fall in four exponent-parity classes (s-exponent mod 2,
// t-exponent mod 2), coded 0..3 as (es & 1) | ((et & 1) << 1); the class of
// a product is the XOR of the classes.  A nonzero x = N/D is "class-pure"
// when all monomials of N*D share one class; x then equals (P/D)^2 * m for
// the representative monomial m of that class, i.e. pure elements of class c
// are exactly K^2 * m_c.
//
// Generators are required to be class-pure.  That makes every space a direct
// sum of pure strata and membership a closed-form test: x = (N*D)/D^2 with
// D^2 in K^2, so x belongs to a space iff every parity class of N*D is one
// the space covers.  A non-pure generator (s+t, say) spans strictly less
// than its classes suggest, the parity certificate would claim too much, so
// such a generator is rejected at build time.
class RationalMixed {
public:
  static RationalMixed build(const std::vector<RatFn>& kprime_gens,
                             const std::vector<RatFn>& l_gens,
                             const std::vector<RatFn>& lprime_gens);

  bool member(const RatFn& x, MixedSpace space) const;

  // 4-bit mask of parity classes covered by the space.
  unsigned class_mask(MixedSpace space) const;

  // True when some inclusion of the tower is strict, i.e. the descriptor
  // names a quadrangle that is not the plain symplectic one over K.
  bool proper() const;

  const std::vector<RatFn>& kprime_gens() const { return kprime_gens_; }
  const std::vector<RatFn>& l_gens() const { return l_gens_; }
  const std::vector<RatFn>& lprime_gens() const { return lprime_gens_; }

private:
  RationalMixed() = default;

  unsigned kprime_mask_ = 1;  // class 0 = K^2, always present
  unsigned l_mask_ = 0;
  unsigned lprime_mask_ = 1;

  std::vector<RatFn> kprime_gens_, l_gens_, lprime_gens_;
};

// Parity-class support of a rational function: 4-bit mask of the classes of
// the monomials of num*den (empty for x = 0).  x is class-pure when at most
// one bit is set.
unsigned class_support(const RatFn& x);
bool class_pure(const RatFn& x);

using MixedTower = std::variant<FiniteMixed, RationalMixed>;

// Unvalidated generator lists, as read from a descriptor file.
struct MixedGenerators {
  bool finite = false;
  unsigned q = 0;  // finite case: field order, a power of two
  std::vector<unsigned> fin_kprime, fin_l, fin_lprime;
  std::vector<RatFn> rat_kprime, rat_l, rat_lprime;
};

// Descriptor file: '#' comments and blank lines ignored; first payload line
// is "field rational" or "field gf <q>"; each further line declares one
// generator as "<space> <element>" with <space> in {kprime, l, lprime}.
// Elements are hex codes (finite) or sparse rational functions (see below).
// Throws std::invalid_argument citing the offending line number.
MixedGenerators parse_descriptor(std::istream& in);
std::string serialize_descriptor(const MixedGenerators& gens);

// Validates the tower; throws std::invalid_argument on any violation.
MixedTower build_tower(const MixedGenerators& gens);

// Sparse text form of polynomials and rational functions: monomials as
// "<s-exponent>,<t-exponent>:1" separated by single spaces, "0" for the zero
// polynomial, and numerator "/" denominator (denominator omitted when 1).
std::string to_sparse(const Poly2& p);
std::string to_sparse(const RatFn& x);
std::optional<Poly2> parse_sparse_poly(std::string_view text);
std::optional<RatFn> parse_sparse(std::string_view text);

}  // namespace gqlab
