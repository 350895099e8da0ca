#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "gqlab/poly2.hpp"

namespace gqlab {

// Element of F2(s,t) kept in lowest terms.  Over F2 the only unit is 1, so the
// reduced num/den pair is unique and equality is componentwise.
class RatFn {
public:
  RatFn() : den_(Poly2::one()) {}  // zero
  static RatFn zero() { return RatFn(); }
  static RatFn one() { return of(Poly2::one()); }
  static RatFn s() { return of(Poly2::s()); }
  static RatFn t() { return of(Poly2::t()); }
  static RatFn of(Poly2 n) { return RatFn(std::move(n), Poly2::one(), true); }
  static RatFn of(Poly2 n, Poly2 d) {
    if (d.is_zero()) throw std::domain_error("rational function with zero denominator");
    return RatFn(std::move(n), std::move(d), false);
  }

  const Poly2& num() const { return num_; }
  const Poly2& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }

  friend RatFn operator+(const RatFn& a, const RatFn& b) {
    return of(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFn operator*(const RatFn& a, const RatFn& b) {
    return of(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFn operator/(const RatFn& a, const RatFn& b) {
    if (b.is_zero()) throw std::domain_error("division by zero rational function");
    return of(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFn inv() const {
    if (is_zero()) throw std::domain_error("inverse of zero rational function");
    return of(den_, num_);
  }

  friend bool operator==(const RatFn& a, const RatFn& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFn& a, const RatFn& b) { return !(a == b); }
  friend bool operator<(const RatFn& a, const RatFn& b) {
    if (a.num_ != b.num_) return a.num_ < b.num_;
    return a.den_ < b.den_;
  }

  std::optional<uint32_t> eval(const Gf2n& f, uint32_t sv, uint32_t tv) const {
    uint32_t d = den_.eval(f, sv, tv);
    if (d == 0) return std::nullopt;
    return f.mul(num_.eval(f, sv, tv), f.inv(d));
  }

  // "num" when the denominator is 1, else "num/den".  Polynomial strings never
  // contain '/', so the split is unambiguous.
  std::string to_string() const {
    if (den_.is_one()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
  }
  static std::optional<RatFn> parse(const std::string& str) {
    auto slash = str.find('/');
    if (slash == std::string::npos) {
      auto n = Poly2::parse(str);
      if (!n) return std::nullopt;
      return of(std::move(*n));
    }
    if (str.find('/', slash + 1) != std::string::npos) return std::nullopt;
    auto n = Poly2::parse(str.substr(0, slash));
    auto d = Poly2::parse(str.substr(slash + 1));
    if (!n || !d || d->is_zero()) return std::nullopt;
    return of(std::move(*n), std::move(*d));
  }

  uint64_t hash() const { return num_.hash() * 0x9e3779b97f4a7c15ull ^ den_.hash(); }

private:
  RatFn(Poly2 n, Poly2 d, bool already_reduced) : num_(std::move(n)), den_(std::move(d)) {
    if (num_.is_zero()) {
      den_ = Poly2::one();
      return;
    }
    if (already_reduced) return;
    Poly2 g = Poly2::gcd(num_, den_);
    if (!g.is_one()) {
      auto qn = num_.divided_exactly(g);
      auto qd = den_.divided_exactly(g);
      if (!qn || !qd) throw std::logic_error("gcd does not divide its arguments");
      num_ = std::move(*qn);
      den_ = std::move(*qd);
    }
  }

  Poly2 num_;
  Poly2 den_;
};

struct RatFnHash {
  std::size_t operator()(const RatFn& r) const { return std::size_t(r.hash()); }
};

}  // namespace gqlab
