#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace gqlab {

// Runtime-sized bit set.  Every hot kernel in the geometry code (perp, span,
// projection counting, circle intersection) reduces to and/or/popcount over
// the word array, so the representation stays a bare vector<uint64_t>.
class DynBitset {
public:
  DynBitset() = default;
  explicit DynBitset(std::size_t nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

  std::size_t size() const { return nbits_; }
  std::size_t words() const { return w_.size(); }
  uint64_t word(std::size_t i) const { return w_[i]; }

  void set(std::size_t i) {
    assert(i < nbits_);
    w_[i >> 6] |= uint64_t(1) << (i & 63);
  }
  void reset(std::size_t i) {
    assert(i < nbits_);
    w_[i >> 6] &= ~(uint64_t(1) << (i & 63));
  }
  bool test(std::size_t i) const {
    assert(i < nbits_);
    return (w_[i >> 6] >> (i & 63)) & 1;
  }
  void clear() { for (auto& w : w_) w = 0; }

  std::size_t count() const {
    std::size_t c = 0;
    for (uint64_t w : w_) c += std::popcount(w);
    return c;
  }
  bool any() const {
    for (uint64_t w : w_) if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  DynBitset& operator&=(const DynBitset& o) {
    assert(nbits_ == o.nbits_);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  DynBitset& operator|=(const DynBitset& o) {
    assert(nbits_ == o.nbits_);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  DynBitset& andnot_assign(const DynBitset& o) {
    assert(nbits_ == o.nbits_);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }
  friend DynBitset operator&(DynBitset a, const DynBitset& b) { a &= b; return a; }
  friend DynBitset operator|(DynBitset a, const DynBitset& b) { a |= b; return a; }

  friend bool operator==(const DynBitset& a, const DynBitset& b) {
    return a.nbits_ == b.nbits_ && a.w_ == b.w_;
  }
  friend bool operator!=(const DynBitset& a, const DynBitset& b) { return !(a == b); }
  // Lexicographic order on the word array; used only to fix canonical listing
  // orders, the relation itself carries no geometric meaning.
  friend bool operator<(const DynBitset& a, const DynBitset& b) {
    assert(a.nbits_ == b.nbits_);
    return a.w_ < b.w_;
  }

  std::size_t intersection_count(const DynBitset& o) const {
    assert(nbits_ == o.nbits_);
    std::size_t c = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) c += std::popcount(w_[i] & o.w_[i]);
    return c;
  }
  bool intersects(const DynBitset& o) const {
    assert(nbits_ == o.nbits_);
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }
  bool is_subset_of(const DynBitset& o) const {
    assert(nbits_ == o.nbits_);
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  // First set bit at position >= from, or -1.
  int next(std::size_t from = 0) const {
    if (from >= nbits_) return -1;
    std::size_t wi = from >> 6;
    uint64_t w = w_[wi] & (~uint64_t(0) << (from & 63));
    while (true) {
      if (w) return int((wi << 6) + std::countr_zero(w));
      if (++wi == w_.size()) return -1;
      w = w_[wi];
    }
  }
  int first() const { return next(0); }

  // Index of the unique set bit; -1 when the popcount differs from 1.
  int sole() const {
    int f = first();
    if (f < 0) return -1;
    return next(std::size_t(f) + 1) < 0 ? f : -1;
  }

  std::vector<int> to_ids() const {
    std::vector<int> out;
    for (int i = first(); i >= 0; i = next(std::size_t(i) + 1)) out.push_back(i);
    return out;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < w_.size(); ++wi) {
      uint64_t w = w_[wi];
      while (w) {
        f(int((wi << 6) + std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  uint64_t hash() const {
    uint64_t h = 0xcbf29ce484222325ull ^ nbits_;
    for (uint64_t w : w_) {
      h ^= w;
      h *= 0x100000001b3ull;
    }
    return h;
  }

private:
  std::size_t nbits_ = 0;
  std::vector<uint64_t> w_;
};

struct DynBitsetHash {
  std::size_t operator()(const DynBitset& b) const { return std::size_t(b.hash()); }
};

}  // namespace gqlab
