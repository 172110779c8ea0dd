#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

namespace lamtrans {

// Fixed-universe bitset used for element sets throughout the library.
// The universe size is set at construction; all binary operations assume
// both operands share it.
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t universe_size() const { return n_; }
  std::size_t words() const { return w_.size(); }
  std::uint64_t word(std::size_t i) const { return w_[i]; }

  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
  void clear() { for (auto& w : w_) w = 0; }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
  }
  bool empty() const {
    for (auto w : w_) if (w) return false;
    return true;
  }

  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  bool intersects(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  Bits& operator|=(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  Bits& operator&=(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  Bits& subtract(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }

  friend bool operator==(const Bits& a, const Bits& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }

  // Members of the set in ascending index order.
  std::vector<int> indices() const {
    std::vector<int> out;
    out.reserve(count());
    for (std::size_t wi = 0; wi < w_.size(); ++wi) {
      std::uint64_t w = w_[wi];
      while (w) {
        out.push_back(int(wi * 64 + std::size_t(std::countr_zero(w))));
        w &= w - 1;
      }
    }
    return out;
  }

  int lowest() const {  // -1 when empty
    for (std::size_t wi = 0; wi < w_.size(); ++wi)
      if (w_[wi]) return int(wi * 64 + std::size_t(std::countr_zero(w_[wi])));
    return -1;
  }

  // Canonical set order: by cardinality, then lexicographically on the sorted
  // index sequence.  The first index where membership differs decides the lex
  // comparison: the set containing it comes first.
  static bool canon_less(const Bits& a, const Bits& b) {
    std::size_t ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    for (std::size_t i = 0; i < a.w_.size(); ++i) {
      std::uint64_t d = a.w_[i] ^ b.w_[i];
      if (d) {
        std::uint64_t low = d & ~(d - 1);
        return a.w_[i] & low;
      }
    }
    return false;
  }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ull ^ n_;
    for (auto w : w_) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return std::size_t(h);
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

struct BitsHash {
  std::size_t operator()(const Bits& b) const { return b.hash(); }
};

}  // namespace lamtrans
