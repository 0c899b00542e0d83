#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace ctxbounds {

/// Fixed-capacity dynamic bitset over vertex indices [0, capacity).
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int capacity)
      : capacity_(capacity), words_((capacity + 63) / 64, 0) {}

  static VertexSet full(int capacity) {
    VertexSet s(capacity);
    for (int v = 0; v < capacity; ++v) s.insert(v);
    return s;
  }

  int capacity() const { return capacity_; }

  void insert(int v) { words_[v >> 6] |= bit(v); }
  void erase(int v) { words_[v >> 6] &= ~bit(v); }
  bool contains(int v) const { return (words_[v >> 6] & bit(v)) != 0; }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  bool empty() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  /// Smallest member, or -1 when empty.
  int first() const { return next(0); }
  /// Smallest member >= from, or -1.
  int next(int from) const {
    if (from >= capacity_) return -1;
    std::size_t wi = static_cast<std::size_t>(from) >> 6;
    std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (w != 0) return static_cast<int>(wi * 64 + std::countr_zero(w));
      if (++wi == words_.size()) return -1;
      w = words_[wi];
    }
  }

  std::vector<int> members() const {
    std::vector<int> out;
    for (int v = first(); v >= 0; v = next(v + 1)) out.push_back(v);
    return out;
  }

  VertexSet& operator&=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  VertexSet& operator|=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  /// Set difference.
  VertexSet& operator-=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

  int intersection_count(const VertexSet& o) const {
    int c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & o.words_[i]);
    return c;
  }

  bool operator==(const VertexSet&) const = default;

 private:
  static std::uint64_t bit(int v) { return std::uint64_t{1} << (v & 63); }

  int capacity_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace ctxbounds
