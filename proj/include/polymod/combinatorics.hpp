#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "polymod/errors.hpp"

namespace polymod {

inline constexpr int kMaxEdges = 62;

/// Subset of the 0-based edge labels {0, ..., n-1}, stored as a bitmask.
/// Serialized and printed 1-based.
class Subset {
 public:
  constexpr Subset() = default;
  constexpr explicit Subset(std::uint64_t bits) : bits_(bits) {}

  static Subset full(int n) { return Subset(n >= 64 ? ~0ULL : ((1ULL << n) - 1)); }
  static Subset singleton(int i) { return Subset(1ULL << i); }

  /// From 1-based labels; rejects labels outside [1, n] and repeats.
  static Subset from_labels(const std::vector<int>& labels, int n) {
    Subset s;
    for (int l : labels) {
      if (l < 1 || l > n) throw InvalidArgument("label " + std::to_string(l) + " outside 1.." + std::to_string(n));
      if (s.contains(l - 1)) throw InvalidArgument("repeated label " + std::to_string(l));
      s = s | singleton(l - 1);
    }
    return s;
  }
  static Subset from_labels(std::initializer_list<int> labels, int n) {
    return from_labels(std::vector<int>(labels), n);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  int size() const { return std::popcount(bits_); }
  constexpr bool contains(int i) const { return (bits_ >> i) & 1ULL; }
  constexpr bool contains(Subset other) const { return (bits_ & other.bits_) == other.bits_; }
  constexpr bool disjoint(Subset other) const { return (bits_ & other.bits_) == 0; }
  Subset complement(int n) const { return Subset(full(n).bits_ & ~bits_); }
  int min_index() const { return std::countr_zero(bits_); }

  /// 0-based members in increasing order.
  std::vector<int> indices() const {
    std::vector<int> out;
    for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }
  std::vector<int> labels() const {
    auto idx = indices();
    for (int& i : idx) ++i;
    return idx;
  }

  std::string str() const {
    std::string s = "{";
    bool first = true;
    for (int l : labels()) {
      if (!first) s += ",";
      s += std::to_string(l);
      first = false;
    }
    return s + "}";
  }

  friend constexpr Subset operator|(Subset a, Subset b) { return Subset(a.bits_ | b.bits_); }
  friend constexpr Subset operator&(Subset a, Subset b) { return Subset(a.bits_ & b.bits_); }
  friend constexpr Subset operator-(Subset a, Subset b) { return Subset(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(Subset a, Subset b) = default;

  // Lexicographic on sorted label lists, so containers order like the
  // serialized arrays.
  friend bool operator<(Subset a, Subset b) {
    auto x = a.indices();
    auto y = b.indices();
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  }

 private:
  std::uint64_t bits_ = 0;
};

/// Set partition of {0..n-1}. Blocks are kept sorted by their least element.
class Partition {
 public:
  Partition() = default;
  Partition(int n, std::vector<Subset> blocks) : n_(n), blocks_(std::move(blocks)) {
    std::uint64_t seen = 0;
    for (Subset b : blocks_) {
      if (b.empty()) throw InvalidArgument("empty block in partition");
      if (b.bits() & seen) throw InvalidArgument("overlapping blocks in partition");
      seen |= b.bits();
    }
    if (Subset(seen) != Subset::full(n_)) throw InvalidArgument("partition blocks do not cover 1..n");
    std::sort(blocks_.begin(), blocks_.end(),
              [](Subset a, Subset b) { return a.min_index() < b.min_index(); });
  }

  static Partition discrete(int n) {
    std::vector<Subset> b;
    for (int i = 0; i < n; ++i) b.push_back(Subset::singleton(i));
    return Partition(n, std::move(b));
  }

  int n() const { return n_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const std::vector<Subset>& blocks() const { return blocks_; }
  std::vector<Subset> merged() const {
    std::vector<Subset> out;
    for (Subset b : blocks_)
      if (b.size() >= 2) out.push_back(b);
    return out;
  }
  bool is_discrete() const { return block_count() == n_; }

  /// True if every block of `finer` lies inside a block of *this.
  bool coarsens(const Partition& finer) const {
    for (Subset f : finer.blocks_) {
      bool inside = false;
      for (Subset b : blocks_)
        if (b.contains(f)) { inside = true; break; }
      if (!inside) return false;
    }
    return true;
  }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < blocks_.size(); ++i) s += (i ? "|" : "") + blocks_[i].str();
    return s;
  }

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.n_ == b.n_ && a.blocks_ == b.blocks_;
  }

 private:
  int n_ = 0;
  std::vector<Subset> blocks_;
};

/// Calls `visit(blocks)` once per set partition of the members of `ground`,
/// via restricted growth strings. Blocks arrive ordered by least element.
inline void for_each_set_partition(Subset ground, const std::function<void(const std::vector<Subset>&)>& visit) {
  const auto elems = ground.indices();
  const int m = static_cast<int>(elems.size());
  if (m == 0) {
    visit({});
    return;
  }
  std::vector<Subset> blocks;
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == m) {
      visit(blocks);
      return;
    }
    for (int b = 0; b <= used; ++b) {
      if (b == used) blocks.emplace_back();
      blocks[b] = blocks[b] | Subset::singleton(elems[i]);
      rec(i + 1, b == used ? used + 1 : used);
      blocks[b] = blocks[b] - Subset::singleton(elems[i]);
      if (b == used) blocks.pop_back();
    }
  };
  rec(0, 0);
}

/// All nonempty proper subsets of {0..n-1} with size in [lo, hi], in
/// lexicographic order of their label lists.
inline std::vector<Subset> subsets_by_size(int n, int lo, int hi) {
  std::vector<Subset> out;
  const std::uint64_t top = 1ULL << n;
  for (std::uint64_t b = 1; b + 1 < top; ++b) {
    int s = std::popcount(b);
    if (s >= lo && s <= hi) out.emplace_back(b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace polymod
