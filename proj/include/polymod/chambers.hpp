#pragma once

// Exact wall-and-chamber structure of the cone over the hypersimplex
// D^n_2 = {x in [0,1]^n : sum x = 2}. Everything here is exact rational
// arithmetic: wall membership is a knife-edge predicate.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polymod/combinatorics.hpp"
#include "polymod/errors.hpp"
#include "polymod/rational.hpp"

namespace polymod {

/// Side lengths r_1..r_n of an n-gon, n >= 3, all strictly positive.
class LengthVector {
 public:
  LengthVector() = default;
  explicit LengthVector(std::vector<Rational> r) : r_(std::move(r)) {
    if (r_.size() < 3) throw InvalidArgument("a length vector needs at least 3 edges");
    if (static_cast<int>(r_.size()) > kMaxEdges) throw InvalidArgument("too many edges");
    for (std::size_t i = 0; i < r_.size(); ++i)
      if (sign(r_[i]) <= 0)
        throw InvalidArgument("edge length r_" + std::to_string(i + 1) + " = " + to_string(r_[i]) + " is not positive");
  }
  LengthVector(std::initializer_list<Rational> r) : LengthVector(std::vector<Rational>(r)) {}

  static LengthVector parse(std::string_view text) { return LengthVector(parse_rational_list(text)); }
  static LengthVector equilateral(int n) { return LengthVector(std::vector<Rational>(n, Rational(1))); }

  int size() const { return static_cast<int>(r_.size()); }
  const Rational& operator[](int i) const { return r_[i]; }
  const std::vector<Rational>& values() const { return r_; }

  Rational perimeter() const {
    Rational s = 0;
    for (const auto& x : r_) s += x;
    return s;
  }
  Rational sum(Subset J) const {
    Rational s = 0;
    for (int i : J.indices()) s += r_[i];
    return s;
  }
  Rational min_over(Subset J) const {
    auto idx = J.indices();
    if (idx.empty()) throw InvalidArgument("min over empty subset");
    Rational m = r_[idx[0]];
    for (int i : idx)
      if (r_[i] < m) m = r_[i];
    return m;
  }
  Rational min() const { return min_over(Subset::full(size())); }

  /// r / (L/2): the point of the hypersimplex on the ray through r.
  std::vector<Rational> normalized() const {
    Rational half = perimeter() / 2;
    std::vector<Rational> out;
    for (const auto& x : r_) out.push_back(x / half);
    return out;
  }

  /// Strictly inside the cone: r_i < sum_{j != i} r_j for every i.
  bool interior() const {
    Rational L = perimeter();
    for (const auto& x : r_)
      if (!(2 * x < L)) return false;
    return true;
  }
  /// Inside the closed cone (a degenerate line polygon is allowed).
  bool in_closed_cone() const {
    Rational L = perimeter();
    for (const auto& x : r_)
      if (2 * x > L) return false;
    return true;
  }

  LengthVector scaled(const Rational& lambda) const {
    std::vector<Rational> out;
    for (const auto& x : r_) out.push_back(x * lambda);
    return LengthVector(std::move(out));
  }
  LengthVector with_last(const Rational& last) const {
    auto out = r_;
    out.back() = last;
    return LengthVector(std::move(out));
  }

  std::vector<double> to_doubles() const {
    std::vector<double> out;
    for (const auto& x : r_) out.push_back(to_double(x));
    return out;
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < r_.size(); ++i) s += (i ? "," : "") + to_string(r_[i]);
    return s + ")";
  }

  friend bool operator==(const LengthVector&, const LengthVector&) = default;

 private:
  std::vector<Rational> r_;
};

inline void check_proper(Subset J, int n) {
  if (J.empty()) throw InvalidArgument("subset must be nonempty");
  if (!Subset::full(n).contains(J)) throw InvalidArgument("subset " + J.str() + " has labels beyond n");
  if (J == Subset::full(n)) throw InvalidArgument("subset must be proper, got all of 1.." + std::to_string(n));
}

/// sum_J r - sum_{J^c} r. Antisymmetric under complement.
inline Rational wall_margin(const LengthVector& r, Subset J) {
  check_proper(J, r.size());
  return r.sum(J) - r.sum(J.complement(r.size()));
}

/// An interior wall W_J = W_{J^c}, stored by the representative missing edge n.
class WallIndex {
 public:
  static WallIndex canonical(Subset J, int n) {
    check_proper(J, n);
    if (J.contains(n - 1)) J = J.complement(n);
    if (J.size() < 2 || J.size() > n - 2)
      throw InvalidArgument("wall index " + J.str() + " must have 2 <= |J| <= n-2");
    return WallIndex(J);
  }
  Subset subset() const { return J_; }
  friend bool operator==(WallIndex, WallIndex) = default;
  friend bool operator<(WallIndex a, WallIndex b) { return a.J_ < b.J_; }

 private:
  explicit WallIndex(Subset J) : J_(J) {}
  Subset J_;
};

/// Canonical representatives of all interior walls, lexicographic.
inline std::vector<WallIndex> canonical_walls(int n) {
  std::vector<WallIndex> out;
  for (Subset J : subsets_by_size(n - 1, 2, n - 2)) out.push_back(WallIndex::canonical(J, n));
  return out;
}

/// Sign of wall_margin over every canonical wall.
class ChamberSignature {
 public:
  ChamberSignature() = default;
  explicit ChamberSignature(const LengthVector& r) : n_(r.size()) {
    for (WallIndex w : canonical_walls(n_)) signs_.emplace_back(w, sign(wall_margin(r, w.subset())));
  }
  int n() const { return n_; }
  const std::vector<std::pair<WallIndex, int>>& signs() const { return signs_; }
  int sign_of(WallIndex w) const {
    for (const auto& [wall, s] : signs_)
      if (wall == w) return s;
    throw InvalidArgument("wall not in signature");
  }
  std::vector<WallIndex> zeros() const {
    std::vector<WallIndex> out;
    for (const auto& [wall, s] : signs_)
      if (s == 0) out.push_back(wall);
    return out;
  }
  friend bool operator==(const ChamberSignature&, const ChamberSignature&) = default;

 private:
  int n_ = 0;
  std::vector<std::pair<WallIndex, int>> signs_;
};

inline bool same_chamber(const LengthVector& a, const LengthVector& b) {
  return a.size() == b.size() && ChamberSignature(a) == ChamberSignature(b);
}

inline bool on_some_wall(const LengthVector& r) {
  for (WallIndex w : canonical_walls(r.size()))
    if (sign(wall_margin(r, w.subset())) == 0) return true;
  return false;
}

/// Base point singling out the chamber C_* around the ray R_+(1,...,1).
/// For odd n this is (1,...,1) itself; for even n the ray sits on the
/// |J| = n/2 walls, so it is nudged by (d, 2d, ..., nd), d = 1/n^3, or by
/// (d, 2d, 4d, ...), d = 2^-n, when the linear nudge still hits a wall.
inline LengthVector default_base_point(int n) {
  if (n % 2 == 1) return LengthVector::equilateral(n);
  std::vector<Rational> r;
  Rational d(1, n * n * n);
  for (int i = 1; i <= n; ++i) r.push_back(1 + i * d);
  LengthVector linear(r);
  if (!on_some_wall(linear)) return linear;
  r.clear();
  Rational d2 = Rational(1) / Rational(Integer(1) << n);
  for (int i = 0; i < n; ++i) r.push_back(1 + Rational(Integer(1) << i) * d2);
  return LengthVector(r);
}

/// r_i + r_j > L/2 for all j != i.
inline bool is_favorable_at(const LengthVector& r, int i) {
  const Rational L = r.perimeter();
  for (int j = 0; j < r.size(); ++j)
    if (j != i && !(2 * (r[i] + r[j]) > L)) return false;
  return true;
}

/// Index (0-based) i with r_i + r_j > L/2 for all j != i, if any. Unique
/// for n >= 4; every edge of a triangle passes, and the first is reported.
inline std::optional<int> favorable_index(const LengthVector& r) {
  for (int i = 0; i < r.size(); ++i)
    if (is_favorable_at(r, i)) return i;
  return std::nullopt;
}

/// Index (0-based) i with r_j + r_k > L/2 for all distinct j, k != i.
inline std::optional<int> nabla_index(const LengthVector& r) {
  const Rational L = r.perimeter();
  const int n = r.size();
  for (int i = 0; i < n; ++i) {
    bool ok = true;
    for (int j = 0; j < n && ok; ++j)
      for (int k = j + 1; k < n && ok; ++k)
        if (j != i && k != i && !(2 * (r[j] + r[k]) > L)) ok = false;
    if (ok) return i;
  }
  return std::nullopt;
}

/// Same chamber as the central base point (C_0 for odd n, C_* for even n)?
/// Vectors on any wall are never central.
inline bool is_central(const LengthVector& r, const std::optional<LengthVector>& base = std::nullopt) {
  const int n = r.size();
  LengthVector b = base ? *base : default_base_point(n);
  if (b.size() != n) throw InvalidArgument("base point has the wrong edge count");
  if (on_some_wall(b)) throw InvalidArgument("base point " + b.str() + " lies on a wall");
  return r.interior() && same_chamber(r, b);
}

struct ClassifyReport {
  bool in_cone_interior = false;
  ChamberSignature signature;
  std::vector<WallIndex> walls_on;
  std::vector<Subset> line_gons;  // canonical J (edge n on the other side)
  bool smooth = false;
  std::optional<int> favorable_index;  // 0-based
  std::optional<int> nabla_index;      // 0-based
  bool central = false;
};

inline ClassifyReport classify(const LengthVector& r, const std::optional<LengthVector>& base = std::nullopt) {
  ClassifyReport rep;
  const int n = r.size();
  rep.in_cone_interior = r.interior();
  rep.signature = ChamberSignature(r);
  rep.walls_on = rep.signature.zeros();
  for (WallIndex w : rep.walls_on) rep.line_gons.push_back(w.subset());
  if (!rep.in_cone_interior) {
    // On a facet r_i = sum of the others the whole space is one line gon.
    const Rational L = r.perimeter();
    for (int i = 0; i < n; ++i)
      if (2 * r[i] == L) {
        Subset J = Subset::singleton(i);
        if (J.contains(n - 1)) J = J.complement(n);
        rep.line_gons.push_back(J);
      }
    std::sort(rep.line_gons.begin(), rep.line_gons.end());
  }
  rep.smooth = rep.in_cone_interior && rep.line_gons.empty();
  rep.favorable_index = polymod::favorable_index(r);
  rep.nabla_index = polymod::nabla_index(r);
  if (n >= 3) {
    LengthVector b = base ? *base : default_base_point(n);
    rep.central = rep.in_cone_interior && !on_some_wall(b) && same_chamber(r, b);
  }
  return rep;
}

/// Def. relevant: sum_J r <= sum_{J^c} r (equality admitted).
inline bool is_relevant(const LengthVector& r, Subset J) {
  const int n = r.size();
  check_proper(J, n);
  if (J.size() < 2 || J.size() > n - 2) return false;
  return sign(wall_margin(r, J)) <= 0;
}

/// All relevant J with min_size <= |J| <= n-2, lexicographic. min_size is
/// clamped to 2: singletons never carry bubbles.
inline std::vector<Subset> relevant_subsets(const LengthVector& r, int min_size = 2) {
  const int n = r.size();
  std::vector<Subset> out;
  for (Subset J : subsets_by_size(n, std::max(min_size, 2), n - 2))
    if (sign(wall_margin(r, J)) <= 0) out.push_back(J);
  return out;
}

struct OpenInterval {
  Rational lo;
  Rational hi;
  bool contains(const Rational& x) const { return lo < x && x < hi; }
};

/// Legal range (0, 2 min_J r_j) for epsilon_J.
inline OpenInterval epsilon_range(const LengthVector& r, Subset J) {
  if (!is_relevant(r, J)) throw InvalidArgument("subset " + J.str() + " is not relevant for r = " + r.str());
  return {Rational(0), 2 * r.min_over(J)};
}

inline Rational canonical_epsilon(const LengthVector& r) { return r.min(); }

/// epsilon_J for the subsets that carry bubbles. Either one uniform value
/// (e.g. the canonical min r_i) or per-subset values, or both with the
/// per-subset entries taking precedence.
class EpsilonAssignment {
 public:
  EpsilonAssignment() = default;
  static EpsilonAssignment uniform(Rational eps) {
    EpsilonAssignment a;
    a.uniform_ = std::move(eps);
    return a;
  }
  static EpsilonAssignment canonical(const LengthVector& r) { return uniform(canonical_epsilon(r)); }

  void set(Subset J, Rational eps) {
    if (sign(eps) <= 0) throw RangeError("epsilon_" + J.str() + " must be > 0");
    explicit_[J.bits()] = std::move(eps);
  }
  bool has(Subset J) const { return uniform_.has_value() || explicit_.count(J.bits()); }
  const Rational& at(Subset J) const {
    if (auto it = explicit_.find(J.bits()); it != explicit_.end()) return it->second;
    if (uniform_) return *uniform_;
    throw InvalidArgument("no epsilon assigned for J = " + J.str());
  }
  const std::optional<Rational>& uniform_value() const { return uniform_; }
  std::vector<std::pair<Subset, Rational>> entries() const {
    std::vector<std::pair<Subset, Rational>> out;
    for (const auto& [bits, e] : explicit_) out.emplace_back(Subset(bits), e);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

  /// Checks 0 < eps_J < 2 min_J r_j for each listed subset.
  void validate(const LengthVector& r, const std::vector<Subset>& subsets) const {
    for (Subset J : subsets) {
      const Rational& e = at(J);
      Rational hi = 2 * r.min_over(J);
      if (!(sign(e) > 0)) throw RangeError("epsilon_" + J.str() + " = " + to_string(e) + " violates lower bound 0");
      if (!(e < hi))
        throw RangeError("epsilon_" + J.str() + " = " + to_string(e) + " violates upper bound 2*min_J r = " + to_string(hi));
    }
  }

 private:
  std::optional<Rational> uniform_;
  std::map<std::uint64_t, Rational> explicit_;
};

/// (r_J, sum_J r - eps): the bubble length vector. Always lands in the
/// favorable chamber of its new last edge.
inline LengthVector augment(const LengthVector& r, Subset J, const Rational& eps) {
  if (!is_relevant(r, J)) throw InvalidArgument("subset " + J.str() + " is not relevant for r = " + r.str());
  const Rational hi = 2 * r.min_over(J);
  if (!(sign(eps) > 0)) throw RangeError("epsilon = " + to_string(eps) + " violates lower bound 0 for J = " + J.str());
  if (!(eps < hi))
    throw RangeError("epsilon = " + to_string(eps) + " violates upper bound 2*min_J r = " + to_string(hi) + " for J = " + J.str());
  std::vector<Rational> out;
  for (int j : J.indices()) out.push_back(r[j]);
  out.push_back(r.sum(J) - eps);
  LengthVector aug(std::move(out));
  if (!is_favorable_at(aug, aug.size() - 1))
    throw std::logic_error("augmented vector " + aug.str() + " is not favorable at its last edge");
  return aug;
}

}  // namespace polymod
