#pragma once

// Strata Y_alpha of M_r, the blowup schedule toward the stable
// compactification, wall-crossing Poincare polynomials and Betti numbers of
// the compactification by summing E-polynomials over bubble-tree strata.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "polymod/chambers.hpp"
#include "polymod/combinatorics.hpp"
#include "polymod/poincare.hpp"

namespace polymod {

// ---------------------------------------------------------------------------
// Wall crossing

/// Change of the Poincare polynomial when crossing W_J into the side where
/// sum_J r < sum_{J^c} r: a P^{|J|-2} is traded for a P^{|J^c|-2}
/// (fibre dimensions d + e = n - 4).
inline PoincarePoly wall_crossing_delta(int n, Subset J, bool into_side_where_J_short) {
  const int a = J.size();
  const int b = n - a;
  PoincarePoly d = PoincarePoly::projective_space(b - 2) - PoincarePoly::projective_space(a - 2);
  return into_side_where_J_short ? d : -d;
}

struct WallCrossing {
  WallIndex wall;
  Rational t;                 // segment parameter in (0, 1)
  bool into_side_where_J_short;
  PoincarePoly delta;
};

struct WallCrossingPath {
  LengthVector start;  // favorable reference point in Delta_n
  int perturbation_k = 0;
  std::vector<WallCrossing> crossings;  // ordered by t
  PoincarePoly result;
};

/// Walks the segment from a perturbed point of Delta_n (where M = P^{n-3})
/// to r, applying the crossing rule at each wall. The start is
/// (1,...,1,n-2) + k*w/N with the least k making every crossing parameter
/// distinct, so the walls are met one at a time. w = (1,2,...,n), N = n^4
/// first; symmetric targets (e.g. equilateral r) defeat that because many
/// walls then share a crossing parameter, so w = (1,2,4,...,2^{n-1}),
/// N = 2^n n^4 is the fallback.
inline WallCrossingPath wall_crossing_path(const LengthVector& r) {
  const int n = r.size();
  if (!r.interior()) throw InvalidArgument("r = " + r.str() + " is not inside the cone");
  if (on_some_wall(r)) throw InvalidArgument("r = " + r.str() + " lies on a wall; M_r is singular");

  const auto walls = canonical_walls(n);
  std::vector<Rational> end_margin;
  for (WallIndex w : walls) end_margin.push_back(wall_margin(r, w.subset()));

  for (int scheme = 0; scheme < 2; ++scheme) {
    std::vector<Rational> weight;
    Rational N = Rational(n) * n * n * n;
    for (int i = 0; i < n; ++i) weight.push_back(scheme == 0 ? Rational(i + 1) : Rational(Integer(1) << i));
    if (scheme == 1) N *= Rational(Integer(1) << n);

    for (int k = 0; k <= 4 * n * n; ++k) {
      std::vector<Rational> v(n, Rational(1));
      v[n - 1] = Rational(n - 2);
      for (int i = 0; i < n; ++i) v[i] += k * weight[i] / N;
      LengthVector start(v);
      auto fav = favorable_index(start);
      if (!fav || *fav != n - 1 || on_some_wall(start)) continue;

      WallCrossingPath path{start, k, {}, PoincarePoly::projective_space(n - 3)};
      std::set<Rational> ts;
      bool distinct = true;
      for (std::size_t w = 0; w < walls.size() && distinct; ++w) {
        Rational m0 = wall_margin(start, walls[w].subset());
        const Rational& m1 = end_margin[w];
        if (sign(m0) == sign(m1)) continue;
        Rational t = m0 / (m0 - m1);
        if (!ts.insert(t).second) distinct = false;
        // m1 < 0: the segment ends where J is the short side.
        bool into_short = sign(m1) < 0;
        path.crossings.push_back({walls[w], t, into_short, wall_crossing_delta(n, walls[w].subset(), into_short)});
      }
      if (!distinct) continue;
      std::sort(path.crossings.begin(), path.crossings.end(),
                [](const WallCrossing& a, const WallCrossing& b) { return a.t < b.t; });
      for (const auto& c : path.crossings) path.result += c.delta;
      return path;
    }
  }
  throw std::logic_error("no generic start point found in Delta_n for r = " + r.str());
}

/// Poincare polynomial of a smooth polygon space M_r.
inline PoincarePoly poincare_wall_crossing(const LengthVector& r) { return wall_crossing_path(r).result; }

namespace detail {
inline PoincarePoly center_sum(int n, int last_k) {
  PoincarePoly p = PoincarePoly::projective_space(n - 3);
  for (int k = 1; k <= last_k; ++k)
    p += binomial(n - 1, k) *
         (PoincarePoly::projective_space(n - 3 - k) - PoincarePoly::projective_space(k - 1));
  return p;
}
}  // namespace detail

/// P_t(M_{C_0}) for odd n >= 5, from the blowup/blowdown sequence
/// P^{n-3} -> ... -> M_{C_0}.
inline PoincarePoly poincare_center(int n) {
  if (n < 5 || n % 2 == 0) throw InvalidArgument("poincare_center needs odd n >= 5, got " + std::to_string(n));
  return detail::center_sum(n, (n - 3) / 2);
}

/// Intersection Poincare polynomial of M_E, E = R_+(1,...,1), for even n >= 6.
inline PoincarePoly ih_poincare_center(int n) {
  if (n < 6 || n % 2 == 1) throw InvalidArgument("ih_poincare_center needs even n >= 6, got " + std::to_string(n));
  return detail::center_sum(n, (n - 4) / 2);
}

// ---------------------------------------------------------------------------
// Strata

/// r_alpha: block sums of r over the blocks of alpha, in block order.
inline std::vector<Rational> collapse(const LengthVector& r, const std::vector<Subset>& blocks) {
  std::vector<Rational> out;
  out.reserve(blocks.size());
  for (Subset b : blocks) out.push_back(r.sum(b));
  return out;
}

namespace detail {
inline bool strictly_inside_cone(const std::vector<Rational>& x) {
  if (x.size() < 3) return false;
  Rational L = 0;
  for (const auto& v : x) L += v;
  for (const auto& v : x)
    if (!(2 * v < L)) return false;
  return true;
}
inline bool inside_closed_cone(const std::vector<Rational>& x) {
  if (x.size() < 2) return false;
  Rational L = 0;
  for (const auto& v : x) L += v;
  for (const auto& v : x)
    if (2 * v > L) return false;
  return true;
}
}  // namespace detail

struct Stratum {
  Partition alpha;
  std::vector<Rational> r_alpha;
  int dim = 0;
  bool closed_nonempty = false;
  bool open_nonempty = false;
};

struct StrataReport {
  std::vector<Stratum> strata;
  /// (i, j): Y_i is a codimension-one-in-the-lattice face of Y_j, i.e.
  /// alpha_i merges two blocks of alpha_j. Only nonempty strata appear.
  std::vector<std::pair<int, int>> edges;
};

inline StrataReport strata(const LengthVector& r) {
  if (!r.interior()) throw InvalidArgument("r = " + r.str() + " is not inside the cone");
  const int n = r.size();
  StrataReport rep;
  for_each_set_partition(Subset::full(n), [&](const std::vector<Subset>& blocks) {
    Stratum s;
    s.alpha = Partition(n, blocks);
    s.r_alpha = collapse(r, s.alpha.blocks());
    const int k = s.alpha.block_count();
    s.closed_nonempty = k >= 2 && detail::inside_closed_cone(s.r_alpha);
    s.open_nonempty = k >= 3 && detail::strictly_inside_cone(s.r_alpha);
    if (k == 2 && s.closed_nonempty) s.open_nonempty = true;  // a line gon, an isolated point
    s.dim = k >= 3 ? k - 3 : 0;
    rep.strata.push_back(std::move(s));
  });
  std::stable_sort(rep.strata.begin(), rep.strata.end(), [](const Stratum& a, const Stratum& b) {
    return a.alpha.block_count() > b.alpha.block_count();
  });
  for (std::size_t i = 0; i < rep.strata.size(); ++i) {
    const auto& a = rep.strata[i];
    if (!a.closed_nonempty) continue;
    for (std::size_t j = 0; j < rep.strata.size(); ++j) {
      const auto& b = rep.strata[j];
      if (!b.closed_nonempty || b.alpha.block_count() != a.alpha.block_count() + 1) continue;
      if (a.alpha.coarsens(b.alpha)) rep.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Blowup schedule

struct ScheduleStep {
  enum class Kind { Resolution, Center };
  Kind kind = Kind::Center;
  Subset J;                 // canonical wall rep for resolutions; blowup center otherwise
  int codim = 0;            // |J| - 1 for centers
  bool nontrivial = false;  // |J| >= 3; pair centers are rigid-triangle steps
  bool at_line_gon = false; // sum_J r == sum_{J^c} r: Y_J is the line-gon point
  std::optional<Rational> eps;
};

struct Schedule {
  std::vector<ScheduleStep> steps;
  /// Nonempty strata with two or more merged blocks: reached as
  /// intersections of the single-block centers, never blown up directly.
  std::vector<Partition> intersections;
};

inline Schedule schedule(const LengthVector& r, const EpsilonAssignment& eps) {
  if (!r.interior()) throw InvalidArgument("r = " + r.str() + " is not inside the cone");
  const int n = r.size();
  Schedule out;
  for (WallIndex w : ChamberSignature(r).zeros()) {
    ScheduleStep s;
    s.kind = ScheduleStep::Kind::Resolution;
    s.J = w.subset();
    s.at_line_gon = true;
    s.nontrivial = true;
    out.steps.push_back(s);
  }
  auto rel = relevant_subsets(r, 2);
  std::stable_sort(rel.begin(), rel.end(), [](Subset a, Subset b) { return a.size() > b.size(); });
  for (Subset J : rel) {
    ScheduleStep s;
    s.kind = ScheduleStep::Kind::Center;
    s.J = J;
    s.codim = J.size() - 1;
    s.nontrivial = J.size() >= 3;
    s.at_line_gon = sign(wall_margin(r, J)) == 0;
    if (eps.has(J)) {
      eps.validate(r, {J});
      s.eps = eps.at(J);
    }
    out.steps.push_back(s);
  }
  for_each_set_partition(Subset::full(n), [&](const std::vector<Subset>& blocks) {
    Partition p(n, blocks);
    if (p.merged().size() < 2) return;
    auto x = collapse(r, p.blocks());
    if (p.block_count() >= 2 && detail::inside_closed_cone(x)) out.intersections.push_back(p);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Betti numbers of the stable compactification

/// E-polynomial bookkeeping for the stable-polygon space M_{r,eps}.
///
///   E(M_x^0) = E(M_x) - sum over nontrivial alpha with Y_alpha^0 nonempty of E(M_{x_alpha}^0)
///
/// and the compactification is the disjoint union, over laminar families F
/// of subsets (each of size >= 2) admissible for r, of the products of the
/// open moduli of the components: the root with the maximal members of F
/// collapsed, and each bubble (children collapsed, plus its last edge
/// sum_J r - eps_J).
class StableBetti {
 public:
  StableBetti(LengthVector r, EpsilonAssignment eps) : r_(std::move(r)), eps_(std::move(eps)) {
    if (!r_.interior()) throw InvalidArgument("r = " + r_.str() + " is not inside the cone");
    if (on_some_wall(r_))
      throw InvalidArgument("r = " + r_.str() + " lies on a wall: stable Betti numbers are only computed for smooth M_r");
  }

  PoincarePoly compute() {
    const int n = r_.size();
    PoincarePoly total;
    for_each_set_partition(Subset::full(n), [&](const std::vector<Subset>& blocks) {
      auto x = collapse(r_, blocks);
      if (!detail::strictly_inside_cone(x)) return;
      PoincarePoly term = open_e(x);
      for (Subset B : blocks)
        if (B.size() >= 2) term = term * bubble_factor(B);
      total += term;
    });
    return total;
  }

  /// E(M_x) for a smooth closed polygon space.
  PoincarePoly closed_e(std::vector<Rational> x) {
    std::sort(x.begin(), x.end());
    if (auto it = closed_memo_.find(x); it != closed_memo_.end()) return it->second;
    PoincarePoly p = x.size() == 3 ? PoincarePoly::constant(1) : poincare_wall_crossing(LengthVector(x));
    closed_memo_.emplace(x, p);
    return p;
  }

  /// E(M_x^0): polygons with no two edges parallel.
  PoincarePoly open_e(std::vector<Rational> x) {
    std::sort(x.begin(), x.end());
    if (auto it = open_memo_.find(x); it != open_memo_.end()) return it->second;
    PoincarePoly p = closed_e(x);
    const int m = static_cast<int>(x.size());
    if (m > 3) {
      LengthVector lx(x);
      for_each_set_partition(Subset::full(m), [&](const std::vector<Subset>& blocks) {
        const int k = static_cast<int>(blocks.size());
        if (k == m || k < 3) return;
        auto y = collapse(lx, blocks);
        if (detail::strictly_inside_cone(y)) p -= open_e(y);
      });
    }
    open_memo_.emplace(x, p);
    return p;
  }

  /// Sum over all bubble trees hanging below a block B.
  PoincarePoly bubble_factor(Subset B) {
    if (auto it = bubble_memo_.find(B.bits()); it != bubble_memo_.end()) return it->second;
    eps_.validate(r_, {B});
    const Rational last = r_.sum(B) - eps_.at(B);
    PoincarePoly total;
    for_each_set_partition(B, [&](const std::vector<Subset>& blocks) {
      if (blocks.size() < 2) return;
      auto x = collapse(r_, blocks);
      x.push_back(last);
      if (!detail::strictly_inside_cone(x)) return;
      PoincarePoly term = open_e(x);
      for (Subset C : blocks)
        if (C.size() >= 2) term = term * bubble_factor(C);
      total += term;
    });
    bubble_memo_.emplace(B.bits(), total);
    return total;
  }

 private:
  LengthVector r_;
  EpsilonAssignment eps_;
  std::map<std::vector<Rational>, PoincarePoly> closed_memo_;
  std::map<std::vector<Rational>, PoincarePoly> open_memo_;
  std::map<std::uint64_t, PoincarePoly> bubble_memo_;
};

inline PoincarePoly stable_betti(const LengthVector& r, const EpsilonAssignment& eps) {
  return StableBetti(r, eps).compute();
}

}  // namespace polymod
