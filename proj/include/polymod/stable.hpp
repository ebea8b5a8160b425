#pragma once

// Stable polygons: laminar trees of labeled polygons whose non-root nodes
// are bubbles over augmented length vectors. Validation, stabilization of a
// degenerate frame, the forgetful map, bubble limits of degenerating
// families, and the dual tree of the associated stable curve.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "polymod/chambers.hpp"
#include "polymod/combinatorics.hpp"
#include "polymod/errors.hpp"
#include "polymod/realize.hpp"

namespace polymod {

struct StableNode {
  Subset subset;  // global labels; the root carries all of 1..n
  int parent = -1;
  std::vector<int> children;
  EdgeFrame frame;  // a bubble on J has |J|+1 edges: J in label order, then the new last edge
};

class StablePolygon {
 public:
  StablePolygon(EpsilonAssignment eps, EdgeFrame root) : eps_(std::move(eps)) {
    nodes_.push_back({Subset::full(root.n()), -1, {}, std::move(root)});
  }

  /// Appends a bubble on the global label set J below `parent`. Only the
  /// parent id is checked here; validate() owns the structural checks.
  int add_bubble(int parent, Subset J, EdgeFrame frame) {
    if (parent < 0 || parent >= size()) throw StructuralError("no node " + std::to_string(parent));
    const int id = size();
    nodes_.push_back({J, parent, {}, std::move(frame)});
    nodes_[parent].children.push_back(id);
    return id;
  }

  int n() const { return nodes_[0].frame.n(); }
  int size() const { return static_cast<int>(nodes_.size()); }
  const LengthVector& root_r() const { return nodes_[0].frame.r(); }
  const EpsilonAssignment& eps() const { return eps_; }
  const std::vector<StableNode>& nodes() const { return nodes_; }
  const StableNode& node(int id) const { return nodes_.at(id); }
  const EdgeFrame& root() const { return nodes_[0].frame; }

  /// Global label of each local edge of a node; -1 for a bubble's last edge.
  std::vector<int> local_labels(int id) const {
    std::vector<int> out = nodes_.at(id).subset.indices();
    if (id != 0) out.push_back(-1);
    return out;
  }

  /// J (global labels) in the local edge indexing of node `id`.
  Subset local_subset(int id, Subset J) const {
    const auto labels = local_labels(id);
    std::uint64_t bits = 0;
    for (int k = 0; k < static_cast<int>(labels.size()); ++k)
      if (labels[k] >= 0 && J.contains(labels[k])) bits |= 1ULL << k;
    if (Subset(bits).size() != J.size())
      throw StructuralError(J.str() + " is not inside the index set " + nodes_.at(id).subset.str());
    return Subset(bits);
  }

  std::vector<Subset> bubble_subsets() const {
    std::vector<Subset> out;
    for (int i = 1; i < size(); ++i) out.push_back(nodes_[i].subset);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  EpsilonAssignment eps_;
  std::vector<StableNode> nodes_;
};

// ---------------------------------------------------------------------------
// Validation

struct StabilityCheck {
  std::string condition;
  int node = 0;
  bool passed = false;
  double margin = 0.0;
  std::string detail;
};

struct StabilityReport {
  bool valid = true;
  bool strict = false;
  std::vector<StabilityCheck> checks;
  std::vector<StabilityCheck> failures() const {
    std::vector<StabilityCheck> out;
    for (const auto& c : checks)
      if (!c.passed) out.push_back(c);
    return out;
  }
  explicit operator bool() const { return valid; }
};

namespace detail {

inline double min_pairwise_angle(const std::vector<Vec3>& u) {
  double m = M_PI;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j) m = std::min(m, angle_between(u[i], u[j]));
  return m;
}

/// Tree shape and laminarity. Throws StructuralError.
inline void check_structure(const StablePolygon& sp) {
  const auto& nodes = sp.nodes();
  const int n = sp.n();
  if (nodes[0].subset != Subset::full(n)) throw StructuralError("root must carry all labels");
  for (int i = 1; i < sp.size(); ++i) {
    const auto& nd = nodes[i];
    if (nd.parent < 0 || nd.parent >= i) throw StructuralError("node " + std::to_string(i) + " has no earlier parent");
    const auto& sib = nodes[nd.parent].children;
    if (std::count(sib.begin(), sib.end(), i) != 1)
      throw StructuralError("node " + std::to_string(i) + " is not listed once among its parent's children");
    if (nd.subset.size() < 2) throw StructuralError("bubble " + nd.subset.str() + " has fewer than two labels");
    if (!nodes[nd.parent].subset.contains(nd.subset) || nodes[nd.parent].subset == nd.subset)
      throw StructuralError("bubble " + nd.subset.str() + " is not a proper part of " + nodes[nd.parent].subset.str());
  }
  for (int i = 0; i < sp.size(); ++i)
    for (int j = i + 1; j < sp.size(); ++j) {
      Subset a = nodes[i].subset, b = nodes[j].subset;
      if (!(a.contains(b) || b.contains(a) || a.disjoint(b)))
        throw StructuralError("subsets " + a.str() + " and " + b.str() + " are neither nested nor disjoint");
      if (a == b) throw StructuralError("subset " + a.str() + " appears twice");
    }
}

}  // namespace detail

/// Checks every stable-polygon condition and records one line per check.
/// Default mode bubbles exactly the parallel classes of each level; strict
/// mode also demands a component for every J of size >= 2 nested strictly
/// inside a bubble of size >= 3.
inline StabilityReport validate(const StablePolygon& sp, const Tolerances& tol = {}, bool strict = false) {
  detail::check_structure(sp);
  StabilityReport rep;
  rep.strict = strict;
  auto add = [&](std::string cond, int node, bool ok, double margin, std::string detail = {}) {
    rep.checks.push_back({std::move(cond), node, ok, margin, std::move(detail)});
    rep.valid = rep.valid && ok;
  };

  for (int id = 0; id < sp.size(); ++id) {
    const auto& nd = sp.node(id);
    const EdgeFrame& F = nd.frame;
    const int m = static_cast<int>(sp.local_labels(id).size());
    if (F.n() != m) {
      add("lengths", id, false, 0.0, "frame has " + std::to_string(F.n()) + " edges, expected " + std::to_string(m));
      continue;
    }

    if (id != 0) {
      const auto& par = sp.node(nd.parent);
      const Subset local = sp.local_subset(nd.parent, nd.subset);
      const bool relevant = par.frame.n() >= 4 && is_relevant(par.frame.r(), local);
      add("relevant", id, relevant, to_double(wall_margin(par.frame.r(), local)),
          relevant ? "" : nd.subset.str() + " is not relevant in its parent");
      if (relevant) {
        if (!sp.eps().has(nd.subset)) {
          add("lengths", id, false, 0.0, "no epsilon assigned for J = " + nd.subset.str());
        } else {
          try {
            LengthVector want = augment(par.frame.r(), local, sp.eps().at(nd.subset));
            bool ok = want == F.r();
            add("lengths", id, ok, 0.0,
                ok ? "" : "length mismatch at " + nd.subset.str() + ": expected " + want.str() + ", got " + F.r().str());
          } catch (const RangeError& e) {
            add("lengths", id, false, 0.0, e.what());
          }
        }
      }
      // The new last edge of a bubble never degenerates.
      std::vector<Vec3> others(F.u().begin(), F.u().end() - 1);
      double gap = M_PI;
      for (const auto& v : others) gap = std::min(gap, angle_between(v, F.u().back()));
      add("last-edge", id, gap > tol.angle, gap, gap > tol.angle ? "" : "last edge of " + nd.subset.str() + " is in a parallel class");
    }

    add("closed", id, F.closed(tol.close), F.residual(),
        F.closed(tol.close) ? "" : "residual " + std::to_string(F.residual()));

    // Each child is one full parallel class of this node, collapsed in the
    // incidence sense.
    const Partition classes = parallel_classes(F, tol.angle);
    std::vector<Subset> child_local;
    for (int c : nd.children) {
      const Subset local = sp.local_subset(id, sp.node(c).subset);
      child_local.push_back(local);
      double spread = 0;
      const auto idx = local.indices();
      for (int a : idx)
        for (int b : idx) spread = std::max(spread, angle_between(F.u(a), F.u(b)));
      bool is_class = std::find(classes.blocks().begin(), classes.blocks().end(), local) != classes.blocks().end();
      std::string why;
      if (!is_class) why = sp.node(c).subset.str() + " is not a parallel class of node " + std::to_string(id);
      if (is_class && sp.node(c).frame.n() == local.size() + 1 && F.n() >= 4) {
        try {
          auto inc = incidence(F, sp.node(c).frame, local, tol);
          if (!(inc.holds && inc.collapse)) {
            is_class = false;
            why = "diagonal of " + sp.node(c).subset.str() + " does not collapse";
          }
        } catch (const InvalidArgument& e) {
          is_class = false;
          why = e.what();
        }
      }
      add("bubble", c, is_class, spread, why);
    }

    bool covered = true;
    std::string missing;
    for (Subset b : classes.blocks())
      if (b.size() >= 2 && std::find(child_local.begin(), child_local.end(), b) == child_local.end()) {
        covered = false;
        missing += b.str();
      }
    add("classes-bubbled", id, covered, 0.0, covered ? "" : "parallel classes without a bubble (local indices): " + missing);

    if (nd.children.empty()) {
      double sep = detail::min_pairwise_angle(F.u());
      add("leaf-generic", id, classes.is_discrete(), sep, classes.is_discrete() ? "" : "leaf " + nd.subset.str() + " is degenerate");
    }
  }

  if (strict) {
    std::vector<Subset> have = sp.bubble_subsets();
    for (int id = 1; id < sp.size(); ++id) {
      const Subset J = sp.node(id).subset;
      if (J.size() < 3) continue;
      bool ok = true;
      std::string missing;
      for (int k = 2; k < J.size(); ++k)
        for (Subset S : subsets_by_size(J.size(), k, k)) {
          std::uint64_t bits = 0;
          const auto idx = J.indices();
          for (int s : S.indices()) bits |= 1ULL << idx[s];
          if (!std::binary_search(have.begin(), have.end(), Subset(bits))) {
            ok = false;
            if (missing.size() < 200) missing += Subset(bits).str();
          }
        }
      add("nested-components", id, ok, 0.0, ok ? "" : "no component for " + missing);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Stabilization and the forgetful map

/// The unique closed triangle with sides a, b, c in canonical gauge.
inline EdgeFrame rigid_triangle(const LengthVector& r) {
  if (r.size() != 3) throw InvalidArgument("rigid_triangle needs three lengths");
  if (!r.interior()) throw InvalidArgument("lengths " + r.str() + " violate the strict triangle inequality");
  const auto l = r.to_doubles();
  const double a = l[0], b = l[1], c = l[2];
  const double px = (a * a + c * c - b * b) / (2 * a);
  const double py = std::sqrt(std::max(0.0, c * c - px * px));
  const Vec3 P1(a, 0, 0), P2(px, py, 0);
  return EdgeFrame(r, {Vec3::UnitX(), (P2 - P1) / b, -P2 / c});
}

/// Where bubble moduli come from: explicit frames keyed by the global
/// subset, otherwise a closed frame drawn from a seed derived from `seed`
/// and the subset. Pair bubbles are rigid triangles either way.
struct Filler {
  std::uint64_t seed = 0;
  std::map<std::uint64_t, EdgeFrame> frames;
  void set(Subset J, EdgeFrame F) { frames[J.bits()] = std::move(F); }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline EdgeFrame bubble_frame(const LengthVector& r, Subset J, const Filler& filler, const Tolerances& tol) {
  if (r.size() == 3) return rigid_triangle(r);
  if (auto it = filler.frames.find(J.bits()); it != filler.frames.end()) {
    const EdgeFrame& F = it->second;
    if (!(F.r() == r)) throw InvalidArgument("filler frame for " + J.str() + " has lengths " + F.r().str() + ", expected " + r.str());
    if (!F.closed(tol.close)) throw InvalidArgument("filler frame for " + J.str() + " is not closed");
    return canonicalize(F, tol.angle);
  }
  return canonicalize(close(r, {.seed = splitmix64(filler.seed ^ splitmix64(J.bits()))}), tol.angle);
}

inline void grow(StablePolygon& sp, int id, const Filler& filler, const Tolerances& tol, int depth) {
  if (depth > sp.n()) throw std::logic_error("stabilization recursion did not terminate");
  const EdgeFrame F = sp.node(id).frame;
  const auto labels = sp.local_labels(id);
  const Partition classes = parallel_classes(F, tol.angle);
  for (Subset cls : classes.blocks()) {
    if (cls.size() < 2) continue;
    std::uint64_t bits = 0;
    for (int k : cls.indices()) {
      if (labels[k] < 0)
        throw std::logic_error("last edge of bubble " + sp.node(id).subset.str() + " degenerated; lengths are not favorable");
      bits |= 1ULL << labels[k];
    }
    const Subset J(bits);
    const LengthVector child_r = augment(F.r(), cls, sp.eps().at(J));
    const int c = sp.add_bubble(id, J, bubble_frame(child_r, J, filler, tol));
    grow(sp, c, filler, tol, depth + 1);
  }
}

}  // namespace detail

/// Attaches a bubble to every parallel class of size >= 2 and recurses
/// until all leaves are generic. The root frame is stored unchanged.
inline StablePolygon stabilize(const EdgeFrame& E, const EpsilonAssignment& eps, const Filler& filler = {},
                               const Tolerances& tol = {}) {
  if (!E.r().interior()) throw InvalidArgument("r = " + E.r().str() + " is not inside the cone");
  if (!E.closed(tol.close)) throw InvalidArgument("frame is not closed (residual " + std::to_string(E.residual()) + ")");
  StablePolygon sp(eps, E);
  detail::grow(sp, 0, filler, tol, 0);
  return sp;
}

/// Forgets all bubbles.
inline EdgeFrame forget(const StablePolygon& sp) { return sp.root(); }

// ---------------------------------------------------------------------------
// Degenerating families and bubble limits

/// A family over fixed r in which the edges of J come together: frames
/// ordered by increasing |d_J|, the last one exactly degenerate at J.
/// J's edges are spread as normalize(d + t w_j) with t halving each step
/// from t0; the complementary edges are re-closed against the moving
/// diagonal by conformal rebalancing.
inline std::vector<EdgeFrame> degeneration_family(const LengthVector& r, Subset J, std::uint64_t seed, int steps = 8,
                                                  double t0 = 0.5) {
  const int n = r.size();
  check_proper(J, n);
  if (J.size() < 2) throw InvalidArgument("degeneration needs |J| >= 2");
  std::vector<Subset> blocks{J};
  for (int i : J.complement(n).indices()) blocks.push_back(Subset::singleton(i));
  const EdgeFrame end = realize_stratum(r, Partition(n, blocks), seed);

  const auto len = r.to_doubles();
  const auto jdx = J.indices();
  const auto kdx = J.complement(n).indices();
  const Vec3 d = end.u(jdx[0]);
  std::mt19937_64 rng(detail::splitmix64(seed + 1));
  std::vector<Vec3> w;
  for (std::size_t k = 0; k < jdx.size(); ++k) {
    Vec3 v = random_unit_vector(rng);
    w.push_back((v - v.dot(d) * d).normalized());
  }
  std::vector<Vec3> y0;
  for (int k : kdx) y0.push_back(end.u(k));
  y0.push_back(d);

  std::vector<EdgeFrame> out;
  for (int s = 0; s < steps; ++s) {
    const double t = t0 * std::ldexp(1.0, -s);
    std::vector<Vec3> u(n);
    Vec3 sum = Vec3::Zero();
    for (std::size_t k = 0; k < jdx.size(); ++k) {
      u[jdx[k]] = (d + t * w[k]).normalized();
      sum += len[jdx[k]] * u[jdx[k]];
    }
    std::vector<double> wt;
    for (int k : kdx) wt.push_back(len[k]);
    wt.push_back(sum.norm());
    auto y = rebalance(y0, wt, 1e-13);
    const Mat3 R = Eigen::Quaterniond::FromTwoVectors(y.back(), sum.normalized()).toRotationMatrix();
    for (std::size_t k = 0; k < kdx.size(); ++k) u[kdx[k]] = R * y[k];
    out.emplace_back(r, std::move(u));
  }
  out.push_back(end);
  return out;
}

/// The J-bubble of the limit of a degenerating family: the last frame with
/// |d_J| strictly inside the incidence window gives Q_J, transported to last
/// length sum_J r - eps_J. The family must end with at least two in-window
/// frames along which |d_J| strictly increases.
inline EdgeFrame limit(const std::vector<EdgeFrame>& family, Subset J, const Rational& eps_J, const Tolerances& tol = {}) {
  if (family.empty()) throw InvalidArgument("empty family");
  const LengthVector& r = family.front().r();
  for (const auto& E : family)
    if (!(E.r() == r)) throw InvalidArgument("family frames have different lengths");
  const LengthVector target = augment(r, J, eps_J);

  const double lo = to_double(r.sum(J) - 2 * r.min_over(J));
  const double hi = to_double(r.sum(J));
  const int m = static_cast<int>(family.size());
  std::vector<double> l(m);
  std::vector<bool> collapse(m), inside(m);
  for (int t = 0; t < m; ++t) {
    l[t] = diagonal(family[t], J).length;
    collapse[t] = hi - l[t] <= tol.length * hi;
    inside[t] = l[t] > lo && (l[t] <= hi || collapse[t]);
  }
  int first = m;
  while (first > 0 && inside[first - 1]) --first;
  if (first == m) {
    bool ever = std::any_of(inside.begin(), inside.end(), [](bool b) { return b; });
    throw NoLimitError(ever ? "family leaves the incidence window of " + J.str() + " before its end"
                            : "family never enters the incidence window of " + J.str());
  }
  if (m - first < 2) throw NoLimitError("family has a single in-window frame at its end; no approach to collapse");
  for (int t = first + 1; t < m; ++t)
    if (!(l[t] > l[t - 1])) throw NoLimitError("|d_J| does not increase toward sum_J r at the end of the family");
  int pick = -1;
  for (int t = m - 1; t >= first; --t)
    if (!collapse[t]) {
      pick = t;
      break;
    }
  if (pick < 0) throw NoLimitError("every in-window frame is already collapsed");
  return transport(family[pick], J, target[target.size() - 1], tol);
}

// ---------------------------------------------------------------------------
// Dual trees of stable curves

struct SpecialPoint {
  enum class Kind { Leg, Node };
  Kind kind = Kind::Leg;
  int target = 0;  // 0-based edge label for a leg, vertex id for a node
};

struct CurveVertex {
  Subset subset;
  std::vector<int> legs;  // 0-based labels
  std::vector<SpecialPoint> special;
  std::optional<ModuliPoint> marks;  // aligned with `special`
};

struct DualCurve {
  int n = 0;
  std::vector<CurveVertex> vertices;
  std::vector<std::pair<int, int>> edges;  // (parent, child)
  // Set when the root is a line gon: its vertex carries only the two node
  // points of its bubbles and is contracted by stabilized().
  bool unstable_root = false;

  bool is_tree() const {
    const int V = static_cast<int>(vertices.size());
    if (static_cast<int>(edges.size()) != V - 1) return false;
    std::vector<int> parent(V);
    for (int i = 0; i < V; ++i) parent[i] = i;
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (auto [a, b] : edges) {
      int ra = find(a), rb = find(b);
      if (ra == rb) return false;
      parent[ra] = rb;
    }
    return true;
  }

  int min_special() const {
    int m = 1 << 30;
    for (const auto& v : vertices) m = std::min(m, static_cast<int>(v.special.size()));
    return m;
  }
  bool stable() const { return is_tree() && min_special() >= 3; }

  /// Canonical text of the combinatorial type: sorted vertex leg sets with
  /// their valences.
  std::string shape() const {
    std::vector<std::string> parts;
    for (const auto& v : vertices) {
      std::ostringstream os;
      os << v.subset.str() << ":" << v.special.size();
      parts.push_back(os.str());
    }
    std::sort(parts.begin(), parts.end());
    std::string s;
    for (const auto& p : parts) s += p + ";";
    return s;
  }

  /// Contracts an unstable root (two node points) into a single node
  /// joining its two children.
  DualCurve stabilized() const {
    if (!unstable_root) return *this;
    std::vector<int> kids;
    for (auto [a, b] : edges)
      if (a == 0) kids.push_back(b);
    if (kids.size() != 2) throw std::logic_error("unstable root must have exactly two children");
    DualCurve out;
    out.n = n;
    auto remap = [](int v) { return v - 1; };
    for (std::size_t i = 1; i < vertices.size(); ++i) {
      CurveVertex v = vertices[i];
      for (auto& p : v.special)
        if (p.kind == SpecialPoint::Kind::Node)
          p.target = p.target == 0 ? remap(static_cast<int>(i) == kids[0] ? kids[1] : kids[0]) : remap(p.target);
      out.vertices.push_back(std::move(v));
    }
    for (auto [a, b] : edges)
      if (a != 0) out.edges.emplace_back(remap(a), remap(b));
    out.edges.emplace_back(remap(kids[0]), remap(kids[1]));
    return out;
  }
};

/// The dual tree of the stable curve of a valid stable polygon: one vertex
/// per component, whose special points are its non-degenerate edges (legs),
/// one point per bubbled parallel class, and for a bubble its last edge
/// (the node to its parent). Marks are the Moebius-normalized directions.
inline DualCurve to_stable_curve(const StablePolygon& sp, const Tolerances& tol = {}) {
  auto rep = validate(sp, tol);
  if (!rep.valid) {
    auto f = rep.failures().front();
    throw InvalidArgument("refusing an invalid stable polygon: " + f.condition + " at node " + std::to_string(f.node) +
                          (f.detail.empty() ? "" : " (" + f.detail + ")"));
  }
  DualCurve dc;
  dc.n = sp.n();
  for (int id = 0; id < sp.size(); ++id) {
    const auto& nd = sp.node(id);
    const auto labels = sp.local_labels(id);
    CurveVertex v;
    v.subset = nd.subset;
    std::vector<int> owner(labels.size(), -1);
    for (int c : nd.children)
      for (int k : sp.local_subset(id, sp.node(c).subset).indices()) owner[k] = c;
    std::vector<Vec3> dirs;
    std::vector<bool> placed(sp.size(), false);
    for (std::size_t k = 0; k < labels.size(); ++k) {
      if (owner[k] >= 0) {
        if (placed[owner[k]]) continue;
        placed[owner[k]] = true;
        v.special.push_back({SpecialPoint::Kind::Node, owner[k]});
      } else if (labels[k] < 0) {
        v.special.push_back({SpecialPoint::Kind::Node, nd.parent});
      } else {
        v.special.push_back({SpecialPoint::Kind::Leg, labels[k]});
        v.legs.push_back(labels[k]);
      }
      dirs.push_back(nd.frame.u(static_cast<int>(k)));
    }
    if (dirs.size() >= 3) v.marks = moduli_point_of_directions(dirs, tol.angle);
    dc.vertices.push_back(std::move(v));
    for (int c : nd.children) dc.edges.emplace_back(id, c);
  }
  const auto& root = dc.vertices[0];
  dc.unstable_root = root.special.size() == 2 && root.legs.empty() && is_line_gon(sp.root(), tol.angle).value;
  if (!dc.is_tree()) throw std::logic_error("dual graph is not a tree");
  for (std::size_t i = 0; i < dc.vertices.size(); ++i) {
    if (i == 0 && dc.unstable_root) continue;
    if (dc.vertices[i].special.size() < 3)
      throw std::logic_error("vertex " + dc.vertices[i].subset.str() + " has fewer than three special points");
  }
  return dc;
}

/// Same combinatorial type and, vertex by vertex, PGL(2)-equivalent marks.
inline Verdict curves_equivalent(const DualCurve& a, const DualCurve& b, double tol = Tolerances{}.pgl) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (a.shape() != b.shape() || a.vertices.size() != b.vertices.size()) return {false, inf};
  double worst = 0;
  for (std::size_t i = 0; i < a.vertices.size(); ++i) {
    const auto& va = a.vertices[i];
    const auto& vb = b.vertices[i];
    if (va.subset != vb.subset) return {false, inf};
    if (va.marks.has_value() != vb.marks.has_value()) return {false, inf};
    if (!va.marks) continue;
    worst = std::max(worst, pgl2_equivalent(*va.marks, *vb.marks, tol).margin);
  }
  return {worst <= tol, worst};
}

}  // namespace polymod
