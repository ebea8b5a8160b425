#pragma once

// The central chamber as a chart of the Kaehler cone, and the (r, eps)
// parameter cone over it.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "polymod/chambers.hpp"
#include "polymod/errors.hpp"
#include "polymod/rational.hpp"

namespace polymod {

struct CentralMembership {
  bool contains = false;
  std::vector<WallIndex> walls_on;  // canonical walls with margin 0
  std::vector<WallIndex> violated;  // nonzero margins of the wrong sign
  explicit operator bool() const { return contains; }
};

/// Exact test against the sign pattern of the central chamber: the one
/// through (1,...,1) for odd n, the one through `base` (default
/// default_base_point) for even n.
inline CentralMembership central_contains(const LengthVector& r, const std::optional<LengthVector>& base = std::nullopt) {
  const int n = r.size();
  if (n < 5) throw InvalidArgument("the central chamber is defined for n >= 5");
  const LengthVector b = base.value_or(default_base_point(n));
  if (b.size() != n) throw InvalidArgument("base point has the wrong edge count");
  if (on_some_wall(b)) throw InvalidArgument("base point " + b.str() + " lies on a wall");
  CentralMembership out;
  const ChamberSignature sr(r), sb(b);
  for (std::size_t k = 0; k < sr.signs().size(); ++k) {
    const auto& [w, s] = sr.signs()[k];
    if (s == 0) out.walls_on.push_back(w);
    else if (s != sb.signs()[k].second) out.violated.push_back(w);
  }
  out.contains = r.interior() && out.walls_on.empty() && out.violated.empty();
  return out;
}

/// Coordinates of the class [omega_r] in the central-chamber chart: the
/// chart is linear, so the coordinates are r itself.
class ClassCoordinates {
 public:
  explicit ClassCoordinates(std::vector<Rational> c) : c_(std::move(c)) {}
  const std::vector<Rational>& values() const { return c_; }
  int size() const { return static_cast<int>(c_.size()); }
  friend ClassCoordinates operator+(const ClassCoordinates& a, const ClassCoordinates& b) {
    if (a.size() != b.size()) throw InvalidArgument("coordinate size mismatch");
    std::vector<Rational> v(a.c_);
    for (int i = 0; i < a.size(); ++i) v[i] += b.c_[i];
    return ClassCoordinates(std::move(v));
  }
  friend ClassCoordinates operator*(const Rational& s, const ClassCoordinates& a) {
    std::vector<Rational> v(a.c_);
    for (auto& x : v) x *= s;
    return ClassCoordinates(std::move(v));
  }
  friend bool operator==(const ClassCoordinates&, const ClassCoordinates&) = default;

 private:
  std::vector<Rational> c_;
};

inline ClassCoordinates theta(const LengthVector& r, const std::optional<LengthVector>& base = std::nullopt) {
  if (!central_contains(r, base)) throw InvalidArgument("theta is only defined on the central chamber; r = " + r.str());
  return ClassCoordinates(r.values());
}

/// Distance-like margin to the nearest wall or cone facet, relative to the
/// perimeter.
struct WallMargin {
  Subset J;
  Rational margin;
};

inline WallMargin nearest_wall(const LengthVector& r) {
  const int n = r.size();
  const Rational L = r.perimeter();
  std::optional<WallMargin> best;
  for (Subset J : subsets_by_size(n, 1, n - 1)) {
    if (J.contains(n - 1)) continue;
    Rational m = abs(wall_margin(r, J)) / L;
    if (!best || m < best->margin) best = WallMargin{J, m};
  }
  return *best;
}

// ---------------------------------------------------------------------------
// Parameter cone

struct ParamPoint {
  LengthVector r;
  EpsilonAssignment eps;  // one entry per J in R_{>2}(r)
};

inline std::int64_t param_dim(int n) {
  if (n < 3 || n > 62) throw InvalidArgument("param_dim needs 3 <= n <= 62");
  return (std::int64_t{1} << (n - 1)) - (static_cast<std::int64_t>(n) * n - n + 2) / 2;
}

inline bool param_contains(const ParamPoint& p, const std::optional<LengthVector>& base = std::nullopt) {
  if (!central_contains(p.r, base)) return false;
  for (Subset J : relevant_subsets(p.r, 3)) {
    if (!p.eps.has(J)) return false;
    const Rational& e = p.eps.at(J);
    if (!(sign(e) > 0 && e < 2 * p.r.min_over(J))) return false;
  }
  return true;
}

/// r is the base point moved by at most a quarter of its wall clearance and
/// rescaled by a factor in [1/2, 2]; each eps_J is uniform on a fine grid of
/// (0, 2 min_J r).
inline ParamPoint param_sample(int n, std::uint64_t seed, const std::optional<LengthVector>& base = std::nullopt) {
  if (n < 5) throw InvalidArgument("the parameter cone is defined for n >= 5");
  const LengthVector b = base.value_or(default_base_point(n));
  std::mt19937_64 rng(seed);
  constexpr std::int64_t grid = 1000000;
  std::uniform_int_distribution<std::int64_t> pm(-grid, grid), unit(1, grid - 1), scale(grid / 2, 2 * grid);

  const Rational clearance = nearest_wall(b).margin * b.perimeter();
  const Rational h = clearance / (4 * n);
  std::vector<Rational> r;
  const Rational lambda(scale(rng), grid);
  for (int i = 0; i < n; ++i) r.push_back(lambda * (b[i] + h * Rational(pm(rng), grid)));
  ParamPoint p{LengthVector(std::move(r)), {}};
  if (!central_contains(p.r, b)) throw std::logic_error("sampled r left the central chamber");
  for (Subset J : relevant_subsets(p.r, 3)) p.eps.set(J, 2 * p.r.min_over(J) * Rational(unit(rng), grid));
  return p;
}

}  // namespace polymod
