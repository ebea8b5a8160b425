#pragma once

// Floating-point realizations of polygons: unit edge directions u_i with
// sum r_i u_i = 0, modulo rotations. Closure by projected gradient on the
// product of spheres, gauge fixing, diagonals, parallel classes, marked
// points on P^1 modulo PGL(2), and conformal rebalancing, which moves a
// configuration between length vectors of one chamber without changing its
// PGL(2) orbit.

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "polymod/chambers.hpp"
#include "polymod/combinatorics.hpp"
#include "polymod/errors.hpp"

namespace polymod {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

struct Tolerances {
  double close = 1e-10;  // |sum r_i u_i| for a frame to count as closed
  double angle = 1e-8;   // radians; parallel-class and distinct-direction tests
  double pgl = 1e-8;     // chordal distance for PGL(2) equivalence
  // Relative slack on |d_J| = sum_J r_j. Edges spread by an angle a lose
  // about r a^2 / 8 of diagonal length, so an angle tolerance of 1e-8 sits
  // far below binary64 resolution on the length side; the two tests agree
  // for exact constructions and for spreads above ~1e-5 rad.
  double length = 1e-12;
};

/// A boolean geometric predicate together with the quantity it thresholded.
struct Verdict {
  bool value = false;
  double margin = 0.0;
  explicit operator bool() const { return value; }
};

inline double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

/// A realized polygon: exact lengths, unit directions, closure residual.
class EdgeFrame {
 public:
  EdgeFrame() = default;
  EdgeFrame(LengthVector r, std::vector<Vec3> u) : r_(std::move(r)), u_(std::move(u)) {
    if (static_cast<int>(u_.size()) != r_.size()) throw InvalidArgument("frame needs one direction per edge");
    len_ = r_.to_doubles();
    for (auto& v : u_) {
      double nv = v.norm();
      if (!(nv > 0) || !std::isfinite(nv)) throw InvalidArgument("edge direction must be a nonzero finite vector");
      v /= nv;
    }
    residual_ = closing_vector().norm();
  }

  int n() const { return r_.size(); }
  const LengthVector& r() const { return r_; }
  const std::vector<double>& lengths() const { return len_; }
  const std::vector<Vec3>& u() const { return u_; }
  const Vec3& u(int i) const { return u_[i]; }
  Vec3 edge(int i) const { return len_[i] * u_[i]; }
  double residual() const { return residual_; }
  bool closed(double tol = Tolerances{}.close) const { return residual_ <= tol; }

  Vec3 closing_vector() const {
    Vec3 v = Vec3::Zero();
    for (int i = 0; i < n(); ++i) v += len_[i] * u_[i];
    return v;
  }

  EdgeFrame rotated(const Mat3& R) const {
    std::vector<Vec3> w;
    w.reserve(u_.size());
    for (const auto& v : u_) w.push_back(R * v);
    return EdgeFrame(r_, std::move(w));
  }

 private:
  LengthVector r_;
  std::vector<double> len_;
  std::vector<Vec3> u_;
  double residual_ = 0.0;
};

inline Vec3 random_unit_vector(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    Vec3 v(g(rng), g(rng), g(rng));
    double nv = v.norm();
    if (nv > 1e-12) return v / nv;
  }
}

inline Mat3 random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::Quaterniond q(g(rng), g(rng), g(rng), g(rng));
  q.normalize();
  return q.toRotationMatrix();
}

// ---------------------------------------------------------------------------
// Closure

/// f(u) = |sum r_i u_i|^2
inline double closure_objective(const std::vector<double>& r, const std::vector<Vec3>& u) {
  Vec3 v = Vec3::Zero();
  for (std::size_t i = 0; i < r.size(); ++i) v += r[i] * u[i];
  return v.squaredNorm();
}

/// Ambient (Euclidean) gradient of f: df/du_i = 2 r_i v.
inline std::vector<Vec3> closure_gradient(const std::vector<double>& r, const std::vector<Vec3>& u) {
  Vec3 v = Vec3::Zero();
  for (std::size_t i = 0; i < r.size(); ++i) v += r[i] * u[i];
  std::vector<Vec3> g;
  for (std::size_t i = 0; i < r.size(); ++i) g.push_back(2.0 * r[i] * v);
  return g;
}

/// Riemannian gradient on (S^2)^n: tangential part of the ambient gradient.
inline std::vector<Vec3> closure_riemannian_gradient(const std::vector<double>& r, const std::vector<Vec3>& u) {
  auto g = closure_gradient(r, u);
  for (std::size_t i = 0; i < u.size(); ++i) g[i] -= g[i].dot(u[i]) * u[i];
  return g;
}

struct CloseOptions {
  std::uint64_t seed = 0;
  std::optional<std::vector<Vec3>> hints;  // starting directions; seed unused if given
  double tol = Tolerances{}.close;
  int max_iter = 100000;
};

struct CloseStats {
  int iterations = 0;
  double residual = 0.0;
};

/// A closed frame for r, found by projected gradient descent of
/// |sum r_i u_i|^2 on (S^2)^n:
/// u_i <- normalize(u_i - eta r_i v), v = sum r_j u_j,
/// with eta from Barzilai-Borwein and backtracking. Deterministic given the
/// seed (or the hints).
inline EdgeFrame close(const LengthVector& r, const CloseOptions& opt = {}, CloseStats* stats = nullptr) {
  if (!r.interior()) throw InvalidArgument("r = " + r.str() + " is on or outside the cone boundary; no closed generic polygon");
  const int n = r.size();
  const auto len = r.to_doubles();
  std::mt19937_64 rng(opt.seed);
  std::vector<Vec3> u;
  if (opt.hints) {
    if (static_cast<int>(opt.hints->size()) != n) throw InvalidArgument("need one direction hint per edge");
    for (const auto& h : *opt.hints) {
      if (!(h.norm() > 0)) throw InvalidArgument("direction hint must be nonzero");
      u.push_back(h.normalized());
    }
  } else {
    for (int i = 0; i < n; ++i) u.push_back(random_unit_vector(rng));
  }

  double sum_sq = 0;
  for (double x : len) sum_sq += x * x;
  // Step sizes: Barzilai-Borwein guess from the last two iterates, accepted
  // under a nonmonotone Armijo test against the worst of the recent values.
  double eta = 1.0 / sum_sq;
  const double eta_min = 1e-12 / sum_sq;
  const double eta_max = 1e6 / sum_sq;
  constexpr int kMemory = 8;
  std::vector<double> recent;
  std::vector<Vec3> trial(n), grad(n), prev_u, prev_grad;

  auto riemannian = [&](const std::vector<Vec3>& pts, const Vec3& v, std::vector<Vec3>& g) {
    double g2 = 0;
    for (int i = 0; i < n; ++i) {
      g[i] = len[i] * (v - v.dot(pts[i]) * pts[i]);
      g2 += g[i].squaredNorm();
    }
    return g2;
  };

  Vec3 v = Vec3::Zero();
  for (int i = 0; i < n; ++i) v += len[i] * u[i];
  int it = 0;
  for (; it < opt.max_iter; ++it) {
    const double f = v.squaredNorm();
    if (std::sqrt(f) <= opt.tol) break;
    const double g2 = riemannian(u, v, grad);
    if (g2 <= 1e-24 * f) {
      // Critical point with v != 0: every edge is parallel to v (a line
      // configuration). Kick off it.
      for (int i = 0; i < n; ++i) u[i] = (u[i] + 1e-3 * random_unit_vector(rng)).normalized();
      v.setZero();
      for (int i = 0; i < n; ++i) v += len[i] * u[i];
      prev_u.clear();
      continue;
    }
    if (!prev_u.empty()) {
      double ss = 0, sy = 0;
      for (int i = 0; i < n; ++i) {
        Vec3 si = u[i] - prev_u[i];
        Vec3 yi = grad[i] - prev_grad[i];
        ss += si.squaredNorm();
        sy += si.dot(yi);
      }
      if (sy > 0) eta = std::clamp(ss / sy, eta_min, eta_max);
    }
    recent.push_back(f);
    if (static_cast<int>(recent.size()) > kMemory) recent.erase(recent.begin());
    const double f_ref = *std::max_element(recent.begin(), recent.end());

    bool accepted = false;
    while (eta >= eta_min) {
      Vec3 w = Vec3::Zero();
      for (int i = 0; i < n; ++i) {
        trial[i] = (u[i] - eta * len[i] * v).normalized();
        w += len[i] * trial[i];
      }
      if (w.squaredNorm() <= f_ref - 1e-4 * eta * 2.0 * g2) {
        prev_u = u;
        prev_grad = grad;
        u.swap(trial);
        v = w;
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) break;
  }
  EdgeFrame out(r, u);
  if (stats) *stats = {it, out.residual()};
  if (out.residual() > opt.tol)
    throw ConvergenceError("closure did not converge for r = " + r.str() + ", residual " + std::to_string(out.residual()),
                           out.residual());
  return out;
}

// ---------------------------------------------------------------------------
// Gauge, diagonals, parallel classes

/// Fixes the rotation gauge: u_1 -> (1,0,0), and the first direction not
/// (anti-)parallel to u_1 into the z = 0 plane with positive y. Line gons
/// only get the first rotation.
inline EdgeFrame canonicalize(const EdgeFrame& E, double angle_tol = Tolerances{}.angle) {
  const Vec3 e1 = E.u(0);
  for (int k = 1; k < E.n(); ++k) {
    double a = angle_between(e1, E.u(k));
    if (a > angle_tol && a < M_PI - angle_tol) {
      Vec3 e2 = (E.u(k) - E.u(k).dot(e1) * e1).normalized();
      Vec3 e3 = e1.cross(e2);
      Mat3 R;
      R.row(0) = e1.transpose();
      R.row(1) = e2.transpose();
      R.row(2) = e3.transpose();
      return E.rotated(R);
    }
  }
  Mat3 R = Eigen::Quaterniond::FromTwoVectors(e1, Vec3::UnitX()).toRotationMatrix();
  return E.rotated(R);
}

struct Diagonal {
  Vec3 vec;
  double length = 0.0;
};

/// d_J = -(sum_{j in J} r_j u_j), the closing side of the sub-polygon on J.
inline Diagonal diagonal(const EdgeFrame& E, Subset J) {
  check_proper(J, E.n());
  Vec3 d = Vec3::Zero();
  for (int j : J.indices()) d -= E.edge(j);
  return {d, d.norm()};
}

/// Groups i, j when angle(u_i, u_j) <= tol, closed transitively.
/// Anti-parallel edges are not grouped.
inline Partition parallel_classes(const EdgeFrame& E, double tol = Tolerances{}.angle) {
  const int n = E.n();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (angle_between(E.u(i), E.u(j)) <= tol) parent[find(i)] = find(j);
  std::vector<std::uint64_t> bits(n, 0);
  for (int i = 0; i < n; ++i) bits[find(i)] |= 1ULL << i;
  std::vector<Subset> blocks;
  for (auto b : bits)
    if (b) blocks.emplace_back(b);
  return Partition(n, std::move(blocks));
}

/// All edges on one line through the origin. Margin: worst angular
/// deviation from +-u_1.
inline Verdict is_line_gon(const EdgeFrame& E, double tol = Tolerances{}.angle) {
  double worst = 0;
  for (int i = 1; i < E.n(); ++i) {
    double a = angle_between(E.u(0), E.u(i));
    worst = std::max(worst, std::min(a, M_PI - a));
  }
  return {worst <= tol, worst};
}

/// The line gon of r degenerate at {J, J^c}: J along +x, J^c along -x.
inline EdgeFrame line_gon(const LengthVector& r, Subset J) {
  if (sign(wall_margin(r, J)) != 0) throw InvalidArgument("r = " + r.str() + " is not on the wall of " + J.str());
  std::vector<Vec3> u;
  for (int i = 0; i < r.size(); ++i) u.push_back(J.contains(i) ? Vec3::UnitX() : Vec3(-Vec3::UnitX()));
  return EdgeFrame(r, std::move(u));
}

/// A closed frame in the open stratum of alpha: edges within a block share
/// one direction, distinct blocks get the directions of a closed generic
/// polygon over r_alpha.
inline EdgeFrame realize_stratum(const LengthVector& r, const Partition& alpha, std::uint64_t seed) {
  if (alpha.n() != r.size()) throw InvalidArgument("partition size does not match r");
  std::vector<Rational> x;
  for (Subset b : alpha.blocks()) x.push_back(r.sum(b));
  if (x.size() < 3) throw InvalidArgument("stratum " + alpha.str() + " has fewer than three directions");
  LengthVector rx(x);
  if (!rx.interior()) throw InvalidArgument("stratum " + alpha.str() + " is empty for r = " + r.str());
  EdgeFrame base = close(rx, {.seed = seed});
  std::vector<Vec3> u(r.size());
  for (int b = 0; b < alpha.block_count(); ++b)
    for (int i : alpha.blocks()[b].indices()) u[i] = base.u(b);
  return EdgeFrame(r, std::move(u));
}

// ---------------------------------------------------------------------------
// Marked points on P^1 = S^2 and PGL(2)

/// Homogeneous point [z0 : z1] of the Riemann sphere, unit-normalized.
struct SpherePoint {
  std::complex<double> z0{0.0, 0.0};
  std::complex<double> z1{1.0, 0.0};

  static SpherePoint make(std::complex<double> a, std::complex<double> b) {
    double nrm = std::sqrt(std::norm(a) + std::norm(b));
    return {a / nrm, b / nrm};
  }
  bool is_infinity(double tol = 1e-12) const { return std::abs(z1) <= tol * std::abs(z0); }
  std::complex<double> value() const { return z0 / z1; }
};

/// Half the chord between two points of the unit sphere, in homogeneous form.
inline double chordal(const SpherePoint& p, const SpherePoint& q) {
  return std::abs(p.z0 * q.z1 - p.z1 * q.z0);
}

/// Stereographic projection from (0,0,1).
inline SpherePoint stereographic(const Vec3& u) {
  const std::complex<double> w(u.x(), u.y());
  if (u.z() <= 0) return SpherePoint::make(w, 1.0 - u.z());
  return SpherePoint::make(1.0 + u.z(), std::conj(w));
}

namespace detail {
inline std::complex<double> bracket(const SpherePoint& p, const SpherePoint& q) { return p.z0 * q.z1 - p.z1 * q.z0; }

/// Moebius map sending a, b, c to 0, 1, infinity:
/// z -> [z,a][b,c] : [z,c][b,a].
inline std::vector<SpherePoint> normalize_to(const std::vector<SpherePoint>& pts, const std::array<int, 3>& anchors) {
  const auto& a = pts[anchors[0]];
  const auto& b = pts[anchors[1]];
  const auto& c = pts[anchors[2]];
  const auto bc = bracket(b, c);
  const auto ba = bracket(b, a);
  std::vector<SpherePoint> out;
  for (const auto& z : pts) out.push_back(SpherePoint::make(bracket(z, a) * bc, bracket(z, c) * ba));
  out[anchors[0]] = {0.0, 1.0};
  out[anchors[1]] = SpherePoint::make(1.0, 1.0);
  out[anchors[2]] = {1.0, 0.0};
  return out;
}
}  // namespace detail

/// n marked points on P^1 in the normal form where the first three
/// pairwise-distinct directions sit at 0, 1, infinity.
class ModuliPoint {
 public:
  ModuliPoint(std::vector<SpherePoint> pts, std::array<int, 3> anchors)
      : pts_(detail::normalize_to(pts, anchors)), anchors_(anchors) {}

  int size() const { return static_cast<int>(pts_.size()); }
  const std::vector<SpherePoint>& points() const { return pts_; }
  const std::array<int, 3>& anchors() const { return anchors_; }

  /// The same configuration normalized on other anchors; nullopt if those
  /// points are not pairwise distinct.
  std::optional<ModuliPoint> reanchored(const std::array<int, 3>& anchors, double tol = 1e-12) const {
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (chordal(pts_[anchors[i]], pts_[anchors[j]]) <= tol) return std::nullopt;
    return ModuliPoint(pts_, anchors);
  }

 private:
  std::vector<SpherePoint> pts_;
  std::array<int, 3> anchors_;
};

/// First three pairwise non-parallel directions, or nullopt.
inline std::optional<std::array<int, 3>> distinct_anchors(const std::vector<Vec3>& u, double angle_tol) {
  std::vector<int> chosen;
  for (int i = 0; i < static_cast<int>(u.size()) && chosen.size() < 3; ++i) {
    bool fresh = true;
    for (int c : chosen)
      if (angle_between(u[c], u[i]) <= angle_tol) fresh = false;
    if (fresh) chosen.push_back(i);
  }
  if (chosen.size() < 3) return std::nullopt;
  return std::array<int, 3>{chosen[0], chosen[1], chosen[2]};
}

/// Marked points from directions: stereographic images, Moebius-normalized.
inline ModuliPoint moduli_point_of_directions(const std::vector<Vec3>& u, double angle_tol = Tolerances{}.angle) {
  auto anchors = distinct_anchors(u, angle_tol);
  if (!anchors) throw NoModuliError("fewer than three distinct edge directions (line gon): no point of M_{0,n}");
  std::vector<SpherePoint> pts;
  for (const auto& v : u) pts.push_back(stereographic(v));
  return ModuliPoint(std::move(pts), *anchors);
}

inline ModuliPoint moduli_point(const EdgeFrame& E, double angle_tol = Tolerances{}.angle) {
  return moduli_point_of_directions(canonicalize(E, angle_tol).u(), angle_tol);
}

/// Equal as ordered tuples modulo PGL(2): b is renormalized on a's anchors
/// and compared pointwise. Margin: largest chordal discrepancy.
inline Verdict pgl2_equivalent(const ModuliPoint& a, const ModuliPoint& b, double tol = Tolerances{}.pgl) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (a.size() != b.size()) return {false, inf};
  auto bb = b.reanchored(a.anchors());
  if (!bb) return {false, inf};
  double worst = 0;
  for (int i = 0; i < a.size(); ++i) worst = std::max(worst, chordal(a.points()[i], bb->points()[i]));
  return {worst <= tol, worst};
}

// ---------------------------------------------------------------------------
// Conformal rebalancing

/// Moebius transformation of the unit ball sending a to 0, applied to a
/// point x of the unit sphere.
inline Vec3 ball_mobius(const Vec3& a, const Vec3& x) {
  Vec3 d = x - a;
  return ((1.0 - a.squaredNorm()) / d.squaredNorm()) * d - a;
}

/// Moves the points x_i by one Moebius transformation g so that
/// sum w_i g(x_i) = 0 (the weighted conformal barycenter). Damped Newton on
/// the translation parameter a of the ball model: near a = 0,
/// F(a) ~ F(0) - 2 M a with M = sum w_i (I - x_i x_i^T).
/// Requires every cluster of coinciding points to weigh less than half.
inline std::vector<Vec3> rebalance(std::vector<Vec3> y, const std::vector<double>& w, double tol = Tolerances{}.close,
                                   int max_iter = 500) {
  auto force = [&](const std::vector<Vec3>& pts) {
    Vec3 F = Vec3::Zero();
    for (std::size_t i = 0; i < pts.size(); ++i) F += w[i] * pts[i];
    return F;
  };
  Vec3 F = force(y);
  for (int it = 0; it < max_iter; ++it) {
    if (F.norm() <= tol) return y;
    Mat3 M = Mat3::Zero();
    for (std::size_t i = 0; i < y.size(); ++i) M += w[i] * (Mat3::Identity() - y[i] * y[i].transpose());
    Eigen::FullPivLU<Mat3> lu(M);
    if (lu.rank() < 3) throw ConvergenceError("rebalancing: points are collinear", F.norm());
    Vec3 a = 0.5 * lu.solve(F);
    if (a.norm() > 0.5) a *= 0.5 / a.norm();
    bool improved = false;
    for (int half = 0; half < 60; ++half) {
      std::vector<Vec3> trial;
      trial.reserve(y.size());
      for (const auto& p : y) trial.push_back(ball_mobius(a, p).normalized());
      Vec3 Ft = force(trial);
      if (Ft.norm() < F.norm()) {
        y = std::move(trial);
        F = Ft;
        improved = true;
        break;
      }
      a *= 0.5;
    }
    if (!improved) break;
  }
  if (F.norm() <= tol) return y;
  throw ConvergenceError("rebalancing did not converge (unstable weights?)", F.norm());
}

/// Sub-polygon Q_J of E: the edges in J followed by the diagonal d_J as its
/// last edge. Its last length is the exact value of the binary64 |d_J|.
inline EdgeFrame sub_polygon(const EdgeFrame& E, Subset J) {
  auto d = diagonal(E, J);
  if (!(d.length > 0)) throw InvalidArgument("diagonal d_" + J.str() + " vanishes");
  std::vector<Rational> len;
  std::vector<Vec3> u;
  for (int j : J.indices()) {
    len.push_back(E.r()[j]);
    u.push_back(E.u(j));
  }
  len.push_back(rational_from_double(d.length));
  u.push_back(d.vec / d.length);
  return EdgeFrame(LengthVector(std::move(len)), std::move(u));
}

/// The canonical isomorphism between level sets of the last side length:
/// same marked points on P^1, last length replaced. Source and target must
/// be in one chamber; a target equal to the sum of the other sides is the
/// total collapse to the line gon.
inline EdgeFrame transport(const EdgeFrame& E, const Rational& new_last_length,
                           const Tolerances& tol = {}) {
  const int n = E.n();
  if (sign(new_last_length) <= 0) throw InvalidArgument("new last length must be positive");
  LengthVector target = E.r().with_last(new_last_length);
  const Rational others = E.r().perimeter() - E.r()[n - 1];
  if (new_last_length == others) {
    std::vector<Vec3> u(n, Vec3::UnitX());
    u[n - 1] = -Vec3::UnitX();
    return EdgeFrame(target, std::move(u));
  }
  if (!target.interior()) throw InvalidArgument("target lengths " + target.str() + " are not inside the cone");
  if (!E.closed(tol.close)) throw InvalidArgument("transport needs a closed frame");
  if (!same_chamber(E.r(), target))
    throw InvalidArgument("chamber mismatch: " + E.r().str() + " and " + target.str() + " are separated by a wall");
  auto y = rebalance(E.u(), target.to_doubles(), tol.close);
  return canonicalize(EdgeFrame(target, std::move(y)), tol.angle);
}

/// transport applied to the sub-polygon Q_J.
inline EdgeFrame transport(const EdgeFrame& E, Subset J, const Rational& new_last_length, const Tolerances& tol = {}) {
  return transport(sub_polygon(E, J), new_last_length, tol);
}

// ---------------------------------------------------------------------------
// Incidence

struct IncidenceResult {
  bool holds = false;
  bool in_window = false;
  bool collapse = false;
  double diagonal_length = 0.0;
  double window_lo = 0.0;  // exclusive
  double window_hi = 0.0;  // inclusive
  double moduli_distance = 0.0;
  explicit operator bool() const { return holds; }
};

/// Whether a bubble candidate Q over r_{J,eps} matches P along J: |d_J(P)|
/// lies in (sum_J r - 2 min_J r, sum_J r] and either P collapses at J or
/// Q_J(P) and Q are the same point modulo PGL(2).
inline IncidenceResult incidence(const EdgeFrame& P, const EdgeFrame& Q, Subset J, const Tolerances& tol = {}) {
  const int n = P.n();
  check_proper(J, n);
  if (J.size() < 2 || J.size() > n - 2) throw InvalidArgument("incidence needs 2 <= |J| <= n-2, got " + J.str());
  if (Q.n() != J.size() + 1) throw InvalidArgument("bubble frame must have |J|+1 edges");
  const auto idx = J.indices();
  for (int k = 0; k < J.size(); ++k)
    if (Q.r()[k] != P.r()[idx[k]]) throw InvalidArgument("bubble lengths do not restrict to r_J");
  const Rational sumJ = P.r().sum(J);
  const Rational lo = sumJ - 2 * P.r().min_over(J);
  const Rational& last = Q.r()[J.size()];
  if (!(lo < last && last < sumJ)) throw InvalidArgument("bubble last length " + to_string(last) + " is not sum_J r - eps with legal eps");

  IncidenceResult res;
  res.window_lo = to_double(lo);
  res.window_hi = to_double(sumJ);
  res.diagonal_length = diagonal(P, J).length;
  res.collapse = res.window_hi - res.diagonal_length <= tol.length * res.window_hi;
  res.in_window = res.diagonal_length > res.window_lo && (res.diagonal_length <= res.window_hi || res.collapse);
  if (!res.in_window) return res;
  if (res.collapse) {
    res.holds = true;
    return res;
  }
  auto v = pgl2_equivalent(moduli_point(sub_polygon(P, J), tol.angle), moduli_point(Q, tol.angle), tol.pgl);
  res.moduli_distance = v.margin;
  res.holds = v.value;
  return res;
}

}  // namespace polymod
