#pragma once

// Independent reference computations for the test suite. Nothing here calls
// into the library's algorithms; inputs are plain integers, doubles or
// polymod value types only.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "polymod/chambers.hpp"

namespace oracle {

using Poly = std::vector<std::int64_t>;  // ascending powers of q = t^2

inline Poly trim(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}
inline Poly add(Poly a, const Poly& b) {
  if (b.size() > a.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return trim(a);
}
inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return trim(c);
}
inline std::int64_t choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Center polynomial in its geometric-series form:
/// sum_{k=0}^{floor((n-3)/2)} C(n-1,k) q^k (1 + q + ... + q^{n-3-2k}).
/// Odd n: P_t of the central chamber; even n: IP_t at the ray.
inline Poly center_series_form(int n) {
  Poly p;
  for (int k = 0; 2 * k <= n - 3; ++k) {
    Poly term(n - 2 - k, 0);
    for (int j = 0; j <= n - 3 - 2 * k; ++j) term[k + j] = choose(n - 1, k);
    p = add(p, term);
  }
  return p;
}

/// Betti numbers of a generic polygon space by counting short subsets that
/// contain the last edge: with a_i = #{J short, n in J, |J| = i+1},
/// b_{2k} = sum_{i<=k} (a_i - a_{n-2-i}).
inline Poly short_subset_poincare(const polymod::LengthVector& r) {
  const int n = r.size();
  std::vector<std::int64_t> a(n + 1, 0);
  const polymod::Rational L = r.perimeter();
  for (std::uint64_t b = 0; b < (1ULL << (n - 1)); ++b) {
    polymod::Rational s = r[n - 1];
    int size = 1;
    for (int i = 0; i < n - 1; ++i)
      if ((b >> i) & 1) {
        s += r[i];
        ++size;
      }
    if (2 * s < L) ++a[size - 1];
  }
  auto at = [&](int i) { return i >= 0 && i <= n ? a[i] : std::int64_t{0}; };
  Poly p;
  std::int64_t acc = 0;
  for (int k = 0; k <= n - 3; ++k) {
    acc += at(k) - at(n - 2 - k);
    p.push_back(acc);
  }
  return trim(p);
}

/// Poincare polynomial of the moduli space of stable n-pointed genus-zero
/// curves by Keel's recursion:
/// P_{m+1} = (1+q) P_m + (q/2) sum_{j=2}^{m-2} C(m,j) P_{j+1} P_{m-j+1}, P_3 = 1.
inline Poly keel_poincare(int n) {
  std::vector<Poly> P(n + 1);
  P[3] = {1};
  for (int m = 3; m < n; ++m) {
    Poly next = mul({1, 1}, P[m]);
    Poly sum;
    for (int j = 2; j <= m - 2; ++j) {
      Poly t = mul(P[j + 1], P[m - j + 1]);
      for (auto& c : t) c *= choose(m, j);
      sum = add(sum, t);
    }
    for (auto& c : sum) c /= 2;
    sum.insert(sum.begin(), 0);
    P[m + 1] = add(next, sum);
  }
  return P[n];
}

/// f(u) = |sum r_i u_i|^2 and its Euclidean gradient by central differences.
inline std::vector<Eigen::Vector3d> numeric_gradient(const std::vector<double>& r, std::vector<Eigen::Vector3d> u,
                                                    double h = 1e-6) {
  auto f = [&](const std::vector<Eigen::Vector3d>& x) {
    Eigen::Vector3d v = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < x.size(); ++i) v += r[i] * x[i];
    return v.squaredNorm();
  };
  std::vector<Eigen::Vector3d> g(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (int c = 0; c < 3; ++c) {
      const double keep = u[i][c];
      u[i][c] = keep + h;
      const double fp = f(u);
      u[i][c] = keep - h;
      const double fm = f(u);
      u[i][c] = keep;
      g[i][c] = (fp - fm) / (2 * h);
    }
  return g;
}

/// Cross-ratio of four points of the unit sphere through stereographic
/// projection from the south pole (a different chart from the library's).
inline std::complex<double> cross_ratio(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c,
                                        const Eigen::Vector3d& d) {
  auto z = [](const Eigen::Vector3d& p) { return std::complex<double>(p.x(), p.y()) / (1.0 + p.z()); };
  const auto za = z(a), zb = z(b), zc = z(c), zd = z(d);
  return ((za - zc) * (zb - zd)) / ((za - zd) * (zb - zc));
}

/// Largest discrepancy over all 4-tuples of consecutive-index cross-ratios,
/// comparing two direction lists of the same length.
inline double cross_ratio_gap(const std::vector<Eigen::Vector3d>& u, const std::vector<Eigen::Vector3d>& w) {
  double worst = 0;
  const int n = static_cast<int>(u.size());
  for (int i = 0; i + 3 < n + 3; ++i) {
    int a = i % n, b = (i + 1) % n, c = (i + 2) % n, d = (i + 3) % n;
    auto x = cross_ratio(u[a], u[b], u[c], u[d]);
    auto y = cross_ratio(w[a], w[b], w[c], w[d]);
    worst = std::max(worst, std::abs(x - y) / (1.0 + std::abs(x)));
  }
  return worst;
}

/// Random positive rational length vector in the open cone and off every
/// wall, with entries k/den, k in [1, top].
inline polymod::LengthVector random_generic_r(int n, std::mt19937_64& rng, int top = 40, int den = 7) {
  std::uniform_int_distribution<int> pick(1, top);
  for (;;) {
    std::vector<polymod::Rational> v;
    for (int i = 0; i < n; ++i) v.emplace_back(pick(rng), den);
    polymod::LengthVector r(v);
    if (!r.interior()) continue;
    bool wall = false;
    const auto L = r.perimeter();
    for (std::uint64_t b = 1; b + 1 < (1ULL << n) && !wall; ++b) {
      polymod::Rational s = 0;
      for (int i = 0; i < n; ++i)
        if ((b >> i) & 1) s += r[i];
      if (2 * s == L) wall = true;
    }
    if (!wall) return r;
  }
}

}  // namespace oracle
