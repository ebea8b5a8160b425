// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "polymod/polymod.hpp"

using namespace polymod;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string str(const std::vector<std::int64_t>& c) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << "]";
  return os.str();
}

struct Outcome {
  bool pass = true;
  std::string note;
  void fail(const std::string& why) {
    if (pass) note = why;
    pass = false;
  }
};

Subset random_proper_subset(int n, int lo, int hi, std::mt19937_64& rng) {
  for (;;) {
    Subset J(rng() & Subset::full(n).bits());
    if (J.size() >= lo && J.size() <= hi) return J;
  }
}

// Brute-force count of J with |J| >= 3, |J| <= n-2, 2 sum_J r <= L.
int relevant_big(const LengthVector& r) {
  const int n = r.size();
  int c = 0;
  for (std::uint64_t b = 1; b < (1ULL << n); ++b) {
    const int k = std::popcount(b);
    if (k < 3 || k > n - 2) continue;
    Rational s = 0;
    for (int i = 0; i < n; ++i)
      if ((b >> i) & 1) s += r[i];
    if (2 * s <= r.perimeter()) ++c;
  }
  return c;
}

std::int64_t picard(int n) { return (std::int64_t{1} << (n - 1)) - (std::int64_t{n} * n - n + 2) / 2; }

Outcome criterion1() {
  Outcome o;
  const std::vector<std::vector<std::int64_t>> expect = {{1, 5, 1}, {1, 7, 22, 7, 1}, {}};
  std::ostringstream note;
  for (int k = 0; k < 3; ++k) {
    const int n = 5 + 2 * k;
    const auto t0 = Clock::now();
    const auto w = poincare_wall_crossing(LengthVector::equilateral(n));
    const double dt = seconds_since(t0);
    const auto c = poincare_center(n);
    if (!(w == c)) o.fail("n=" + std::to_string(n) + " wallcross " + str(w.coeffs()) + " != closed " + str(c.coeffs()));
    if (!expect[k].empty() && w.coeffs() != expect[k]) o.fail("n=" + std::to_string(n) + " got " + str(w.coeffs()));
    if (dt >= 10) o.fail("n=" + std::to_string(n) + " took " + std::to_string(dt) + " s");
    note << " n=" << n << " " << str(w.coeffs()) << " (" << dt << " s)";
  }
  if (o.pass) o.note = note.str();
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto p6 = ih_poincare_center(6);
  const auto p8 = ih_poincare_center(8);
  const double dt = seconds_since(t0);
  if (p6.coeffs() != std::vector<std::int64_t>{1, 6, 6, 1}) o.fail("ih(6) = " + str(p6.coeffs()));
  if (!p8.is_palindromic()) o.fail("ih(8) not palindromic");
  if (p8.at_one() % 2 != 0) o.fail("ih(8)(1) odd");
  if (dt >= 1) o.fail("took " + std::to_string(dt) + " s");
  if (o.pass) o.note = " ih(6)=" + str(p6.coeffs()) + " ih(8)=" + str(p8.coeffs());
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::ostringstream note;
  auto p4 = stable_betti(LengthVector::parse("1,1,1,2"), EpsilonAssignment::uniform(Rational(1, 2)));
  if (p4.coeffs() != std::vector<std::int64_t>{1, 1}) o.fail("n=4 " + str(p4.coeffs()));
  note << " n=4 " << str(p4.coeffs());
  for (int n = 5; n <= 8; ++n) {
    const auto r = default_base_point(n);
    const auto t0 = Clock::now();
    const auto p = stable_betti(r, EpsilonAssignment::canonical(r));
    const double dt = seconds_since(t0);
    if (n == 5 && p.coeffs() != std::vector<std::int64_t>{1, 5, 1}) o.fail("n=5 " + str(p.coeffs()));
    if (p.coeff(1) != picard(n)) o.fail("n=" + std::to_string(n) + " b2 " + std::to_string(p.coeff(1)));
    if (!p.is_palindromic()) o.fail("n=" + std::to_string(n) + " not palindromic");
    if (n == 8 && dt >= 60) o.fail("n=8 took " + std::to_string(dt) + " s");
    note << " n=" << n << " " << str(p.coeffs()) << " (" << dt << " s)";
  }
  if (o.pass) o.note = note.str();
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::mt19937_64 rng(4);
  for (int n = 5; n <= 7; ++n) {
    std::vector<Rational> fav(n, Rational(1));
    fav[n - 1] = Rational(2 * n - 3, 2);
    std::vector<LengthVector> rs = {LengthVector(fav), default_base_point(n)};
    while (rs.size() < 4) {
      auto r = oracle::random_generic_r(n, rng);
      if (!same_chamber(r, rs[0]) && !same_chamber(r, rs[1])) rs.push_back(r);
    }
    if (!favorable_index(rs[0]) || *favorable_index(rs[0]) != n - 1) o.fail("favorable point is not favorable");
    std::optional<PoincarePoly> first;
    for (const auto& r : rs) {
      auto p = stable_betti(r, EpsilonAssignment::canonical(r));
      if (!first) first = p;
      else if (!(p == *first)) o.fail("n=" + std::to_string(n) + " " + r.str() + " gives " + str(p.coeffs()));
    }
  }
  if (o.pass) o.note = " 4 chambers agree at n=5,6,7";
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::mt19937_64 rng(5);
  const Rational shrink = 1 - Rational(1, 1000000);
  for (int k = 0; k < 50; ++k) {
    const int n = 4 + static_cast<int>(rng() % 6);
    const auto r = oracle::random_generic_r(n, rng);
    Subset J;
    do J = random_proper_subset(n, 2, n - 2, rng);
    while (!is_relevant(r, J));
    const Rational hi = 2 * r.min_over(J);
    try {
      auto a = augment(r, J, hi * shrink);
      if (!a.interior()) o.fail("augment below the bound left the cone");
    } catch (const std::exception& e) {
      o.fail(std::string("legal epsilon rejected: ") + e.what());
    }
    bool threw = false;
    try {
      augment(r, J, hi);
    } catch (const RangeError&) {
      threw = true;
    }
    if (!threw) o.fail("epsilon = 2 min accepted for " + r.str() + " J=" + J.str());
  }
  if (o.pass) o.note = " 50 (r, J) pairs";
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::mt19937_64 rng(6);
  std::vector<double> times;
  double worst = 0;
  for (int n = 3; n <= 12; ++n)
    for (int k = 0; k < 10; ++k) {
      const auto r = oracle::random_generic_r(n, rng);
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto t0 = Clock::now();
        try {
          auto E = close(r, {.seed = seed});
          times.push_back(seconds_since(t0));
          worst = std::max(worst, E.residual());
          if (E.residual() > 1e-10) o.fail("residual " + std::to_string(E.residual()));
        } catch (const std::exception& e) {
          o.fail(std::string("close failed for ") + r.str() + ": " + e.what());
        }
      }
    }
  std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());
  const double median = times.empty() ? 1e9 : times[times.size() / 2];
  if (median >= 0.05) o.fail("median " + std::to_string(median) + " s");
  if (o.pass) {
    std::ostringstream os;
    os << " " << times.size() << " closures, worst residual " << worst << ", median " << median * 1e3 << " ms";
    o.note = os.str();
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::mt19937_64 rng(7);
  double worst = 0;
  int done = 0;
  while (done < 100) {
    const int n = 4 + done % 2;
    const auto r = oracle::random_generic_r(n, rng);
    const Rational there = r[n - 1] * Rational(90 + static_cast<int>(rng() % 21), 100);
    const auto target = r.with_last(there);
    if (there == r[n - 1] || !target.interior() || on_some_wall(target) || !same_chamber(r, target)) continue;
    auto E = close(r, {.seed = rng()});
    auto T = transport(E, there);
    auto back = transport(T, r[n - 1]);
    const double m = pgl2_equivalent(moduli_point(E), moduli_point(back), 1e-8).margin;
    worst = std::max(worst, m);
    if (m > 1e-8) o.fail("round trip drift " + std::to_string(m) + " at " + r.str());
    ++done;
  }
  if (o.pass) {
    std::ostringstream os;
    os << " worst chordal drift " << worst;
    o.note = os.str();
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  const auto r = LengthVector::parse("1,1,1,1,2");
  const double angle_tol = 1e-8;
  const auto walls = ChamberSignature(r).zeros();
  std::mt19937_64 rng(8);
  int sampled = 0;
  for (WallIndex w : walls) {
    const Subset J = w.subset();
    const double lo = to_double(r.sum(J) - 2 * r.min_over(J));
    const double hi = to_double(r.sum(J));
    // The other line gons sit at or below the excluded lower end.
    for (WallIndex w2 : walls) {
      if (w2.subset() == J) continue;
      const double d = diagonal(line_gon(r, w2.subset()), J).length;
      if (d > lo) o.fail("line gon " + w2.subset().str() + " inside the window of " + J.str());
    }
    int got = 0;
    for (int tries = 0; got < 200 && tries < 100000; ++tries) {
      EdgeFrame F;
      try {
        F = close(r, {.seed = rng()});
      } catch (const ConvergenceError&) {
        continue;
      }
      const double d = diagonal(F, J).length;
      if (!(d > lo && d <= hi)) continue;
      ++got;
      if (is_line_gon(F, angle_tol).value) {
        bool is_center = true;
        for (int j : J.indices()) is_center = is_center && angle_between(F.u(j), F.u(J.indices()[0])) <= angle_tol;
        if (!is_center) o.fail("foreign line gon in the window of " + J.str());
      }
    }
    if (got < 200) o.fail("only " + std::to_string(got) + " in-window samples for " + J.str());
    sampled += got;
  }
  if (o.pass) o.note = " " + std::to_string(walls.size()) + " line gons, " + std::to_string(sampled) + " in-window frames";
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::mt19937_64 rng(9);
  int frames = 0;
  for (int k = 0; k < 10; ++k) {
    const int n = 4 + k % 5;
    // r in Delta_i for a random i: one long edge
    std::vector<Rational> v;
    for (int j = 0; j < n; ++j) v.emplace_back(static_cast<long>(rng() % 7 + 4), 3);
    const int i = static_cast<int>(rng() % n);
    Rational rest = 0;
    for (int j = 0; j < n; ++j)
      if (j != i) rest += v[j];
    Rational mn = v[(i + 1) % n];
    for (int j = 0; j < n; ++j)
      if (j != i) mn = std::min(mn, v[j]);
    v[i] = rest - mn / 2;
    const LengthVector r(v);
    if (!is_favorable_at(r, i) || on_some_wall(r)) {
      o.fail("constructed point not in Delta_" + std::to_string(i + 1));
      continue;
    }
    auto check = [&](const EdgeFrame& E) {
      ++frames;
      const auto cls = parallel_classes(E, 1e-8);
      for (Subset b : cls.blocks())
        if (b.contains(i) && b.size() >= 2) o.fail("e_" + std::to_string(i + 1) + " parallel in " + r.str());
    };
    for (int s = 0; s < 200; ++s) check(close(r, {.seed = rng()}));
    for (const auto& st : strata(r).strata)
      if (st.open_nonempty && st.alpha.block_count() >= 3) check(realize_stratum(r, st.alpha, rng()));
  }
  if (o.pass) o.note = " " + std::to_string(frames) + " frames";
  return o;
}

Outcome criterion10() {
  Outcome o;
  std::mt19937_64 rng(10);
  int curves = 0;
  for (int k = 0; k < 100; ++k) {
    const auto r = oracle::random_generic_r(6, rng);
    std::vector<Partition> open;
    for (const auto& s : strata(r).strata)
      if (s.open_nonempty && s.alpha.block_count() >= 3) open.push_back(s.alpha);
    const Partition& a = open[rng() % open.size()];
    try {
      auto sp = stabilize(realize_stratum(r, a, rng()), EpsilonAssignment::canonical(r), Filler{.seed = rng()});
      auto dc = to_stable_curve(sp);
      if (!dc.is_tree()) o.fail("not a tree at " + a.str());
      if (dc.min_special() < 3) o.fail("vertex with < 3 special points at " + a.str());
      ++curves;
    } catch (const std::exception& e) {
      o.fail(std::string("stabilize/curve failed: ") + e.what());
    }
  }
  int points = 0, lines = 0;
  for (const auto& s : strata(LengthVector::parse("1,1,1,1,3.5")).strata) {
    if (!s.open_nonempty || s.alpha.merged().size() != 1) continue;
    if (s.dim == 0) ++points;
    if (s.dim == 1) ++lines;
  }
  if (points != 4 || lines != 6) o.fail("Kapranov counts " + std::to_string(points) + "/" + std::to_string(lines));
  if (o.pass) o.note = " " + std::to_string(curves) + " stable trees; 4 point strata, 6 line strata";
  return o;
}

Outcome criterion11() {
  Outcome o;
  for (int n = 5; n <= 9; ++n)
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      auto p = param_sample(n, 1000 * n + seed);
      if (!param_contains(p)) o.fail("sample outside the cone");
      if (n + relevant_big(p.r) != param_dim(n) || param_dim(n) != picard(n))
        o.fail("n=" + std::to_string(n) + " dimension mismatch");
    }
  if (o.pass) o.note = " 1000 samples, n=5..9";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> all = {criterion1, criterion2, criterion3, criterion4,
                                                      criterion5, criterion6, criterion7, criterion8,
                                                      criterion9, criterion10, criterion11};
  int failed = 0;
  for (std::size_t k = 0; k < all.size(); ++k) {
    Outcome o;
    try {
      o = all[k]();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("criterion %zu: %s%s%s\n", k + 1, o.pass ? "PASS" : "FAIL", o.pass ? "" : " ", o.note.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
