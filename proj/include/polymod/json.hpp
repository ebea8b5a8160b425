#pragma once

// JSON and DOT emission. Rationals are "p/q" strings, subsets sorted 1-based
// label arrays, polynomials ascending coefficient arrays in t^2.

#include <nlohmann/json.hpp>

#include <sstream>
#include <string>

#include "polymod/chambers.hpp"
#include "polymod/cone.hpp"
#include "polymod/poincare.hpp"
#include "polymod/realize.hpp"
#include "polymod/stable.hpp"
#include "polymod/strata.hpp"

namespace polymod::json {

using Json = nlohmann::ordered_json;

inline Json of(const Rational& q) { return to_string(q); }
inline Json of(Subset J) { return J.labels(); }
inline Json of(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(of(q));
  return a;
}
inline Json of(const LengthVector& r) { return of(r.values()); }
inline Json of(const PoincarePoly& p) { return p.coeffs(); }
inline Json of(const Partition& a) {
  Json out = Json::array();
  for (Subset b : a.blocks()) out.push_back(of(b));
  return out;
}
inline Json of_label(const std::optional<int>& i) { return i ? Json(*i + 1) : Json(nullptr); }

inline Json of(const ClassifyReport& c) {
  Json sig = Json::array();
  for (const auto& [w, s] : c.signature.signs()) sig.push_back({{"J", of(w.subset())}, {"sign", s}});
  Json walls = Json::array();
  for (WallIndex w : c.walls_on) walls.push_back(of(w.subset()));
  Json lg = Json::array();
  for (Subset J : c.line_gons) lg.push_back(of(J));
  return {{"in_cone_interior", c.in_cone_interior}, {"signature", sig},
          {"walls_on", walls},                      {"line_gons", lg},
          {"smooth", c.smooth},                     {"favorable_index", of_label(c.favorable_index)},
          {"nabla_index", of_label(c.nabla_index)}, {"central", c.central}};
}

inline Json of(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

inline Json of(const EdgeFrame& E) {
  Json u = Json::array();
  for (const auto& v : E.u()) u.push_back(of(v));
  return {{"r", of(E.r())}, {"u", u}, {"residual", E.residual()}};
}

inline Json of(const SpherePoint& p) {
  if (p.is_infinity()) return "inf";
  auto z = p.value();
  return Json::array({z.real(), z.imag()});
}

inline Json of(const ModuliPoint& m) {
  Json pts = Json::array();
  for (const auto& p : m.points()) pts.push_back(of(p));
  Json anchors = Json::array();
  for (int a : m.anchors()) anchors.push_back(a + 1);
  return {{"points", pts}, {"anchors", anchors}};
}

inline Json of(const Verdict& v) { return {{"value", v.value}, {"margin", v.margin}}; }

inline Json of(const IncidenceResult& r) {
  return {{"holds", r.holds},
          {"in_window", r.in_window},
          {"collapse", r.collapse},
          {"diagonal_length", r.diagonal_length},
          {"window", {r.window_lo, r.window_hi}},
          {"moduli_distance", r.moduli_distance}};
}

inline Json node_json(const StablePolygon& sp, int id) {
  const auto& nd = sp.node(id);
  Json eps = nullptr;
  if (id != 0) eps = of(sp.eps().at(nd.subset));
  Json kids = Json::array();
  for (int c : nd.children) kids.push_back(node_json(sp, c));
  return {{"subset", of(nd.subset)}, {"eps", eps}, {"frame", of(nd.frame)}, {"children", kids}};
}
inline Json of(const StablePolygon& sp) { return node_json(sp, 0); }

inline Json of(const StabilityReport& rep) {
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    Json j = {{"condition", c.condition}, {"node", c.node}, {"passed", c.passed}, {"margin", c.margin}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    checks.push_back(j);
  }
  return {{"valid", rep.valid}, {"strict", rep.strict}, {"checks", checks}};
}

inline std::string special_name(const SpecialPoint& p) {
  return p.kind == SpecialPoint::Kind::Leg ? std::to_string(p.target + 1) : "node:" + std::to_string(p.target);
}

inline Json of(const DualCurve& dc) {
  Json verts = Json::array();
  for (std::size_t i = 0; i < dc.vertices.size(); ++i) {
    const auto& v = dc.vertices[i];
    Json legs = Json::array();
    for (int l : v.legs) legs.push_back(l + 1);
    Json special = Json::array();
    for (const auto& p : v.special) special.push_back(special_name(p));
    Json marks = nullptr;
    if (v.marks) {
      marks = Json::array();
      for (const auto& p : v.marks->points()) marks.push_back(of(p));
    }
    verts.push_back({{"id", i}, {"subset", of(v.subset)}, {"legs", legs}, {"special", special}, {"marks", marks}});
  }
  Json edges = Json::array();
  for (auto [a, b] : dc.edges) edges.push_back({a, b});
  return {{"n", dc.n}, {"vertices", verts}, {"edges", edges}, {"tree", dc.is_tree()},
          {"stable", dc.stable()}, {"unstable_root", dc.unstable_root}};
}

inline std::string dot(const DualCurve& dc) {
  std::ostringstream os;
  os << "graph dual_curve {\n";
  for (std::size_t i = 0; i < dc.vertices.size(); ++i)
    os << "  v" << i << " [label=\"" << dc.vertices[i].subset.str() << "\"];\n";
  for (auto [a, b] : dc.edges) os << "  v" << a << " -- v" << b << ";\n";
  for (std::size_t i = 0; i < dc.vertices.size(); ++i)
    for (int l : dc.vertices[i].legs) {
      os << "  leg" << l + 1 << " [shape=plaintext,label=\"" << l + 1 << "\"];\n";
      os << "  v" << i << " -- leg" << l + 1 << ";\n";
    }
  os << "}\n";
  return os.str();
}

inline Json of(const StrataReport& rep) {
  Json s = Json::array();
  for (const auto& st : rep.strata)
    s.push_back({{"alpha", of(st.alpha)},
                 {"r_alpha", of(st.r_alpha)},
                 {"dim", st.dim},
                 {"closed_nonempty", st.closed_nonempty},
                 {"open_nonempty", st.open_nonempty}});
  Json e = Json::array();
  for (auto [a, b] : rep.edges) e.push_back({a, b});
  return {{"strata", s}, {"edges", e}};
}

inline Json of(const ScheduleStep& st) {
  Json j = {{"kind", st.kind == ScheduleStep::Kind::Resolution ? "resolution" : "center"},
            {"J", of(st.J)},
            {"codim", st.codim},
            {"nontrivial", st.nontrivial},
            {"at_line_gon", st.at_line_gon}};
  j["eps"] = st.eps ? of(*st.eps) : Json(nullptr);
  return j;
}

inline Json of(const Schedule& s) {
  Json steps = Json::array();
  for (const auto& st : s.steps) steps.push_back(of(st));
  Json inter = Json::array();
  for (const auto& a : s.intersections) inter.push_back(of(a));
  return {{"steps", steps}, {"intersections", inter}};
}

/// Steps in order; each center points at the centers of strictly larger J
/// containing it (whose blowup precedes and changes it to a proper transform).
inline std::string dot(const Schedule& s) {
  std::ostringstream os;
  os << "digraph schedule {\n";
  for (std::size_t i = 0; i < s.steps.size(); ++i) {
    const auto& st = s.steps[i];
    os << "  s" << i << " [label=\"" << (st.kind == ScheduleStep::Kind::Resolution ? "resolve " : "blow up ")
       << st.J.str() << "\"" << (st.nontrivial || st.kind == ScheduleStep::Kind::Resolution ? "" : ",style=dashed")
       << "];\n";
  }
  for (std::size_t i = 0; i < s.steps.size(); ++i)
    for (std::size_t j = i + 1; j < s.steps.size(); ++j) {
      const auto& a = s.steps[i];
      const auto& b = s.steps[j];
      if (a.kind == ScheduleStep::Kind::Center && b.kind == ScheduleStep::Kind::Center && a.J.contains(b.J))
        os << "  s" << i << " -> s" << j << ";\n";
    }
  os << "}\n";
  return os.str();
}

inline Json of(const WallCrossingPath& p) {
  Json cr = Json::array();
  for (const auto& c : p.crossings)
    cr.push_back({{"J", of(c.wall.subset())}, {"t", of(c.t)}, {"into_side_where_J_short", c.into_side_where_J_short},
                  {"delta", of(c.delta)}});
  return {{"start", of(p.start)}, {"perturbation_k", p.perturbation_k}, {"crossings", cr}, {"result", of(p.result)}};
}

inline Json of(const EpsilonAssignment& e) {
  Json j = Json::object();
  if (e.uniform_value()) j["uniform"] = of(*e.uniform_value());
  Json entries = Json::array();
  for (const auto& [J, v] : e.entries()) entries.push_back({{"J", of(J)}, {"eps", of(v)}});
  j["entries"] = entries;
  return j;
}

inline Json of(const ParamPoint& p) { return {{"r", of(p.r)}, {"eps", of(p.eps)}}; }

}  // namespace polymod::json
