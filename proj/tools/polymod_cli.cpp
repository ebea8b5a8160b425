// polymod: command-line front end. Every run prints {"config": ..., "result": ...}
// as JSON (or DOT with the config as a comment). Exit codes: 0 success,
// 2 domain or usage error, 1 internal failure.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "polymod/json.hpp"
#include "polymod/polymod.hpp"

using namespace polymod;
using polymod::json::Json;

namespace {

struct Options {
  std::string r;
  std::string base;
  std::string J;
  std::string alpha;
  std::vector<std::string> eps;
  std::vector<std::string> tol;
  std::uint64_t seed = 0;
  std::string out = "json";
  std::string method = "wallcross";
  int n = 0;
  int sample = 10;
  int steps = 8;
  bool strict = false;
};

Subset parse_subset(const std::string& text, int n) {
  std::vector<int> labels;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) labels.push_back(std::stoi(tok));
  return Subset::from_labels(labels, n);
}

// "1,2,3|4,5" -> blocks; labels not mentioned become singletons.
Partition parse_partition(const std::string& text, int n) {
  std::vector<Subset> blocks;
  Subset seen;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, '|')) {
    if (tok.empty()) continue;
    Subset b = parse_subset(tok, n);
    if (!seen.disjoint(b)) throw InvalidArgument("blocks of '" + text + "' overlap");
    seen = seen | b;
    blocks.push_back(b);
  }
  for (int i : seen.complement(n).indices()) blocks.push_back(Subset::singleton(i));
  return Partition(n, blocks);
}

// "canonical", a single rational (uniform), or entries "1,2,3=1/2".
EpsilonAssignment parse_eps(const std::vector<std::string>& items, const LengthVector& r) {
  EpsilonAssignment e;
  for (const auto& it : items) {
    if (it == "canonical") {
      EpsilonAssignment c = EpsilonAssignment::canonical(r);
      for (const auto& [J, v] : e.entries()) c.set(J, v);
      e = c;
    } else if (auto eq = it.find('='); eq != std::string::npos) {
      e.set(parse_subset(it.substr(0, eq), r.size()), parse_rational(it.substr(eq + 1)));
    } else {
      EpsilonAssignment u = EpsilonAssignment::uniform(parse_rational(it));
      for (const auto& [J, v] : e.entries()) u.set(J, v);
      e = u;
    }
  }
  return e;
}

Tolerances parse_tol(const std::vector<std::string>& items) {
  Tolerances t;
  std::map<std::string, double*> slot{{"close", &t.close}, {"angle", &t.angle}, {"pgl", &t.pgl}, {"length", &t.length}};
  for (const auto& it : items) {
    auto eq = it.find('=');
    if (eq == std::string::npos) throw InvalidArgument("tolerance '" + it + "' must be name=value");
    auto s = slot.find(it.substr(0, eq));
    if (s == slot.end()) throw InvalidArgument("unknown tolerance '" + it.substr(0, eq) + "'");
    double v = std::stod(it.substr(eq + 1));
    if (!(v > 0)) throw InvalidArgument("tolerance " + s->first + " must be positive");
    *s->second = v;
  }
  return t;
}

Json tol_json(const Tolerances& t) {
  return {{"close", t.close}, {"angle", t.angle}, {"pgl", t.pgl}, {"length", t.length}};
}

LengthVector need_r(const Options& o) {
  if (o.r.empty()) throw InvalidArgument("--r is required");
  return LengthVector::parse(o.r);
}

std::optional<LengthVector> maybe_base(const Options& o) {
  if (o.base.empty()) return std::nullopt;
  return LengthVector::parse(o.base);
}

void emit(const Json& config, const Json& result) {
  Json out;
  out["config"] = config;
  out["result"] = result;
  std::cout << out.dump(2) << "\n";
}

void emit_dot(const Json& config, const std::string& dot) { std::cout << "// config: " << config.dump() << "\n" << dot; }

int run(const std::string& cmd, const Options& o) {
  const Tolerances tol = parse_tol(o.tol);
  Json cfg = {{"command", cmd}};
  cfg["tol"] = tol_json(tol);

  if (cmd == "classify") {
    auto r = need_r(o);
    auto base = maybe_base(o);
    cfg["r"] = json::of(r);
    cfg["base"] = json::of(base.value_or(default_base_point(r.size())));
    emit(cfg, json::of(classify(r, base)));
  } else if (cmd == "realize") {
    auto r = need_r(o);
    cfg["r"] = json::of(r);
    cfg["seed"] = o.seed;
    cfg["alpha"] = o.alpha.empty() ? Json(nullptr) : json::of(parse_partition(o.alpha, r.size()));
    CloseStats stats;
    EdgeFrame E = o.alpha.empty() ? close(r, {.seed = o.seed, .tol = tol.close}, &stats)
                                  : realize_stratum(r, parse_partition(o.alpha, r.size()), o.seed);
    E = canonicalize(E, tol.angle);
    Json res = {{"frame", json::of(E)}, {"parallel_classes", json::of(parallel_classes(E, tol.angle))}};
    if (o.alpha.empty()) res["iterations"] = stats.iterations;
    try {
      res["moduli_point"] = json::of(moduli_point(E, tol.angle));
    } catch (const NoModuliError&) {
      res["moduli_point"] = nullptr;
    }
    emit(cfg, res);
  } else if (cmd == "stabilize" || cmd == "curve") {
    auto r = need_r(o);
    auto eps = parse_eps(o.eps.empty() ? std::vector<std::string>{"canonical"} : o.eps, r);
    cfg["r"] = json::of(r);
    cfg["seed"] = o.seed;
    cfg["eps"] = json::of(eps);
    cfg["alpha"] = o.alpha.empty() ? Json(nullptr) : json::of(parse_partition(o.alpha, r.size()));
    EdgeFrame E = o.alpha.empty() ? close(r, {.seed = o.seed, .tol = tol.close})
                                  : realize_stratum(r, parse_partition(o.alpha, r.size()), o.seed);
    auto sp = stabilize(E, eps, {.seed = o.seed}, tol);
    if (cmd == "stabilize") {
      cfg["strict"] = o.strict;
      emit(cfg, {{"stable_polygon", json::of(sp)}, {"validation", json::of(validate(sp, tol, o.strict))}});
    } else {
      auto dc = to_stable_curve(sp, tol);
      cfg["out"] = o.out;
      if (o.out == "dot") emit_dot(cfg, json::dot(dc.stabilized()));
      else emit(cfg, {{"curve", json::of(dc)}, {"stabilized", json::of(dc.stabilized())}});
    }
  } else if (cmd == "limit") {
    auto r = need_r(o);
    if (o.J.empty()) throw InvalidArgument("--J is required");
    Subset J = parse_subset(o.J, r.size());
    auto eps = parse_eps(o.eps.empty() ? std::vector<std::string>{"canonical"} : o.eps, r);
    cfg["r"] = json::of(r);
    cfg["J"] = json::of(J);
    cfg["eps"] = json::of(eps);
    cfg["seed"] = o.seed;
    cfg["steps"] = o.steps;
    auto family = degeneration_family(r, J, o.seed, o.steps);
    auto Q = limit(family, J, eps.at(J), tol);
    Json lengths = Json::array();
    for (const auto& F : family) lengths.push_back(diagonal(F, J).length);
    emit(cfg, {{"diagonal_lengths", lengths},
               {"bubble", json::of(Q)},
               {"incidence_last_open", json::of(incidence(family[family.size() - 2], Q, J, tol))},
               {"incidence_degenerate", json::of(incidence(family.back(), Q, J, tol))}});
  } else if (cmd == "strata") {
    auto r = need_r(o);
    cfg["r"] = json::of(r);
    emit(cfg, json::of(strata(r)));
  } else if (cmd == "schedule") {
    auto r = need_r(o);
    auto eps = parse_eps(o.eps.empty() ? std::vector<std::string>{"canonical"} : o.eps, r);
    cfg["r"] = json::of(r);
    cfg["eps"] = json::of(eps);
    cfg["out"] = o.out;
    auto s = schedule(r, eps);
    if (o.out == "dot") emit_dot(cfg, json::dot(s));
    else emit(cfg, json::of(s));
  } else if (cmd == "poincare") {
    auto r = need_r(o);
    cfg["r"] = json::of(r);
    cfg["method"] = o.method;
    Json res;
    if (o.method == "wallcross") {
      auto path = wall_crossing_path(r);
      res = {{"coefficients", json::of(path.result)}, {"path", json::of(path)}};
    } else if (o.method == "closed") {
      for (int i = 1; i < r.size(); ++i)
        if (r[i] != r[0]) throw InvalidArgument("closed forms are evaluated at the center (1,...,1) only");
      if (r.size() % 2 == 1) res = {{"coefficients", json::of(poincare_center(r.size()))}, {"kind", "poincare"}};
      else res = {{"coefficients", json::of(ih_poincare_center(r.size()))}, {"kind", "intersection_poincare"}};
    } else if (o.method == "stable") {
      auto eps = parse_eps(o.eps.empty() ? std::vector<std::string>{"canonical"} : o.eps, r);
      cfg["eps"] = json::of(eps);
      res = {{"coefficients", json::of(stable_betti(r, eps))}};
    } else {
      throw InvalidArgument("unknown method '" + o.method + "'");
    }
    emit(cfg, res);
  } else if (cmd == "cone") {
    if (o.n < 5) throw InvalidArgument("--n must be at least 5");
    cfg["n"] = o.n;
    cfg["sample"] = o.sample;
    cfg["seed"] = o.seed;
    Json pts = Json::array();
    int ok = 0;
    const auto dim = param_dim(o.n);
    for (int k = 0; k < o.sample; ++k) {
      auto p = param_sample(o.n, o.seed + static_cast<std::uint64_t>(k));
      const auto count = o.n + static_cast<std::int64_t>(relevant_subsets(p.r, 3).size());
      if (count == dim && param_contains(p)) ++ok;
      pts.push_back(json::of(p));
    }
    emit(cfg, {{"points", pts},
               {"summary", {{"param_dim", dim}, {"points_matching", ok}, {"points", o.sample}, {"holds", ok == o.sample}}}});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polygon spaces, stable polygons and their cohomology"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_r = [&](CLI::App* s) { s->add_option("--r", o.r, "side lengths, comma-separated rationals")->required(); };
  auto add_tol = [&](CLI::App* s) { s->add_option("--tol", o.tol, "tolerance override name=value (close, angle, pgl, length)"); };
  auto add_eps = [&](CLI::App* s) {
    s->add_option("--eps", o.eps, "'canonical', a uniform rational, or J=value entries such as 1,2,3=1/2");
  };
  auto add_seed = [&](CLI::App* s) { s->add_option("--seed", o.seed, "64-bit seed"); };

  auto* c = app.add_subcommand("classify", "chamber data of r");
  add_r(c);
  c->add_option("--base", o.base, "base point fixing the central chamber (even n)");
  add_tol(c);

  c = app.add_subcommand("realize", "a closed frame for r, or one in the open stratum --alpha");
  add_r(c);
  add_seed(c);
  c->add_option("--alpha", o.alpha, "partition such as 1,2,3|4,5");
  add_tol(c);

  for (const char* name : {"stabilize", "curve"}) {
    c = app.add_subcommand(name, std::string(name) == "curve" ? "dual tree of the stable curve" : "stable polygon of a frame");
    add_r(c);
    add_seed(c);
    add_eps(c);
    add_tol(c);
    c->add_option("--alpha", o.alpha, "realize the frame in this open stratum");
    if (std::string(name) == "stabilize") c->add_flag("--strict", o.strict, "strict validation");
    else c->add_option("--out", o.out, "json or dot")->check(CLI::IsMember({"json", "dot"}));
  }

  c = app.add_subcommand("limit", "bubble limit of a family degenerating at J");
  add_r(c);
  c->add_option("--J", o.J, "subset such as 1,2,3")->required();
  add_eps(c);
  add_seed(c);
  c->add_option("--steps", o.steps, "frames before the degenerate endpoint")->check(CLI::Range(2, 40));
  add_tol(c);

  c = app.add_subcommand("strata", "strata Y_alpha and their poset");
  add_r(c);

  c = app.add_subcommand("schedule", "blowup schedule");
  add_r(c);
  add_eps(c);
  c->add_option("--out", o.out, "json or dot")->check(CLI::IsMember({"json", "dot"}));

  c = app.add_subcommand("poincare", "Poincare polynomial");
  add_r(c);
  add_eps(c);
  c->add_option("--method", o.method, "wallcross, closed or stable")->check(CLI::IsMember({"wallcross", "closed", "stable"}));

  c = app.add_subcommand("cone", "samples of the parameter cone");
  c->add_option("--n", o.n, "edge count")->required();
  c->add_option("--sample", o.sample, "number of points")->check(CLI::Range(1, 100000));
  add_seed(c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return run(cmd, o);
  } catch (const std::invalid_argument& e) {  // also malformed numbers from std::stoi / std::stod
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
