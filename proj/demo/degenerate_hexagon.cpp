// Follows a hexagon as edges 1, 2, 3 come together, reads off the bubble
// that appears in the limit, and prints the dual tree of the resulting
// stable curve.

#include <cstdio>

#include "polymod/json.hpp"
#include "polymod/polymod.hpp"

using namespace polymod;

int main() {
  const LengthVector r = LengthVector::parse("1,1,1,3/2,3/2,3/2");
  const Subset J = Subset::from_labels({1, 2, 3}, r.size());
  const Rational eps = canonical_epsilon(r);

  auto family = degeneration_family(r, J, 11);
  for (const auto& E : family) std::printf("|d_J| = %.12f\n", diagonal(E, J).length);

  EdgeFrame bubble = limit(family, J, eps);
  std::printf("bubble lengths %s\n", bubble.r().str().c_str());

  Filler filler;
  filler.set(J, bubble);
  StablePolygon sp = stabilize(family.back(), EpsilonAssignment::uniform(eps), filler);
  std::printf("valid: %s\n", validate(sp) ? "yes" : "no");
  std::printf("%s", json::dot(to_stable_curve(sp)).c_str());
}
