#include <algorithm>

#include "doctest.h"
#include "sisres/polar.hpp"

using namespace sisres;

namespace {

MPoly P(const char* s) { return parse_poly(s); }

const char* kX1 = "(y^3-z^2*x)*(y^3+z^2*x)+(x+y+z)^7";
const char* kX2 = "(y^3-z^2*x)*(y^3+2*z^2*x)+(x+y+z)^7";

// The two polar figures, read off by hand: (self-intersection, polar mult).
DecoratedGraph figure(bool x1) {
  DecoratedGraph g;
  auto add = [&](int e, int m, bool L = false) {
    int v = g.add_vertex(e, L);
    g.vertices[v].mult["polar"] = m;
    return v;
  };
  int a = add(-2, 11), b = add(-2, 22), c = add(-1, 33);
  int l1 = add(-21, 5, true), l2 = add(-21, 5, true);
  int d = add(x1 ? -2 : -1, 69), e = add(-3, 23);
  g.add_edge(a, b);
  g.add_edge(b, c);
  for (int l : {l1, l2}) {
    g.add_edge(c, l);
    g.add_edge(d, l);
    for (int k = 0; k < 3; ++k) g.arrows.push_back({l, std::nullopt});
  }
  g.add_edge(d, e);
  g.arrows.push_back({c, std::nullopt});
  if (x1) {
    int f = add(-1, 105), h = add(-3, 35);
    g.add_edge(d, f);
    g.add_edge(f, h);
    g.arrows.push_back({f, std::nullopt});
  } else {
    int h = add(-2, 35);
    g.add_edge(d, h);
    g.arrows.push_back({h, std::nullopt});
    g.arrows.push_back({d, std::nullopt});
  }
  g.normalize();
  return g;
}

}  // namespace

TEST_CASE("polar of the maximal-contact pair") {
  for (int which = 0; which < 2; ++which) {
    SISPresentation s = from_equation(P(which == 0 ? kX1 : kX2));
    std::mt19937_64 rng(7);
    PolarSample ps = generic_polar(s, rng);
    std::vector<int> base = ps.base_mult;
    std::sort(base.begin(), base.end());
    CHECK(base == std::vector<int>{5, 5, 11, 22, 23, 33, 35, 69});
    CHECK(ps.extra_blowups == (which == 0 ? 1 : 0));
    CHECK(polar_branch_count(ps) == (which == 0 ? 8 : 9));
    if (which == 0) CHECK(std::count(ps.mult.begin(), ps.mult.end(), 105) == 1);
  }
}

TEST_CASE("extended polar graphs match the figures") {
  IsoOptions iso;
  iso.rates = false;
  iso.mults = true;
  for (int which = 0; which < 2; ++which) {
    SISPresentation s = from_equation(P(which == 0 ? kX1 : kX2));
    std::mt19937_64 rng(3);
    DecoratedGraph g = generic_polar(s, rng).extended.graph;
    for (auto& v : g.vertices) v.mult = {{"polar", v.mult.at("polar")}};
    CHECK(isomorphic(g, figure(which == 0), iso).has_value());
    CHECK_FALSE(isomorphic(g, figure(which != 0), iso).has_value());
  }
}
