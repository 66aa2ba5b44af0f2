#include <algorithm>

#include "doctest.h"
#include "sisres/sis.hpp"

using namespace sisres;

namespace {

MPoly P(const char* s) { return parse_poly(s); }

std::vector<int> sorted_self_ints(const DecoratedGraph& g, bool L) {
  std::vector<int> out;
  for (const auto& v : g.vertices)
    if (v.is_L == L) out.push_back(v.self_int);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("cuspidal cubic") {
  SISPresentation s = from_equation(P("y^3 + x*z^2 - x^4"));
  CHECK(s.d == 3);
  REQUIRE(s.points.size() == 1);
  CHECK(s.points[0].chart == 0);
  Gamma G = build_gamma(s, GraphMode::Min);
  const DecoratedGraph& g = G.graph;
  CHECK(sorted_self_ints(g, true) == std::vector<int>{-9});
  CHECK(sorted_self_ints(g, false) == std::vector<int>{-3, -2, -1});
  CHECK(plane_self_int(s, 0) == 3);
  std::mt19937_64 rng(3);
  inner_rates(G, s, rng);
  for (const auto& v : g.vertices) {
    if (v.is_L) {
      CHECK(v.rate == Rat(1));
    } else if (v.self_int == -1) {
      CHECK(v.rate == Rat(4, 3));
      CHECK(v.mult.at("l") == 6);
    } else {
      CHECK(!v.rate);
    }
  }
}

TEST_CASE("two cuspidal cubics with five double points") {
  SISPresentation s = from_equation(P("(z*x^2+y^3)*(x^3+z*y^2)+z^7"));
  CHECK(s.components.size() == 2);
  int total = 0, odp = 0;
  for (const auto& p : s.points) {
    total += p.class_size;
    odp += p.ordinary_double_point ? p.class_size : 0;
  }
  CHECK(total == 6);
  CHECK(odp == 5);
  Gamma G = build_gamma(s, GraphMode::Inner);
  std::mt19937_64 rng(5);
  inner_rates(G, s, rng);
  const DecoratedGraph& g = G.graph;
  CHECK(g.vertices.size() == 12);
  CHECK(sorted_self_ints(g, true) == std::vector<int>{-23, -23});
  CHECK(sorted_self_ints(g, false) == std::vector<int>{-5, -2, -2, -1, -1, -1, -1, -1, -1, -1});
  std::map<std::string, int> rates;
  for (const auto& v : g.vertices)
    if (v.rate && !v.is_L) rates[std::to_string(v.self_int) + " " + v.rate->get_str()] += 1;
  CHECK(rates == std::map<std::string, int>{{"-1 3/2", 5}, {"-1 6/5", 2}, {"-5 5/4", 1}});
}

TEST_CASE("maximal-contact cusp pair") {
  for (const char* F : {"(y^3-z^2*x)*(y^3+z^2*x)+(x+y+z)^7", "(y^3-z^2*x)*(y^3+2*z^2*x)+(x+y+z)^7"}) {
    SISPresentation s = from_equation(P(F));
    Gamma G = build_gamma(s, GraphMode::Inner);
    std::mt19937_64 rng(5);
    inner_rates(G, s, rng);
    const DecoratedGraph& g = G.graph;
    CHECK(sorted_self_ints(g, true) == std::vector<int>{-21, -21});
    CHECK(sorted_self_ints(g, false) == std::vector<int>{-3, -2, -2, -2, -1, -1});
    int sevens = 0;
    for (const auto& v : g.vertices) sevens += v.rate == Rat(7, 6);
    CHECK(sevens == 2);
    auto mx = multiplicity_table(s, G, P("x"));
    auto my = multiplicity_table(s, G, P("y"));
    auto mz = multiplicity_table(s, G, P("z"));
    std::vector<std::string> triples;
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
      triples.push_back(std::to_string(mx[v]) + "," + std::to_string(my[v]) + "," + std::to_string(mz[v]));
    std::sort(triples.begin(), triples.end());
    CHECK(triples == std::vector<std::string>{"1,1,1", "1,1,1", "12,14,15", "3,3,2", "4,5,5", "6,5,4", "6,7,8", "9,7,6"});
  }
}
