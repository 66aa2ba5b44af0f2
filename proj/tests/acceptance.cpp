// One line per acceptance criterion.  argv[1]: path of the unit_tests binary
// (the randomized property suites live there).

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "sisres/cli.hpp"
#include "sisres/polar.hpp"
#include "sisres/report.hpp"
#include "sisres/resolve.hpp"

using namespace sisres;

namespace {

const char* kCubic = "y^3+x*z^2-x^4";
const char* kTwoCusps = "(z*x^2+y^3)*(x^3+z*y^2)+z^7";
const char* kX1 = "(y^3-z^2*x)*(y^3+z^2*x)+(x+y+z)^7";
const char* kX2 = "(y^3-z^2*x)*(y^3+2*z^2*x)+(x+y+z)^7";

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool c, const std::string& what) {
    if (c) return;
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

int failures = 0;

void criterion(int n, const std::string& title, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("threw ") + e.what());
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0) o.require(s < limit_s, "took " + std::to_string(s) + " s");
  if (!o.ok) ++failures;
  std::ostringstream line;
  line << (o.ok ? "PASS" : "FAIL") << "  [" << n << "] " << title;
  line.precision(3);
  line << std::fixed << "  (" << s << " s)";
  if (!o.detail.empty()) line << "  -- " << o.detail;
  std::cout << line.str() << std::endl;
}

std::string cli_out(const std::vector<std::string>& args, int* rc = nullptr) {
  std::ostringstream out, err;
  int r = run_cli(args, out, err);
  if (rc) *rc = r;
  return out.str();
}

int mult(const DecoratedGraph::Vertex& v, const std::string& k) {
  auto it = v.mult.find(k);
  return it == v.mult.end() ? -1 : it->second;
}

std::vector<int> non_l_self_ints(const DecoratedGraph& g) {
  std::vector<int> s;
  for (const auto& v : g.vertices)
    if (!v.is_L) s.push_back(v.self_int);
  std::sort(s.begin(), s.end());
  return s;
}

// The figure of the two-cusp example, built by hand.
DecoratedGraph two_cusps_figure() {
  DecoratedGraph g;
  auto rate = [](long p, long q) {
    Rat r(p, q);
    r.canonicalize();
    return r;
  };
  int L1 = g.add_vertex(-23, true), L2 = g.add_vertex(-23, true);
  g.vertices[L1].rate = g.vertices[L2].rate = rate(1, 1);
  int c = g.add_vertex(-5);
  g.vertices[c].rate = rate(5, 4);
  for (int L : {L1, L2}) {
    int m = g.add_vertex(-1);
    g.vertices[m].rate = rate(6, 5);
    int e = g.add_vertex(-2);
    g.add_edge(c, m);
    g.add_edge(m, e);
    g.add_edge(m, L);
  }
  for (int k = 0; k < 5; ++k) {
    int d = g.add_vertex(-1);
    g.vertices[d].rate = rate(3, 2);
    g.add_edge(d, L1);
    g.add_edge(d, L2);
  }
  g.normalize();
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  std::string unit_tests = argc > 1 ? argv[1] : "";

  criterion(1, "cuspidal cubic, min graph: chain (-2)-(-1)-(-3), L -9 on the (-1), l-mults (1,3,6,2)", 1.0,
            [](Outcome& o) {
              int rc = 0;
              GraphDocument d = from_json(cli_out({"sis-graph", kCubic, "--mode", "min"}, &rc));
              o.require(rc == 0, "exit code");
              const auto& g = d.graph;
              o.require(g.vertices.size() == 4, "vertex count");
              std::map<int, int> by_self;
              int L = -1;
              for (const auto& v : g.vertices) {
                if (v.is_L) L = v.id;
                else by_self[v.self_int] = v.id;
              }
              o.require(L >= 0 && g.vertices[L].self_int == -9, "L self-intersection");
              o.require(by_self.size() == 3 && by_self.count(-1) && by_self.count(-2) && by_self.count(-3),
                        "non-L self-intersections");
              if (!o.ok) return;
              std::vector<std::pair<int, int>> want = {{by_self[-2], by_self[-1]}, {by_self[-1], by_self[-3]},
                                                       {by_self[-1], L}};
              for (auto& e : want) e = {std::min(e.first, e.second), std::max(e.first, e.second)};
              std::sort(want.begin(), want.end());
              auto have = g.edges;
              std::sort(have.begin(), have.end());
              o.require(have == want, "edges");
              o.require(g.arrows.empty(), "arrows");
              o.require(mult(g.vertices[L], "l") == 1 && mult(g.vertices[by_self[-2]], "l") == 3 &&
                            mult(g.vertices[by_self[-1]], "l") == 6 && mult(g.vertices[by_self[-3]], "l") == 2,
                        "linear form multiplicities");
            });

  criterion(2, "cusp node: inner rate 4/3 from (m(l), m(f)) = (2, 6)", 0, [](Outcome& o) {
    GraphDocument d = germ_document("v^3+w^2", true);
    int nodes = 0;
    for (const auto& v : d.graph.vertices) {
      if (!v.rate) continue;
      ++nodes;
      o.require(mult(v, "l") == 2 && mult(v, "h") == 6, "pair at the node");
      Rat want(4, 3);
      o.require(*v.rate == want, "rate " + v.rate->get_str());
    }
    o.require(nodes == 1, "one node");
  });

  criterion(3, "two-cusp example, inner graph with rates isomorphic to the figure", 30.0, [](Outcome& o) {
    int rc = 0;
    GraphDocument d = from_json(cli_out({"sis-graph", kTwoCusps, "--mode", "inner", "--rates"}, &rc));
    o.require(rc == 0, "exit code");
    DecoratedGraph g = d.graph;
    g.arrows.clear();
    for (auto& v : g.vertices) v.mult.clear();
    o.require(isomorphic(g, two_cusps_figure()).has_value(), "not isomorphic to the figure");
  });

  std::optional<SISPresentation> x1, x2;
  std::optional<Gamma> g1, g2;
  criterion(4, "X1/X2 inner graphs: L -21/-21, {-1,-1,-2,-2,-2,-3}, node rates 7/6, isomorphic", 0,
            [&](Outcome& o) {
              x1 = from_equation(parse_poly(kX1));
              x2 = from_equation(parse_poly(kX2));
              g1 = build_gamma(*x1, GraphMode::Inner);
              g2 = build_gamma(*x2, GraphMode::Inner);
              std::mt19937_64 rng(1);
              inner_rates(*g1, *x1, rng);
              inner_rates(*g2, *x2, rng);
              for (const Gamma* g : {&*g1, &*g2}) {
                std::vector<int> ls;
                for (const auto& v : g->graph.vertices)
                  if (v.is_L) ls.push_back(v.self_int);
                o.require(ls == std::vector<int>{-21, -21}, "L self-intersections");
                o.require(non_l_self_ints(g->graph) == std::vector<int>{-3, -2, -2, -2, -1, -1}, "non-L self-intersections");
                int nodes = 0;
                for (const auto& v : g->graph.vertices) {
                  if (v.is_L || g->graph.valency(v.id) < 3) continue;
                  ++nodes;
                  o.require(v.rate && *v.rate == Rat(7, 6), "node rate");
                }
                o.require(nodes == 2, "two non-L nodes");
              }
              o.require(isomorphic(g1->graph, g2->graph).has_value(), "no bijection");
            });

  criterion(5, "X1/X2 multiplicity triples and the bold partial-derivative entries", 0, [&](Outcome& o) {
    if (!g1 || !g2) {
      o.require(false, "criterion 4 did not build the graphs");
      return;
    }
    using T = std::array<int, 3>;
    std::vector<T> want = {{1, 1, 1}, {1, 1, 1}, {12, 14, 15}, {6, 7, 8}, {4, 5, 5}, {9, 7, 6}, {6, 5, 4}, {3, 3, 2}};
    std::sort(want.begin(), want.end());
    // partials at each triple, from the figure: X1 then X2
    std::map<T, std::array<T, 2>> bold = {
        {{12, 14, 15}, {T{72, 70, 69}, T{72, 69, 69}}},
        {{6, 7, 8}, {T{36, 35, 36}, T{36, 35, 35}}},
        {{9, 7, 6}, {T{33, 35, 36}, T{33, 35, 36}}},
        {{6, 5, 4}, {T{22, 24, 24}, T{22, 24, 24}}},
        {{3, 3, 2}, {T{11, 12, 12}, T{11, 12, 12}}},
        {{4, 5, 5}, {T{24, 24, 23}, T{24, 24, 23}}},
        {{1, 1, 1}, {T{5, 5, 5}, T{5, 5, 5}}},
    };
    for (int k = 0; k < 2; ++k) {
      const SISPresentation& s = k == 0 ? *x1 : *x2;
      const Gamma& g = k == 0 ? *g1 : *g2;
      std::vector<std::vector<int>> xyz;
      for (int i = 0; i < 3; ++i) xyz.push_back(multiplicity_table(s, g, MPoly::variable(FieldCtx::rationals(), xyz_vars(), i)));
      PartialsTable p = partials_table(s, g);
      std::vector<T> have;
      for (std::size_t v = 0; v < xyz[0].size(); ++v) {
        T t{xyz[0][v], xyz[1][v], xyz[2][v]};
        have.push_back(t);
        T got{p.fx[v], p.fy[v], p.fz[v]};
        auto it = bold.find(t);
        if (it == bold.end()) continue;
        const T& exp = it->second[k];
        if (got != exp) {
          std::ostringstream m;
          m << "X" << k + 1 << " partials at (" << t[0] << "," << t[1] << "," << t[2] << "): got (" << got[0] << ","
            << got[1] << "," << got[2] << "), figure (" << exp[0] << "," << exp[1] << "," << exp[2] << ")";
          o.require(false, m.str());
        }
      }
      std::sort(have.begin(), have.end());
      o.require(have == want, "X" + std::to_string(k + 1) + " triples");
    }
  });

  criterion(6, "X1/X2 generic polar: multiplicities, extra blow-up (105) on X1, 8 vs 9 branches, verdict", 60.0,
            [&](Outcome& o) {
              if (!x1 || !x2) {
                o.require(false, "criterion 4 did not build the presentations");
                return;
              }
              std::mt19937_64 rng(7);
              PolarOptions opt;
              opt.samples = 5;
              PolarSample p1 = generic_polar(*x1, rng, opt), p2 = generic_polar(*x2, rng, opt);
              std::vector<int> want = {5, 5, 11, 22, 23, 33, 35, 69};
              for (PolarSample* p : {&p1, &p2}) {
                auto b = p->base_mult;
                std::sort(b.begin(), b.end());
                o.require(b == want, "base multiplicities");
              }
              o.require(p1.extra_blowups == 1 && p2.extra_blowups == 0, "extra blow-ups");
              int n105 = 0;
              int extra = 0;
              for (std::size_t v = 0; v < p1.mult.size(); ++v) {
                const VertexOrigin& from = p1.extended.origin[v];
                if (from.point < 0 || !p1.extended.trees[from.point]->nodes[from.node].extra) continue;
                ++extra;
                n105 += p1.mult[v] == 105;
              }
              o.require(extra == 1 && n105 == 1, "(105) on the new vertex");
              o.require(polar_branch_count(p1) == 8 && polar_branch_count(p2) == 9,
                        "branch counts " + std::to_string(polar_branch_count(p1)) + "/" +
                            std::to_string(polar_branch_count(p2)));
              RunOptions ro;
              ro.seed = 7;
              Json r = compare_report(kX1, kX2, true, ro);
              o.require(r["verdict"] == "inner-equivalent, polar data differ", "verdict");
            });

  criterion(7, "property suites (divisor identity, negative definiteness, additivity, Euclid oracle, coordinate changes)",
            0, [&](Outcome& o) {
              if (unit_tests.empty()) {
                o.require(false, "unit_tests path not given");
                return;
              }
              const char* suites[] = {
                  "principal divisor identity and negative definiteness on random germs",
                  "multiplicity is additive under products",
                  "v^p + w^q agrees with the Euclidean oracle",
                  "germ graphs do not depend on linear coordinates",
                  "sis graphs do not depend on linear coordinates",
                  "isomorphism is an equivalence relation",
              };
              for (const char* s : suites) {
                std::string cmd = "\"" + unit_tests + "\" --no-version --minimal -tc=\"" + s + "\" > /dev/null 2>&1";
                o.require(std::system(cmd.c_str()) == 0, s);
              }
            });

  criterion(8, "determinism: every command twice with the same seed, byte-identical", 0, [](Outcome& o) {
    std::vector<std::vector<std::string>> runs = {
        {"resolve-germ", "v^3+w^2", "--rates", "--seed", "5"},
        {"sis-graph", kTwoCusps, "--mode", "inner", "--rates", "--seed", "5"},
        {"sis-graph", kX1, "--mode", "inner", "--polar", "--format", "dot", "--seed", "5"},
        {"inner-rates", kX2, "--seed", "5"},
        {"polar", kX1, "--seed", "5"},
        {"compare", kX1, kX2, "--polar", "--seed", "5"},
        {"check", kCubic, "--seed", "5"},
    };
    for (const auto& args : runs) {
      int a = 0, b = 0;
      std::string x = cli_out(args, &a), y = cli_out(args, &b);
      o.require(a == 0 && b == 0 && !x.empty() && x == y, args[0]);
    }
  });

  std::cout << (failures == 0 ? "all criteria met" : std::to_string(failures) + " criterion(s) not met") << std::endl;
  return failures == 0 ? 0 : 1;
}
