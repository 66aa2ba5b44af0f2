#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "doctest.h"
#include "sisres/cli.hpp"
#include "sisres/report.hpp"

using namespace sisres;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct GoldenCase {
  std::string name;
  std::vector<std::string> args;
};

std::vector<GoldenCase> manifest() {
  std::ifstream in(std::string(SISRES_GOLDEN_DIR) + "/MANIFEST");
  std::vector<GoldenCase> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, '|')) f.push_back(tok);
    out.push_back({f[0], std::vector<std::string>(f.begin() + 1, f.end())});
  }
  return out;
}

int cli(const std::vector<std::string>& args, std::string* out = nullptr, std::string* err = nullptr) {
  std::ostringstream o, e;
  int rc = run_cli(args, o, e);
  if (out) *out = o.str();
  if (err) *err = e.str();
  return rc;
}

DecoratedGraph random_graph(std::mt19937_64& rng, int n) {
  DecoratedGraph g;
  std::uniform_int_distribution<int> si(-4, -1), coin(0, 3);
  for (int i = 0; i < n; ++i) {
    int v = g.add_vertex(si(rng), coin(rng) == 0);
    if (coin(rng) == 0) g.vertices[v].rate = Rat(coin(rng) + 2, 2);
  }
  for (int i = 1; i < n; ++i) g.add_edge(std::uniform_int_distribution<int>(0, i - 1)(rng), i);
  for (int k = 0; k < n / 3; ++k) {
    int a = std::uniform_int_distribution<int>(0, n - 1)(rng), b = std::uniform_int_distribution<int>(0, n - 1)(rng);
    if (a != b) g.add_edge(a, b);
  }
  for (int k = 0; k < n / 2; ++k) g.arrows.push_back({std::uniform_int_distribution<int>(0, n - 1)(rng), std::nullopt});
  g.normalize();
  return g;
}

DecoratedGraph shuffled(const DecoratedGraph& g, std::mt19937_64& rng, std::vector<int>* perm_out = nullptr) {
  std::vector<int> perm(g.vertices.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  if (perm_out) *perm_out = perm;
  return relabel(g, perm);
}

}  // namespace

TEST_CASE("golden corpus reproduces byte for byte") {
  auto cases = manifest();
  REQUIRE(cases.size() >= 10);
  for (const auto& c : cases) {
    CAPTURE(c.name);
    std::string out;
    REQUIRE(cli(c.args, &out) == 0);
    CHECK(out == slurp(std::string(SISRES_GOLDEN_DIR) + "/" + c.name));
  }
}

TEST_CASE("json round trip over the golden graphs") {
  int n = 0;
  for (const auto& c : manifest()) {
    if (c.name.size() < 5 || c.name.substr(c.name.size() - 5) != ".json") continue;
    if (c.args[0] == "compare" || c.args[0] == "check") continue;
    CAPTURE(c.name);
    std::string text = slurp(std::string(SISRES_GOLDEN_DIR) + "/" + c.name);
    GraphDocument d = from_json(text);
    CHECK(from_json(to_json(d)) == d);
    CHECK(to_json(d) == text);
    ++n;
  }
  CHECK(n >= 8);
}

TEST_CASE("l-curve components survive a round trip") {
  GraphDocument d = sis_document("(z*x^2+y^3)*(x^3+z*y^2)+z^7", RunOptions{});
  GraphDocument e = from_json(to_json(d));
  std::set<int> comps;
  for (const auto& v : e.graph.vertices)
    if (v.is_L) comps.insert(v.component);
  CHECK(comps == std::set<int>{0, 1});
}

TEST_CASE("empty document") {
  GraphDocument d;
  std::string j = to_json(d);
  CHECK(from_json(j) == d);
  CHECK(to_dot(d) == "graph G {\n  node [shape=circle, fontsize=10];\n}\n");
}

TEST_CASE("schema version is enforced") {
  std::string j = to_json(GraphDocument{});
  auto pos = j.find("\"schema\": 1");
  REQUIRE(pos != std::string::npos);
  j.replace(pos, 11, "\"schema\": 2");
  try {
    from_json(j);
    FAIL("accepted schema 2");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SchemaVersionMismatch);
  }
  CHECK_THROWS_AS(from_json("{ not json"), ParseError);
}

TEST_CASE("dot for the cuspidal cubic") {
  GraphDocument d = sis_document("y^3+x*z^2-x^4", RunOptions{});
  std::string dot = to_dot(d);
  int vertices = 0, black = 0;
  std::stringstream ss(dot);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.rfind("  v", 0) == 0 && line.find("label=") != std::string::npos) ++vertices;
    if (line.find("fillcolor=black") != std::string::npos) ++black;
  }
  CHECK(vertices == 4);
  CHECK(black == 1);
  for (const char* s : {"\"-2", "\"-1", "\"-3", "\"-9"}) CHECK(dot.find(s) != std::string::npos);
}

TEST_CASE("two cuspidal cubics json: double point vertices") {
  RunOptions o;
  o.mode = GraphMode::Inner;
  o.rates = true;
  GraphDocument d = sis_document("(z*x^2+y^3)*(x^3+z*y^2)+z^7", o);
  std::string j = to_json(d);
  int n = 0;
  for (auto p = j.find("\"rate\": \"3/2\""); p != std::string::npos; p = j.find("\"rate\": \"3/2\"", p + 1)) ++n;
  CHECK(n == 5);
  // twelve vertices here; see the README note on the vertex count
  CHECK(d.graph.vertices.size() == 12);
}

TEST_CASE("isomorphism: relabeling, and distinct graphs") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    DecoratedGraph g = random_graph(rng, 3 + t % 25);
    std::vector<int> perm;
    DecoratedGraph h = shuffled(g, rng, &perm);
    auto m = isomorphic(g, h);
    REQUIRE(m.has_value());
    // map sends old vertex perm[i] to new vertex i
    for (std::size_t i = 0; i < perm.size(); ++i) {
      const auto& a = g.vertices[perm[i]];
      const auto& b = h.vertices[(*m)[perm[i]]];
      CHECK(a.self_int == b.self_int);
      CHECK(a.is_L == b.is_L);
      CHECK(a.rate == b.rate);
    }
    CHECK(canonical_form(g) == canonical_form(h));
  }
  GraphDocument a = sis_document("y^3+x*z^2-x^4", RunOptions{});
  GraphDocument b = sis_document("(z*x^2+y^3)*(x^3+z*y^2)+z^7", RunOptions{});
  CHECK_FALSE(isomorphic(a.graph, b.graph).has_value());
}

TEST_CASE("isomorphism is an equivalence relation") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    DecoratedGraph g = random_graph(rng, 2 + t % 20);
    DecoratedGraph h = shuffled(g, rng), k = shuffled(h, rng);
    REQUIRE(isomorphic(g, g).has_value());
    auto gh = isomorphic(g, h), hg = isomorphic(h, g), hk = isomorphic(h, k);
    REQUIRE(gh);
    REQUIRE(hg);
    REQUIRE(hk);
    // inverse of g->h and composition g->h->k are bijections preserving decorations
    std::vector<int> inv(gh->size());
    for (std::size_t i = 0; i < gh->size(); ++i) inv[(*gh)[i]] = static_cast<int>(i);
    std::vector<int> comp(gh->size());
    for (std::size_t i = 0; i < gh->size(); ++i) comp[i] = (*hk)[(*gh)[i]];
    std::vector<int> pinv(inv.size()), pcomp(comp.size());
    // relabel takes new->old
    for (std::size_t i = 0; i < inv.size(); ++i) pinv[inv[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < comp.size(); ++i) pcomp[comp[i]] = static_cast<int>(i);
    DecoratedGraph hh = relabel(h, pinv);
    DecoratedGraph gk = relabel(g, pcomp);
    hh.normalize();
    gk.normalize();
    DecoratedGraph g2 = g, k2 = k;
    g2.normalize();
    k2.normalize();
    CHECK(hh.edges == g2.edges);
    CHECK(gk.edges == k2.edges);
    CHECK(isomorphic(g, k).has_value());
    // a changed self-intersection breaks it
    DecoratedGraph bad = k;
    bad.vertices[0].self_int -= 7;
    CHECK_FALSE(isomorphic(g, bad).has_value());
  }
}

TEST_CASE("cli exit codes") {
  std::string out, err;
  CHECK(cli({"sis-graph", "y^3+x*z^2-x^4"}, &out, &err) == 0);
  CHECK(err.empty());
  // x^2*y is not reduced
  CHECK(cli({"sis-graph", "x^2*y+z^4"}, &out, &err) == 1);
  CHECK(err.find("TangentConeNotReduced") != std::string::npos);
  CHECK(out.empty());
  CHECK(cli({"check", "(y^3-x*z^2)+x^2*y^2"}, &out, &err) == 1);
  CHECK(cli({"sis-graph", "y^3+"}, &out, &err) == 2);
  CHECK(cli({"bogus"}, &out, &err) == 2);
  CHECK(cli({"sis-graph", "y^3+x*z^2-x^4", "--mode", "outer"}, &out, &err) == 2);
  CHECK(cli({"compare", "y^3+x*z^2-x^4", "y^3+x*z^2-x^4", "--format", "dot"}, &out, &err) == 2);
  CHECK(cli({"--help"}, &out, &err) == 0);
}

TEST_CASE("same seed, same bytes") {
  const std::vector<std::string> args = {"polar", "(y^3-z^2*x)*(y^3+2*z^2*x)+(x+y+z)^7", "--seed", "3"};
  std::string a, b;
  REQUIRE(cli(args, &a) == 0);
  REQUIRE(cli(args, &b) == 0);
  CHECK(a == b);
}
