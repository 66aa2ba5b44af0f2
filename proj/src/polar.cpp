#include "sisres/polar.hpp"

#include <algorithm>

namespace sisres {

namespace {

MPoly partial(const SISPresentation& s, int i) { return s.equation().derivative(i); }

MPoly combine(const SISPresentation& s, const std::array<long, 3>& c) {
  MPoly G = partial(s, 0) * Scalar(c[0]);
  G += partial(s, 1) * Scalar(c[1]);
  G += partial(s, 2) * Scalar(c[2]);
  return G;
}

// The polar near p with the L-curves divided out.
MPoly local_polar(const SISPresentation& s, const SingPoint& p, const MPoly& G, const std::vector<int>& l_mult) {
  MPoly q = pullback(s, p, G).num;
  for (std::size_t j = 0; j < p.local_components.size(); ++j) {
    for (int r = 0; r < l_mult[p.components[j]]; ++r) {
      auto d = divide_exact(q, p.local_components[j]);
      if (!d) fail(ErrorKind::InconsistentDivisor, "polar is not divisible by its L-curve multiplicity");
      q = *d;
    }
  }
  return q;
}

}  // namespace

PartialsTable partials_table(const SISPresentation& s, const Gamma& g) {
  return {multiplicity_table(s, g, partial(s, 0)), multiplicity_table(s, g, partial(s, 1)),
          multiplicity_table(s, g, partial(s, 2))};
}

PolarSample generic_polar(const SISPresentation& s, std::mt19937_64& rng, const PolarOptions& opt) {
  if (opt.samples < 3) fail(ErrorKind::InvalidArgument, "need at least 3 samples");
  PolarSample out;
  out.base = build_gamma(s, GraphMode::Inner);
  std::uniform_int_distribution<long> coef(-opt.box, opt.box);
  std::vector<std::vector<int>> tables;
  while (static_cast<int>(out.drawn.size()) < opt.samples) {
    std::array<long, 3> c{coef(rng), coef(rng), coef(rng)};
    if (c[0] == 0 && c[1] == 0 && c[2] == 0) continue;
    out.drawn.push_back(c);
    tables.push_back(multiplicity_table(s, out.base, combine(s, c)));
  }
  out.base_mult = tables[0];
  for (const auto& t : tables)
    for (std::size_t v = 0; v < t.size(); ++v) out.base_mult[v] = std::min(out.base_mult[v], t[v]);
  int chosen = -1;
  for (std::size_t k = 0; k < tables.size(); ++k) {
    if (tables[k] != out.base_mult) continue;
    ++out.agreeing;
    if (chosen < 0) chosen = static_cast<int>(k);
  }
  if (out.agreeing < opt.samples - 1)
    fail(ErrorKind::GenericityAlarm, std::to_string(out.agreeing) + " of " + std::to_string(opt.samples) +
                                         " polar samples attain the minimum");
  out.coeffs = out.drawn[chosen];
  out.G = combine(s, out.coeffs);

  std::vector<int> l_mult(s.components.size());
  for (std::size_t i = 0; i < s.components.size(); ++i) l_mult[i] = out.base_mult[out.base.l_vertex[i]];

  std::vector<std::optional<BlowupTree>> trees = out.base.trees;
  for (std::size_t k = 0; k < s.points.size(); ++k) {
    MPoly q = local_polar(s, s.points[k], out.G, l_mult);
    if (!q.constant_term().is_zero()) continue;  // polar misses the point
    trees[k] = extend_resolution(*trees[k], q);
  }
  out.extended = assemble(s, GraphMode::Inner, trees);
  out.extra_blowups =
      static_cast<int>(out.extended.graph.vertices.size()) - static_cast<int>(out.base.graph.vertices.size());
  out.mult = multiplicity_table(s, out.extended, out.G);

  // branches through an L-curve away from the singular points
  DecoratedGraph& g = out.extended.graph;
  auto adj = g.adjacency();
  for (std::size_t i = 0; i < s.components.size(); ++i) {
    int v = out.extended.l_vertex[i];
    int sum = out.mult[v] * g.vertices[v].self_int;
    for (int u : adj[v])
      if (u != v) sum += out.mult[u];
    if (sum > 0) fail(ErrorKind::InconsistentDivisor, "negative polar intersection with an L-curve");
    for (int r = 0; r < -sum; ++r) g.arrows.push_back({v, std::nullopt});
  }
  g.normalize();
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    g.vertices[v].mult["polar"] = out.mult[v];
    if (g.vertices[v].is_L) continue;
    int total = out.mult[v] * g.vertices[v].self_int + g.arrow_count(static_cast<int>(v));
    for (int u : adj[v]) total += out.mult[u];
    if (total != 0)
      fail(ErrorKind::InconsistentDivisor, "polar divisor meets vertex " + std::to_string(v) + " with degree " +
                                               std::to_string(total));
  }
  return out;
}

int polar_branch_count(const PolarSample& p) { return static_cast<int>(p.extended.graph.arrows.size()); }

OuterEvidence outer_evidence_report(const SISPresentation& a, const SISPresentation& b, std::mt19937_64& rng,
                                    const PolarOptions& opt) {
  OuterEvidence ev;
  Gamma ga = build_gamma(a, GraphMode::Inner), gb = build_gamma(b, GraphMode::Inner);
  inner_rates(ga, a, rng);
  inner_rates(gb, b, rng);
  ev.inner_map = isomorphic(ga.graph, gb.graph);
  ev.inner_equivalent = ev.inner_map.has_value();
  if (!ev.inner_equivalent) {
    ev.verdict = "not inner-equivalent";
    return ev;
  }
  PolarSample pa = generic_polar(a, rng, opt), pb = generic_polar(b, rng, opt);
  ev.polar_mults = {pa.mult, pb.mult};
  for (auto& m : ev.polar_mults) std::sort(m.begin(), m.end());
  ev.branch_counts = {polar_branch_count(pa), polar_branch_count(pb)};
  ev.extra_blowups = {pa.extra_blowups, pb.extra_blowups};
  IsoOptions iso;
  iso.rates = false;
  iso.mults = true;
  ev.polar_graphs_isomorphic = isomorphic(pa.extended.graph, pb.extended.graph, iso).has_value();
  bool same = ev.polar_graphs_isomorphic && ev.branch_counts[0] == ev.branch_counts[1];
  ev.verdict = same ? "inner-equivalent, polar data agree (no conclusion on outer geometry)"
                    : "inner-equivalent, polar data differ";
  return ev;
}

}  // namespace sisres
