#include "sisres/sis.hpp"

#include <algorithm>
#include <map>

#include "sisres/factor.hpp"

namespace sisres {

namespace {

const FieldCtx* Q() { return FieldCtx::rationals(); }

MPoly vw_const(const FieldCtx* K, const Scalar& c) { return MPoly::constant(K, vw_vars(), c); }
MPoly vw_var(const FieldCtx* K, int i) { return MPoly::variable(K, vw_vars(), i); }

// Chart coordinate -> 1, the other two -> v, w.
MPoly dehomogenize(const MPoly& F, int chart) {
  std::vector<MPoly> im(3);
  int k = 0;
  for (int i = 0; i < 3; ++i) im[i] = i == chart ? vw_const(F.ctx(), Scalar(1)) : vw_var(F.ctx(), k++);
  return F.substitute(im);
}

std::vector<MPoly> local_coords(const SingPoint& p) {
  std::vector<MPoly> im(3);
  im[p.chart] = vw_const(p.ctx, Scalar::one(p.ctx));
  im[p.axes[0]] = vw_const(p.ctx, p.coords[p.axes[0]]) + vw_var(p.ctx, 0);
  im[p.axes[1]] = vw_const(p.ctx, p.coords[p.axes[1]]) + vw_var(p.ctx, 1);
  return im;
}

// Q(s0, w) as a polynomial in w.
UPoly specialise_first(const MPoly& q, const Scalar& s0) {
  const FieldCtx* K = s0.ctx();
  std::vector<Scalar> c(std::max(0, q.degree_in(1)) + 1, Scalar::zero(K));
  std::map<int, Scalar> pw;
  for (const auto& [e, k] : q.terms()) {
    auto it = pw.find(e[0]);
    if (it == pw.end()) it = pw.emplace(e[0], s0.pow(e[0])).first;
    c[e[1]] += k * it->second;
  }
  return UPoly(K, c);
}

const FieldCtx* field_of(const UPoly& q) {
  if (q.degree() == 1) return Q();
  return FieldCtx::make_extension(Q(), q.coeffs(), "a1");
}

Scalar root_of(const UPoly& q, const FieldCtx* K) {
  if (q.degree() == 1) return -q.coeff(0) / q.coeff(1);
  return K->generator();
}

// Points [1 : v : w].  A shear v = s + c*w makes the projection to s
// injective on singular points; bad shears are retried.
std::vector<std::pair<std::array<Scalar, 3>, int>> affine_points(const MPoly& f) {
  MPoly P = dehomogenize(f, 0);
  if (P.total_degree() <= 1) return {};
  MPoly top = P.homogeneous_part(P.total_degree());
  const MPoly s = vw_var(Q(), 0), w = vw_var(Q(), 1);
  for (long attempt = 0; attempt < 40; ++attempt) {
    long c = attempt == 0 ? 0 : (attempt % 2 ? (attempt + 1) / 2 : -(attempt / 2)) * (1 + attempt / 7);
    if (top.evaluate({Scalar(c), Scalar(1)}).is_zero()) continue;
    MPoly q = P.substitute({s + w * Scalar(c), w});
    MPoly qs = q.derivative(0), qw = q.derivative(1);
    UPoly r1 = qs.is_zero() ? UPoly(Q()) : resultant(q, qs, 1).to_univariate(0);
    UPoly r2 = resultant(q, qw, 1).to_univariate(0);
    UPoly r = gcd(r1, r2);
    if (r.is_zero()) fail(ErrorKind::TangentConeNotReduced, "tangent cone has a multiple component");
    std::vector<std::pair<std::array<Scalar, 3>, int>> out;
    bool bad = false;
    if (r.degree() > 0) {
      for (const auto& [fac, e] : factor_univariate(squarefree_part(r))) {
        (void)e;
        const FieldCtx* K = field_of(fac);
        Scalar s0 = root_of(fac, K);
        UPoly a = specialise_first(q.embed(K), s0);
        UPoly b = specialise_first(qs.embed(K), s0);
        UPoly d = specialise_first(qw.embed(K), s0);
        UPoly g = squarefree_part(gcd(gcd(a, b), d));
        if (g.degree() <= 0) continue;
        if (g.degree() > 1) {
          bad = true;
          break;
        }
        Scalar w0 = -g.coeff(0);
        out.push_back({{Scalar::one(K), s0 + w0 * Scalar(c), w0}, fac.degree()});
      }
    }
    if (!bad) return out;
  }
  fail(ErrorKind::FieldExtensionFailure, "could not separate the singular points of C");
}

std::vector<std::pair<std::array<Scalar, 3>, int>> points_at_infinity(const MPoly& f) {
  std::vector<std::pair<std::array<Scalar, 3>, int>> out;
  // [0 : 1 : z]
  const std::vector<std::string> t{"t"};
  auto on_line = [&](const MPoly& F) {
    MPoly T = MPoly::variable(Q(), t, 0);
    return F.substitute({MPoly(Q(), t), MPoly::constant(Q(), t, Scalar(1)), T}).to_univariate(0);
  };
  UPoly g = on_line(f);
  for (int i = 0; i < 3; ++i) g = gcd(g, on_line(f.derivative(i)));
  if (g.is_zero()) fail(ErrorKind::TangentConeNotReduced, "the line x = 0 is a multiple component");
  if (g.degree() > 0)
    for (const auto& [fac, e] : factor_univariate(squarefree_part(g))) {
      (void)e;
      const FieldCtx* K = field_of(fac);
      out.push_back({{Scalar::zero(K), Scalar::one(K), root_of(fac, K)}, fac.degree()});
    }
  // [0 : 0 : 1]
  bool sing = f.evaluate({Scalar(0), Scalar(0), Scalar(1)}).is_zero();
  for (int i = 0; i < 3 && sing; ++i) sing = f.derivative(i).evaluate({Scalar(0), Scalar(0), Scalar(1)}).is_zero();
  if (sing) out.push_back({{Scalar(0), Scalar(0), Scalar(1)}, 1});
  return out;
}

std::string point_string(const std::array<Scalar, 3>& c) {
  std::string s = "[";
  for (int i = 0; i < 3; ++i) {
    if (i) s += " : ";
    s += c[i].to_string();
  }
  return s + "]";
}

}  // namespace

std::string SingPoint::describe() const {
  std::string s = point_string(coords);
  if (ctx->depth() > 0) s += " over " + ctx->describe();
  if (class_size > 1) s += ", " + std::to_string(class_size) + " conjugates";
  if (ordinary_double_point) s += ", ordinary double point";
  return s;
}

MPoly local_form(const MPoly& F, const SingPoint& p) { return F.embed(p.ctx).substitute(local_coords(p)); }

std::vector<SingPoint> tangent_cone_singularities(const MPoly& f, const MPoly& g, const std::vector<MPoly>& components) {
  auto raw = affine_points(f);
  for (auto& q : points_at_infinity(f)) raw.push_back(q);
  std::vector<SingPoint> out;
  for (auto& [c, size] : raw) {
    SingPoint p;
    p.ctx = c[0].ctx();
    for (const auto& x : c) p.ctx = common_ctx(p.ctx, x.ctx());
    for (int i = 0; i < 3; ++i) p.coords[i] = c[i].embed(p.ctx);
    p.chart = !p.coords[0].is_zero() ? 0 : (!p.coords[1].is_zero() ? 1 : 2);
    int k = 0;
    for (int i = 0; i < 3; ++i)
      if (i != p.chart) p.axes[k++] = i;
    p.class_size = size;
    p.germ = local_form(f, p);
    p.unit = local_form(g, p);
    if (!p.germ.constant_term().is_zero() || p.germ.order_at_origin() < 2)
      fail(ErrorKind::InconsistentDivisor, "located point " + point_string(p.coords) + " is not singular on C");
    if (p.unit.constant_term().is_zero())
      fail(ErrorKind::NotSuperisolated, "f_{d+1} vanishes at the singular point " + point_string(p.coords));
    for (std::size_t i = 0; i < components.size(); ++i) {
      MPoly l = local_form(components[i], p);
      if (l.constant_term().is_zero()) {
        p.local_components.push_back(l);
        p.components.push_back(static_cast<int>(i));
      }
    }
    p.ordinary_double_point = p.germ.order_at_origin() == 2 && distinct_tangent_lines(p.germ) == 2;
    out.push_back(std::move(p));
  }
  return out;
}

SISPresentation validate(const MPoly& f_d, const MPoly& f_dplus1) {
  if (f_d.nvars() != 3 || f_dplus1.nvars() != 3) fail(ErrorKind::InvalidArgument, "expected polynomials in x, y, z");
  if (!f_d.is_homogeneous() || f_d.is_zero()) fail(ErrorKind::NotHomogeneous, "f_d = " + f_d.to_string());
  if (!f_dplus1.is_homogeneous()) fail(ErrorKind::NotHomogeneous, "f_{d+1} = " + f_dplus1.to_string());
  SISPresentation s;
  s.d = f_d.total_degree();
  if (s.d < 2) fail(ErrorKind::DegreeMismatch, "tangent cone degree " + std::to_string(s.d) + " < 2");
  if (f_dplus1.total_degree() != s.d + 1)
    fail(ErrorKind::DegreeMismatch, "f_{d+1} has degree " + std::to_string(f_dplus1.total_degree()) + ", want " +
                                        std::to_string(s.d + 1));
  if (f_d.ctx() != Q() || f_dplus1.ctx() != Q()) fail(ErrorKind::InvalidArgument, "coefficients must be rational");
  s.f = f_d;
  s.g = -f_dplus1;
  s.components = factor_homogeneous(s.f);
  for (const auto& c : s.components)
    if (divide_exact(f_dplus1, c))
      fail(ErrorKind::NotSuperisolated, "f_{d+1} vanishes on the component " + c.to_string());
  s.points = tangent_cone_singularities(s.f, s.g, s.components);
  return s;
}

SISPresentation from_equation(const MPoly& F) {
  auto parts = F.homogeneous_parts();
  if (parts.empty()) fail(ErrorKind::ZeroPolynomial, "equation is zero");
  if (parts.size() != 2) fail(ErrorKind::DegreeMismatch, "need exactly two homogeneous parts, got " + std::to_string(parts.size()));
  auto lo = parts.begin(), hi = std::next(parts.begin());
  if (hi->first != lo->first + 1) fail(ErrorKind::DegreeMismatch, "homogeneous parts of non-consecutive degree");
  return validate(lo->second, hi->second);
}

Gamma assemble(const SISPresentation& s, GraphMode mode, std::vector<std::optional<BlowupTree>> trees) {
  Gamma G;
  G.mode = mode;
  G.trees = std::move(trees);
  DecoratedGraph& g = G.graph;
  for (std::size_t i = 0; i < s.components.size(); ++i) {
    int v = g.add_vertex(0, true);
    g.vertices[v].component = static_cast<int>(i);
    G.origin.push_back({-1, -1, static_cast<int>(i), 0, -1});
    G.l_vertex.push_back(v);
  }
  for (std::size_t k = 0; k < s.points.size(); ++k) {
    const SingPoint& p = s.points[k];
    if (!G.trees[k]) {
      std::vector<int> ends;
      for (std::size_t j = 0; j < p.local_components.size(); ++j)
        for (int r = 0; r < p.local_components[j].order_at_origin(); ++r) ends.push_back(p.components[j]);
      if (ends.size() != 2) fail(ErrorKind::InvalidArgument, "unresolved point is not a double point");
      for (int c = 0; c < p.class_size; ++c) g.add_edge(G.l_vertex[ends[0]], G.l_vertex[ends[1]]);
      continue;
    }
    const BlowupTree& t = *G.trees[k];
    DualGraph dg = dual_graph(t);
    const int nloc = static_cast<int>(p.local_components.size());
    for (int c = 0; c < p.class_size; ++c) {
      const int base = static_cast<int>(g.vertices.size());
      for (std::size_t i = 0; i < dg.vertices.size(); ++i) {
        g.add_vertex(dg.vertices[i].self_int);
        G.origin.push_back({static_cast<int>(k), dg.vertices[i].node, -1, c, static_cast<int>(i)});
      }
      for (auto [a, b] : dg.edges) g.add_edge(base + a, base + b);
      for (const auto& a : dg.arrows) {
        if (a.at < 0) fail(ErrorKind::InconsistentDivisor, "unattached branch at a singular point");
        if (a.component < nloc) g.add_edge(G.l_vertex[p.components[a.component]], base + a.at);
        else g.arrows.push_back({base + a.at, std::nullopt});
      }
    }
  }
  l_node_self_int(G, s);
  return G;
}

Gamma build_gamma(const SISPresentation& s, GraphMode mode) {
  std::vector<std::optional<BlowupTree>> trees;
  for (const auto& p : s.points) {
    if (mode == GraphMode::Min && p.ordinary_double_point) trees.emplace_back();
    else trees.emplace_back(resolve_curves(p.local_components));
  }
  return assemble(s, mode, std::move(trees));
}

namespace {

int local_germ_mult(const SISPresentation& s, const Gamma& G, const VertexOrigin& o) {
  const BlowupNode& n = G.trees[o.point]->nodes[o.node];
  int m = 0;
  for (std::size_t j = 0; j < s.points[o.point].local_components.size(); ++j) m += n.comp_mult[j];
  return m;
}

}  // namespace

void l_node_self_int(Gamma& G, const SISPresentation& s) {
  DecoratedGraph& g = G.graph;
  const int n = static_cast<int>(g.vertices.size());
  // a generic line misses every singular point, so it pulls back to h times a unit there
  std::vector<int> m(n, 1);
  for (int v = 0; v < n; ++v)
    if (G.origin[v].point >= 0) m[v] = local_germ_mult(s, G, G.origin[v]);
  auto adj = g.adjacency();
  for (std::size_t i = 0; i < s.components.size(); ++i) {
    int v = G.l_vertex[i];
    int sum = s.components[i].total_degree();
    for (int u : adj[v])
      if (u != v) sum += m[u];
    g.vertices[v].self_int = -sum;  // m = 1 on an L-curve
  }
  for (int v = 0; v < n; ++v) {
    g.vertices[v].mult["l"] = m[v];
    if (g.vertices[v].is_L) continue;
    int total = m[v] * g.vertices[v].self_int;
    for (int u : adj[v]) total += m[u];
    if (total != 0)
      fail(ErrorKind::InconsistentDivisor, "divisor of a linear form meets vertex " + std::to_string(v) + " with degree " +
                                               std::to_string(total));
  }
}

int plane_self_int(const SISPresentation& s, int component) {
  if (component < 0 || component >= static_cast<int>(s.components.size()))
    fail(ErrorKind::InvalidArgument, "no such component");
  const int deg = s.components[component].total_degree();
  int sum = 0;
  for (const auto& p : s.points) {
    if (p.ordinary_double_point) continue;
    BlowupTree t = resolve_curves(p.local_components);
    std::vector<int> inst = instance_nodes(t);
    for (std::size_t j = 0; j < p.components.size(); ++j) {
      if (p.components[j] != component) continue;
      for (int node : inst) {
        int o = t.nodes[node].comp_orders[j];
        sum += p.class_size * o * o;
      }
    }
  }
  return deg * deg - sum;
}

void inner_rates(Gamma& G, const SISPresentation& s, std::mt19937_64& rng) {
  DecoratedGraph& g = G.graph;
  for (auto& v : g.vertices)
    if (v.is_L) v.rate = Rat(1);
  for (std::size_t k = 0; k < s.points.size(); ++k) {
    if (!G.trees[k]) continue;
    const BlowupTree& t = *G.trees[k];
    DualGraph dg = dual_graph(t);
    std::set<int> nodes = detect_nodes(dg, t);
    std::vector<int> lin = generic_linear_multiplicities(t, rng);
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
      const VertexOrigin& o = G.origin[v];
      if (o.point != static_cast<int>(k) || !nodes.count(o.local)) continue;
      Rat q(lin[o.node], local_germ_mult(s, G, o));
      q.canonicalize();
      g.vertices[v].rate = q + 1;
    }
  }
}

RatFunc pullback(const SISPresentation& s, const SingPoint& p, const MPoly& G) {
  (void)s;
  const FieldCtx* K = common_ctx(p.ctx, G.ctx());
  std::vector<MPoly> im = local_coords(p);
  auto parts = G.embed(K).homogeneous_parts();
  const int D = parts.empty() ? 0 : parts.rbegin()->first;
  MPoly one = vw_const(K, Scalar::one(K));
  std::vector<MPoly> fp{one}, gp{one};
  for (int k = 1; k <= D; ++k) {
    fp.push_back(fp.back() * p.germ);
    gp.push_back(gp.back() * p.unit);
  }
  MPoly num(K, vw_vars());
  for (const auto& [k, part] : parts) num += fp[k] * gp[D - k] * part.substitute(im);
  return {num, gp[D]};
}

int l_curve_valuation(const SISPresentation& s, int component, const MPoly& G) {
  if (G.is_zero()) fail(ErrorKind::ZeroOnComponent, "function is zero");
  if (divide_exact(G, s.equation())) fail(ErrorKind::ZeroOnComponent, G.to_string() + " vanishes on the surface");
  const MPoly& fi = s.components.at(component);
  int chart = 0;
  while (fi == MPoly::variable(Q(), xyz_vars(), chart)) ++chart;
  // on X* the L-curve is {x = 0}, and f_i = x * g / (other components) there
  MPoly pi = dehomogenize(fi, chart);
  MPoly other = vw_const(Q(), Scalar(1));
  for (std::size_t j = 0; j < s.components.size(); ++j)
    if (static_cast<int>(j) != component) other = other * dehomogenize(s.components[j], chart);
  MPoly gl = dehomogenize(s.g, chart);
  std::map<int, MPoly> coef;
  for (const auto& [k, part] : G.homogeneous_parts()) coef[k] = dehomogenize(part, chart);
  for (int step = 0; step < 1000; ++step) {
    while (!coef.empty() && coef.begin()->second.is_zero()) coef.erase(coef.begin());
    if (coef.empty()) break;
    auto [k, lead] = *coef.begin();
    auto q = divide_exact(lead, pi);
    if (!q) return k;
    coef.erase(coef.begin());
    for (auto& [j, c] : coef) c = c * other;
    MPoly moved = gl * *q;
    auto it = coef.find(k + 1);
    if (it == coef.end()) coef.emplace(k + 1, moved);
    else it->second += moved;
  }
  fail(ErrorKind::ZeroOnComponent, G.to_string() + " vanishes along an L-curve to unbounded order");
}

std::vector<int> multiplicity_table(const SISPresentation& s, const Gamma& G, const MPoly& F) {
  const int n = static_cast<int>(G.graph.vertices.size());
  std::vector<int> out(n, 0);
  std::map<int, std::vector<int>> cache;
  for (int v = 0; v < n; ++v) {
    const VertexOrigin& o = G.origin[v];
    if (o.point < 0) {
      out[v] = l_curve_valuation(s, o.component, F);
      continue;
    }
    auto it = cache.find(o.point);
    if (it == cache.end()) {
      RatFunc r = pullback(s, s.points[o.point], F);
      if (r.num.is_zero()) fail(ErrorKind::ZeroOnComponent, F.to_string() + " vanishes on the surface");
      it = cache.emplace(o.point, multiplicities(*G.trees[o.point], r)).first;
    }
    out[v] = it->second[o.node];
  }
  return out;
}

}  // namespace sisres
