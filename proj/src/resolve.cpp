#include "sisres/resolve.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "sisres/factor.hpp"

namespace sisres {

namespace {

// (a, b) = (s, s*t), divided by s^ord
MPoly chart_a(const MPoly& f, int ord) {
  MPoly r(f.ctx(), f.vars());
  for (const auto& [e, c] : f.terms()) r.add_term({e[0] + e[1] - ord, e[1]}, c);
  return r;
}

// (a, b) = (s*t, s), divided by s^ord
MPoly chart_b(const MPoly& f, int ord) {
  MPoly r(f.ctx(), f.vars());
  for (const auto& [e, c] : f.terms()) r.add_term({e[0] + e[1] - ord, e[0]}, c);
  return r;
}

UPoly restrict_to_exceptional(const MPoly& f) { return f.coeff_in(0, 0).to_univariate(1); }

bool passes(const MPoly& f) { return !f.is_zero() && f.constant_term().is_zero(); }

bool upoly_order(const UPoly& a, const UPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return a.to_string() < b.to_string();
}

class Resolver {
public:
  Resolver(BlowupTree& t, bool extend) : t_(t), extend_(extend) {
    for (const auto& n : t_.nodes) step_ = std::max(step_, n.birth_step + 1);
  }

  void visit(const LocalChart& pt, int parent, Chart chart, const Scalar& shift, int weight, int existing) {
    const std::size_t nc = pt.curves.size();
    std::vector<int> orders(nc);
    int m = 0;
    for (std::size_t i = 0; i < nc; ++i) {
      if (pt.curves[i].is_zero()) fail(ErrorKind::ZeroPolynomial, "curve vanishes identically");
      orders[i] = passes(pt.curves[i]) ? pt.curves[i].order_at_origin() : 0;
      m += orders[i];
    }
    const int n_axis = (pt.through[0] >= 0) + (pt.through[1] >= 0);
    if (existing < 0) {
      if (parent < 0) {
        if (m == 0) fail(ErrorKind::CenterNotOnDivisor, "germ does not pass through the origin");
        if (m == 1) {
          int i = static_cast<int>(std::find(orders.begin(), orders.end(), 1) - orders.begin());
          t_.arrows.push_back({-1, weight, i});
          return;
        }
      } else {
        if (m == 0) return;
        if (m == 1 && n_axis == 1) {
          int i = static_cast<int>(std::find(orders.begin(), orders.end(), 1) - orders.begin());
          const MPoly& c = pt.curves[i];
          bool transverse = pt.through[0] >= 0 ? !c.coeff({0, 1}).is_zero() : !c.coeff({1, 0}).is_zero();
          if (transverse) {
            t_.arrows.push_back({pt.through[0] >= 0 ? pt.through[0] : pt.through[1], weight, i});
            return;
          }
        }
      }
    }
    int id = existing;
    if (id < 0) {
      if (static_cast<int>(t_.nodes.size()) >= t_.max_nodes)
        fail(ErrorKind::NonReduced, "resolution exceeds " + std::to_string(t_.max_nodes) + " blow-ups");
      id = static_cast<int>(t_.nodes.size());
      BlowupNode n;
      n.id = id;
      n.parent = parent;
      n.chart = chart;
      n.shift = shift;
      n.ctx = pt.ctx;
      n.weight = weight;
      n.through = pt.through;
      n.birth_step = step_++;
      n.extra = extend_;
      t_.nodes.push_back(n);
      if (parent >= 0) t_.nodes[parent].children.push_back(id);
    }
    {
      BlowupNode& n = t_.nodes[id];
      n.comp_orders = orders;
      n.comp_mult.assign(nc, 0);
      for (std::size_t i = 0; i < nc; ++i) {
        int v = orders[i];
        for (int k : n.through)
          if (k >= 0) v += t_.nodes[k].comp_mult.at(i);
        n.comp_mult[i] = v;
      }
    }

    ChartTransform ta = blow_up(pt, Chart::A);
    ChartTransform tb = blow_up(pt, Chart::B);

    // points of the new curve in chart A
    std::vector<UPoly> factors;
    for (const auto& c : ta.strict) {
      UPoly r = restrict_to_exceptional(c);
      if (r.degree() <= 0) continue;
      for (auto& [q, e] : factor_univariate(r)) {
        if (std::find(factors.begin(), factors.end(), q) == factors.end()) factors.push_back(q);
      }
    }
    std::sort(factors.begin(), factors.end(), upoly_order);

    std::vector<int> old_children = t_.nodes[id].children;
    std::vector<bool> used(old_children.size(), false);
    for (const auto& q : factors) {
      int match = -1;
      for (std::size_t k = 0; k < old_children.size(); ++k) {
        const BlowupNode& ch = t_.nodes[old_children[k]];
        if (ch.chart != Chart::A || used[k]) continue;
        if (q.embed(ch.ctx).eval(ch.shift).is_zero()) {
          match = static_cast<int>(k);
          break;
        }
      }
      if (match >= 0) {
        used[match] = true;
        const BlowupNode ch = t_.nodes[old_children[match]];
        visit_a(pt, ta, id, ch.ctx, ch.shift, ch.weight, ch.id);
        continue;
      }
      if (q.degree() > 1 && arrow_only(ta, q, id)) continue;
      const FieldCtx* ctx = pt.ctx;
      Scalar c;
      int w = 1;
      if (q.degree() == 1) {
        c = -q.coeff(0);
      } else {
        if (pt.ctx->depth() + 1 > t_.max_depth)
          fail(ErrorKind::FieldExtensionFailure, "tower depth cap " + std::to_string(t_.max_depth) + " exceeded");
        ctx = FieldCtx::make_extension(pt.ctx, q.coeffs(), "a" + std::to_string(pt.ctx->depth() + 1));
        c = ctx->generator();
        w = q.degree();
      }
      visit_a(pt, ta, id, ctx, c, w, -1);
    }
    for (std::size_t k = 0; k < old_children.size(); ++k) {
      const BlowupNode ch = t_.nodes[old_children[k]];
      if (ch.chart == Chart::A && !used[k]) visit_a(pt, ta, id, ch.ctx, ch.shift, ch.weight, ch.id);
    }

    // origin of chart B
    int existing_b = -1;
    for (int k : old_children)
      if (t_.nodes[k].chart == Chart::B) existing_b = k;
    bool through_b = false;
    for (const auto& c : tb.strict) through_b = through_b || passes(c);
    if (through_b || existing_b >= 0) {
      LocalChart child{pt.ctx, tb.strict, {id, pt.through[0]}};
      visit(child, id, Chart::B, Scalar::zero(pt.ctx), 1, existing_b);
    }
  }

private:
  // Conjugate points where a single curve crosses the new curve simply need
  // no blow-up and no field extension.
  bool arrow_only(const ChartTransform& ta, const UPoly& q, int id) {
    int hit = -1;
    for (std::size_t i = 0; i < ta.strict.size(); ++i) {
      UPoly r = restrict_to_exceptional(ta.strict[i]);
      if (r.degree() <= 0) continue;
      auto [quo, rem] = divmod(r, q);
      if (!rem.is_zero()) continue;
      if (hit >= 0 || divmod(quo, q).second.is_zero()) return false;
      hit = static_cast<int>(i);
    }
    if (hit < 0) return false;
    t_.arrows.push_back({id, q.degree(), hit});
    return true;
  }

  void visit_a(const LocalChart& pt, const ChartTransform& ta, int id, const FieldCtx* ctx, const Scalar& c, int w,
               int existing) {
    LocalChart child{ctx, {}, {id, c.is_zero() ? pt.through[1] : -1}};
    for (const auto& s : ta.strict) child.curves.push_back(s.embed(ctx).translate({Scalar::zero(ctx), c}));
    visit(child, id, Chart::A, c, w, existing);
  }

  BlowupTree& t_;
  bool extend_;
  int step_ = 0;
};

}  // namespace

GermCurve make_germ(const MPoly& h) {
  if (h.nvars() != 2) fail(ErrorKind::InvalidArgument, "germ needs two variables");
  if (h.is_zero()) fail(ErrorKind::ZeroPolynomial, "germ is zero");
  if (!h.constant_term().is_zero()) fail(ErrorKind::CenterNotOnDivisor, "germ does not pass through the origin");
  if (!is_squarefree(h)) fail(ErrorKind::NonReduced, h.to_string() + " has a repeated factor");
  return {h};
}

ChartTransform blow_up(const LocalChart& state, Chart chart) {
  if (chart == Chart::Root) fail(ErrorKind::InvalidArgument, "blow_up needs chart A or B");
  bool on_divisor = state.through[0] >= 0 || state.through[1] >= 0;
  for (const auto& c : state.curves) on_divisor = on_divisor || passes(c);
  if (!on_divisor) fail(ErrorKind::CenterNotOnDivisor, "centre lies on no curve");
  ChartTransform out;
  for (const auto& c : state.curves) {
    int ord = passes(c) ? c.order_at_origin() : 0;
    out.exceptional_power.push_back(ord);
    out.strict.push_back(chart == Chart::A ? chart_a(c, ord) : chart_b(c, ord));
  }
  return out;
}

int BlowupTree::germ_mult(int node) const {
  int s = 0;
  for (int m : nodes.at(node).comp_mult) s += m;
  return s;
}

BlowupTree resolve_curves(const std::vector<MPoly>& components, const ResolveOptions& opt) {
  if (components.empty()) fail(ErrorKind::InvalidArgument, "nothing to resolve");
  BlowupTree t;
  t.max_depth = opt.max_depth;
  t.max_nodes = opt.max_nodes;
  t.ctx = components[0].ctx();
  for (const auto& c : components) t.ctx = common_ctx(t.ctx, c.ctx());
  for (const auto& c : components) t.components.push_back(c.embed(t.ctx));
  Resolver r(t, false);
  LocalChart root{t.ctx, t.components, {-1, -1}};
  r.visit(root, -1, Chart::Root, Scalar::zero(t.ctx), 1, -1);
  return t;
}

BlowupTree resolve_germ(const GermCurve& g, const ResolveOptions& opt) { return resolve_curves({g.h}, opt); }

BlowupTree extend_resolution(const BlowupTree& base, const MPoly& extra, const ResolveOptions& opt) {
  BlowupTree t = base;
  t.max_depth = opt.max_depth;
  t.max_nodes = opt.max_nodes;
  t.arrows.clear();
  t.components.push_back(extra.embed(t.ctx));
  if (t.nodes.empty()) return resolve_curves(t.components, opt);
  Resolver r(t, true);
  LocalChart root{t.ctx, t.components, {-1, -1}};
  r.visit(root, -1, Chart::Root, Scalar::zero(t.ctx), 1, 0);
  return t;
}

namespace {

struct Expansion {
  std::vector<int> inst_node;
  std::vector<int> self_int;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> node_instances;
};

Expansion expand(const BlowupTree& t) {
  Expansion x;
  x.node_instances.resize(t.nodes.size());
  std::map<int, int> path;
  std::function<void(int)> rec = [&](int n) {
    const BlowupNode& node = t.nodes[n];
    for (int k = 0; k < node.weight; ++k) {
      int inst = static_cast<int>(x.inst_node.size());
      x.inst_node.push_back(n);
      x.self_int.push_back(-1);
      x.node_instances[n].push_back(inst);
      for (int a : node.through) {
        if (a < 0) continue;
        int ai = path.at(a);
        x.self_int[ai] -= 1;
        x.edges.push_back({ai, inst});
      }
      if (node.through[0] >= 0 && node.through[1] >= 0) {
        int p = path.at(node.through[0]), q = path.at(node.through[1]);
        auto it = std::find_if(x.edges.begin(), x.edges.end(), [&](const auto& e) {
          return (e.first == p && e.second == q) || (e.first == q && e.second == p);
        });
        if (it == x.edges.end()) fail(ErrorKind::InconsistentDivisor, "centre on two curves that do not meet");
        x.edges.erase(it);
      }
      path[n] = inst;
      for (int c : node.children) rec(c);
      path.erase(n);
    }
  };
  if (!t.nodes.empty()) rec(0);
  return x;
}

}  // namespace

std::vector<int> instance_nodes(const BlowupTree& t) {
  Expansion x = expand(t);
  std::vector<int> order;
  for (std::size_t i = 0; i < x.inst_node.size(); ++i)
    if (!t.nodes[x.inst_node[i]].extra) order.push_back(x.inst_node[i]);
  for (std::size_t i = 0; i < x.inst_node.size(); ++i)
    if (t.nodes[x.inst_node[i]].extra) order.push_back(x.inst_node[i]);
  return order;
}

DualGraph dual_graph(const BlowupTree& t) {
  Expansion x = expand(t);
  const int n = static_cast<int>(x.inst_node.size());
  std::vector<int> remap(n);
  int next = 0;
  for (int pass = 0; pass < 2; ++pass)
    for (int i = 0; i < n; ++i)
      if (t.nodes[x.inst_node[i]].extra == (pass == 1)) remap[i] = next++;
  DualGraph g;
  g.vertices.resize(n);
  for (int i = 0; i < n; ++i) g.vertices[remap[i]] = {x.inst_node[i], x.self_int[i]};
  for (auto [a, b] : x.edges) {
    int p = remap[a], q = remap[b];
    g.edges.push_back({std::min(p, q), std::max(p, q)});
  }
  std::sort(g.edges.begin(), g.edges.end());
  for (const auto& a : t.arrows) {
    if (a.curve < 0) {
      g.arrows.push_back({-1, a.component});
      continue;
    }
    for (int inst : x.node_instances[a.curve])
      for (int k = 0; k < a.weight; ++k) g.arrows.push_back({remap[inst], a.component});
  }
  std::sort(g.arrows.begin(), g.arrows.end(),
            [](const auto& p, const auto& q) { return std::tie(p.at, p.component) < std::tie(q.at, q.component); });
  if (n > 0) g.root = remap[0];
  return g;
}

std::vector<ExcCurve> DualGraph::curves(const BlowupTree& t) const {
  std::vector<ExcCurve> out;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    out.push_back({static_cast<int>(i), vertices[i].self_int, t.nodes[vertices[i].node].birth_step});
  return out;
}

int DualGraph::valency(int v) const {
  int d = 0;
  for (auto [a, b] : edges) d += (a == v) + (b == v);
  for (const auto& a : arrows) d += a.at == v;
  return d;
}

std::vector<int> multiplicities(const BlowupTree& t, const MPoly& g) {
  std::vector<int> m(t.nodes.size(), 0);
  if (t.nodes.empty()) return m;
  if (g.is_zero()) fail(ErrorKind::ZeroPolynomial, "multiplicity of the zero function");
  std::function<void(int, const MPoly&)> rec = [&](int n, const MPoly& gs) {
    const BlowupNode& node = t.nodes[n];
    int ord = gs.order_at_origin();
    int v = ord;
    for (int k : node.through)
      if (k >= 0) v += m[k];
    m[n] = v;
    if (node.children.empty()) return;
    MPoly a = chart_a(gs, ord), b = chart_b(gs, ord);
    for (int c : node.children) {
      const BlowupNode& ch = t.nodes[c];
      if (ch.chart == Chart::A) rec(c, a.embed(ch.ctx).translate({Scalar::zero(ch.ctx), ch.shift}));
      else rec(c, b);
    }
  };
  rec(0, g.embed(t.ctx));
  return m;
}

std::vector<int> multiplicities(const BlowupTree& t, const RatFunc& g) {
  std::vector<int> a = multiplicities(t, g.num), b = multiplicities(t, g.den);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

int mult_along(const BlowupTree& t, int node, const RatFunc& g) {
  if (node < 0 || node >= static_cast<int>(t.nodes.size())) fail(ErrorKind::InvalidArgument, "no such curve");
  return multiplicities(t, g)[node];
}

std::vector<int> generic_linear_multiplicities(const BlowupTree& t, std::mt19937_64& rng, int samples) {
  std::vector<std::vector<int>> all;
  const auto& vars = t.components.empty() ? vw_vars() : t.components[0].vars();
  for (int s = 0; s < samples; ++s) {
    long c = 0;
    while (c == 0) c = static_cast<long>(rng() % 201) - 100;
    MPoly l = MPoly::variable(t.ctx, vars, 0) + MPoly::variable(t.ctx, vars, 1) * Scalar(c);
    all.push_back(multiplicities(t, l));
  }
  std::vector<int> best = all[0];
  for (const auto& a : all)
    for (std::size_t i = 0; i < best.size(); ++i) best[i] = std::min(best[i], a[i]);
  int agree = 0;
  for (const auto& a : all) agree += a == best;
  if (agree < samples - 1) fail(ErrorKind::GenericityAlarm, "generic linear form not certified");
  return best;
}

namespace {

int noether(const LocalChart& pt, int depth, int max_depth) {
  const MPoly& a = pt.curves[0];
  const MPoly& b = pt.curves[1];
  if (!passes(a) || !passes(b)) return 0;
  if (depth > 400) fail(ErrorKind::CommonComponent, "curves share a component");
  int m1 = a.order_at_origin(), m2 = b.order_at_origin();
  int sum = m1 * m2;
  LocalChart lc{pt.ctx, pt.curves, {0, -1}};
  ChartTransform ta = blow_up(lc, Chart::A), tb = blow_up(lc, Chart::B);
  UPoly g = gcd(restrict_to_exceptional(ta.strict[0]), restrict_to_exceptional(ta.strict[1]));
  if (g.degree() > 0) {
    for (const auto& rc : root_classes(g, max_depth)) {
      LocalChart child{rc.ctx, {}, {0, -1}};
      for (const auto& s : ta.strict) child.curves.push_back(s.embed(rc.ctx).translate({Scalar::zero(rc.ctx), rc.root}));
      sum += rc.size() * noether(child, depth + 1, max_depth);
    }
  }
  LocalChart cb{pt.ctx, tb.strict, {0, -1}};
  sum += noether(cb, depth + 1, max_depth);
  return sum;
}

// Shear v -> v + c*w so both top parts are nonzero at (c, 1).
long good_shear(const MPoly& a, const MPoly& b) {
  MPoly ta = a.homogeneous_part(a.total_degree()), tb = b.homogeneous_part(b.total_degree());
  for (long c = 1; c < 200; ++c) {
    long cc = (c % 2) ? (c + 1) / 2 * 7 : -(c / 2) * 5;
    if (!ta.evaluate({Scalar(cc), Scalar(1)}).is_zero() && !tb.evaluate({Scalar(cc), Scalar(1)}).is_zero()) return cc;
  }
  fail(ErrorKind::InvalidArgument, "no shear found");
}

MPoly shear(const MPoly& f, long c) {
  MPoly v = MPoly::variable(f.ctx(), f.vars(), 0), w = MPoly::variable(f.ctx(), f.vars(), 1);
  return f.substitute({v + w * Scalar(c), w});
}

}  // namespace

int intersection_mult(const GermCurve& a, const GermCurve& b) {
  long c = good_shear(a.h, b.h);
  MPoly sa = shear(a.h, c), sb = shear(b.h, c);
  if (resultant(sa, sb, 1).is_zero()) fail(ErrorKind::CommonComponent, "curves share a component");
  const FieldCtx* ctx = common_ctx(a.h.ctx(), b.h.ctx());
  LocalChart pt{ctx, {a.h.embed(ctx), b.h.embed(ctx)}, {-1, -1}};
  return noether(pt, 0, kDefaultTowerDepth);
}

int intersection_mult_resultant(const GermCurve& a, const GermCurve& b) {
  long c = good_shear(a.h, b.h);
  MPoly r = resultant(shear(a.h, c), shear(b.h, c), 1);
  if (r.is_zero()) fail(ErrorKind::CommonComponent, "curves share a component");
  return r.order_at_origin();
}

int distinct_tangent_lines(const MPoly& h) {
  MPoly tc = h.tangent_cone();
  const int m = tc.total_degree();
  std::vector<Scalar> c(m + 1, Scalar::zero(h.ctx()));
  for (const auto& [e, k] : tc.terms()) c[e[1]] = k;
  UPoly p(h.ctx(), c);
  return squarefree_part(p).degree() + (p.degree() < m ? 1 : 0);
}

std::set<int> detect_nodes(const DualGraph& g, const BlowupTree& t) {
  std::set<int> out;
  for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v)
    if (g.valency(v) >= 3) out.insert(v);
  if (g.root >= 0) {
    MPoly h = MPoly::constant(t.ctx, t.components[0].vars(), Scalar(1));
    for (const auto& c : t.components) h = h * c;
    if (distinct_tangent_lines(h) >= 2) out.insert(g.root);
  }
  return out;
}

std::vector<std::vector<int>> intersection_matrix(const DualGraph& g) {
  const std::size_t n = g.vertices.size();
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = g.vertices[i].self_int;
  for (auto [a, b] : g.edges) {
    if (a == b) continue;
    m[a][b] += 1;
    m[b][a] += 1;
  }
  return m;
}

bool negative_definite(const std::vector<std::vector<int>>& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = -m[i][j];
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      Rat f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return true;
}

}  // namespace sisres
