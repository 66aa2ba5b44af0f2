#include "sisres/report.hpp"

#include <set>
#include <sstream>

namespace sisres {

bool operator==(const GraphDocument& a, const GraphDocument& b) {
  return a.schema == b.schema && a.graph == b.graph && a.provenance == b.provenance;
}

std::string to_json(const GraphDocument& d) {
  Json j = Json::object();
  j["schema"] = d.schema;
  Json vs = Json::array();
  for (const auto& v : d.graph.vertices) {
    Json o = Json::object();
    o["id"] = v.id;
    o["self_int"] = v.self_int;
    o["is_L"] = v.is_L;
    if (v.rate) o["rate"] = v.rate->get_str();
    if (!v.mult.empty()) {
      Json m = Json::object();
      for (const auto& [k, x] : v.mult) m[k] = x;
      o["mult"] = m;
    }
    vs.push_back(o);
  }
  j["vertices"] = vs;
  Json es = Json::array();
  for (auto [a, b] : d.graph.edges) es.push_back(Json::array({a, b}));
  j["edges"] = es;
  Json as = Json::array();
  for (const auto& a : d.graph.arrows) {
    Json o = Json::object();
    o["at"] = a.at;
    if (a.mult) o["mult"] = *a.mult;
    as.push_back(o);
  }
  j["arrows"] = as;
  j["provenance"] = d.provenance;
  return j.dump(2) + "\n";
}

GraphDocument from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(ErrorKind::SyntaxError, e.byte, e.what());
  }
  try {
    if (!j.contains("schema") || j["schema"].get<int>() != kSchemaVersion)
      fail(ErrorKind::SchemaVersionMismatch,
           "expected schema " + std::to_string(kSchemaVersion) + ", got " + (j.contains("schema") ? j["schema"].dump() : "none"));
    GraphDocument d;
    for (const auto& o : j.at("vertices")) {
      DecoratedGraph::Vertex v;
      v.id = o.at("id").get<int>();
      if (v.id != static_cast<int>(d.graph.vertices.size())) fail(ErrorKind::InvalidArgument, "vertex ids must be 0..n-1 in order");
      v.self_int = o.at("self_int").get<int>();
      v.is_L = o.at("is_L").get<bool>();
      if (o.contains("rate")) {
        Rat q(o["rate"].get<std::string>());
        q.canonicalize();
        v.rate = q;
      }
      if (o.contains("mult"))
        for (const auto& [k, x] : o["mult"].items()) v.mult[k] = x.get<int>();
      d.graph.vertices.push_back(v);
    }
    const int n = static_cast<int>(d.graph.vertices.size());
    for (const auto& e : j.at("edges")) {
      int a = e.at(0).get<int>(), b = e.at(1).get<int>();
      if (a < 0 || b < 0 || a >= n || b >= n) fail(ErrorKind::InvalidArgument, "edge to a missing vertex");
      d.graph.edges.push_back({std::min(a, b), std::max(a, b)});
    }
    for (const auto& o : j.at("arrows")) {
      DecoratedGraph::Arrow a;
      a.at = o.at("at").get<int>();
      if (a.at >= n) fail(ErrorKind::InvalidArgument, "arrow at a missing vertex");
      if (o.contains("mult")) a.mult = o["mult"].get<int>();
      d.graph.arrows.push_back(a);
    }
    d.provenance = j.value("provenance", Json::object());
    if (d.provenance.contains("l_components"))
      for (const auto& o : d.provenance["l_components"]) {
        int v = o.at("vertex").get<int>();
        if (v >= 0 && v < n) d.graph.vertices[v].component = o.at("component").get<int>();
      }
    return d;
  } catch (const Json::exception& e) {
    fail(ErrorKind::InvalidArgument, std::string("malformed graph document: ") + e.what());
  }
}

std::string to_dot(const GraphDocument& d) {
  std::ostringstream out;
  out << "graph G {\n";
  out << "  node [shape=circle, fontsize=10];\n";
  for (const auto& v : d.graph.vertices) {
    std::string label = std::to_string(v.self_int);
    if (v.rate) label += " / " + v.rate->get_str();
    if (!v.mult.empty()) {
      label += " / ";
      bool first = true;
      for (const auto& [k, x] : v.mult) {
        if (!first) label += ",";
        label += k + "=" + std::to_string(x);
        first = false;
      }
    }
    out << "  v" << v.id << " [label=\"" << label << "\"";
    if (v.is_L) out << ", style=filled, fillcolor=black, fontcolor=white";
    out << "];\n";
  }
  for (auto [a, b] : d.graph.edges) out << "  v" << a << " -- v" << b << ";\n";
  int k = 0;
  for (const auto& a : d.graph.arrows) {
    out << "  a" << k << " [shape=point, style=invis];\n";
    std::string from = a.at >= 0 ? "v" + std::to_string(a.at) : "a" + std::to_string(k);
    if (a.at < 0) {
      // smooth germ: a lone arrow
      out << "  s" << k << " [shape=point];\n";
      from = "s" + std::to_string(k);
    }
    out << "  " << from << " -- a" << k << " [dir=forward";
    if (a.mult) out << ", label=\"(" << *a.mult << ")\"";
    out << "];\n";
    ++k;
  }
  out << "}\n";
  return out.str();
}

namespace {

std::set<std::string> fields_of_tree(const BlowupTree& t, std::set<std::string> acc = {}) {
  if (t.ctx->depth() > 0) acc.insert(t.ctx->describe());
  for (const auto& n : t.nodes)
    if (n.ctx->depth() > 0) acc.insert(n.ctx->describe());
  return acc;
}

const char* axis_name(int i) { return i == 0 ? "x" : (i == 1 ? "y" : "z"); }

Json describe_presentation(const SISPresentation& s) {
  Json comps = Json::array();
  for (std::size_t i = 0; i < s.components.size(); ++i) {
    Json c = Json::object();
    c["index"] = i;
    c["equation"] = s.components[i].to_string();
    c["degree"] = s.components[i].total_degree();
    comps.push_back(c);
  }
  Json pts = Json::array();
  for (const auto& p : s.points) {
    Json o = Json::object();
    o["point"] = p.describe();
    o["chart"] = std::string(axis_name(p.chart)) + " = 1";
    o["local_equation"] = p.germ.to_string();
    o["class_size"] = p.class_size;
    Json cs = Json::array();
    for (int c : p.components) cs.push_back(c);
    o["components"] = cs;
    pts.push_back(o);
  }
  Json j = Json::object();
  j["d"] = s.d;
  j["f_d"] = s.f.to_string();
  j["f_d+1"] = s.f_next().to_string();
  j["components"] = comps;
  j["singular_points"] = pts;
  return j;
}

Json l_components(const DecoratedGraph& g) {
  Json a = Json::array();
  for (const auto& v : g.vertices)
    if (v.is_L) a.push_back(Json{{"vertex", v.id}, {"component", v.component}});
  return a;
}

Json field_list(const Gamma& G) {
  std::set<std::string> f;
  for (const auto& t : G.trees)
    if (t) f = fields_of_tree(*t, f);
  Json a = Json::array();
  for (const auto& s : f) a.push_back(s);
  return a;
}

const char* mode_name(GraphMode m) { return m == GraphMode::Min ? "min" : "inner"; }

}  // namespace

GraphDocument germ_document(const std::string& h, bool rates, unsigned long seed) {
  MPoly p = parse_poly(h, FieldCtx::rationals(), vw_vars());
  BlowupTree t = resolve_germ(make_germ(p));
  DualGraph dg = dual_graph(t);
  GraphDocument d;
  DecoratedGraph& g = d.graph;
  for (const auto& v : dg.vertices) {
    int id = g.add_vertex(v.self_int);
    g.vertices[id].mult["h"] = t.germ_mult(v.node);
  }
  for (auto [a, b] : dg.edges) g.add_edge(a, b);
  for (const auto& a : dg.arrows) g.arrows.push_back({a.at, std::nullopt});
  if (rates && !t.smooth()) {
    std::mt19937_64 rng(seed);
    std::vector<int> lin = generic_linear_multiplicities(t, rng);
    std::set<int> nodes = detect_nodes(dg, t);
    for (std::size_t i = 0; i < dg.vertices.size(); ++i) {
      g.vertices[i].mult["l"] = lin[dg.vertices[i].node];
      if (!nodes.count(static_cast<int>(i))) continue;
      Rat q(lin[dg.vertices[i].node], t.germ_mult(dg.vertices[i].node));
      q.canonicalize();
      g.vertices[i].rate = q + 1;
    }
  }
  g.normalize();
  d.graph = canonical_form(g);
  d.provenance["command"] = "resolve-germ";
  d.provenance["input"] = p.to_string();
  d.provenance["smooth_germ"] = t.smooth();
  if (t.smooth()) d.provenance["note"] = "smooth germ: no blow-up, a single unattached arrow";
  Json f = Json::array();
  for (const auto& s : fields_of_tree(t)) f.push_back(s);
  d.provenance["fields"] = f;
  if (rates) d.provenance["seed"] = seed;
  return d;
}

GraphDocument sis_document(const std::string& F, const RunOptions& opt) {
  SISPresentation s = from_equation(parse_poly(F));
  Gamma G = build_gamma(s, opt.mode);
  std::mt19937_64 rng(opt.seed);
  if (opt.rates) inner_rates(G, s, rng);
  if (opt.partials) {
    const char* names[3] = {"x", "y", "z"};
    for (int i = 0; i < 3; ++i) {
      auto m = multiplicity_table(s, G, MPoly::variable(FieldCtx::rationals(), xyz_vars(), i));
      for (std::size_t v = 0; v < m.size(); ++v) G.graph.vertices[v].mult[names[i]] = m[v];
    }
    PartialsTable pt = partials_table(s, G);
    for (std::size_t v = 0; v < pt.fx.size(); ++v) {
      G.graph.vertices[v].mult["Fx"] = pt.fx[v];
      G.graph.vertices[v].mult["Fy"] = pt.fy[v];
      G.graph.vertices[v].mult["Fz"] = pt.fz[v];
    }
  }
  GraphDocument d;
  d.graph = canonical_form(G.graph);
  Json& pv = d.provenance;
  pv["command"] = "sis-graph";
  pv["input"] = F;
  pv["mode"] = mode_name(opt.mode);
  pv["presentation"] = describe_presentation(s);
  Json plane = Json::array();
  for (std::size_t i = 0; i < s.components.size(); ++i) plane.push_back(plane_self_int(s, static_cast<int>(i)));
  pv["plane_self_int"] = plane;
  pv["fields"] = field_list(G);
  pv["coordinate_changes"] = Json::array();
  pv["l_components"] = l_components(d.graph);
  if (opt.rates) pv["seed"] = opt.seed;
  return d;
}

GraphDocument polar_document(const std::string& F, const RunOptions& opt) {
  SISPresentation s = from_equation(parse_poly(F));
  std::mt19937_64 rng(opt.seed);
  PolarOptions po;
  po.samples = opt.samples;
  PolarSample ps = generic_polar(s, rng, po);
  GraphDocument d;
  d.graph = canonical_form(ps.extended.graph);
  Json& pv = d.provenance;
  pv["command"] = "polar";
  pv["input"] = F;
  pv["presentation"] = describe_presentation(s);
  pv["polar"] = ps.G.to_string();
  pv["coefficients"] = ps.coeffs;
  pv["samples"] = ps.drawn;
  pv["agreeing_samples"] = ps.agreeing;
  pv["extra_blowups"] = ps.extra_blowups;
  pv["branch_count"] = polar_branch_count(ps);
  pv["fields"] = field_list(ps.extended);
  pv["l_components"] = l_components(d.graph);
  pv["seed"] = opt.seed;
  return d;
}

Json compare_report(const std::string& F1, const std::string& F2, bool polar, const RunOptions& opt) {
  SISPresentation a = from_equation(parse_poly(F1)), b = from_equation(parse_poly(F2));
  std::mt19937_64 rng(opt.seed);
  Json r = Json::object();
  r["inputs"] = Json::array({F1, F2});
  r["seed"] = opt.seed;
  if (!polar) {
    Gamma ga = build_gamma(a, GraphMode::Inner), gb = build_gamma(b, GraphMode::Inner);
    inner_rates(ga, a, rng);
    inner_rates(gb, b, rng);
    bool same = isomorphic(ga.graph, gb.graph).has_value();
    r["inner_equivalent"] = same;
    r["verdict"] = same ? "inner-equivalent" : "not inner-equivalent";
    return r;
  }
  PolarOptions po;
  po.samples = opt.samples;
  OuterEvidence ev = outer_evidence_report(a, b, rng, po);
  r["inner_equivalent"] = ev.inner_equivalent;
  if (ev.inner_equivalent) {
    Json p = Json::object();
    p["multiplicities"] = Json::array({ev.polar_mults[0], ev.polar_mults[1]});
    p["branch_counts"] = Json::array({ev.branch_counts[0], ev.branch_counts[1]});
    p["extra_blowups"] = Json::array({ev.extra_blowups[0], ev.extra_blowups[1]});
    p["graphs_isomorphic"] = ev.polar_graphs_isomorphic;
    r["polar"] = p;
  }
  r["verdict"] = ev.verdict;
  r["caveat"] = "equal polar data does not prove outer equivalence; differing data indicates different outer geometry";
  return r;
}

Json check_report(const std::string& F) {
  SISPresentation s = from_equation(parse_poly(F));
  Json r = describe_presentation(s);
  r["valid"] = true;
  return r;
}

}  // namespace sisres
