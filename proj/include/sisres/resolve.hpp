#pragma once

#include <array>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "sisres/mpoly.hpp"

namespace sisres {

// Plane curve germ at the origin of (v, w): h(0,0) = 0, h squarefree.
struct GermCurve {
  MPoly h;
};

GermCurve make_germ(const MPoly& h);

enum class Chart { Root, A, B };

// Local picture at a point: strict transforms of the tracked curves, with the
// point at the origin, and the exceptional curves through it.  The curve on
// {a = 0} is through[0], the one on {b = 0} is through[1] (node ids, -1 none).
struct LocalChart {
  const FieldCtx* ctx;
  std::vector<MPoly> curves;
  std::array<int, 2> through{-1, -1};
};

// Blow-up of the origin seen in one chart.  Chart A is (a, b) = (s, s*t),
// chart B is (a, b) = (s*t, s); the new curve is {s = 0} in both.
struct ChartTransform {
  std::vector<MPoly> strict;
  std::vector<int> exceptional_power;  // order of each curve at the centre
};

ChartTransform blow_up(const LocalChart& state, Chart chart);

// A point blown up during a resolution.  Node id == exceptional curve id.
struct BlowupNode {
  int id = -1;
  int parent = -1;
  Chart chart = Chart::Root;
  Scalar shift;                // t-translation in chart A
  const FieldCtx* ctx = nullptr;
  int weight = 1;              // size of the conjugacy class inside the parent curve
  std::array<int, 2> through{-1, -1};
  std::vector<int> children;
  std::vector<int> comp_orders;  // order of each tracked curve at the centre
  std::vector<int> comp_mult;    // multiplicity of each tracked curve along this node's curve
  int birth_step = 0;
  bool extra = false;            // added by extend_resolution
};

// A point of normal crossing where a tracked curve meets exceptional curve `curve`.
struct ArrowPoint {
  int curve = -1;  // -1: smooth germ, no blow-up needed
  int weight = 1;
  int component = 0;
};

struct BlowupTree {
  const FieldCtx* ctx = nullptr;
  std::vector<MPoly> components;  // tracked curves at the root, variables (v, w)
  std::vector<BlowupNode> nodes;
  std::vector<ArrowPoint> arrows;
  int max_depth = 2;
  int max_nodes = 2000;

  bool smooth() const { return nodes.empty(); }
  int germ_mult(int node) const;  // multiplicity of the product of all components
};

struct ExcCurve {
  int id;
  int self_int;
  int birth_step;
};

// Expanded dual graph: conjugate copies become separate vertices.
struct DualGraph {
  struct Vertex {
    int node;      // tree node
    int self_int;
  };
  struct Arrow {
    int at;        // vertex, -1 for a smooth germ
    int component;
  };
  std::vector<Vertex> vertices;
  std::vector<std::pair<int, int>> edges;
  std::vector<Arrow> arrows;
  int root = -1;   // vertex of the first blow-up

  std::vector<ExcCurve> curves(const BlowupTree& t) const;
  int valency(int v) const;  // edges (loops twice) plus arrows
};

struct ResolveOptions {
  int max_depth = 2;
  int max_nodes = 2000;  // guards against a non-reduced curve slipping through
};

BlowupTree resolve_germ(const GermCurve& g, const ResolveOptions& opt = {});
// Minimal embedded resolution of the union of several curves.
BlowupTree resolve_curves(const std::vector<MPoly>& components, const ResolveOptions& opt = {});
// Resolve an additional curve on top of an existing resolution.
BlowupTree extend_resolution(const BlowupTree& base, const MPoly& extra, const ResolveOptions& opt = {});

// Expanded graph; originals first, nodes flagged extra after them.
DualGraph dual_graph(const BlowupTree& t);
// Tree node of each expanded vertex, in the same order as dual_graph().
std::vector<int> instance_nodes(const BlowupTree& t);

// Multiplicity along every tree node; num and den separately.
std::vector<int> multiplicities(const BlowupTree& t, const MPoly& g);
std::vector<int> multiplicities(const BlowupTree& t, const RatFunc& g);
int mult_along(const BlowupTree& t, int node, const RatFunc& g);

// Minimum over samples of v + c*w; alarm unless all but one sample agree.
std::vector<int> generic_linear_multiplicities(const BlowupTree& t, std::mt19937_64& rng, int samples = 3);

int intersection_mult(const GermCurve& a, const GermCurve& b);
// Resultant route, valid when no other intersections lie over v = 0.
int intersection_mult_resultant(const GermCurve& a, const GermCurve& b);

int distinct_tangent_lines(const MPoly& h);
std::set<int> detect_nodes(const DualGraph& g, const BlowupTree& t);

// Rows of the intersection matrix of the exceptional curves (expanded).
std::vector<std::vector<int>> intersection_matrix(const DualGraph& g);
bool negative_definite(const std::vector<std::vector<int>>& m);

}  // namespace sisres
