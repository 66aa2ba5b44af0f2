#pragma once

#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sisres/graph.hpp"
#include "sisres/mpoly.hpp"
#include "sisres/resolve.hpp"

namespace sisres {

// A singular point of C, one per conjugacy class.
struct SingPoint {
  const FieldCtx* ctx = nullptr;
  std::array<Scalar, 3> coords;  // coords[chart] == 1
  int chart = 0;
  std::array<int, 2> axes{1, 2};  // ambient coordinates behind v and w
  MPoly germ;                     // f near the point, point at the origin of (v, w)
  MPoly unit;                     // g near the point; nonzero at the origin
  std::vector<MPoly> local_components;
  std::vector<int> components;    // global component of each local one
  int class_size = 1;
  bool ordinary_double_point = false;

  std::string describe() const;
};

// Surface f - g = 0 with f = f_d and g = -f_{d+1}.
struct SISPresentation {
  MPoly f, g;
  int d = 0;
  std::vector<MPoly> components;  // irreducible factors of f
  std::vector<SingPoint> points;
  std::vector<std::string> notes;

  MPoly equation() const { return f - g; }
  MPoly f_next() const { return -g; }
};

SISPresentation validate(const MPoly& f_d, const MPoly& f_dplus1);
// Splits F into its two homogeneous parts first.
SISPresentation from_equation(const MPoly& F);
std::vector<SingPoint> tangent_cone_singularities(const MPoly& f, const MPoly& g, const std::vector<MPoly>& components);

// f (or any form) with the chart coordinate set to 1 and the point moved to
// the origin of (v, w).
MPoly local_form(const MPoly& F, const SingPoint& p);

enum class GraphMode { Min, Inner };

struct VertexOrigin {
  int point = -1;      // -1 for an L-vertex
  int node = -1;       // tree node
  int component = -1;  // L-vertex component
  int copy = 0;        // conjugate copy
  int local = -1;      // vertex of the local dual graph
};

struct Gamma {
  GraphMode mode = GraphMode::Min;
  DecoratedGraph graph;
  std::vector<VertexOrigin> origin;         // per vertex
  std::vector<std::optional<BlowupTree>> trees;  // per point; none for a double point in min mode
  std::vector<int> l_vertex;                // per component
};

Gamma build_gamma(const SISPresentation& s, GraphMode mode);
// Reassemble from given trees; tracked curves past the local components of a
// point become arrows instead of edges to L-vertices.
Gamma assemble(const SISPresentation& s, GraphMode mode, std::vector<std::optional<BlowupTree>> trees);

// Fills the L self-intersections from the divisor of a generic linear form and
// checks the identity at every other vertex.
void l_node_self_int(Gamma& g, const SISPresentation& s);
int plane_self_int(const SISPresentation& s, int component);
// Rates at nodes of every local graph; rate 1 at L-vertices.
void inner_rates(Gamma& g, const SISPresentation& s, std::mt19937_64& rng);

// m_E(G) for every vertex of g.
std::vector<int> multiplicity_table(const SISPresentation& s, const Gamma& g, const MPoly& G);
// Valuation of G along the L-curve of a component.
int l_curve_valuation(const SISPresentation& s, int component, const MPoly& G);
// G pulled back to the (v, w) chart at p, as num/den with den a unit.
RatFunc pullback(const SISPresentation& s, const SingPoint& p, const MPoly& G);

}  // namespace sisres
