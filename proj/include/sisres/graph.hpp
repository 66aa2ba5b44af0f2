#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sisres/scalar.hpp"

namespace sisres {

// Dual graph with decorations.  Vertex ids are positions in `vertices`.
struct DecoratedGraph {
  struct Vertex {
    int id = 0;
    int self_int = -1;
    bool is_L = false;
    std::optional<Rat> rate;
    int component = -1;  // component of C for an L-vertex
    std::map<std::string, int> mult;
  };
  struct Arrow {
    int at = -1;
    std::optional<int> mult;
  };
  std::vector<Vertex> vertices;
  std::vector<std::pair<int, int>> edges;  // min/max pairs, repeats allowed, loops allowed
  std::vector<Arrow> arrows;

  int add_vertex(int self_int, bool is_L = false);
  void add_edge(int a, int b);
  int valency(int v) const;  // loops count twice, arrows count once
  int arrow_count(int v) const;
  std::vector<std::vector<int>> adjacency() const;  // neighbour list with repeats
  std::vector<std::vector<int>> intersection_matrix() const;
  void normalize();  // sort edges and arrows
};

bool operator==(const DecoratedGraph::Vertex& a, const DecoratedGraph::Vertex& b);
bool operator==(const DecoratedGraph& a, const DecoratedGraph& b);

struct IsoOptions {
  bool rates = true;
  bool mults = false;
  bool arrow_mults = false;
};

// vertex of `a` -> vertex of `b`, or nothing
std::optional<std::vector<int>> isomorphic(const DecoratedGraph& a, const DecoratedGraph& b, const IsoOptions& opt = {});

// Permutation new -> old giving a reproducible vertex order.
std::vector<int> canonical_order(const DecoratedGraph& g);
DecoratedGraph relabel(const DecoratedGraph& g, const std::vector<int>& new_to_old);
DecoratedGraph canonical_form(const DecoratedGraph& g);

}  // namespace sisres
