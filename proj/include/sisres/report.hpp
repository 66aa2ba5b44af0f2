#pragma once

#include <string>

#include "json.hpp"
#include "sisres/graph.hpp"
#include "sisres/polar.hpp"
#include "sisres/sis.hpp"

namespace sisres {

constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

struct GraphDocument {
  DecoratedGraph graph;
  Json provenance = Json::object();
  int schema = kSchemaVersion;
};

bool operator==(const GraphDocument& a, const GraphDocument& b);

std::string to_json(const GraphDocument& d);
GraphDocument from_json(const std::string& text);
std::string to_dot(const GraphDocument& d);

// Pipelines shared by the CLI and the Python module.  Graphs come back in
// canonical vertex order.
struct RunOptions {
  GraphMode mode = GraphMode::Min;
  bool rates = false;
  bool partials = false;  // x, y, z and F_x, F_y, F_z multiplicities
  unsigned long seed = 1;
  int samples = 5;
};

GraphDocument germ_document(const std::string& h, bool rates, unsigned long seed = 1);
GraphDocument sis_document(const std::string& F, const RunOptions& opt);
GraphDocument polar_document(const std::string& F, const RunOptions& opt);
Json compare_report(const std::string& F1, const std::string& F2, bool polar, const RunOptions& opt);
Json check_report(const std::string& F);

}  // namespace sisres
