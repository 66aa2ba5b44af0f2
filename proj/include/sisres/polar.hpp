#pragma once

#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sisres/sis.hpp"

namespace sisres {

struct PartialsTable {
  std::vector<int> fx, fy, fz;  // per vertex of the graph passed in
};

PartialsTable partials_table(const SISPresentation& s, const Gamma& g);

struct PolarOptions {
  int samples = 5;
  long box = 20;  // coefficients drawn from [-box, box]
};

struct PolarSample {
  std::array<long, 3> coeffs{0, 0, 0};  // the sample used for the extension
  MPoly G;                              // a*F_x + b*F_y + c*F_z
  std::vector<std::array<long, 3>> drawn;
  int agreeing = 0;                     // samples attaining the minimum everywhere
  Gamma base;                           // inner graph
  std::vector<int> base_mult;           // minimum over samples, per base vertex
  Gamma extended;                       // base points blown up, polar arrows attached
  std::vector<int> mult;                // per extended vertex
  int extra_blowups = 0;                // new vertices in the extended graph
};

// Throws GenericityAlarm when fewer than samples-1 draws agree.
PolarSample generic_polar(const SISPresentation& s, std::mt19937_64& rng, const PolarOptions& opt = {});
int polar_branch_count(const PolarSample& p);

struct OuterEvidence {
  bool inner_equivalent = false;
  std::optional<std::vector<int>> inner_map;
  std::array<std::vector<int>, 2> polar_mults;  // sorted, over extended vertices
  std::array<int, 2> branch_counts{0, 0};
  std::array<int, 2> extra_blowups{0, 0};
  bool polar_graphs_isomorphic = false;
  std::string verdict;
};

OuterEvidence outer_evidence_report(const SISPresentation& a, const SISPresentation& b, std::mt19937_64& rng,
                                    const PolarOptions& opt = {});

}  // namespace sisres
