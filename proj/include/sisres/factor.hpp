#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sisres/mpoly.hpp"
#include "sisres/upoly.hpp"

namespace sisres {

constexpr int kDefaultTowerDepth = 2;
constexpr int kDefaultDegreeCap = 24;

// Monic irreducible factors with multiplicities, over p.ctx().
std::vector<std::pair<UPoly, int>> factor_univariate(const UPoly& p, int degree_cap = kDefaultDegreeCap);
// Same for an MPoly that involves at most one variable.
std::vector<std::pair<MPoly, int>> factor_univariate(const MPoly& p, int degree_cap = kDefaultDegreeCap);

bool is_irreducible(const UPoly& p);

// Checked extension ctx[name]/(m).  m must be monic and irreducible over ctx.
const FieldCtx* extend_field(const FieldCtx* ctx, const UPoly& m, const std::string& name,
                             int max_depth = kDefaultTowerDepth);
const FieldCtx* extend_field(const FieldCtx* ctx, const MPoly& m, const std::string& name,
                             int max_depth = kDefaultTowerDepth);

// One representative root per conjugacy class of roots of p.
struct RootClass {
  UPoly minpoly;        // monic irreducible factor over p.ctx()
  int multiplicity = 1;
  const FieldCtx* ctx;  // field generated by the root
  Scalar root;
  int size() const { return minpoly.degree(); }
};

// Throws FieldExtensionFailure when an irrational root would exceed max_depth.
std::vector<RootClass> root_classes(const UPoly& p, int max_depth = kDefaultTowerDepth);

// Irreducible factors of a squarefree homogeneous polynomial in three
// variables, each normalised to leading coefficient 1.
std::vector<MPoly> factor_homogeneous(const MPoly& f);

// For a polynomial whose every factor involves the last variable after a
// shear; true iff no repeated factor.
bool is_squarefree(const MPoly& f);

}  // namespace sisres
