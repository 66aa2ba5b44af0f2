#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sisres/scalar.hpp"

namespace sisres {

// Dense univariate polynomial over a FieldCtx, coefficients low to high.
class UPoly {
public:
  explicit UPoly(const FieldCtx* ctx = FieldCtx::rationals());
  UPoly(const FieldCtx* ctx, std::vector<Scalar> coeffs);

  static UPoly constant(const FieldCtx* ctx, const Scalar& c);
  static UPoly monomial(const FieldCtx* ctx, const Scalar& c, int k);
  static UPoly x(const FieldCtx* ctx) { return monomial(ctx, Scalar(1), 1); }

  const FieldCtx* ctx() const { return ctx_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Scalar coeff(int k) const;
  Scalar lead() const;
  const std::vector<Scalar>& coeffs() const { return c_; }

  UPoly monic() const;
  UPoly derivative() const;
  Scalar eval(const Scalar& t) const;
  UPoly compose(const UPoly& inner) const;
  // p(t + c)
  UPoly shift(const Scalar& c) const;
  UPoly embed(const FieldCtx* target) const;
  UPoly pow(unsigned e) const;

  UPoly operator-() const;
  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const Scalar& s);
  friend bool operator==(const UPoly& a, const UPoly& b);
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

  std::string to_string(const std::string& var = "t") const;

private:
  void trim();
  const FieldCtx* ctx_;
  std::vector<Scalar> c_;
};

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly operator%(const UPoly& a, const UPoly& b);
// Monic gcd; gcd(0,0) = 0.
UPoly gcd(const UPoly& a, const UPoly& b);
// g = s*a + t*b with g monic gcd.
UPoly ext_gcd(const UPoly& a, const UPoly& b, UPoly& s, UPoly& t);
UPoly squarefree_part(const UPoly& p);
bool is_squarefree(const UPoly& p);
// Yun decomposition: pairs (a_i, i) with p = lc * prod a_i^i, a_i monic squarefree coprime.
std::vector<std::pair<UPoly, int>> squarefree_decomposition(const UPoly& p);

}  // namespace sisres
