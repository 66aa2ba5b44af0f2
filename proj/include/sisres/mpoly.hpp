#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sisres/scalar.hpp"
#include "sisres/upoly.hpp"

namespace sisres {

using Exponent = std::vector<int>;

// Graded lexicographic, ascending.
struct GrLex {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

class MPoly {
public:
  using TermMap = std::map<Exponent, Scalar, GrLex>;

  MPoly();
  MPoly(const FieldCtx* ctx, std::vector<std::string> vars);

  static MPoly constant(const FieldCtx* ctx, const std::vector<std::string>& vars, const Scalar& c);
  static MPoly variable(const FieldCtx* ctx, const std::vector<std::string>& vars, int i);
  static MPoly from_univariate(const UPoly& p, const std::vector<std::string>& vars, int i);

  const FieldCtx* ctx() const { return ctx_; }
  const std::vector<std::string>& vars() const { return vars_; }
  int nvars() const { return static_cast<int>(vars_.size()); }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Exponent& e, const Scalar& c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Scalar constant_term() const;
  Scalar coeff(const Exponent& e) const;
  int total_degree() const;  // -1 for zero
  // Lowest total degree of a term; ZeroPolynomial for 0.
  int order_at_origin() const;
  int degree_in(int i) const;
  int low_degree_in(int i) const;
  // Coefficient of var_i^k, as a polynomial in the same variables.
  MPoly coeff_in(int i, int k) const;
  std::map<int, MPoly> homogeneous_parts() const;
  MPoly homogeneous_part(int k) const;
  MPoly tangent_cone() const;
  bool is_homogeneous() const;
  bool involves(int i) const;

  MPoly derivative(int i) const;
  Scalar evaluate(const std::vector<Scalar>& point) const;
  // var_i -> images[i]; all images share context and variable list.
  MPoly substitute(const std::vector<MPoly>& images) const;
  // var_i -> var_i + shift[i]
  MPoly translate(const std::vector<Scalar>& shift) const;
  MPoly embed(const FieldCtx* target) const;
  MPoly with_vars(const std::vector<std::string>& vars) const;  // same arity, renamed
  UPoly to_univariate(int i) const;
  MPoly pow(unsigned e) const;
  MPoly monic() const;  // leading coefficient (grlex) made 1
  Scalar leading_coeff() const;

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const Scalar& s);
  friend bool operator==(const MPoly& a, const MPoly& b);
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  std::string to_string() const;

private:
  void check_compatible(const MPoly& o) const;
  const FieldCtx* ctx_;
  std::vector<std::string> vars_;
  TermMap terms_;
};

struct RatFunc {
  MPoly num;
  MPoly den;
};

// Every image is num_i / den; the result keeps den^deg(P) as denominator.
RatFunc substitute_common_den(const MPoly& p, const std::vector<MPoly>& nums, const MPoly& den);

std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b);
MPoly resultant(const MPoly& p, const MPoly& q, int var);

const std::vector<std::string>& xyz_vars();
const std::vector<std::string>& vw_vars();

MPoly parse_poly(std::string_view text, const FieldCtx* ctx = FieldCtx::rationals(),
                 const std::vector<std::string>& vars = xyz_vars());

}  // namespace sisres
