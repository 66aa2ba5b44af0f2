#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "sisres/errors.hpp"

namespace sisres {

using Rat = mpq_class;
using Int = mpz_class;

class FieldCtx;

// Element of Q or of a tower Q(a1)(a2)...  At depth n > 0 the value is
// c0 + c1*a + ... + c_{k-1}*a^{k-1} with c_i living one level down.
class Scalar {
public:
  Scalar();
  Scalar(long v);
  Scalar(const Rat& q);

  static Scalar zero(const FieldCtx* ctx);
  static Scalar one(const FieldCtx* ctx);
  // coeffs live in ctx->base(); reduced modulo the minimal polynomial.
  static Scalar from_coeffs(const FieldCtx* ctx, std::vector<Scalar> coeffs);

  const FieldCtx* ctx() const { return ctx_; }
  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;  // value lies in Q, whatever the context
  const Rat& rational() const;  // only for depth-0 context
  Rat to_rational() const;  // value in Q, throws ContextMismatch otherwise
  const std::vector<Scalar>& coeffs() const { return c_; }

  // Lift into an extension of the current context.
  Scalar embed(const FieldCtx* target) const;
  Scalar inverse() const;
  Scalar pow(unsigned long e) const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::string to_string() const;

private:
  const FieldCtx* ctx_;
  Rat q_;
  std::vector<Scalar> c_;
};

// Smallest context containing both, or ContextMismatch.
const FieldCtx* common_ctx(const FieldCtx* a, const FieldCtx* b);

// Interned tower level.  Contexts live for the whole process.
class FieldCtx {
public:
  static const FieldCtx* rationals();
  // No irreducibility check; see extend_field() in factor.hpp.
  static const FieldCtx* make_extension(const FieldCtx* base, std::vector<Scalar> minpoly,
                                        const std::string& name);

  const FieldCtx* base() const { return base_; }
  int depth() const { return depth_; }
  int degree() const { return depth_ == 0 ? 1 : static_cast<int>(minpoly_.size()) - 1; }
  int absolute_degree() const;
  // Monic, coefficients low to high, in base().
  const std::vector<Scalar>& minpoly() const { return minpoly_; }
  const std::string& name() const { return name_; }
  bool extends(const FieldCtx* other) const;
  Scalar generator() const;
  // Generator of this or an ancestor level by name; null ctx if absent.
  const FieldCtx* find_generator(const std::string& name) const;
  std::string describe() const;

private:
  FieldCtx() = default;
  const FieldCtx* base_ = nullptr;
  int depth_ = 0;
  std::vector<Scalar> minpoly_;
  std::string name_;
};

}  // namespace sisres
