#include "sisres/scalar.hpp"

#include <deque>
#include <memory>
#include <mutex>

namespace sisres {

namespace {

using Vec = std::vector<Scalar>;

void trim(Vec& v) {
  while (!v.empty() && v.back().is_zero()) v.pop_back();
}

Vec vec_sub(const Vec& a, const Vec& b, const FieldCtx* ctx) {
  Vec r(std::max(a.size(), b.size()), Scalar::zero(ctx));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

Vec vec_mul(const Vec& a, const Vec& b, const FieldCtx* ctx) {
  if (a.empty() || b.empty()) return {};
  Vec r(a.size() + b.size() - 1, Scalar::zero(ctx));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

// a = q*b + r
void vec_divmod(const Vec& a, const Vec& b, const FieldCtx* ctx, Vec& q, Vec& r) {
  r = a;
  q.clear();
  if (r.size() < b.size()) return;
  q.assign(r.size() - b.size() + 1, Scalar::zero(ctx));
  Scalar inv = b.back().inverse();
  for (std::size_t k = r.size(); k-- >= b.size();) {
    Scalar t = r[k] * inv;
    q[k - (b.size() - 1)] = t;
    if (t.is_zero()) continue;
    for (std::size_t i = 0; i < b.size(); ++i) r[k - (b.size() - 1) + i] -= t * b[i];
  }
  trim(r);
  trim(q);
}

std::deque<std::unique_ptr<FieldCtx>>& registry() {
  static std::deque<std::unique_ptr<FieldCtx>> reg;
  return reg;
}

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

// ---- FieldCtx ----

const FieldCtx* FieldCtx::rationals() {
  static FieldCtx q;
  return &q;
}

const FieldCtx* FieldCtx::make_extension(const FieldCtx* base, std::vector<Scalar> minpoly,
                                         const std::string& name) {
  if (minpoly.size() < 3) fail(ErrorKind::InvalidArgument, "extension needs degree >= 2");
  for (auto& c : minpoly) c = c.embed(base);
  if (!minpoly.back().is_one()) fail(ErrorKind::InvalidArgument, "minimal polynomial must be monic");
  std::lock_guard<std::mutex> lock(registry_mutex());
  for (auto& p : registry()) {
    if (p->base_ == base && p->name_ == name && p->minpoly_ == minpoly) return p.get();
  }
  auto ctx = std::unique_ptr<FieldCtx>(new FieldCtx());
  ctx->base_ = base;
  ctx->depth_ = base->depth_ + 1;
  ctx->minpoly_ = std::move(minpoly);
  ctx->name_ = name;
  registry().push_back(std::move(ctx));
  return registry().back().get();
}

int FieldCtx::absolute_degree() const {
  int d = 1;
  for (const FieldCtx* c = this; c->depth_ > 0; c = c->base_) d *= c->degree();
  return d;
}

bool FieldCtx::extends(const FieldCtx* other) const {
  for (const FieldCtx* c = this; c != nullptr; c = c->base_) {
    if (c == other) return true;
  }
  return false;
}

Scalar FieldCtx::generator() const {
  if (depth_ == 0) fail(ErrorKind::InvalidArgument, "Q has no generator");
  Vec c(2, Scalar::zero(base_));
  c[1] = Scalar::one(base_);
  return Scalar::from_coeffs(this, c);
}

const FieldCtx* FieldCtx::find_generator(const std::string& name) const {
  for (const FieldCtx* c = this; c->depth_ > 0; c = c->base_) {
    if (c->name_ == name) return c;
  }
  return nullptr;
}

std::string FieldCtx::describe() const {
  if (depth_ == 0) return "Q";
  std::string m;
  for (std::size_t k = minpoly_.size(); k-- > 0;) {
    if (minpoly_[k].is_zero()) continue;
    std::string c = minpoly_[k].to_string();
    std::string mono = k == 0 ? "" : (k == 1 ? name_ : name_ + "^" + std::to_string(k));
    std::string term;
    if (mono.empty()) term = "(" + c + ")";
    else if (minpoly_[k].is_one()) term = mono;
    else term = "(" + c + ")*" + mono;
    if (!m.empty()) m += " + ";
    m += term;
  }
  return base_->describe() + "[" + name_ + "]/(" + m + ")";
}

const FieldCtx* common_ctx(const FieldCtx* a, const FieldCtx* b) {
  if (a == b) return a;
  if (a->extends(b)) return a;
  if (b->extends(a)) return b;
  fail(ErrorKind::ContextMismatch, "operands live in unrelated field towers");
}

// ---- Scalar ----

Scalar::Scalar() : ctx_(FieldCtx::rationals()), q_(0) {}
Scalar::Scalar(long v) : ctx_(FieldCtx::rationals()), q_(v) {}
Scalar::Scalar(const Rat& q) : ctx_(FieldCtx::rationals()), q_(q) {}

Scalar Scalar::zero(const FieldCtx* ctx) {
  Scalar s;
  if (ctx->depth() > 0) {
    s.ctx_ = ctx;
    s.c_.assign(ctx->degree(), Scalar::zero(ctx->base()));
  }
  return s;
}

Scalar Scalar::one(const FieldCtx* ctx) {
  Scalar s = zero(ctx);
  if (ctx->depth() == 0) s.q_ = 1;
  else s.c_[0] = one(ctx->base());
  return s;
}

Scalar Scalar::from_coeffs(const FieldCtx* ctx, std::vector<Scalar> coeffs) {
  if (ctx->depth() == 0) {
    if (coeffs.size() > 1) fail(ErrorKind::InvalidArgument, "Q element takes one coefficient");
    return coeffs.empty() ? Scalar() : coeffs[0].embed(ctx);
  }
  const FieldCtx* base = ctx->base();
  for (auto& c : coeffs) c = c.embed(base);
  const auto& m = ctx->minpoly();
  const std::size_t D = m.size() - 1;
  for (std::size_t k = coeffs.size(); k-- > D;) {
    Scalar t = coeffs[k];
    if (t.is_zero()) continue;
    for (std::size_t i = 0; i < D; ++i) coeffs[k - D + i] -= t * m[i];
    coeffs[k] = Scalar::zero(base);
  }
  coeffs.resize(D, Scalar::zero(base));
  Scalar s;
  s.ctx_ = ctx;
  s.c_ = std::move(coeffs);
  return s;
}

bool Scalar::is_zero() const {
  if (ctx_->depth() == 0) return sgn(q_) == 0;
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

bool Scalar::is_one() const {
  if (ctx_->depth() == 0) return q_ == 1;
  if (!c_[0].is_one()) return false;
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return false;
  return true;
}

bool Scalar::is_rational() const {
  if (ctx_->depth() == 0) return true;
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return false;
  return c_[0].is_rational();
}

const Rat& Scalar::rational() const {
  if (ctx_->depth() != 0) fail(ErrorKind::ContextMismatch, "not a Q-context element");
  return q_;
}

Rat Scalar::to_rational() const {
  if (!is_rational()) fail(ErrorKind::ContextMismatch, "value is irrational");
  const Scalar* s = this;
  while (s->ctx_->depth() > 0) s = &s->c_[0];
  return s->q_;
}

Scalar Scalar::embed(const FieldCtx* target) const {
  if (target == ctx_) return *this;
  if (!target->extends(ctx_)) fail(ErrorKind::ContextMismatch, "cannot embed into unrelated field");
  Scalar low = embed(target->base());
  Scalar s = zero(target);
  s.c_[0] = std::move(low);
  return s;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (ctx_->depth() == 0) r.q_ = -q_;
  else
    for (auto& c : r.c_) c = -c;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (ctx_ == o.ctx_ && ctx_->depth() == 0) {
    q_ += o.q_;
    return *this;
  }
  const FieldCtx* c = common_ctx(ctx_, o.ctx_);
  if (ctx_ != c) *this = embed(c);
  if (o.ctx_ != c) return *this += o.embed(c);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (ctx_ == o.ctx_ && ctx_->depth() == 0) {
    q_ -= o.q_;
    return *this;
  }
  return *this += -o;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (ctx_ == o.ctx_ && ctx_->depth() == 0) {
    q_ *= o.q_;
    return *this;
  }
  if (ctx_ != o.ctx_) {
    common_ctx(ctx_, o.ctx_);
    if (ctx_->extends(o.ctx_)) {
      for (auto& c : c_) c *= o;
      return *this;
    }
    Scalar t = o;
    t *= *this;
    return *this = std::move(t);
  }
  const FieldCtx* c = ctx_;
  Vec prod = vec_mul(c_, o.c_, c->base());
  *this = from_coeffs(c, std::move(prod));
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
  if (ctx_->depth() == 0) return Scalar(Rat(1) / q_);
  const FieldCtx* base = ctx_->base();
  Vec r0 = ctx_->minpoly(), r1 = c_;
  trim(r1);
  Vec s0, s1{Scalar::one(base)};
  while (r1.size() > 1) {
    Vec q, r;
    vec_divmod(r0, r1, base, q, r);
    Vec s = vec_sub(s0, vec_mul(q, s1, base), base);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r1.empty()) fail(ErrorKind::DivisionByZero, "element is a zero divisor (reducible minimal polynomial)");
  Scalar inv = r1[0].inverse();
  for (auto& c : s1) c *= inv;
  return from_coeffs(ctx_, std::move(s1));
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (ctx_ == o.ctx_ && ctx_->depth() == 0) {
    if (sgn(o.q_) == 0) fail(ErrorKind::DivisionByZero, "division by zero");
    q_ /= o.q_;
    return *this;
  }
  return *this *= o.inverse();
}

Scalar Scalar::pow(unsigned long e) const {
  Scalar r = one(ctx_), b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.ctx_ == b.ctx_) {
    if (a.ctx_->depth() == 0) return a.q_ == b.q_;
    return a.c_ == b.c_;
  }
  const FieldCtx* c = common_ctx(a.ctx_, b.ctx_);
  return a.embed(c) == b.embed(c);
}

std::string Scalar::to_string() const {
  if (ctx_->depth() == 0) return q_.get_str();
  std::string out;
  const std::string& g = ctx_->name();
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    std::string c = c_[k].to_string();
    std::string mono = k == 0 ? "" : (k == 1 ? g : g + "^" + std::to_string(k));
    std::string term;
    if (mono.empty()) term = c;
    else if (c_[k].is_one()) term = mono;
    else if (c_[k].ctx()->depth() == 0 && c.find('/') == std::string::npos && c[0] != '-') term = c + "*" + mono;
    else term = "(" + c + ")*" + mono;
    if (!out.empty()) out += " + ";
    out += term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace sisres
