#include "sisres/upoly.hpp"

namespace sisres {

UPoly::UPoly(const FieldCtx* ctx) : ctx_(ctx) {}

UPoly::UPoly(const FieldCtx* ctx, std::vector<Scalar> coeffs) : ctx_(ctx), c_(std::move(coeffs)) {
  for (auto& c : c_) c = c.embed(ctx_);
  trim();
}

UPoly UPoly::constant(const FieldCtx* ctx, const Scalar& c) { return UPoly(ctx, {c}); }

UPoly UPoly::monomial(const FieldCtx* ctx, const Scalar& c, int k) {
  std::vector<Scalar> v(k + 1, Scalar::zero(ctx));
  v[k] = c;
  return UPoly(ctx, std::move(v));
}

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Scalar UPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return Scalar::zero(ctx_);
  return c_[k];
}

Scalar UPoly::lead() const { return c_.empty() ? Scalar::zero(ctx_) : c_.back(); }

UPoly UPoly::monic() const {
  if (c_.empty()) return *this;
  if (c_.back().is_one()) return *this;
  Scalar inv = c_.back().inverse();
  UPoly r = *this;
  for (auto& c : r.c_) c *= inv;
  return r;
}

UPoly UPoly::derivative() const {
  std::vector<Scalar> d;
  for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * Scalar(static_cast<long>(k)));
  return UPoly(ctx_, std::move(d));
}

Scalar UPoly::eval(const Scalar& t) const {
  Scalar r = Scalar::zero(common_ctx(ctx_, t.ctx()));
  for (std::size_t k = c_.size(); k-- > 0;) {
    r *= t;
    r += c_[k];
  }
  return r;
}

UPoly UPoly::compose(const UPoly& inner) const {
  const FieldCtx* c = common_ctx(ctx_, inner.ctx_);
  UPoly r(c), in = inner.embed(c);
  for (std::size_t k = c_.size(); k-- > 0;) r = r * in + UPoly::constant(c, c_[k]);
  return r;
}

UPoly UPoly::shift(const Scalar& s) const {
  const FieldCtx* c = common_ctx(ctx_, s.ctx());
  std::vector<Scalar> a(c_.size(), Scalar::zero(c));
  for (std::size_t i = 0; i < c_.size(); ++i) a[i] = c_[i].embed(c);
  // Horner-style Taylor shift
  const std::size_t n = a.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) a[j - 1] += s * a[j];
  return UPoly(c, std::move(a));
}

UPoly UPoly::embed(const FieldCtx* target) const {
  if (target == ctx_) return *this;
  return UPoly(target, c_);
}

UPoly UPoly::pow(unsigned e) const {
  UPoly r = constant(ctx_, Scalar(1)), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  const FieldCtx* c = common_ctx(a.ctx_, b.ctx_);
  std::vector<Scalar> r(std::max(a.c_.size(), b.c_.size()), Scalar::zero(c));
  for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
  return UPoly(c, std::move(r));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  const FieldCtx* c = common_ctx(a.ctx_, b.ctx_);
  if (a.c_.empty() || b.c_.empty()) return UPoly(c);
  std::vector<Scalar> r(a.c_.size() + b.c_.size() - 1, Scalar::zero(c));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(c, std::move(r));
}

UPoly operator*(const UPoly& a, const Scalar& s) {
  const FieldCtx* c = common_ctx(a.ctx_, s.ctx());
  std::vector<Scalar> r = a.c_;
  for (auto& x : r) x *= s;
  return UPoly(c, std::move(r));
}

bool operator==(const UPoly& a, const UPoly& b) {
  if (a.c_.size() != b.c_.size()) return false;
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    if (a.c_[i] != b.c_[i]) return false;
  return true;
}

std::string UPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t k = c_.size(); k-- > 0;) {
    if (c_[k].is_zero()) continue;
    std::string c = c_[k].to_string();
    bool simple = c_[k].ctx()->depth() == 0 || c_[k].is_rational();
    if (simple) c = c_[k].to_rational().get_str();
    std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
    std::string term;
    if (mono.empty()) term = simple ? c : "(" + c + ")";
    else if (c_[k].is_one()) term = mono;
    else if (simple && c == "-1") term = "-" + mono;
    else term = (simple ? c : "(" + c + ")") + "*" + mono;
    if (!out.empty()) {
      if (term[0] == '-') out += " - " + term.substr(1);
      else out += " + " + term;
    } else {
      out = term;
    }
  }
  return out;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
  const FieldCtx* c = common_ctx(a.ctx(), b.ctx());
  std::vector<Scalar> r = a.embed(c).coeffs();
  const auto& bc = b.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {UPoly(c), a.embed(c)};
  std::vector<Scalar> q(a.degree() - db + 1, Scalar::zero(c));
  Scalar inv = b.lead().inverse();
  for (int k = a.degree(); k >= db; --k) {
    if (r[k].is_zero()) continue;
    Scalar t = r[k] * inv;
    q[k - db] = t;
    for (int i = 0; i <= db; ++i) r[k - db + i] -= t * bc[i];
  }
  r.resize(db);
  return {UPoly(c, std::move(q)), UPoly(c, std::move(r))};
}

UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

UPoly ext_gcd(const UPoly& a, const UPoly& b, UPoly& s, UPoly& t) {
  const FieldCtx* c = common_ctx(a.ctx(), b.ctx());
  UPoly r0 = a.embed(c), r1 = b.embed(c);
  UPoly s0 = UPoly::constant(c, Scalar(1)), s1(c);
  UPoly t0(c), t1 = UPoly::constant(c, Scalar(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    UPoly ns = s0 - q * s1, nt = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(ns);
    t0 = std::move(t1);
    t1 = std::move(nt);
  }
  if (r0.is_zero()) {
    s = s0;
    t = t0;
    return r0;
  }
  Scalar inv = r0.lead().inverse();
  s = s0 * inv;
  t = t0 * inv;
  return r0 * inv;
}

UPoly squarefree_part(const UPoly& p) {
  if (p.degree() <= 0) return p.monic();
  UPoly g = gcd(p, p.derivative());
  return divmod(p, g).first.monic();
}

bool is_squarefree(const UPoly& p) {
  if (p.degree() <= 0) return true;
  return gcd(p, p.derivative()).degree() == 0;
}

std::vector<std::pair<UPoly, int>> squarefree_decomposition(const UPoly& p) {
  std::vector<std::pair<UPoly, int>> out;
  if (p.degree() <= 0) return out;
  UPoly f = p.monic();
  UPoly d = f.derivative();
  UPoly a = gcd(f, d);
  UPoly b = divmod(f, a).first;
  UPoly c = divmod(d, a).first;
  UPoly e = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    UPoly g = gcd(b, e);
    if (g.degree() > 0) out.push_back({g, i});
    b = divmod(b, g).first;
    c = divmod(e, g).first;
    e = c - b.derivative();
    ++i;
  }
  return out;
}

}  // namespace sisres
