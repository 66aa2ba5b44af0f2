#include "sisres/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace sisres {

bool GrLex::operator()(const Exponent& a, const Exponent& b) const {
  int da = std::accumulate(a.begin(), a.end(), 0);
  int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da < db;
  return a < b;
}

const std::vector<std::string>& xyz_vars() {
  static const std::vector<std::string> v{"x", "y", "z"};
  return v;
}

const std::vector<std::string>& vw_vars() {
  static const std::vector<std::string> v{"v", "w"};
  return v;
}

MPoly::MPoly() : ctx_(FieldCtx::rationals()) {}

MPoly::MPoly(const FieldCtx* ctx, std::vector<std::string> vars) : ctx_(ctx), vars_(std::move(vars)) {}

MPoly MPoly::constant(const FieldCtx* ctx, const std::vector<std::string>& vars, const Scalar& c) {
  MPoly p(ctx, vars);
  p.add_term(Exponent(vars.size(), 0), c);
  return p;
}

MPoly MPoly::variable(const FieldCtx* ctx, const std::vector<std::string>& vars, int i) {
  MPoly p(ctx, vars);
  Exponent e(vars.size(), 0);
  e[i] = 1;
  p.add_term(e, Scalar(1));
  return p;
}

MPoly MPoly::from_univariate(const UPoly& u, const std::vector<std::string>& vars, int i) {
  MPoly p(u.ctx(), vars);
  for (int k = 0; k <= u.degree(); ++k) {
    Exponent e(vars.size(), 0);
    e[i] = k;
    p.add_term(e, u.coeff(k));
  }
  return p;
}

void MPoly::add_term(const Exponent& e, const Scalar& c) {
  if (c.is_zero()) return;
  if (c.ctx() != ctx_) {
    if (!ctx_->extends(c.ctx())) {
      // promote the whole polynomial
      *this = embed(common_ctx(ctx_, c.ctx()));
    }
  }
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c.embed(ctx_));
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool MPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent(vars_.size(), 0));
}

Scalar MPoly::constant_term() const { return coeff(Exponent(vars_.size(), 0)); }

Scalar MPoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar::zero(ctx_) : it->second;
}

int MPoly::total_degree() const {
  if (terms_.empty()) return -1;
  const auto& e = terms_.rbegin()->first;
  return std::accumulate(e.begin(), e.end(), 0);
}

int MPoly::order_at_origin() const {
  if (terms_.empty()) fail(ErrorKind::ZeroPolynomial, "order of the zero polynomial");
  const auto& e = terms_.begin()->first;
  return std::accumulate(e.begin(), e.end(), 0);
}

int MPoly::degree_in(int i) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
  return d;
}

int MPoly::low_degree_in(int i) const {
  if (terms_.empty()) fail(ErrorKind::ZeroPolynomial, "low degree of the zero polynomial");
  int d = terms_.begin()->first[i];
  for (const auto& [e, c] : terms_) d = std::min(d, e[i]);
  return d;
}

bool MPoly::involves(int i) const {
  for (const auto& [e, c] : terms_)
    if (e[i] > 0) return true;
  return false;
}

MPoly MPoly::coeff_in(int i, int k) const {
  MPoly r(ctx_, vars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] != k) continue;
    Exponent f = e;
    f[i] = 0;
    r.terms_.emplace(std::move(f), c);
  }
  return r;
}

std::map<int, MPoly> MPoly::homogeneous_parts() const {
  std::map<int, MPoly> out;
  for (const auto& [e, c] : terms_) {
    int d = std::accumulate(e.begin(), e.end(), 0);
    auto it = out.find(d);
    if (it == out.end()) it = out.emplace(d, MPoly(ctx_, vars_)).first;
    it->second.terms_.emplace(e, c);
  }
  return out;
}

MPoly MPoly::homogeneous_part(int k) const {
  MPoly r(ctx_, vars_);
  for (const auto& [e, c] : terms_)
    if (std::accumulate(e.begin(), e.end(), 0) == k) r.terms_.emplace(e, c);
  return r;
}

MPoly MPoly::tangent_cone() const { return homogeneous_part(order_at_origin()); }

bool MPoly::is_homogeneous() const { return terms_.empty() || total_degree() == order_at_origin(); }

MPoly MPoly::derivative(int i) const {
  MPoly r(ctx_, vars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponent f = e;
    f[i] -= 1;
    r.terms_.emplace(std::move(f), c * Scalar(static_cast<long>(e[i])));
  }
  return r;
}

Scalar MPoly::evaluate(const std::vector<Scalar>& pt) const {
  const FieldCtx* c = ctx_;
  for (const auto& s : pt) c = common_ctx(c, s.ctx());
  std::vector<std::vector<Scalar>> powers(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) powers[i].push_back(Scalar::one(c));
  Scalar r = Scalar::zero(c);
  for (const auto& [e, coef] : terms_) {
    Scalar t = coef;
    for (std::size_t i = 0; i < e.size(); ++i) {
      while (static_cast<int>(powers[i].size()) <= e[i]) powers[i].push_back(powers[i].back() * pt[i]);
      if (e[i]) t *= powers[i][e[i]];
    }
    r += t;
  }
  return r;
}

MPoly MPoly::substitute(const std::vector<MPoly>& images) const {
  if (images.size() != vars_.size()) fail(ErrorKind::InvalidArgument, "substitute: arity mismatch");
  const FieldCtx* c = ctx_;
  for (const auto& m : images) c = common_ctx(c, m.ctx_);
  const auto& nv = images.at(0).vars_;
  std::vector<std::vector<MPoly>> powers(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) powers[i].push_back(constant(c, nv, Scalar(1)));
  MPoly r(c, nv);
  for (const auto& [e, coef] : terms_) {
    MPoly t = constant(c, nv, coef);
    for (std::size_t i = 0; i < e.size(); ++i) {
      while (static_cast<int>(powers[i].size()) <= e[i]) powers[i].push_back(powers[i].back() * images[i]);
      if (e[i]) t = t * powers[i][e[i]];
    }
    r += t;
  }
  return r;
}

MPoly MPoly::translate(const std::vector<Scalar>& shift) const {
  std::vector<MPoly> images;
  const FieldCtx* c = ctx_;
  for (const auto& s : shift) c = common_ctx(c, s.ctx());
  for (int i = 0; i < nvars(); ++i) {
    MPoly im = variable(c, vars_, i);
    if (!shift[i].is_zero()) im += constant(c, vars_, shift[i]);
    images.push_back(std::move(im));
  }
  return substitute(images);
}

MPoly MPoly::embed(const FieldCtx* target) const {
  if (target == ctx_) return *this;
  if (!target->extends(ctx_)) fail(ErrorKind::ContextMismatch, "cannot embed polynomial");
  MPoly r(target, vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, c.embed(target));
  return r;
}

MPoly MPoly::with_vars(const std::vector<std::string>& vars) const {
  if (vars.size() != vars_.size()) fail(ErrorKind::InvalidArgument, "with_vars: arity mismatch");
  MPoly r = *this;
  r.vars_ = vars;
  return r;
}

UPoly MPoly::to_univariate(int i) const {
  std::vector<Scalar> c;
  for (const auto& [e, coef] : terms_) {
    for (std::size_t j = 0; j < e.size(); ++j)
      if (static_cast<int>(j) != i && e[j] != 0) fail(ErrorKind::InvalidArgument, "polynomial is not univariate");
    if (static_cast<int>(c.size()) <= e[i]) c.resize(e[i] + 1, Scalar::zero(ctx_));
    c[e[i]] = coef;
  }
  return UPoly(ctx_, std::move(c));
}

MPoly MPoly::pow(unsigned e) const {
  MPoly r = constant(ctx_, vars_, Scalar(1)), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Scalar MPoly::leading_coeff() const {
  if (terms_.empty()) return Scalar::zero(ctx_);
  return terms_.rbegin()->second;
}

MPoly MPoly::monic() const {
  if (terms_.empty()) return *this;
  return *this * leading_coeff().inverse();
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

void MPoly::check_compatible(const MPoly& o) const {
  if (vars_ != o.vars_) fail(ErrorKind::InvalidArgument, "polynomials over different variable lists");
}

MPoly& MPoly::operator+=(const MPoly& o) {
  if (vars_.empty() && terms_.empty()) vars_ = o.vars_;
  check_compatible(o);
  const FieldCtx* c = common_ctx(ctx_, o.ctx_);
  if (c != ctx_) *this = embed(c);
  for (const auto& [e, coef] : o.terms_) add_term(e, coef);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) { return *this += -o; }

MPoly operator*(const MPoly& a, const MPoly& b) {
  a.check_compatible(b);
  const FieldCtx* c = common_ctx(a.ctx_, b.ctx_);
  MPoly r(c, a.vars_);
  Exponent e(a.vars_.size());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

MPoly operator*(MPoly a, const Scalar& s) {
  if (s.is_zero()) return MPoly(common_ctx(a.ctx_, s.ctx()), a.vars_);
  const FieldCtx* c = common_ctx(a.ctx_, s.ctx());
  if (c != a.ctx_) a = a.embed(c);
  for (auto& [e, coef] : a.terms_) coef *= s;
  return a;
}

bool operator==(const MPoly& a, const MPoly& b) {
  if (a.vars_ != b.vars_ || a.terms_.size() != b.terms_.size()) return false;
  auto ib = b.terms_.begin();
  for (auto ia = a.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib) {
    if (ia->first != ib->first || ia->second != ib->second) return false;
  }
  return true;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    bool neg = false;
    std::string coef;
    if (c.is_rational()) {
      Rat q = c.to_rational();
      if (sgn(q) < 0) {
        neg = true;
        q = -q;
      }
      if (q != 1 || mono.empty()) coef = q.get_str();
    } else {
      coef = "(" + c.to_string() + ")";
    }
    std::string term = coef.empty() ? mono : (mono.empty() ? coef : coef + "*" + mono);
    if (out.empty()) out = neg ? "-" + term : term;
    else out += (neg ? " - " : " + ") + term;
  }
  return out;
}

RatFunc substitute_common_den(const MPoly& p, const std::vector<MPoly>& nums, const MPoly& den) {
  const int D = p.total_degree();
  if (D < 0) return {MPoly(den.ctx(), den.vars()), MPoly::constant(den.ctx(), den.vars(), Scalar(1))};
  const FieldCtx* c = den.ctx();
  for (const auto& n : nums) c = common_ctx(c, n.ctx());
  c = common_ctx(c, p.ctx());
  const auto& nv = den.vars();
  std::vector<std::vector<MPoly>> powers(nums.size());
  for (std::size_t i = 0; i < nums.size(); ++i) powers[i].push_back(MPoly::constant(c, nv, Scalar(1)));
  std::vector<MPoly> den_pow{MPoly::constant(c, nv, Scalar(1))};
  MPoly num(c, nv);
  for (const auto& [e, coef] : p.terms()) {
    MPoly t = MPoly::constant(c, nv, coef);
    int deg = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      while (static_cast<int>(powers[i].size()) <= e[i]) powers[i].push_back(powers[i].back() * nums[i]);
      if (e[i]) t = t * powers[i][e[i]];
      deg += e[i];
    }
    while (static_cast<int>(den_pow.size()) <= D - deg) den_pow.push_back(den_pow.back() * den);
    if (D - deg > 0) t = t * den_pow[D - deg];
    num += t;
  }
  while (static_cast<int>(den_pow.size()) <= D) den_pow.push_back(den_pow.back() * den);
  return {num, den_pow[D]};
}

std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) fail(ErrorKind::DivisionByZero, "exact division by zero polynomial");
  const FieldCtx* c = common_ctx(a.ctx(), b.ctx());
  MPoly r = a.embed(c);
  MPoly q(c, a.vars());
  const auto& [lb, lcb] = *b.terms().rbegin();
  Scalar inv = lcb.inverse();
  MPoly bb = b.embed(c);
  while (!r.is_zero()) {
    const auto [lr, lcr] = *r.terms().rbegin();
    Exponent e(lr.size());
    for (std::size_t i = 0; i < lr.size(); ++i) {
      e[i] = lr[i] - lb[i];
      if (e[i] < 0) return std::nullopt;
    }
    Scalar t = lcr * inv;
    q.add_term(e, t);
    MPoly mono(c, a.vars());
    mono.add_term(e, t);
    r -= mono * bb;
  }
  return q;
}

MPoly resultant(const MPoly& p, const MPoly& q, int var) {
  const FieldCtx* c = common_ctx(p.ctx(), q.ctx());
  const auto& vars = p.vars();
  const int m = p.degree_in(var), n = q.degree_in(var);
  if (p.is_zero() || q.is_zero()) return MPoly(c, vars);
  if (m == 0 && n == 0) return MPoly::constant(c, vars, Scalar(1));
  if (m == 0) return p.embed(c).pow(n);
  if (n == 0) return q.embed(c).pow(m);
  const int N = m + n;
  std::vector<std::vector<MPoly>> M(N, std::vector<MPoly>(N, MPoly(c, vars)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) M[i][i + k] = p.coeff_in(var, m - k).embed(c);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k) M[n + i][i + k] = q.coeff_in(var, n - k).embed(c);
  MPoly prev = MPoly::constant(c, vars, Scalar(1));
  bool neg = false;
  for (int k = 0; k + 1 < N; ++k) {
    if (M[k][k].is_zero()) {
      int piv = -1;
      for (int i = k + 1; i < N; ++i)
        if (!M[i][k].is_zero()) {
          piv = i;
          break;
        }
      if (piv < 0) return MPoly(c, vars);
      std::swap(M[k], M[piv]);
      neg = !neg;
    }
    for (int i = k + 1; i < N; ++i) {
      for (int j = k + 1; j < N; ++j) {
        MPoly t = M[k][k] * M[i][j] - M[i][k] * M[k][j];
        auto d = divide_exact(t, prev);
        if (!d) fail(ErrorKind::InconsistentDivisor, "Bareiss step not exact");
        M[i][j] = std::move(*d);
      }
      M[i][k] = MPoly(c, vars);
    }
    prev = M[k][k];
  }
  MPoly det = M[N - 1][N - 1];
  return neg ? -det : det;
}

// ---- parser ----

namespace {

class Parser {
public:
  Parser(std::string_view s, const FieldCtx* ctx, const std::vector<std::string>& vars)
      : s_(s), ctx_(ctx), vars_(vars) {}

  MPoly parse() {
    skip();
    if (pos_ >= s_.size()) throw ParseError(ErrorKind::SyntaxError, pos_, "empty expression");
    MPoly r = expr();
    skip();
    if (pos_ < s_.size()) throw ParseError(ErrorKind::SyntaxError, pos_, std::string("unexpected '") + s_[pos_] + "'");
    return r;
  }

private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  MPoly expr() {
    MPoly r = term();
    while (true) {
      if (peek('+')) {
        ++pos_;
        r += term();
      } else if (peek('-')) {
        ++pos_;
        r -= term();
      } else {
        return r;
      }
    }
  }

  MPoly term() {
    bool neg = false;
    if (peek('-')) {
      ++pos_;
      neg = true;
    }
    MPoly r = factor();
    while (peek('*')) {
      ++pos_;
      r = r * factor();
    }
    return neg ? -r : r;
  }

  MPoly factor() {
    MPoly b = base();
    if (peek('^')) {
      ++pos_;
      skip();
      std::size_t start = pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        throw ParseError(ErrorKind::SyntaxError, pos_, "expected natural exponent");
      Int e = integer();
      if (e > 10000) throw ParseError(ErrorKind::SyntaxError, start, "exponent too large");
      b = b.pow(static_cast<unsigned>(e.get_ui()));
    }
    return b;
  }

  Int integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return Int(std::string(s_.substr(start, pos_ - start)));
  }

  MPoly base() {
    skip();
    if (pos_ >= s_.size()) throw ParseError(ErrorKind::SyntaxError, pos_, "unexpected end of input");
    char ch = s_[pos_];
    if (ch == '(') {
      ++pos_;
      MPoly r = expr();
      if (!peek(')')) throw ParseError(ErrorKind::SyntaxError, pos_, "expected ')'");
      ++pos_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      Int n = integer();
      Rat q(n);
      if (peek('/')) {
        ++pos_;
        skip();
        std::size_t at = pos_;
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
          throw ParseError(ErrorKind::SyntaxError, pos_, "expected denominator");
        Int d = integer();
        if (d == 0) throw ParseError(ErrorKind::SyntaxError, at, "zero denominator");
        q = Rat(n, d);
        q.canonicalize();
      }
      return MPoly::constant(ctx_, vars_, Scalar(q));
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return MPoly::variable(ctx_, vars_, static_cast<int>(i));
      if (const FieldCtx* g = ctx_->find_generator(name))
        return MPoly::constant(ctx_, vars_, g->generator().embed(ctx_));
      static const std::vector<std::string> known{"x", "y", "z", "v", "w", "s", "t", "u"};
      if (std::find(known.begin(), known.end(), name) != known.end())
        throw ParseError(ErrorKind::UnknownVariable, start, "variable '" + name + "' not allowed here");
      throw ParseError(ErrorKind::UnknownGenerator, start, "unknown name '" + name + "'");
    }
    throw ParseError(ErrorKind::SyntaxError, pos_, std::string("unexpected '") + ch + "'");
  }

  std::string_view s_;
  const FieldCtx* ctx_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

MPoly parse_poly(std::string_view text, const FieldCtx* ctx, const std::vector<std::string>& vars) {
  return Parser(text, ctx, vars).parse();
}

}  // namespace sisres
