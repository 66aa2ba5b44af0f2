#include "sisres/factor.hpp"

#include <algorithm>
#include <random>

namespace sisres {

namespace {

// ---------------- arithmetic in Z/p[x] ----------------

using ZpPoly = std::vector<long long>;

struct Zp {
  long long p;

  long long norm(long long a) const {
    a %= p;
    return a < 0 ? a + p : a;
  }
  long long mul(long long a, long long b) const { return static_cast<long long>((__int128)a * b % p); }
  long long inv(long long a) const {
    long long t = 0, nt = 1, r = p, nr = norm(a);
    while (nr) {
      long long q = r / nr;
      t -= q * nt;
      std::swap(t, nt);
      r -= q * nr;
      std::swap(r, nr);
    }
    return norm(t);
  }
  void trim(ZpPoly& a) const {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  ZpPoly sub(const ZpPoly& a, const ZpPoly& b) const {
    ZpPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = norm(r[i] - b[i]);
    trim(r);
    return r;
  }
  ZpPoly add(const ZpPoly& a, const ZpPoly& b) const {
    ZpPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = norm(r[i] + b[i]);
    trim(r);
    return r;
  }
  ZpPoly mul(const ZpPoly& a, const ZpPoly& b) const {
    if (a.empty() || b.empty()) return {};
    ZpPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mul(a[i], b[j])) % p;
    trim(r);
    return r;
  }
  void divmod(const ZpPoly& a, const ZpPoly& b, ZpPoly& q, ZpPoly& r) const {
    r = a;
    q.clear();
    if (r.size() < b.size()) return;
    q.assign(r.size() - b.size() + 1, 0);
    long long inv_l = inv(b.back());
    for (std::size_t k = r.size(); k-- >= b.size();) {
      long long t = mul(r[k], inv_l);
      q[k - b.size() + 1] = t;
      if (!t) continue;
      for (std::size_t i = 0; i < b.size(); ++i) r[k - b.size() + 1 + i] = norm(r[k - b.size() + 1 + i] - mul(t, b[i]));
    }
    trim(r);
    trim(q);
  }
  ZpPoly mod(const ZpPoly& a, const ZpPoly& b) const {
    ZpPoly q, r;
    divmod(a, b, q, r);
    return r;
  }
  ZpPoly quo(const ZpPoly& a, const ZpPoly& b) const {
    ZpPoly q, r;
    divmod(a, b, q, r);
    return q;
  }
  ZpPoly monic(ZpPoly a) const {
    if (a.empty()) return a;
    long long i = inv(a.back());
    for (auto& c : a) c = mul(c, i);
    return a;
  }
  ZpPoly gcd(ZpPoly a, ZpPoly b) const {
    while (!b.empty()) {
      ZpPoly r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }
  // s with s*a = 1 mod m
  ZpPoly inv_mod(const ZpPoly& a, const ZpPoly& m) const {
    ZpPoly r0 = m, r1 = mod(a, m), s0, s1{1};
    while (!r1.empty()) {
      ZpPoly q, r;
      divmod(r0, r1, q, r);
      ZpPoly s = sub(s0, mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s);
    }
    // r0 is a nonzero constant
    long long c = inv(r0[0]);
    for (auto& x : s0) x = mul(x, c);
    return s0;
  }
  ZpPoly derivative(const ZpPoly& a) const {
    ZpPoly d;
    for (std::size_t k = 1; k < a.size(); ++k) d.push_back(mul(a[k], static_cast<long long>(k) % p));
    trim(d);
    return d;
  }
  ZpPoly powmod(ZpPoly b, const Int& e, const ZpPoly& m) const {
    ZpPoly r{1};
    b = mod(b, m);
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
      r = mod(mul(r, r), m);
      if (mpz_tstbit(e.get_mpz_t(), i)) r = mod(mul(r, b), m);
    }
    return r;
  }
};

// Cantor-Zassenhaus: all monic irreducible factors of squarefree monic f, p odd.
std::vector<ZpPoly> factor_mod_p(const Zp& F, const ZpPoly& f, std::mt19937_64& rng) {
  std::vector<ZpPoly> out;
  std::vector<std::pair<ZpPoly, int>> dd;
  ZpPoly rest = f, h{0, 1};
  const ZpPoly x{0, 1};
  for (int i = 1; 2 * i <= static_cast<int>(rest.size()) - 1; ++i) {
    h = F.powmod(h, Int(static_cast<long>(F.p)), rest);
    ZpPoly g = F.gcd(F.sub(h, x), rest);
    if (g.size() > 1) {
      dd.push_back({g, i});
      rest = F.quo(rest, g);
      h = F.mod(h, rest);
    }
  }
  if (rest.size() > 1) dd.push_back({rest, static_cast<int>(rest.size()) - 1});
  for (auto& [g, i] : dd) {
    std::vector<ZpPoly> stack{g};
    Int e;
    mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(F.p), static_cast<unsigned long>(i));
    e = (e - 1) / 2;
    while (!stack.empty()) {
      ZpPoly a = stack.back();
      stack.pop_back();
      if (static_cast<int>(a.size()) - 1 == i) {
        out.push_back(a);
        continue;
      }
      while (true) {
        ZpPoly r(a.size() - 1);
        for (auto& c : r) c = static_cast<long long>(rng() % static_cast<unsigned long long>(F.p));
        F.trim(r);
        if (r.size() < 2) continue;
        ZpPoly b = F.powmod(r, e, a);
        b = F.sub(b, ZpPoly{1});
        ZpPoly d = F.gcd(b, a);
        if (d.size() > 1 && d.size() < a.size()) {
          stack.push_back(d);
          stack.push_back(F.quo(a, d));
          break;
        }
      }
    }
  }
  return out;
}

// ---------------- integer polynomials ----------------

using ZPoly = std::vector<Int>;

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  ztrim(r);
  return r;
}

Int smod(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  if (2 * r > m) r -= m;
  return r;
}

Int pmod(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

ZPoly zmod(ZPoly a, const Int& m) {
  for (auto& c : a) c = smod(c, m);
  ztrim(a);
  return a;
}

Int zcontent(const ZPoly& a) {
  Int g = 0;
  for (const auto& c : a) g = gcd(g, c);
  return g;
}

ZPoly zprimitive(ZPoly a) {
  Int g = zcontent(a);
  if (g == 0) return a;
  if (a.back() < 0) g = -g;
  for (auto& c : a) c /= g;
  return a;
}

bool zdivide(const ZPoly& a, const ZPoly& b, ZPoly& q) {
  ZPoly r = a;
  if (r.size() < b.size()) return r.empty();
  q.assign(r.size() - b.size() + 1, Int(0));
  for (std::size_t k = r.size(); k-- >= b.size();) {
    if (r[k] == 0) continue;
    if (r[k] % b.back() != 0) return false;
    Int t = r[k] / b.back();
    q[k - b.size() + 1] = t;
    for (std::size_t i = 0; i < b.size(); ++i) r[k - b.size() + 1 + i] -= t * b[i];
  }
  ztrim(r);
  ztrim(q);
  return r.empty();
}

ZpPoly to_zp(const Zp& F, const ZPoly& a) {
  ZpPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = pmod(a[i], Int(static_cast<long>(F.p))).get_si();
  F.trim(r);
  return r;
}

ZPoly from_zp(const ZpPoly& a) {
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = Int(static_cast<long>(a[i]));
  return r;
}

bool is_probable_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Factor primitive squarefree f of degree >= 2 over Z.
std::vector<ZPoly> zassenhaus(const ZPoly& f) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n <= 1) return {f};
  std::mt19937_64 rng(0x5eed);
  const Int& lc = f.back();

  long long best_p = 0;
  std::vector<ZpPoly> best;
  int good = 0;
  for (long long p = 3; good < 4 && p < 100000; p += 2) {
    if (!is_probable_prime(p)) continue;
    if (lc % Int(static_cast<long>(p)) == 0) continue;
    Zp F{p};
    ZpPoly fp = to_zp(F, f);
    if (static_cast<int>(fp.size()) - 1 != n) continue;
    if (F.gcd(fp, F.derivative(fp)).size() != 1) continue;
    auto fac = factor_mod_p(F, F.monic(fp), rng);
    ++good;
    if (best_p == 0 || fac.size() < best.size()) {
      best_p = p;
      best = std::move(fac);
    }
    if (best.size() == 1) break;
  }
  if (best_p == 0) fail(ErrorKind::InvalidArgument, "no good prime for factorisation");
  if (best.size() == 1) return {f};

  Zp F{best_p};
  const Int P(static_cast<long>(best_p));
  const std::size_t r = best.size();

  // coefficient bound for lc * (true factor)
  Int norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Int bound = sqrt(norm2) + 1;
  bound *= abs(lc);
  bound <<= n;
  bound *= 2;

  // Bezout cofactors s_i with sum s_i * prod_{j!=i} u_j = 1 mod p
  std::vector<ZpPoly> s(r);
  for (std::size_t i = 0; i < r; ++i) {
    ZpPoly others{1};
    for (std::size_t j = 0; j < r; ++j)
      if (j != i) others = F.mul(others, best[j]);
    s[i] = F.inv_mod(others, best[i]);
  }

  std::vector<ZPoly> U(r);
  for (std::size_t i = 0; i < r; ++i) U[i] = from_zp(best[i]);
  Int M = P;
  const long long lc_inv = F.inv(pmod(lc, P).get_si());
  while (M <= bound) {
    ZPoly prod{lc};
    for (const auto& u : U) prod = zmul(prod, u);
    ZPoly e(f.size(), Int(0));
    for (std::size_t k = 0; k < f.size(); ++k) {
      Int pk = k < prod.size() ? prod[k] : Int(0);
      e[k] = f[k] - pk;
    }
    for (auto& c : e) c /= M;  // exact by construction
    ZpPoly ep = to_zp(F, e);
    for (auto& c : ep) c = F.mul(c, lc_inv);
    for (std::size_t i = 0; i < r; ++i) {
      ZpPoly d = F.mod(F.mul(ep, s[i]), best[i]);
      ZPoly dz = from_zp(d);
      if (U[i].size() < dz.size()) U[i].resize(dz.size(), Int(0));
      for (std::size_t k = 0; k < dz.size(); ++k) U[i][k] = pmod(U[i][k] + M * dz[k], M * P);
    }
    M *= P;
  }

  // recombination
  std::vector<ZPoly> factors;
  std::vector<ZPoly> live = U;
  ZPoly rest = f;
  std::size_t sz = 1;
  while (2 * sz <= live.size()) {
    bool found = false;
    std::vector<std::size_t> idx(sz);
    for (std::size_t i = 0; i < sz; ++i) idx[i] = i;
    while (true) {
      ZPoly g{rest.back()};
      for (auto i : idx) g = zmod(zmul(g, live[i]), M);
      g = zmod(g, M);
      ZPoly cand = zprimitive(g);
      ZPoly q;
      bool ok = cand.size() > 1;
      if (ok && rest[0] != 0 && cand[0] != 0 && rest[0] % cand[0] != 0) ok = false;
      if (ok && zdivide(rest, cand, q)) {
        factors.push_back(cand);
        rest = q;
        std::vector<ZPoly> keep;
        for (std::size_t i = 0; i < live.size(); ++i)
          if (std::find(idx.begin(), idx.end(), i) == idx.end()) keep.push_back(live[i]);
        live = std::move(keep);
        found = true;
        break;
      }
      // next subset
      int k = static_cast<int>(sz) - 1;
      while (k >= 0 && idx[k] == live.size() - sz + k) --k;
      if (k < 0) break;
      ++idx[k];
      for (std::size_t j = k + 1; j < sz; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++sz;
  }
  if (rest.size() > 1) factors.push_back(zprimitive(rest));
  return factors;
}

UPoly zpoly_to_upoly(const ZPoly& z) {
  std::vector<Scalar> c;
  for (const auto& x : z) c.emplace_back(Rat(x));
  return UPoly(FieldCtx::rationals(), std::move(c)).monic();
}

ZPoly upoly_to_zpoly(const UPoly& p) {
  Int den = 1;
  for (const auto& c : p.coeffs()) den = lcm(den, c.rational().get_den());
  ZPoly z;
  for (const auto& c : p.coeffs()) {
    Rat q = c.rational() * den;
    z.push_back(q.get_num());
  }
  return zprimitive(z);
}

std::vector<UPoly> factor_squarefree_q(const UPoly& p) {
  if (p.degree() <= 1) return {p.monic()};
  std::vector<UPoly> out;
  for (const auto& z : zassenhaus(upoly_to_zpoly(p))) out.push_back(zpoly_to_upoly(z));
  return out;
}

// ---------------- Trager over an extension ----------------

std::vector<UPoly> factor_squarefree(const UPoly& p, int cap);

// Norm of g(t - s*a) down to the base field.
UPoly norm_shifted(const UPoly& g, long s) {
  const FieldCtx* K = g.ctx();
  const FieldCtx* B = K->base();
  const std::vector<std::string> vars{"a", "t"};
  MPoly a = MPoly::variable(B, vars, 0), t = MPoly::variable(B, vars, 1);
  MPoly arg = t - a * Scalar(s);
  MPoly G(B, vars), pw = MPoly::constant(B, vars, Scalar(1));
  for (int k = 0; k <= g.degree(); ++k) {
    const Scalar& ck = g.coeffs()[k];
    MPoly ck_poly(B, vars);
    for (std::size_t j = 0; j < ck.coeffs().size(); ++j) ck_poly.add_term({static_cast<int>(j), 0}, ck.coeffs()[j]);
    G += ck_poly * pw;
    pw = pw * arg;
  }
  MPoly m(B, vars);
  const auto& mp = K->minpoly();
  for (std::size_t j = 0; j < mp.size(); ++j) m.add_term({static_cast<int>(j), 0}, mp[j]);
  MPoly N = resultant(m, G, 0);
  return N.to_univariate(1);
}

std::vector<UPoly> factor_squarefree_ext(const UPoly& g, int cap) {
  const FieldCtx* K = g.ctx();
  const FieldCtx* B = K->base();
  Scalar alpha = K->generator();
  for (long s = 0; s < 64; ++s) {
    UPoly N = norm_shifted(g, s);
    if (N.degree() > cap) fail(ErrorKind::DegreeTooLarge, "norm polynomial of degree " + std::to_string(N.degree()));
    if (!is_squarefree(N)) continue;
    std::vector<UPoly> out;
    UPoly rest = g.monic();
    for (const auto& Ni : factor_squarefree(N, cap)) {
      UPoly h = Ni.embed(K).shift(alpha * Scalar(s));
      UPoly gi = gcd(rest, h);
      if (gi.degree() > 0) {
        out.push_back(gi);
        rest = divmod(rest, gi).first;
      }
    }
    (void)B;
    return out;
  }
  fail(ErrorKind::InvalidArgument, "no squarefree norm found");
}

std::vector<UPoly> factor_squarefree(const UPoly& p, int cap) {
  if (p.degree() <= 1) return {p.monic()};
  if (p.degree() > cap) fail(ErrorKind::DegreeTooLarge, "degree " + std::to_string(p.degree()) + " exceeds cap");
  if (p.ctx()->depth() == 0) return factor_squarefree_q(p);
  return factor_squarefree_ext(p.monic(), cap);
}

bool upoly_less(const UPoly& a, const UPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return a.to_string() < b.to_string();
}

}  // namespace

std::vector<std::pair<UPoly, int>> factor_univariate(const UPoly& p, int degree_cap) {
  if (p.is_zero()) fail(ErrorKind::ZeroPolynomial, "factor of zero");
  if (p.degree() > degree_cap) fail(ErrorKind::DegreeTooLarge, "degree " + std::to_string(p.degree()) + " exceeds cap");
  std::vector<std::pair<UPoly, int>> out;
  for (const auto& [a, e] : squarefree_decomposition(p))
    for (auto& q : factor_squarefree(a, degree_cap)) out.push_back({q, e});
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.second != y.second && x.first == y.first) return x.second < y.second;
    return upoly_less(x.first, y.first);
  });
  return out;
}

std::vector<std::pair<MPoly, int>> factor_univariate(const MPoly& p, int degree_cap) {
  int var = 0;
  for (int i = 0; i < p.nvars(); ++i)
    if (p.involves(i)) var = i;
  std::vector<std::pair<MPoly, int>> out;
  for (auto& [q, e] : factor_univariate(p.to_univariate(var), degree_cap))
    out.push_back({MPoly::from_univariate(q, p.vars(), var), e});
  return out;
}

bool is_irreducible(const UPoly& p) {
  if (p.degree() <= 0) return false;
  auto f = factor_univariate(p);
  return f.size() == 1 && f[0].second == 1;
}

const FieldCtx* extend_field(const FieldCtx* ctx, const UPoly& m, const std::string& name, int max_depth) {
  if (ctx->depth() + 1 > max_depth)
    fail(ErrorKind::TowerDepthExceeded, "tower depth " + std::to_string(ctx->depth() + 1) + " exceeds cap " +
                                            std::to_string(max_depth));
  UPoly mm = m.embed(ctx);
  if (mm.degree() < 1 || !mm.lead().is_one()) fail(ErrorKind::InvalidArgument, "minimal polynomial must be monic");
  if (mm.degree() == 1) fail(ErrorKind::NotIrreducible, "degree 1 polynomial gives no proper extension");
  if (!is_irreducible(mm)) fail(ErrorKind::NotIrreducible, mm.to_string(name) + " is reducible");
  return FieldCtx::make_extension(ctx, mm.coeffs(), name);
}

const FieldCtx* extend_field(const FieldCtx* ctx, const MPoly& m, const std::string& name, int max_depth) {
  int var = 0;
  for (int i = 0; i < m.nvars(); ++i)
    if (m.involves(i)) var = i;
  return extend_field(ctx, m.to_univariate(var), name, max_depth);
}

std::vector<RootClass> root_classes(const UPoly& p, int max_depth) {
  std::vector<RootClass> out;
  for (auto& [q, e] : factor_univariate(p)) {
    RootClass rc{q, e, p.ctx(), Scalar::zero(p.ctx())};
    if (q.degree() == 1) {
      rc.root = -q.coeff(0);
    } else {
      if (p.ctx()->depth() + 1 > max_depth)
        fail(ErrorKind::FieldExtensionFailure, "root of " + q.to_string() + " needs tower depth " +
                                                   std::to_string(p.ctx()->depth() + 1));
      rc.ctx = FieldCtx::make_extension(p.ctx(), q.coeffs(), "a" + std::to_string(p.ctx()->depth() + 1));
      rc.root = rc.ctx->generator();
    }
    out.push_back(std::move(rc));
  }
  return out;
}

bool is_squarefree(const MPoly& f) {
  if (f.is_zero()) return false;
  const int n = f.nvars();
  if (f.total_degree() <= 1) return true;
  if (n == 1) return sisres::is_squarefree(f.to_univariate(0));
  // shear so the top part is monic in the last variable
  MPoly top = f.homogeneous_part(f.total_degree());
  for (long c = 0; c < 64; ++c) {
    std::vector<Scalar> pt(n, Scalar(c));
    for (int i = 0; i < n - 1; ++i) pt[i] = Scalar(c + i);
    pt[n - 1] = Scalar(1);
    if (top.evaluate(pt).is_zero()) continue;
    std::vector<MPoly> images;
    for (int i = 0; i < n; ++i) {
      MPoly im = MPoly::variable(f.ctx(), f.vars(), i);
      if (i < n - 1) im += MPoly::variable(f.ctx(), f.vars(), n - 1) * pt[i];
      images.push_back(im);
    }
    MPoly g = f.substitute(images);
    if (n == 2) {
      // g is monic in w, so Res_w(g, g_w) specializes; it has degree at most
      // D(D-1) in v, so that many + 1 zero values mean it vanishes.
      const int D = g.total_degree();
      const MPoly gw = g.derivative(1);
      for (long v0 = 0; v0 <= static_cast<long>(D) * (D - 1); ++v0) {
        std::vector<MPoly> at{MPoly::constant(g.ctx(), g.vars(), Scalar(v0)), MPoly::variable(g.ctx(), g.vars(), 1)};
        if (gcd(g.substitute(at).to_univariate(1), gw.substitute(at).to_univariate(1)).degree() == 0) return true;
      }
      return false;
    }
    return !resultant(g, g.derivative(n - 1), n - 1).is_zero();
  }
  fail(ErrorKind::InvalidArgument, "no shear found");
}

namespace {

// Drop terms with exponent of var 0 at least N.
MPoly truncate_x(const MPoly& p, int N) {
  MPoly r(p.ctx(), p.vars());
  for (const auto& [e, c] : p.terms())
    if (e[0] < N) r.add_term(e, c);
  return r;
}

// Factors of psi(x, z), monic in z, with psi(0, z) squarefree of full degree.
std::vector<MPoly> hensel_factor(const MPoly& psi) {
  const FieldCtx* K = psi.ctx();
  const auto& vars = psi.vars();
  const int d = psi.degree_in(1);
  UPoly base = psi.coeff_in(0, 0).to_univariate(1);
  std::vector<UPoly> u;
  for (auto& [q, e] : factor_univariate(base)) u.push_back(q);
  if (u.size() == 1) return {psi};
  const std::size_t r = u.size();
  std::vector<UPoly> s(r);
  for (std::size_t i = 0; i < r; ++i) {
    UPoly others = UPoly::constant(K, Scalar(1));
    for (std::size_t j = 0; j < r; ++j)
      if (j != i) others = others * u[j];
    UPoly a, b;
    ext_gcd(others, u[i], a, b);
    s[i] = a % u[i];
  }
  const int N = psi.degree_in(0) + 1;
  std::vector<MPoly> U;
  for (auto& ui : u) U.push_back(MPoly::from_univariate(ui, vars, 1));
  for (int k = 1; k < N; ++k) {
    MPoly prod = MPoly::constant(K, vars, Scalar(1));
    for (auto& Ui : U) prod = truncate_x(prod * Ui, k + 1);
    MPoly err = truncate_x(psi - prod, k + 1);
    UPoly e = err.coeff_in(0, k).to_univariate(1);
    if (e.is_zero()) continue;
    for (std::size_t i = 0; i < r; ++i) {
      UPoly di = (e * s[i]) % u[i];
      MPoly Di = MPoly::from_univariate(di, vars, 1);
      Exponent xe{k, 0};
      MPoly xk(K, vars);
      xk.add_term(xe, Scalar(1));
      U[i] += xk * Di;
    }
  }
  std::vector<MPoly> factors;
  MPoly rest = psi;
  std::vector<MPoly> live = U;
  std::size_t sz = 1;
  while (2 * sz <= live.size()) {
    bool found = false;
    std::vector<std::size_t> idx(sz);
    for (std::size_t i = 0; i < sz; ++i) idx[i] = i;
    while (true) {
      MPoly g = MPoly::constant(K, vars, Scalar(1));
      for (auto i : idx) g = truncate_x(g * live[i], N);
      if (g.total_degree() <= d) {
        if (auto q = divide_exact(rest, g)) {
          factors.push_back(g);
          rest = *q;
          std::vector<MPoly> keep;
          for (std::size_t i = 0; i < live.size(); ++i)
            if (std::find(idx.begin(), idx.end(), i) == idx.end()) keep.push_back(live[i]);
          live = std::move(keep);
          found = true;
          break;
        }
      }
      int k = static_cast<int>(sz) - 1;
      while (k >= 0 && idx[k] == live.size() - sz + k) --k;
      if (k < 0) break;
      ++idx[k];
      for (std::size_t j = k + 1; j < sz; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++sz;
  }
  if (rest.total_degree() > 0) factors.push_back(rest);
  return factors;
}

}  // namespace

std::vector<MPoly> factor_homogeneous(const MPoly& f) {
  if (f.nvars() != 3) fail(ErrorKind::InvalidArgument, "expected three variables");
  if (!f.is_homogeneous()) fail(ErrorKind::NotHomogeneous, f.to_string());
  const FieldCtx* K = f.ctx();
  const auto& vars = f.vars();
  const int d = f.total_degree();
  if (d <= 1) return {f.monic()};
  // shear x -> x + al*z, y -> y + be*z so that z^d appears
  long al = 0, be = 0;
  bool ok = false;
  for (long t = 0; t < 200 && !ok; ++t) {
    al = t % 7 - 3;
    be = t / 7 - 3 + (t % 2);
    if (!f.evaluate({Scalar(al), Scalar(be), Scalar(1)}).is_zero()) ok = true;
  }
  if (!ok) fail(ErrorKind::InvalidArgument, "no shear found");
  MPoly X = MPoly::variable(K, vars, 0), Y = MPoly::variable(K, vars, 1), Z = MPoly::variable(K, vars, 2);
  MPoly F = f.substitute({X + Z * Scalar(al), Y + Z * Scalar(be), Z});
  // phi(x, z) = F(x, 1, z) in variables (x, z)
  const std::vector<std::string> bv{"x", "z"};
  MPoly phi(K, bv);
  for (const auto& [e, c] : F.terms()) phi.add_term({e[0], e[2]}, c);
  phi = phi * phi.coeff({0, d}).inverse();
  if (resultant(phi, phi.derivative(1), 1).is_zero())
    fail(ErrorKind::TangentConeNotReduced, f.to_string() + " has a repeated factor");
  MPoly psi;
  long x0 = 0;
  for (long t = 0; t < 400; ++t) {
    x0 = (t % 2 == 0) ? t / 2 : -(t + 1) / 2;
    MPoly xs = MPoly::variable(K, bv, 0) + MPoly::constant(K, bv, Scalar(x0));
    MPoly cand = phi.substitute({xs, MPoly::variable(K, bv, 1)});
    UPoly b = cand.coeff_in(0, 0).to_univariate(1);
    if (b.degree() == d && sisres::is_squarefree(b)) {
      psi = cand;
      break;
    }
  }
  if (psi.is_zero()) fail(ErrorKind::InvalidArgument, "no good specialisation found");
  std::vector<MPoly> out;
  for (const auto& g : hensel_factor(psi)) {
    // undo x translation and homogenise with y
    MPoly xs = MPoly::variable(K, bv, 0) - MPoly::constant(K, bv, Scalar(x0));
    MPoly h = g.substitute({xs, MPoly::variable(K, bv, 1)});
    const int k = h.total_degree();
    MPoly H(K, vars);
    for (const auto& [e, c] : h.terms()) H.add_term({e[0], k - e[0] - e[1], e[1]}, c);
    MPoly back = H.substitute({X - Z * Scalar(al), Y - Z * Scalar(be), Z});
    out.push_back(back.monic());
  }
  std::sort(out.begin(), out.end(), [](const MPoly& a, const MPoly& b) {
    if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
    return a.to_string() < b.to_string();
  });
  return out;
}

}  // namespace sisres
