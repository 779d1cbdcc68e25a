#pragma once

// Fraction field Q of R = F_p[x_0..x_{nv-1}].  Fractions are kept reduced:
// gcd(num, den) = 1 and den monic w.r.t. graded-lex leading coefficient.
// The gcd is computed by a primitive pseudo-remainder sequence, recursing
// on the top variable (plain Euclid in the univariate case).

#include <stdexcept>
#include <vector>

#include "pkl/poly.hpp"

namespace pkl {

inline int poly_top_var(const GradedPoly& f) {
  int top = -1;
  for (auto& tm : f.t)
    for (int i = 0; i < kMaxVars; ++i)
      if (tm.m.e[i] && i > top) top = i;
  return top;
}

inline int poly_deg_in(const GradedPoly& f, int v) {
  int d = 0;
  for (auto& tm : f.t) d = std::max(d, (int)tm.m.e[v]);
  return d;
}

inline std::vector<GradedPoly> poly_coeffs_in(const GradedPoly& f, int v) {
  std::vector<GradedPoly> cs(poly_deg_in(f, v) + 1, GradedPoly(f.p, f.nv));
  for (auto& tm : f.t) {
    GradedPoly::Term t2 = tm;
    int d = t2.m.e[v];
    t2.m.e[v] = 0;
    cs[d].t.push_back(t2);
  }
  for (auto& c : cs)
    std::sort(c.t.begin(), c.t.end(),
              [](const GradedPoly::Term& a, const GradedPoly::Term& b) { return mono_gl_less(b.m, a.m); });
  return cs;
}

inline GradedPoly poly_from_coeffs(const std::vector<GradedPoly>& cs, int v, u32 p, int nv) {
  GradedPoly f(p, nv);
  GradedPoly xv = GradedPoly::variable(p, nv, v);
  GradedPoly xpow = GradedPoly::constant(p, nv, 1);
  for (size_t d = 0; d < cs.size(); ++d) {
    f = f + cs[d] * xpow;
    xpow = xpow * xv;
  }
  return f;
}

GradedPoly poly_gcd(const GradedPoly& a, const GradedPoly& b);

inline GradedPoly poly_content(const GradedPoly& f, int v) {
  auto cs = poly_coeffs_in(f, v);
  GradedPoly g(f.p, f.nv);
  for (auto& c : cs)
    if (!c.is_zero()) g = poly_gcd(g, c);
  return g;
}

inline GradedPoly poly_monic(const GradedPoly& f) {
  if (f.is_zero()) return f;
  return f.scaled(fp_inv(f.t.front().c, f.p));
}

// pseudo-remainder of A by B w.r.t. variable v (deg_v A >= deg_v B > 0 assumed)
inline GradedPoly poly_prem(GradedPoly A, const GradedPoly& B, int v) {
  int db = poly_deg_in(B, v);
  auto bc = poly_coeffs_in(B, v);
  GradedPoly lb = bc[db];
  int da = poly_deg_in(A, v);
  while (!A.is_zero() && (da = poly_deg_in(A, v)) >= db) {
    auto ac = poly_coeffs_in(A, v);
    GradedPoly la = ac[da];
    if (la.is_zero()) break;
    // A := lb*A - la*x_v^{da-db}*B
    GradedPoly shift = GradedPoly::constant(A.p, A.nv, 1);
    GradedPoly xv = GradedPoly::variable(A.p, A.nv, v);
    for (int i = 0; i < da - db; ++i) shift = shift * xv;
    A = lb * A - la * shift * B;
  }
  return A;
}

inline GradedPoly poly_gcd(const GradedPoly& a, const GradedPoly& b) {
  if (a.is_zero()) return poly_monic(b);
  if (b.is_zero()) return poly_monic(a);
  int v = std::max(poly_top_var(a), poly_top_var(b));
  if (v < 0) return GradedPoly::constant(a.p, a.nv, 1);
  if (poly_deg_in(a, v) == 0 || poly_deg_in(b, v) == 0) {
    // one argument does not involve x_v: gcd divides both contents
    GradedPoly ca = poly_deg_in(a, v) == 0 ? a : poly_content(a, v);
    GradedPoly cb = poly_deg_in(b, v) == 0 ? b : poly_content(b, v);
    return poly_gcd(ca, cb);
  }
  GradedPoly ca = poly_content(a, v), cb = poly_content(b, v);
  GradedPoly A = a.exact_div(ca), B = b.exact_div(cb);
  GradedPoly cont = poly_gcd(ca, cb);
  if (poly_deg_in(A, v) < poly_deg_in(B, v)) std::swap(A, B);
  while (true) {
    GradedPoly R = poly_prem(A, B, v);
    if (R.is_zero()) break;
    if (poly_deg_in(R, v) == 0) {
      B = GradedPoly::constant(a.p, a.nv, 1);
      break;
    }
    R = R.exact_div(poly_content(R, v));  // primitive PRS
    A = B;
    B = R;
  }
  return poly_monic(cont * B);
}

struct RatFunc {
  GradedPoly num, den;

  RatFunc() = default;
  explicit RatFunc(const GradedPoly& n)
      : num(n), den(GradedPoly::constant(n.p, n.nv, 1)) {}
  RatFunc(const GradedPoly& n, const GradedPoly& d) : num(n), den(d) { reduce(); }

  static RatFunc zero(u32 p, int nv) { return RatFunc(GradedPoly::zero(p, nv)); }
  static RatFunc one(u32 p, int nv) { return RatFunc(GradedPoly::constant(p, nv, 1)); }

  bool is_zero() const { return num.is_zero(); }

  void reduce() {
    if (den.is_zero()) throw std::domain_error("RatFunc: zero denominator");
    if (num.is_zero()) {
      den = GradedPoly::constant(num.p, num.nv, 1);
      return;
    }
    GradedPoly g = poly_gcd(num, den);
    if (!g.is_constant()) {
      num = num.exact_div(g);
      den = den.exact_div(g);
    }
    u32 lc = den.t.front().c;
    if (lc != 1) {
      u32 inv = fp_inv(lc, den.p);
      num = num.scaled(inv);
      den = den.scaled(inv);
    }
  }

  bool operator==(const RatFunc& o) const { return num == o.num && den == o.den; }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num * b.num, a.den * b.den);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw std::domain_error("RatFunc: division by zero");
    return RatFunc(a.num * b.den, a.den * b.num);
  }
  RatFunc operator-() const {
    RatFunc r = *this;
    r.num = -r.num;
    return r;
  }

  std::string str(const std::vector<std::string>& names = {}) const {
    if (den.is_constant() && den.constant_value() == 1) return num.str(names);
    return "(" + num.str(names) + ")/(" + den.str(names) + ")";
  }
};

struct RatField {
  using Elt = RatFunc;
  u32 p;
  int nv;
  RatField(u32 prime, int nvars) : p(prime), nv(nvars) {}
  Elt zero() const { return RatFunc::zero(p, nv); }
  Elt one() const { return RatFunc::one(p, nv); }
  bool is_zero(const Elt& a) const { return a.is_zero(); }
  Elt add(const Elt& a, const Elt& b) const { return a + b; }
  Elt sub(const Elt& a, const Elt& b) const { return a - b; }
  Elt neg(const Elt& a) const { return -a; }
  Elt mul(const Elt& a, const Elt& b) const { return a * b; }
  Elt inv(const Elt& a) const { return one() / a; }
};

}  // namespace pkl
