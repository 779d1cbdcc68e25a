#pragma once

// GradedPoly: sparse multivariate polynomials over F_p on a basis of t,
// with the grading that puts the generators in degree 2.  Terms are kept
// sorted in descending graded-lexicographic order, leading term first.

#include <algorithm>
#include <array>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pkl/fp.hpp"

namespace pkl {

constexpr int kMaxVars = 4;

struct Mono {
  std::array<std::uint8_t, kMaxVars> e{};

  int total() const {
    int s = 0;
    for (auto x : e) s += x;
    return s;
  }
  bool operator==(const Mono&) const = default;
};

// graded-lex: higher total degree first, then lex on exponents
inline bool mono_gl_less(const Mono& a, const Mono& b) {
  int ta = a.total(), tb = b.total();
  if (ta != tb) return ta < tb;
  for (int i = 0; i < kMaxVars; ++i)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
  return false;
}

inline Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint8_t>(a.e[i] + b.e[i]);
  return r;
}
inline bool mono_divides(const Mono& a, const Mono& b) {  // a | b
  for (int i = 0; i < kMaxVars; ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}
inline Mono mono_div(const Mono& b, const Mono& a) {
  Mono r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint8_t>(b.e[i] - a.e[i]);
  return r;
}

struct GradedPoly {
  u32 p = 0;
  int nv = 0;
  struct Term {
    Mono m;
    u32 c;
  };
  std::vector<Term> t;  // descending graded-lex, no zero coefficients

  GradedPoly() = default;
  GradedPoly(u32 prime, int nvars) : p(prime), nv(nvars) {}

  static GradedPoly zero(u32 p, int nv) { return GradedPoly(p, nv); }
  static GradedPoly constant(u32 p, int nv, i64 a) {
    GradedPoly f(p, nv);
    u32 c = fp_norm(a, p);
    if (c) f.t.push_back({Mono{}, c});
    return f;
  }
  static GradedPoly variable(u32 p, int nv, int i, i64 coeff = 1) {
    GradedPoly f(p, nv);
    u32 c = fp_norm(coeff, p);
    if (c) {
      Mono m;
      m.e[i] = 1;
      f.t.push_back({m, c});
    }
    return f;
  }
  // linear form sum coeffs[i] * x_i
  static GradedPoly linear(u32 p, int nv, const std::vector<i64>& coeffs) {
    GradedPoly f(p, nv);
    for (int i = nv - 1; i >= 0; --i) {
      u32 c = fp_norm(coeffs[i], p);
      if (c) {
        Mono m;
        m.e[i] = 1;
        f.t.push_back({m, c});
      }
    }
    std::sort(f.t.begin(), f.t.end(), [](const Term& a, const Term& b) { return mono_gl_less(b.m, a.m); });
    return f;
  }

  bool is_zero() const { return t.empty(); }
  bool is_constant() const { return t.empty() || (t.size() == 1 && t[0].m.total() == 0); }
  u32 constant_value() const { return t.empty() ? 0 : t[0].c; }

  // degree in the realization grading (generators have degree 2); zero -> -1
  int graded_degree() const { return t.empty() ? -1 : 2 * t.front().m.total(); }
  bool is_homogeneous() const {
    if (t.empty()) return true;
    int d = t.front().m.total();
    for (auto& tm : t)
      if (tm.m.total() != d) return false;
    return true;
  }

  bool operator==(const GradedPoly& o) const {
    if (t.size() != o.t.size()) return false;
    for (size_t i = 0; i < t.size(); ++i)
      if (!(t[i].m == o.t[i].m) || t[i].c != o.t[i].c) return false;
    return true;
  }

  GradedPoly operator-() const {
    GradedPoly r(p, nv);
    r.t.reserve(t.size());
    for (auto& tm : t) r.t.push_back({tm.m, fp_neg(tm.c, p)});
    return r;
  }

  friend GradedPoly operator+(const GradedPoly& a, const GradedPoly& b) {
    GradedPoly r(a.p, std::max(a.nv, b.nv));
    size_t i = 0, j = 0;
    while (i < a.t.size() || j < b.t.size()) {
      if (j == b.t.size() || (i < a.t.size() && mono_gl_less(b.t[j].m, a.t[i].m))) {
        r.t.push_back(a.t[i++]);
      } else if (i == a.t.size() || mono_gl_less(a.t[i].m, b.t[j].m)) {
        r.t.push_back(b.t[j++]);
      } else {
        u32 c = fp_add(a.t[i].c, b.t[j].c, a.p);
        if (c) r.t.push_back({a.t[i].m, c});
        ++i;
        ++j;
      }
    }
    return r;
  }
  friend GradedPoly operator-(const GradedPoly& a, const GradedPoly& b) { return a + (-b); }

  friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
    GradedPoly r(a.p, std::max(a.nv, b.nv));
    if (a.t.empty() || b.t.empty()) return r;
    std::vector<Term> acc;
    acc.reserve(a.t.size() * b.t.size());
    for (auto& ta : a.t)
      for (auto& tb : b.t) acc.push_back({mono_mul(ta.m, tb.m), fp_mul(ta.c, tb.c, a.p)});
    std::sort(acc.begin(), acc.end(), [](const Term& x, const Term& y) { return mono_gl_less(y.m, x.m); });
    for (auto& tm : acc) {
      if (!r.t.empty() && r.t.back().m == tm.m) {
        r.t.back().c = fp_add(r.t.back().c, tm.c, a.p);
        if (!r.t.back().c) r.t.pop_back();
      } else {
        r.t.push_back(tm);
      }
    }
    return r;
  }

  GradedPoly scaled(i64 a) const {
    u32 c = fp_norm(a, p);
    GradedPoly r(p, nv);
    if (!c) return r;
    r.t.reserve(t.size());
    for (auto& tm : t) r.t.push_back({tm.m, fp_mul(tm.c, c, p)});
    return r;
  }

  u32 coeff(const Mono& m) const {
    for (auto& tm : t)
      if (tm.m == m) return tm.c;
    return 0;
  }

  // homogeneous component of given exponent-degree
  GradedPoly exp_slice(int d) const {
    GradedPoly r(p, nv);
    for (auto& tm : t)
      if (tm.m.total() == d) r.t.push_back(tm);
    return r;
  }

  // substitute x_j -> sum_i sub[j][i] x_i (entries mod p); ring endomorphism
  GradedPoly substitute(const std::vector<std::vector<u32>>& sub) const {
    GradedPoly r = zero(p, nv);
    for (auto& tm : t) {
      GradedPoly prod = constant(p, nv, tm.c);
      for (int j = 0; j < nv; ++j) {
        if (!tm.m.e[j]) continue;
        std::vector<i64> lf(nv);
        for (int i = 0; i < nv; ++i) lf[i] = sub[j][i];
        GradedPoly l = linear(p, nv, lf);
        for (int k = 0; k < tm.m.e[j]; ++k) prod = prod * l;
      }
      r = r + prod;
    }
    return r;
  }

  // exact division: returns q with *this == q * g; throws if not divisible
  GradedPoly exact_div(const GradedPoly& g) const {
    if (g.is_zero()) throw std::domain_error("exact_div: division by zero polynomial");
    GradedPoly q(p, nv), rem = *this;
    u32 glc_inv = fp_inv(g.t.front().c, p);
    while (!rem.is_zero()) {
      const Term& lt = rem.t.front();
      if (!mono_divides(g.t.front().m, lt.m))
        throw std::domain_error("exact_div: not divisible");
      Term qt{mono_div(lt.m, g.t.front().m), fp_mul(lt.c, glc_inv, p)};
      GradedPoly qpoly(p, nv);
      qpoly.t.push_back(qt);
      q = q + qpoly;
      rem = rem - qpoly * g;
    }
    return q;
  }

  // evaluate at a point over F_q
  FqElt eval(const Fq& F, const std::vector<FqElt>& pt) const {
    FqElt s = F.zero();
    for (auto& tm : t) {
      FqElt prod = F.from_int(tm.c);
      for (int i = 0; i < nv; ++i)
        for (int k = 0; k < tm.m.e[i]; ++k) prod = F.mul(prod, pt[i]);
      s = F.add(s, prod);
    }
    return s;
  }

  std::string str(const std::vector<std::string>& names = {}) const {
    if (t.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& tm : t) {
      if (!first) os << " + ";
      bool printed = false;
      if (tm.c != 1 || tm.m.total() == 0) {
        os << tm.c;
        printed = true;
      }
      for (int i = 0; i < nv; ++i) {
        if (!tm.m.e[i]) continue;
        if (printed) os << "*";
        if (i < (int)names.size()) os << names[i];
        else os << "x" << i;
        if (tm.m.e[i] > 1) os << "^" << int(tm.m.e[i]);
        printed = true;
      }
      first = false;
    }
    return os.str();
  }
};

// total ordering on polynomials (for deterministic containers)
inline bool poly_less(const GradedPoly& a, const GradedPoly& b) {
  if (a.t.size() != b.t.size()) return a.t.size() < b.t.size();
  for (size_t i = 0; i < a.t.size(); ++i) {
    if (!(a.t[i].m == b.t[i].m)) return mono_gl_less(a.t[i].m, b.t[i].m);
    if (a.t[i].c != b.t[i].c) return a.t[i].c < b.t[i].c;
  }
  return false;
}

}  // namespace pkl
