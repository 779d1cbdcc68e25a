#pragma once

// Univariate polynomial arithmetic and factorization over F_p (p odd):
// squarefree decomposition, distinct-degree, and Cantor-Zassenhaus
// equal-degree splitting with a seeded generator.  Used to produce Fitting
// idempotents of endomorphism algebras.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "pkl/fp.hpp"

namespace pkl {

// dense coefficient vector, lowest degree first, no trailing zeros
using UPoly = std::vector<u32>;

inline void up_trim(UPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}
inline int up_deg(const UPoly& f) { return (int)f.size() - 1; }
inline bool up_is_zero(const UPoly& f) { return f.empty(); }

inline UPoly up_add(const UPoly& a, const UPoly& b, u32 p) {
  UPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    u32 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
    r[i] = fp_add(x, y, p);
  }
  up_trim(r);
  return r;
}
inline UPoly up_sub(const UPoly& a, const UPoly& b, u32 p) {
  UPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    u32 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
    r[i] = fp_sub(x, y, p);
  }
  up_trim(r);
  return r;
}
inline UPoly up_mul(const UPoly& a, const UPoly& b, u32 p) {
  if (up_is_zero(a) || up_is_zero(b)) return {};
  UPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = fp_add(r[i + j], fp_mul(a[i], b[j], p), p);
  return r;
}
inline UPoly up_scale(UPoly f, u32 c, u32 p) {
  for (auto& x : f) x = fp_mul(x, c, p);
  up_trim(f);
  return f;
}
inline UPoly up_monic(const UPoly& f, u32 p) {
  if (up_is_zero(f)) return f;
  return up_scale(f, fp_inv(f.back(), p), p);
}

// division with remainder
inline std::pair<UPoly, UPoly> up_divmod(UPoly a, const UPoly& b, u32 p) {
  if (up_is_zero(b)) throw std::domain_error("up_divmod: division by zero");
  UPoly q(a.size() > b.size() - 1 ? a.size() - b.size() + 1 : 0, 0);
  u32 inv = fp_inv(b.back(), p);
  while (!up_is_zero(a) && a.size() >= b.size()) {
    u32 c = fp_mul(a.back(), inv, p);
    size_t shift = a.size() - b.size();
    q[shift] = c;
    for (size_t i = 0; i < b.size(); ++i)
      a[shift + i] = fp_sub(a[shift + i], fp_mul(c, b[i], p), p);
    up_trim(a);
  }
  up_trim(q);
  return {q, a};
}
inline UPoly up_mod(const UPoly& a, const UPoly& b, u32 p) { return up_divmod(a, b, p).second; }

inline UPoly up_gcd(UPoly a, UPoly b, u32 p) {
  while (!up_is_zero(b)) {
    UPoly r = up_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return up_monic(a, p);
}

inline UPoly up_derivative(const UPoly& f, u32 p) {
  UPoly r;
  for (size_t i = 1; i < f.size(); ++i) r.push_back(fp_mul(f[i], (u32)(i % p), p));
  up_trim(r);
  return r;
}

inline UPoly up_powmod(UPoly base, u64 e, const UPoly& mod, u32 p) {
  UPoly r{1};
  base = up_mod(base, mod, p);
  while (e) {
    if (e & 1) r = up_mod(up_mul(r, base, p), mod, p);
    base = up_mod(up_mul(base, base, p), mod, p);
    e >>= 1;
  }
  return r;
}

// extended euclid: g = gcd, and u with u*a == g  (mod b)
inline void up_ext_gcd(const UPoly& a, const UPoly& b, u32 p, UPoly& g, UPoly& u) {
  UPoly r0 = a, r1 = b, s0{1}, s1;
  while (!up_is_zero(r1)) {
    auto [q, r2] = up_divmod(r0, r1, p);
    UPoly s2 = up_sub(s0, up_mul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  u32 lc = r0.empty() ? 1 : r0.back();
  g = up_monic(r0, p);
  u = up_scale(s0, fp_inv(lc, p), p);
}

// full factorization into monic irreducibles with multiplicity
inline void up_factor_into(const UPoly& f0, u32 p, std::vector<std::pair<UPoly, int>>& out, Rng& rng,
                           int mult = 1);

inline void up_equal_degree_split(const UPoly& f, int d, u32 p, std::vector<UPoly>& out, Rng& rng) {
  if (up_deg(f) == d) {
    out.push_back(up_monic(f, p));
    return;
  }
  // Cantor-Zassenhaus: random r, split via gcd(r^((p^d-1)/2) - 1, f)
  while (true) {
    UPoly r(up_deg(f), 0);
    for (auto& c : r) c = rng.below(p);
    up_trim(r);
    if (up_deg(r) < 1) continue;
    u64 e = 1;
    for (int i = 0; i < d; ++i) e *= p;
    UPoly h = up_powmod(r, (e - 1) / 2, f, p);
    h = up_sub(h, UPoly{1}, p);
    UPoly g = up_gcd(h, f, p);
    if (up_deg(g) > 0 && up_deg(g) < up_deg(f)) {
      up_equal_degree_split(g, d, p, out, rng);
      up_equal_degree_split(up_divmod(f, g, p).first, d, p, out, rng);
      return;
    }
  }
}

inline void up_factor_squarefree(const UPoly& f, u32 p, std::vector<std::pair<UPoly, int>>& out,
                                 Rng& rng, int mult) {
  // distinct-degree on a squarefree monic f
  UPoly rem = f;
  UPoly x{0, 1};
  UPoly h = x;
  int d = 0;
  while (up_deg(rem) > 0) {
    ++d;
    if (2 * d > up_deg(rem)) {
      out.push_back({up_monic(rem, p), mult});
      break;
    }
    h = up_powmod(h, p, rem, p);  // x^(p^d) mod rem
    UPoly g = up_gcd(up_sub(h, x, p), rem, p);
    if (up_deg(g) > 0) {
      std::vector<UPoly> irr;
      up_equal_degree_split(g, d, p, irr, rng);
      for (auto& q : irr) out.push_back({q, mult});
      rem = up_divmod(rem, g, p).first;
      h = up_mod(h, rem, p);
    }
  }
}

inline void up_factor_into(const UPoly& f0, u32 p, std::vector<std::pair<UPoly, int>>& out, Rng& rng,
                           int mult) {
  UPoly f = up_monic(f0, p);
  if (up_deg(f) <= 0) return;
  UPoly df = up_derivative(f, p);
  if (up_is_zero(df)) {
    // f = g(x^p); take p-th root (coefficients are p-th powers in F_p: identity)
    UPoly g((up_deg(f) / p) + 1, 0);
    for (size_t i = 0; i < g.size(); ++i) g[i] = f[i * p];
    up_factor_into(g, p, out, rng, mult * (int)p);
    return;
  }
  UPoly sf = up_gcd(f, df, p);
  if (up_deg(sf) == 0) {
    up_factor_squarefree(f, p, out, rng, mult);
    return;
  }
  UPoly sqfree = up_divmod(f, sf, p).first;
  // factors of the squarefree part, then recurse on the repeated part
  std::vector<std::pair<UPoly, int>> part;
  up_factor_squarefree(sqfree, p, part, rng, 1);
  std::vector<std::pair<UPoly, int>> rest;
  up_factor_into(sf, p, rest, rng, 1);
  for (auto& [q, m] : part) {
    int extra = 0;
    for (auto& [q2, m2] : rest)
      if (q2 == q) extra += m2;
    out.push_back({q, mult * (1 + extra)});
  }
  for (auto& [q2, m2] : rest) {
    bool seen = false;
    for (auto& [q, m] : part)
      if (q == q2) seen = true;
    if (!seen) out.push_back({q2, mult * m2});
  }
}

inline std::vector<std::pair<UPoly, int>> up_factor(const UPoly& f, u32 p, Rng& rng) {
  std::vector<std::pair<UPoly, int>> out;
  up_factor_into(f, p, out, rng, 1);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pkl
