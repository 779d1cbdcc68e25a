#pragma once

// Arithmetic in F_p (odd prime, runtime modulus) and in small extension
// fields F_{p^k}, k <= 4, represented in a polynomial basis modulo a
// deterministically chosen irreducible.

#include <array>
#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pkl {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

inline u32 fp_norm(i64 a, u32 p) {
  i64 r = a % static_cast<i64>(p);
  if (r < 0) r += p;
  return static_cast<u32>(r);
}

inline u32 fp_add(u32 a, u32 b, u32 p) { u32 s = a + b; return s >= p ? s - p : s; }
inline u32 fp_sub(u32 a, u32 b, u32 p) { return a >= b ? a - b : a + p - b; }
inline u32 fp_neg(u32 a, u32 p) { return a == 0 ? 0 : p - a; }
inline u32 fp_mul(u32 a, u32 b, u32 p) { return static_cast<u32>((u64)a * b % p); }

inline u32 fp_pow(u32 a, u64 n, u32 p) {
  u32 r = 1 % p;
  while (n) {
    if (n & 1) r = fp_mul(r, a, p);
    a = fp_mul(a, a, p);
    n >>= 1;
  }
  return r;
}

inline u32 fp_inv(u32 a, u32 p) {
  if (a == 0) throw std::domain_error("fp_inv: division by zero");
  return fp_pow(a, p - 2, p);
}

// Deterministic PRNG (splitmix64); all randomized searches in the library
// draw from one of these, seeded explicitly.
struct Rng {
  u64 state;
  explicit Rng(u64 seed) : state(seed) {}
  u64 next() {
    u64 z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4595bull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  u32 below(u32 n) { return static_cast<u32>(next() % n); }
};

// ---------------------------------------------------------------------------
// F_{p^k}

struct FqElt {
  std::array<u32, 4> c{};  // coefficients of 1, t, t^2, t^3
  bool operator==(const FqElt&) const = default;
};

class Fq {
 public:
  u32 p = 0;
  int k = 1;
  std::array<u32, 5> irr{};  // monic irreducible of degree k, irr[k] == 1

  Fq() = default;
  Fq(u32 prime, int degree) : p(prime), k(degree) {
    if (!(degree >= 1 && degree <= 4)) throw std::invalid_argument("Fq: degree out of range");
    find_irreducible();
  }

  u64 order() const {
    u64 q = 1;
    for (int i = 0; i < k; ++i) q *= p;
    return q;
  }

  FqElt zero() const { return {}; }
  FqElt one() const { FqElt e; e.c[0] = 1 % p; return e; }
  FqElt from_int(i64 a) const { FqElt e; e.c[0] = fp_norm(a, p); return e; }
  // the generator t of the polynomial basis (1 when k == 1)
  FqElt gen() const {
    FqElt e;
    if (k == 1) e.c[0] = 1;
    else e.c[1] = 1;
    return e;
  }

  bool is_zero(const FqElt& a) const {
    for (int i = 0; i < k; ++i) if (a.c[i]) return false;
    return true;
  }

  FqElt add(const FqElt& a, const FqElt& b) const {
    FqElt r;
    for (int i = 0; i < k; ++i) r.c[i] = fp_add(a.c[i], b.c[i], p);
    return r;
  }
  FqElt sub(const FqElt& a, const FqElt& b) const {
    FqElt r;
    for (int i = 0; i < k; ++i) r.c[i] = fp_sub(a.c[i], b.c[i], p);
    return r;
  }
  FqElt neg(const FqElt& a) const {
    FqElt r;
    for (int i = 0; i < k; ++i) r.c[i] = fp_neg(a.c[i], p);
    return r;
  }

  FqElt mul(const FqElt& a, const FqElt& b) const {
    std::array<u32, 7> prod{};
    for (int i = 0; i < k; ++i) {
      if (!a.c[i]) continue;
      for (int j = 0; j < k; ++j)
        prod[i + j] = fp_add(prod[i + j], fp_mul(a.c[i], b.c[j], p), p);
    }
    // reduce modulo irr: t^k = -(irr[k-1] t^{k-1} + ... + irr[0])
    for (int d = 2 * k - 2; d >= k; --d) {
      u32 lead = prod[d];
      if (!lead) continue;
      prod[d] = 0;
      for (int j = 0; j < k; ++j)
        prod[d - k + j] = fp_sub(prod[d - k + j], fp_mul(lead, irr[j], p), p);
    }
    FqElt r;
    for (int i = 0; i < k; ++i) r.c[i] = prod[i];
    return r;
  }

  FqElt pow(FqElt a, u64 n) const {
    FqElt r = one();
    while (n) {
      if (n & 1) r = mul(r, a);
      a = mul(a, a);
      n >>= 1;
    }
    return r;
  }

  FqElt inv(const FqElt& a) const {
    if (is_zero(a)) throw std::domain_error("Fq::inv: division by zero");
    return pow(a, order() - 2);
  }

  FqElt frobenius(const FqElt& a) const { return pow(a, p); }
  // inverse of Frobenius (x -> x^p is bijective)
  FqElt frobenius_inv(const FqElt& a) const {
    FqElt r = a;
    for (int i = 0; i < k - 1; ++i) r = frobenius(r);
    return r;
  }

  bool in_prime_field(const FqElt& a) const {
    for (int i = 1; i < k; ++i) if (a.c[i]) return false;
    return true;
  }

  // a square root in F_q if one exists (deterministic scan; fields here are tiny)
  bool sqrt(const FqElt& a, FqElt* out) const {
    for (u64 i = 0; i < order(); ++i) {
      FqElt x = elt_at(i);
      if (mul(x, x) == a) { *out = x; return true; }
    }
    return false;
  }

  FqElt elt_at(u64 idx) const {
    FqElt e;
    for (int i = 0; i < k; ++i) { e.c[i] = static_cast<u32>(idx % p); idx /= p; }
    return e;
  }

  std::string str(const FqElt& a) const {
    std::string s;
    bool any = false;
    for (int i = 0; i < k; ++i) {
      if (!a.c[i]) continue;
      if (any) s += "+";
      s += std::to_string(a.c[i]);
      if (i >= 1) s += "*t";
      if (i >= 2) s += "^" + std::to_string(i);
      any = true;
    }
    return any ? s : "0";
  }

 private:
  // f monic of degree k over F_p; irreducible iff it has no irreducible
  // factor of degree <= k/2, tested via gcd(x^{p^i} - x, f).
  bool is_irreducible(const std::array<u32, 5>& f) const {
    auto polymod_mul = [&](const std::vector<u32>& a, const std::vector<u32>& b) {
      std::vector<u32> prod(2 * k - 1, 0);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          prod[i + j] = fp_add(prod[i + j], fp_mul(a[i], b[j], p), p);
      for (int d = 2 * k - 2; d >= k; --d) {
        u32 lead = prod[d];
        if (!lead) continue;
        prod[d] = 0;
        for (int j = 0; j < k; ++j)
          prod[d - k + j] = fp_sub(prod[d - k + j], fp_mul(lead, f[j], p), p);
      }
      prod.resize(k);
      return prod;
    };
    auto xq_pow = [&](int i) {
      // x^{p^i} mod f
      std::vector<u32> r(k, 0);
      if (k == 1) { r[0] = fp_pow(fp_norm(-(i64)f[0], p), fp_pow_u64(p, i), p); return r; }
      r[1] = 1;  // x
      u64 e = fp_pow_u64(p, i);
      std::vector<u32> base = r, acc(k, 0);
      acc[0] = 1;
      while (e) {
        if (e & 1) acc = polymod_mul(acc, base);
        base = polymod_mul(base, base);
        e >>= 1;
      }
      return acc;
    };
    for (int i = 1; i <= k / 2; ++i) {
      std::vector<u32> g = xq_pow(i);
      // g := x^{p^i} - x mod f
      if (k > 1) g[1] = fp_sub(g[1], 1, p);
      else g[0] = fp_sub(g[0], fp_norm(-(i64)f[0], p), p);
      // gcd(g, f) over F_p[x]
      std::vector<u32> A(f.begin(), f.begin() + k + 1), B = g;
      auto deg = [&](const std::vector<u32>& v) {
        for (int d = (int)v.size() - 1; d >= 0; --d) if (v[d]) return d;
        return -1;
      };
      while (deg(B) >= 0) {
        int da = deg(A), db = deg(B);
        if (da < db) { std::swap(A, B); continue; }
        u32 q = fp_mul(A[da], fp_inv(B[db], p), p);
        for (int j = 0; j <= db; ++j)
          A[da - db + j] = fp_sub(A[da - db + j], fp_mul(q, B[j], p), p);
      }
      if (deg(A) > 0) return false;
    }
    return true;
  }

  static u64 fp_pow_u64(u64 a, u64 n) {
    u64 r = 1;
    while (n--) r *= a;
    return r;
  }

  void find_irreducible() {
    // lexicographically least monic irreducible of degree k
    std::array<u32, 5> f{};
    f[k] = 1;
    u64 total = 1;
    for (int i = 0; i < k; ++i) total *= p;
    for (u64 idx = 0; idx < total; ++idx) {
      u64 t = idx;
      for (int i = 0; i < k; ++i) { f[i] = static_cast<u32>(t % p); t /= p; }
      if (k == 1) { irr = f; return; }  // any monic linear works
      if (is_irreducible(f)) { irr = f; return; }
    }
    throw std::logic_error("Fq: no irreducible found");
  }
};

// Field-ops wrappers with a common interface for the templated linear algebra.

struct FpField {
  using Elt = u32;
  u32 p;
  explicit FpField(u32 prime) : p(prime) {}
  Elt zero() const { return 0; }
  Elt one() const { return 1 % p; }
  bool is_zero(Elt a) const { return a == 0; }
  Elt add(Elt a, Elt b) const { return fp_add(a, b, p); }
  Elt sub(Elt a, Elt b) const { return fp_sub(a, b, p); }
  Elt neg(Elt a) const { return fp_neg(a, p); }
  Elt mul(Elt a, Elt b) const { return fp_mul(a, b, p); }
  Elt inv(Elt a) const { return fp_inv(a, p); }
};

struct FqField {
  using Elt = FqElt;
  const Fq* F;
  explicit FqField(const Fq& f) : F(&f) {}
  Elt zero() const { return F->zero(); }
  Elt one() const { return F->one(); }
  bool is_zero(const Elt& a) const { return F->is_zero(a); }
  Elt add(const Elt& a, const Elt& b) const { return F->add(a, b); }
  Elt sub(const Elt& a, const Elt& b) const { return F->sub(a, b); }
  Elt neg(const Elt& a) const { return F->neg(a); }
  Elt mul(const Elt& a, const Elt& b) const { return F->mul(a, b); }
  Elt inv(const Elt& a) const { return F->inv(a); }
};

}  // namespace pkl
