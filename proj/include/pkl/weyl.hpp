#pragma once

// Finite, affine and extended Weyl groups for a root datum, with the dot
// action, Iwahori-Matsumoto style lengths, reduced words, linkage classes,
// stabilizers and alcove classification.
//
// Convention (matching the representation-theoretic normalization): the
// affine Weyl group is W semidirect p*ZR and the extended group W semidirect
// p*X, acting on X through (t_mu w) . lambda = w(lambda + rho) - rho + mu.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pkl/root_datum.hpp"

namespace pkl {

struct FiniteWeylElt {
  RootDatumPtr rd;
  std::vector<std::uint8_t> perm;  // image index of each root in rd->roots

  FiniteWeylElt() = default;
  explicit FiniteWeylElt(RootDatumPtr d) : rd(std::move(d)) {
    perm.resize(rd->roots.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = (std::uint8_t)i;
  }
  static FiniteWeylElt simple(RootDatumPtr d, int i) {
    FiniteWeylElt s(d);
    for (size_t r = 0; r < d->roots.size(); ++r) {
      Weight img = d->refl_weight(i, d->roots[r]);
      s.perm[r] = (std::uint8_t)root_index(*d, img);
    }
    return s;
  }
  static int root_index(const RootDatum& d, const Weight& a) {
    for (size_t r = 0; r < d.roots.size(); ++r)
      if (d.roots[r] == a) return (int)r;
    throw std::logic_error("root_index: not a root");
  }

  bool is_identity() const {
    for (size_t i = 0; i < perm.size(); ++i)
      if (perm[i] != i) return false;
    return true;
  }
  bool operator==(const FiniteWeylElt& o) const { return perm == o.perm; }
  bool operator<(const FiniteWeylElt& o) const { return perm < o.perm; }

  FiniteWeylElt operator*(const FiniteWeylElt& o) const {
    FiniteWeylElt r(rd);
    for (size_t i = 0; i < perm.size(); ++i) r.perm[i] = perm[o.perm[i]];
    return r;
  }
  FiniteWeylElt inverse() const {
    FiniteWeylElt r(rd);
    for (size_t i = 0; i < perm.size(); ++i) r.perm[perm[i]] = (std::uint8_t)i;
    return r;
  }

  // natural action on X via the reduced word; w = s_{i0} s_{i1} ... acts as
  // s_{i0} applied last
  Weight act(const Weight& la) const {
    Weight v = la;
    auto w = word();
    for (auto it = w.rbegin(); it != w.rend(); ++it) v = rd->refl_weight(*it, v);
    return v;
  }
  Coweight act_coweight(const Coweight& y) const {
    Coweight v = y;
    auto w = word();
    for (auto it = w.rbegin(); it != w.rend(); ++it) v = rd->refl_coweight(*it, v);
    return v;
  }

  int length() const {
    int n = 0;
    for (int r = 0; r < rd->num_positive; ++r)
      if (perm[r] >= (std::uint8_t)rd->num_positive) ++n;
    return n;
  }

  // reduced word, lexicographically least in the generator order (strip
  // left descents greedily); order of application: word[0] * word[1] * ...
  std::vector<int> word() const {
    std::vector<int> w;
    FiniteWeylElt x = *this;
    while (!x.is_identity()) {
      bool found = false;
      for (int i = 0; i < rd->rank && !found; ++i) {
        FiniteWeylElt sx = simple(rd, i) * x;
        if (sx.length() < x.length()) {
          w.push_back(i);
          x = sx;
          found = true;
        }
      }
      if (!found) throw std::logic_error("FiniteWeylElt::word: no descent");
    }
    return w;
  }

  // dot action w . la = w(la + rho) - rho
  Weight dot(const Weight& la) const {
    return sub_w(act(add_w(la, rd->rho)), rd->rho);
  }
};

inline std::vector<FiniteWeylElt> all_finite_weyl(const RootDatumPtr& rd) {
  std::vector<FiniteWeylElt> out{FiniteWeylElt(rd)};
  std::set<std::vector<std::uint8_t>> seen{out[0].perm};
  for (size_t qi = 0; qi < out.size(); ++qi) {
    FiniteWeylElt x = out[qi];
    for (int i = 0; i < rd->rank; ++i) {
      FiniteWeylElt y = x * FiniteWeylElt::simple(rd, i);
      if (seen.insert(y.perm).second) out.push_back(y);
    }
  }
  return out;
}

// Element t_mu * w of W_ext, mu in pX.
struct ExtWeylElt {
  RootDatumPtr rd;
  Weight trans;  // mu, each coordinate divisible by p
  FiniteWeylElt fin;

  ExtWeylElt() = default;
  explicit ExtWeylElt(RootDatumPtr d) : rd(d), trans(d->rank, 0), fin(d) {}
  ExtWeylElt(RootDatumPtr d, Weight mu, FiniteWeylElt w)
      : rd(d), trans(std::move(mu)), fin(std::move(w)) {
    for (auto x : trans)
      if (x % (std::int64_t)rd->p != 0)
        throw std::invalid_argument("ExtWeylElt: translation not in pX");
  }
  static ExtWeylElt identity(RootDatumPtr d) { return ExtWeylElt(d); }
  static ExtWeylElt translation(RootDatumPtr d, const Weight& mu) {
    return ExtWeylElt(d, mu, FiniteWeylElt(d));
  }
  static ExtWeylElt finite(RootDatumPtr d, const FiniteWeylElt& w) {
    return ExtWeylElt(d, Weight(d->rank, 0), w);
  }

  bool operator==(const ExtWeylElt& o) const { return trans == o.trans && fin == o.fin; }
  bool operator<(const ExtWeylElt& o) const {
    if (trans != o.trans) return trans < o.trans;
    return fin < o.fin;
  }
  bool is_identity() const {
    for (auto x : trans)
      if (x) return false;
    return fin.is_identity();
  }

  // (t_la u)(t_mu v) = t_{la + u(mu)} (u v)
  ExtWeylElt operator*(const ExtWeylElt& o) const {
    return ExtWeylElt(rd, add_w(trans, fin.act(o.trans)), fin * o.fin);
  }
  ExtWeylElt inverse() const {
    FiniteWeylElt wi = fin.inverse();
    return ExtWeylElt(rd, scale_w(wi.act(trans), -1), wi);
  }

  bool in_affine() const { return rd->in_p_root_lattice(trans); }

  // x . la = w(la + rho) - rho + mu
  Weight dot(const Weight& la) const {
    return add_w(fin.dot(la), trans);
  }
};

// Generators of S_aff: indices 0..rank-1 are the finite simple reflections,
// index rank is t_{p beta} s_beta for beta the highest root (beta^vee is the
// maximal coroot in the simply-laced cases handled here).
struct AffineGenerators {
  RootDatumPtr rd;
  std::vector<ExtWeylElt> gens;
  std::vector<std::string> names;

  explicit AffineGenerators(RootDatumPtr d) : rd(d) {
    for (int i = 0; i < d->rank; ++i) {
      gens.push_back(ExtWeylElt::finite(d, FiniteWeylElt::simple(d, i)));
      names.push_back("s" + std::to_string(i + 1));
    }
    const Weight& beta = d->roots[d->highest_root_index];
    FiniteWeylElt sbeta(d);
    for (size_t r = 0; r < d->roots.size(); ++r) {
      Weight img = sub_w(d->roots[r], scale_w(beta, pair_wc(d->roots[r], d->coroots[d->highest_root_index])));
      sbeta.perm[r] = (std::uint8_t)FiniteWeylElt::root_index(*d, img);
    }
    gens.push_back(ExtWeylElt(d, scale_w(beta, d->p), sbeta));
    names.push_back("s0");
  }
  int count() const { return (int)gens.size(); }
};

// Length as the number of affine hyperplanes <nu + rho, gamma> = m (gamma a
// positive coroot, m in pZ) separating the fundamental alcove from its image
// under x.  The rational interior point nu_0 with nu_0 + rho = (p/h) rho is
// used; all arithmetic is scaled by the Coxeter number h to stay integral.
// This also gives the quasi-length on W_ext (0 on the alcove stabilizer).
inline int length(const ExtWeylElt& x) {
  const RootDatum& d = *x.rd;
  std::int64_t p = d.p, h = d.coxeter_number();
  Weight wrho = x.fin.act(d.rho);
  int total = 0;
  for (int r = 0; r < d.num_positive; ++r) {
    const Coweight& g = d.coroots[r];
    std::int64_t A = p * pair_wc(d.rho, g);
    std::int64_t B = p * pair_wc(wrho, g) + h * pair_wc(x.trans, g);
    if (A % (p * h) == 0 || B % (p * h) == 0)
      throw std::logic_error("length: base point lies on a wall");
    std::int64_t lo = std::min(A, B), hi = std::max(A, B);
    // count multiples of p*h strictly inside (lo, hi)
    auto fdiv = [](std::int64_t a, std::int64_t b) {  // floor division
      std::int64_t q = a / b;
      if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
      return q;
    };
    total += (int)(fdiv(hi - 1, p * h) - fdiv(lo, p * h));
  }
  return total;
}

// Reduced word over S_aff for x in W_aff; lexicographically least in the
// generator order, multiplying left to right.
inline std::vector<int> reduced_word(const ExtWeylElt& x0, const AffineGenerators& S) {
  if (!x0.in_affine()) throw std::invalid_argument("reduced_word: element not in W_aff");
  std::vector<int> w;
  ExtWeylElt x = x0;
  int len = length(x);
  while (len > 0) {
    bool found = false;
    for (int i = 0; i < S.count(); ++i) {
      ExtWeylElt sx = S.gens[i] * x;
      int l2 = length(sx);
      if (l2 < len) {
        w.push_back(i);
        x = sx;
        len = l2;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("reduced_word: no left descent found");
  }
  if (!x.is_identity()) throw std::logic_error("reduced_word: residual element");
  return w;
}

inline ExtWeylElt word_to_element(const std::vector<int>& w, const AffineGenerators& S) {
  ExtWeylElt x = ExtWeylElt::identity(S.rd);
  for (int i : w) x = x * S.gens[i];
  return x;
}

// W_aff . lambda intersected with the coordinate box |coord| <= bound,
// via the explicit description { w.lambda + p nu : nu in ZR }.
inline std::set<Weight> linkage_class(const RootDatumPtr& rd, const Weight& la, std::int64_t bound) {
  std::set<Weight> out;
  auto add_lattice_shifts = [&](const Weight& base, bool root_lattice_only) {
    // enumerate nu with base + p*nu in the box; nu ranges over a box itself
    std::int64_t lim = 0;
    for (auto c : base) lim = std::max(lim, std::abs(c));
    std::int64_t nmax = (bound + lim) / rd->p + 2;
    int rk = rd->rank;
    std::vector<std::int64_t> idx(rk, -nmax);
    while (true) {
      Weight nu(rk);
      if (root_lattice_only) {
        nu = Weight(rk, 0);
        for (int j = 0; j < rk; ++j) nu = add_w(nu, scale_w(rd->simple_roots[j], idx[j]));
      } else {
        for (int j = 0; j < rk; ++j) nu[j] = idx[j];
      }
      Weight cand = add_w(base, scale_w(nu, rd->p));
      bool inside = true;
      for (auto c : cand)
        if (std::abs(c) > bound) inside = false;
      if (inside) out.insert(cand);
      int j = 0;
      while (j < rk && ++idx[j] > nmax) idx[j++] = -nmax;
      if (j == rk) break;
    }
  };
  for (auto& w : all_finite_weyl(rd)) add_lattice_shifts(w.dot(la), true);
  return out;
}

// (W_ext . lambda) cap (lambda + ZR) cap box, by direct enumeration.
inline std::set<Weight> linkage_class_ext(const RootDatumPtr& rd, const Weight& la, std::int64_t bound) {
  std::set<Weight> out;
  int rk = rd->rank;
  for (auto& w : all_finite_weyl(rd)) {
    Weight base = w.dot(la);
    std::int64_t lim = 0;
    for (auto c : base) lim = std::max(lim, std::abs(c));
    std::int64_t nmax = (bound + lim) / rd->p + 2;
    std::vector<std::int64_t> idx(rk, -nmax);
    while (true) {
      Weight cand = base;
      for (int j = 0; j < rk; ++j) cand[j] += rd->p * idx[j];
      bool inside = true;
      for (auto c : cand)
        if (std::abs(c) > bound) inside = false;
      if (inside && rd->in_root_lattice(sub_w(cand, la))) out.insert(cand);
      int j = 0;
      while (j < rk && ++idx[j] > nmax) idx[j++] = -nmax;
      if (j == rk) break;
    }
  }
  return out;
}

struct AlcoveRecord {
  Weight weight;
  bool in_fundamental = false;
  bool in_closure = false;
  bool in_lower_closure = false;
  std::vector<int> walls;  // generator indices s with s . weight == weight
};

inline AlcoveRecord classify_alcove(const RootDatumPtr& rd, const AffineGenerators& S, const Weight& la) {
  AlcoveRecord rec;
  rec.weight = la;
  rec.in_fundamental = rec.in_closure = rec.in_lower_closure = true;
  Weight shifted = add_w(la, rd->rho);
  for (int r = 0; r < rd->num_positive; ++r) {
    std::int64_t v = pair_wc(shifted, rd->coroots[r]);
    if (!(0 < v && v < (std::int64_t)rd->p)) rec.in_fundamental = false;
    if (!(0 <= v && v <= (std::int64_t)rd->p)) rec.in_closure = false;
    if (!(0 <= v && v < (std::int64_t)rd->p)) rec.in_lower_closure = false;
  }
  for (int i = 0; i < S.count(); ++i)
    if (S.gens[i].dot(la) == la) rec.walls.push_back(i);
  return rec;
}

// Dot stabilizer: the wall set when lambda lies in the closure of the
// fundamental alcove, and the image subgroup of W otherwise.
struct DotStabilizer {
  bool is_wall_set = false;
  std::vector<int> walls;                 // generator indices (closure case)
  std::vector<FiniteWeylElt> image_in_w;  // image subgroup (general case)
};

inline DotStabilizer dot_stabilizer(const RootDatumPtr& rd, const AffineGenerators& S, const Weight& la) {
  DotStabilizer st;
  AlcoveRecord rec = classify_alcove(rd, S, la);
  if (rec.in_closure) {
    st.is_wall_set = true;
    st.walls = rec.walls;
    return st;
  }
  // image of Stab_{W_aff,.}(la) in W: w with w.la in la + pZR
  for (auto& w : all_finite_weyl(rd))
    if (rd->in_p_root_lattice(sub_w(w.dot(la), la))) st.image_in_w.push_back(w);
  return st;
}

// For s in S_aff, a pair (x, t) with t a finite generator and s = x t x^{-1},
// x minimal under (sum |trans coords| / p, trans lex, finite part lex).
inline std::pair<ExtWeylElt, int> conjugate_to_finite(const AffineGenerators& S, int s_index) {
  const RootDatumPtr& rd = S.rd;
  if (s_index < rd->rank) return {ExtWeylElt::identity(rd), s_index};
  const ExtWeylElt& s = S.gens[s_index];
  auto weyl = all_finite_weyl(rd);
  std::sort(weyl.begin(), weyl.end());
  for (std::int64_t h = 0; h <= 4; ++h) {  // translation height budget
    // enumerate nu in X with sum|nu_i| == h, lex order
    std::vector<Weight> nus;
    std::vector<std::int64_t> idx(rd->rank, -h);
    while (true) {
      std::int64_t tot = 0;
      for (auto c : idx) tot += std::abs(c);
      if (tot == h) nus.push_back(Weight(idx.begin(), idx.end()));
      int j = 0;
      while (j < rd->rank && ++idx[j] > h) idx[j++] = -h;
      if (j == rd->rank) break;
    }
    std::sort(nus.begin(), nus.end());
    for (auto& nu : nus)
      for (auto& u : weyl) {
        ExtWeylElt x(rd, scale_w(nu, rd->p), u);
        ExtWeylElt xi = x.inverse();
        for (int t = 0; t < rd->rank; ++t)
          if (x * S.gens[t] * xi == s) return {x, t};
      }
  }
  throw std::logic_error("conjugate_to_finite: search bound exhausted");
}

inline std::string word_str(const std::vector<int>& w, const AffineGenerators& S) {
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ".";
    s += S.names[w[i]];
  }
  return s.empty() ? "e" : s;
}

}  // namespace pkl
