#pragma once

/*
  Enhanced Soergel bimodules.  An object is a free graded left R-module
  (basis degrees) with one commuting right-action matrix per generator of t,
  together with its decomposition data over the fraction field Q:

    - labels: the character, a finitely supported multiset over W_ext with
      Laurent-polynomial multiplicities;
    - parts: for each label x, a polynomial column basis of the subspace
      M_Q^x of M (x) Q, on which the right action of r is multiplication by
      xbar(r).

  Translations act trivially on R, so distinct labels can share all their
  eigenvalues; the parts are therefore propagated through the constructors
  (delta, bs_gen, shift, tensor, summand extraction) rather than recomputed
  from eigenvalues.  What can be recomputed independently is certified in
  std_character: each stored column satisfies the polynomial eigenvector
  identity for its W-projection, the per-projection counts exhaust the exact
  eigenspace dimensions over Q, and the multiplicities match the labels.

  Morphisms are matrices over R intertwining the right actions; hom_space
  additionally imposes Abe's compatibility with the decompositions, as
  linear conditions over Q (the image of each source part must lie in the
  span of the matching target part).
*/

#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "pkl/laurent.hpp"
#include "pkl/linalg.hpp"
#include "pkl/ratfunc.hpp"
#include "pkl/realization.hpp"

namespace pkl {

struct PolyMat {
  int rows = 0, cols = 0;
  std::vector<GradedPoly> a;

  PolyMat() = default;
  PolyMat(int r, int c, u32 p, int nv) : rows(r), cols(c), a((size_t)r * c, GradedPoly(p, nv)) {}
  GradedPoly& at(int i, int j) { return a[(size_t)i * cols + j]; }
  const GradedPoly& at(int i, int j) const { return a[(size_t)i * cols + j]; }

  static PolyMat identity(int n, u32 p, int nv) {
    PolyMat m(n, n, p, nv);
    for (int i = 0; i < n; ++i) m.at(i, i) = GradedPoly::constant(p, nv, 1);
    return m;
  }
  PolyMat mul(const PolyMat& o) const {
    u32 p = a.empty() ? o.a[0].p : a[0].p;
    int nv = a.empty() ? o.a[0].nv : a[0].nv;
    PolyMat r(rows, o.cols, p, nv);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        if (at(i, k).is_zero()) continue;
        for (int j = 0; j < o.cols; ++j) {
          if (o.at(k, j).is_zero()) continue;
          r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
        }
      }
    return r;
  }
  PolyMat add(const PolyMat& o) const {
    PolyMat r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = r.a[i] + o.a[i];
    return r;
  }
  PolyMat sub(const PolyMat& o) const {
    PolyMat r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = r.a[i] - o.a[i];
    return r;
  }
  PolyMat scaled(i64 c) const {
    PolyMat r = *this;
    for (auto& x : r.a) x = x.scaled(c);
    return r;
  }
  bool is_zero() const {
    for (auto& x : a)
      if (!x.is_zero()) return false;
    return true;
  }
  bool operator==(const PolyMat& o) const {
    if (rows != o.rows || cols != o.cols) return false;
    for (size_t i = 0; i < a.size(); ++i)
      if (!(a[i] == o.a[i])) return false;
    return true;
  }
};

inline int poly_mat_rank_q(const PolyMat& m, u32 p, int nv) {
  RatField Q(p, nv);
  Mat<RatField> q(m.rows, m.cols, Q);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) q.at(i, j) = RatFunc(m.at(i, j));
  return mat_rank(q, Q);
}

using LabelSet = std::map<ExtWeylElt, LaurentInt>;

inline void label_add(LabelSet& ls, const ExtWeylElt& x, const LaurentInt& c) {
  auto it = ls.find(x);
  if (it == ls.end()) {
    if (!c.is_zero()) ls.emplace(x, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) ls.erase(it);
  }
}

struct SBimObject {
  std::shared_ptr<const Realization> R;
  std::vector<int> deg;                // basis degrees of the free graded left module
  std::vector<PolyMat> act;            // right action of each generator of t
  LabelSet labels;                     // decomposition character over W_ext
  std::map<ExtWeylElt, PolyMat> parts; // column bases of the M_Q^x, denominators cleared

  int rank() const { return (int)deg.size(); }
  u32 p() const { return R->p; }
  int nv() const { return R->nv; }

  void check_shape() const {
    for (int v = 0; v < nv(); ++v)
      for (int b = 0; b < rank(); ++b)
        for (int a = 0; a < rank(); ++a) {
          const GradedPoly& e = act[v].at(b, a);
          if (e.is_zero()) continue;
          if (!e.is_homogeneous() || e.graded_degree() != 2 + deg[a] - deg[b])
            throw std::logic_error("SBimObject: inhomogeneous right-action entry");
        }
  }
  void check_commuting() const {
    for (int v = 0; v < nv(); ++v)
      for (int w = v + 1; w < nv(); ++w)
        if (!(act[v].mul(act[w]) == act[w].mul(act[v])))
          throw std::logic_error("SBimObject: right-action matrices do not commute");
  }
  // polynomial identity (act[v] - xbar(x_v)) part_x = 0 for every stored column
  void check_parts_eigen() const {
    for (auto& [x, cols] : parts) {
      for (int v = 0; v < nv(); ++v) {
        GradedPoly wx = R->ext_act(x, R->var(v));
        for (int c = 0; c < cols.cols; ++c)
          for (int b = 0; b < rank(); ++b) {
            GradedPoly s(p(), nv());
            for (int a2 = 0; a2 < rank(); ++a2)
              if (!act[v].at(b, a2).is_zero() && !cols.at(a2, c).is_zero())
                s = s + act[v].at(b, a2) * cols.at(a2, c);
            s = s - wx * cols.at(b, c);
            if (!s.is_zero()) throw std::logic_error("SBimObject: stored part is not an eigenbasis");
          }
      }
    }
  }

  // right action of an arbitrary polynomial (through the commuting matrices)
  PolyMat act_poly(const GradedPoly& q) const {
    PolyMat r(rank(), rank(), p(), nv());
    for (auto& tm : q.t) {
      PolyMat m = PolyMat::identity(rank(), p(), nv()).scaled(tm.c);
      for (int v = 0; v < nv(); ++v)
        for (int e = 0; e < tm.m.e[v]; ++e) m = act[v].mul(m);
      r = r.add(m);
    }
    return r;
  }

  LaurentInt graded_rank() const {
    LaurentInt g;
    for (int d : deg) g += LaurentInt::monomial(1, d);
    return g;
  }
};

// ---------------------------------------------------------------------------
// constructors

inline SBimObject delta(const std::shared_ptr<const Realization>& R, const ExtWeylElt& x) {
  SBimObject M;
  M.R = R;
  M.deg = {0};
  for (int v = 0; v < R->nv; ++v) {
    PolyMat m(1, 1, R->p, R->nv);
    m.at(0, 0) = R->ext_act(x, R->var(v));
    M.act.push_back(m);
  }
  M.labels[x] = LaurentInt::constant(1);
  PolyMat part(1, 1, R->p, R->nv);
  part.at(0, 0) = GradedPoly::constant(R->p, R->nv, 1);
  M.parts[x] = part;
  return M;
}

// B_s = R tensor_{R^s} R (1), basis (1 (x) 1, 1 (x) delta), degrees -1, +1.
// The e-part is spanned by (alpha_s - delta) (1x1) + (1xdelta), the s-part by
// delta (1x1) - (1xdelta).
inline SBimObject bs_gen(const std::shared_ptr<const Realization>& R, int s) {
  SBimObject M;
  M.R = R;
  M.deg = {-1, 1};
  for (int v = 0; v < R->nv; ++v) {
    PolyMat m(2, 2, R->p, R->nv);
    GradedPoly xv = R->var(v);
    auto [a0, b0] = R->invariant_split(s, xv);
    m.at(0, 0) = a0;
    m.at(1, 0) = b0;
    auto [a1, b1] = R->invariant_split(s, R->delta[s] * xv);
    m.at(0, 1) = a1;
    m.at(1, 1) = b1;
    M.act.push_back(m);
  }
  const ExtWeylElt& sw = R->S.gens[s];
  ExtWeylElt e = ExtWeylElt::identity(R->rd);
  M.labels[sw] = LaurentInt::constant(1);
  label_add(M.labels, e, LaurentInt::monomial(1, 1));
  PolyMat pe(2, 1, R->p, R->nv), ps(2, 1, R->p, R->nv);
  pe.at(0, 0) = R->alpha[s] - R->delta[s];
  pe.at(1, 0) = GradedPoly::constant(R->p, R->nv, 1);
  ps.at(0, 0) = R->delta[s];
  ps.at(1, 0) = GradedPoly::constant(R->p, R->nv, -1);
  M.parts[e] = pe;
  M.parts[sw] = ps;
  M.check_shape();
  M.check_commuting();
  M.check_parts_eigen();
  return M;
}

// grading shift: (M(k))^i = M^{i+k}; basis degrees drop by k, character gains v^k
inline SBimObject shift(const SBimObject& M, int k) {
  SBimObject N = M;
  for (auto& d : N.deg) d -= k;
  LabelSet ls;
  for (auto& [x, c] : M.labels) ls[x] = c.shifted(k);
  N.labels = std::move(ls);
  return N;
}

// M tensor_R N on the product basis (a, c) -> a*rank(N)+c; the right action of
// N is pushed through M's right action coefficient-wise, and the part for a
// product label is spanned by coordinate outer products of the factor parts.
inline SBimObject tensor(const SBimObject& M, const SBimObject& N, bool check = true) {
  SBimObject T;
  T.R = M.R;
  int nm = M.rank(), nn = N.rank();
  T.deg.resize(nm * nn);
  for (int a = 0; a < nm; ++a)
    for (int c = 0; c < nn; ++c) T.deg[a * nn + c] = M.deg[a] + N.deg[c];
  for (int v = 0; v < M.nv(); ++v) {
    PolyMat big(nm * nn, nm * nn, M.p(), M.nv());
    for (int d2 = 0; d2 < nn; ++d2)
      for (int c = 0; c < nn; ++c) {
        const GradedPoly& q = N.act[v].at(d2, c);
        if (q.is_zero()) continue;
        PolyMat push = M.act_poly(q);
        for (int b = 0; b < nm; ++b)
          for (int a = 0; a < nm; ++a) {
            if (push.at(b, a).is_zero()) continue;
            big.at(b * nn + d2, a * nn + c) = big.at(b * nn + d2, a * nn + c) + push.at(b, a);
          }
      }
    T.act.push_back(std::move(big));
  }
  for (auto& [x, cx] : M.labels)
    for (auto& [y, cy] : N.labels) label_add(T.labels, x * y, cx * cy);
  for (auto& [x, px] : M.parts)
    for (auto& [y, py] : N.parts) {
      ExtWeylElt xy = x * y;
      auto it = T.parts.find(xy);
      int oldcols = (it == T.parts.end()) ? 0 : it->second.cols;
      PolyMat merged(nm * nn, oldcols + px.cols * py.cols, M.p(), M.nv());
      if (it != T.parts.end())
        for (int r = 0; r < nm * nn; ++r)
          for (int c = 0; c < oldcols; ++c) merged.at(r, c) = it->second.at(r, c);
      int col = oldcols;
      for (int cu = 0; cu < px.cols; ++cu)
        for (int cv = 0; cv < py.cols; ++cv) {
          for (int a = 0; a < nm; ++a)
            for (int c = 0; c < nn; ++c) {
              if (px.at(a, cu).is_zero() || py.at(c, cv).is_zero()) continue;
              merged.at(a * nn + c, col) = px.at(a, cu) * py.at(c, cv);
            }
          ++col;
        }
      T.parts[xy] = std::move(merged);
    }
  if (check) {
    T.check_shape();
    T.check_commuting();
  }
  return T;
}

inline SBimObject bott_samelson(const std::shared_ptr<const Realization>& R,
                                const std::vector<int>& word) {
  SBimObject M = delta(R, ExtWeylElt::identity(R->rd));
  for (int s : word) M = tensor(M, bs_gen(R, s));
  return M;
}

// ---------------------------------------------------------------------------
// morphisms

struct SBimMorphism {
  int degree = 0;
  PolyMat mat;  // rows indexed by target basis, cols by source basis
};

// joint eigenspace of M (x) Q for the W-element wbar, as a denominator-cleared
// polynomial column basis (used for certification; the stored parts refine it)
inline PolyMat w_eigenspace(const SBimObject& M, const FiniteWeylElt& wbar) {
  const u32 p = M.p();
  const int nv = M.nv(), n = M.rank();
  RatField Q(p, nv);
  Mat<RatField> stacked(nv * n, n, Q);
  for (int v = 0; v < nv; ++v) {
    GradedPoly wx = M.R->w_act(wbar, M.R->var(v));
    for (int b = 0; b < n; ++b)
      for (int a = 0; a < n; ++a) {
        GradedPoly e = M.act[v].at(b, a);
        if (a == b) e = e - wx;
        stacked.at(v * n + b, a) = RatFunc(e);
      }
  }
  Mat<RatField> K = kernel_basis(stacked, Q);
  PolyMat out(n, K.cols, p, nv);
  for (int c = 0; c < K.cols; ++c) {
    GradedPoly lcm = GradedPoly::constant(p, nv, 1);
    for (int r = 0; r < n; ++r) {
      const GradedPoly& d = K.at(r, c).den;
      GradedPoly g = poly_gcd(lcm, d);
      lcm = lcm.exact_div(g) * d;
    }
    for (int r = 0; r < n; ++r) out.at(r, c) = K.at(r, c).num * lcm.exact_div(K.at(r, c).den);
  }
  return out;
}

// Recompute the W-graded eigenspace dimensions over Q and check them against
// the bookkept refinement to W_ext; returns the labels.  Throws when the
// eigenspaces fail to exhaust the rank or disagree with the stored data.
inline LabelSet std_character(const SBimObject& M) {
  M.check_parts_eigen();
  std::map<std::vector<std::uint8_t>, std::pair<FiniteWeylElt, i64>> wproj;
  for (auto& [x, c] : M.labels) {
    auto [it, fresh] = wproj.try_emplace(x.fin.perm, std::make_pair(x.fin, (i64)0));
    it->second.second += c.at_one();
    // labels and parts must agree label by label
    auto pit = M.parts.find(x);
    int pcols = (pit == M.parts.end()) ? 0 : pit->second.cols;
    if (pcols < c.at_one())
      throw std::logic_error("std_character: stored part smaller than label multiplicity");
  }
  int total = 0;
  for (auto& [perm, slot] : wproj) {
    PolyMat E = w_eigenspace(M, slot.first);
    if (E.cols != slot.second)
      throw std::logic_error("std_character: eigenspace dimension disagrees with labels");
    total += E.cols;
  }
  if (total != M.rank()) throw std::logic_error("std_character: eigenspaces do not exhaust the rank");
  return M.labels;
}

namespace detail {

inline std::vector<Mono> monomials_of_degree(int nv, int d) {
  std::vector<Mono> out;
  std::vector<int> e(nv, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == nv - 1) {
      e[pos] = left;
      Mono m;
      for (int i = 0; i < nv; ++i) m.e[i] = (std::uint8_t)e[i];
      out.push_back(m);
      return;
    }
    for (int v2 = 0; v2 <= left; ++v2) {
      e[pos] = v2;
      rec(pos + 1, left - v2);
    }
  };
  rec(0, d);
  return out;
}

struct HomSlot {
  int row, col;
  Mono mono;
};

inline std::vector<HomSlot> hom_slots(const std::vector<int>& tdeg, const std::vector<int>& sdeg,
                                      int d, int nv) {
  std::vector<HomSlot> slots;
  for (int b = 0; b < (int)tdeg.size(); ++b)
    for (int a = 0; a < (int)sdeg.size(); ++a) {
      int e = d + sdeg[a] - tdeg[b];
      if (e < 0 || e % 2) continue;
      for (auto& m : monomials_of_degree(nv, e / 2)) slots.push_back({b, a, m});
    }
  return slots;
}

inline PolyMat slots_to_mat(const std::vector<HomSlot>& slots, const std::vector<u32>& coeffs,
                            int rows, int cols, u32 p, int nv) {
  PolyMat m(rows, cols, p, nv);
  for (size_t i = 0; i < slots.size(); ++i) {
    if (!coeffs[i]) continue;
    GradedPoly t(p, nv);
    t.t.push_back({slots[i].mono, coeffs[i]});
    m.at(slots[i].row, slots[i].col) = m.at(slots[i].row, slots[i].col) + t;
  }
  return m;
}

// annihilator of the column span of V over Q, returned as denominator-cleared
// polynomial rows (empty V: the full dual space)
inline PolyMat annihilator_rows(const PolyMat& V, int n, u32 p, int nv) {
  if (V.cols == 0) {
    return PolyMat::identity(n, p, nv);
  }
  RatField Q(p, nv);
  Mat<RatField> vt(V.cols, n, Q);
  for (int i = 0; i < V.cols; ++i)
    for (int j = 0; j < n; ++j) vt.at(i, j) = RatFunc(V.at(j, i));
  Mat<RatField> K = kernel_basis(vt, Q);  // columns are the functionals
  PolyMat rows(K.cols, n, p, nv);
  for (int c = 0; c < K.cols; ++c) {
    GradedPoly lcm = GradedPoly::constant(p, nv, 1);
    for (int r = 0; r < n; ++r) {
      GradedPoly g = poly_gcd(lcm, K.at(r, c).den);
      lcm = lcm.exact_div(g) * K.at(r, c).den;
    }
    for (int r = 0; r < n; ++r) rows.at(c, r) = K.at(r, c).num * lcm.exact_div(K.at(r, c).den);
  }
  return rows;
}

}  // namespace detail

struct HomSpaceResult {
  std::vector<SBimMorphism> basis;
  int dim_before_filter = 0;
  bool filter_active = false;
};

// Basis of degree-d morphisms M -> N: the intertwining system over F_p,
// then Abe's decomposition compatibility: for every label x of the source,
// the image of the stored part must lie in the span of the target part for
// the same x (zero if x is not a label of the target).
inline HomSpaceResult hom_space(const SBimObject& M, const SBimObject& N, int d) {
  const u32 p = M.p();
  const int nv = M.nv();
  auto slots = detail::hom_slots(N.deg, M.deg, d, nv);
  int nu = (int)slots.size();
  HomSpaceResult result;
  if (nu == 0) return result;

  FpField F(p);
  std::vector<std::vector<u32>> rows;
  std::map<std::tuple<int, int, int, std::array<std::uint8_t, kMaxVars>>, int> rowindex;
  auto add_coeff = [&](int v, int b, int a, const Mono& mono, int slot, u32 c) {
    auto key = std::make_tuple(v, b, a, mono.e);
    auto it = rowindex.find(key);
    int idx;
    if (it == rowindex.end()) {
      idx = (int)rows.size();
      rowindex.emplace(key, idx);
      rows.emplace_back(nu, 0);
    } else {
      idx = it->second;
    }
    rows[idx][slot] = fp_add(rows[idx][slot], c, p);
  };
  for (int i = 0; i < nu; ++i) {
    const auto& sl = slots[i];
    GradedPoly mono(p, nv);
    mono.t.push_back({sl.mono, 1});
    for (int v = 0; v < nv; ++v) {
      for (int b = 0; b < N.rank(); ++b) {
        const GradedPoly& q = N.act[v].at(b, sl.row);
        if (q.is_zero()) continue;
        GradedPoly prod = q * mono;
        for (auto& tm : prod.t) add_coeff(v, b, sl.col, tm.m, i, tm.c);
      }
      for (int a = 0; a < M.rank(); ++a) {
        const GradedPoly& q = M.act[v].at(sl.col, a);
        if (q.is_zero()) continue;
        GradedPoly prod = mono * q;
        for (auto& tm : prod.t) add_coeff(v, sl.row, a, tm.m, i, fp_neg(tm.c, p));
      }
    }
  }
  Mat<FpField> sys((int)rows.size(), nu, F);
  for (int r = 0; r < (int)rows.size(); ++r)
    for (int c = 0; c < nu; ++c) sys.at(r, c) = rows[r][c];
  Mat<FpField> K = kernel_basis(sys, F);
  result.dim_before_filter = K.cols;
  if (K.cols == 0) return result;

  std::vector<PolyMat> kphi;
  for (int c = 0; c < K.cols; ++c) {
    std::vector<u32> coeffs(nu);
    for (int i = 0; i < nu; ++i) coeffs[i] = K.at(i, c);
    kphi.push_back(detail::slots_to_mat(slots, coeffs, N.rank(), M.rank(), p, nv));
  }

  // decomposition-compatibility conditions
  std::vector<std::vector<u32>> conds;
  for (auto& [x, VM] : M.parts) {
    auto it = N.parts.find(x);
    PolyMat VN = (it != N.parts.end()) ? it->second : PolyMat(N.rank(), 0, p, nv);
    PolyMat C = detail::annihilator_rows(VN, N.rank(), p, nv);
    if (C.rows == 0) continue;
    for (int ci = 0; ci < C.rows; ++ci)
      for (int vi = 0; vi < VM.cols; ++vi) {
        // value_k = C_row . phi_k . VM_col, a polynomial; each monomial gives a row
        std::map<std::array<std::uint8_t, kMaxVars>, std::vector<u32>> permono;
        for (size_t kb = 0; kb < kphi.size(); ++kb) {
          GradedPoly val(p, nv);
          for (int i = 0; i < N.rank(); ++i) {
            if (C.at(ci, i).is_zero()) continue;
            GradedPoly acc(p, nv);
            for (int j = 0; j < M.rank(); ++j) {
              if (kphi[kb].at(i, j).is_zero() || VM.at(j, vi).is_zero()) continue;
              acc = acc + kphi[kb].at(i, j) * VM.at(j, vi);
            }
            if (!acc.is_zero()) val = val + C.at(ci, i) * acc;
          }
          for (auto& tm : val.t) {
            auto& vec = permono[tm.m.e];
            if (vec.empty()) vec.assign(kphi.size(), 0);
            vec[kb] = fp_add(vec[kb], tm.c, p);
          }
        }
        for (auto& [mono, vec] : permono) conds.push_back(vec);
      }
  }
  if (conds.empty()) {
    for (auto& m : kphi) {
      SBimMorphism mo;
      mo.degree = d;
      mo.mat = m;
      result.basis.push_back(std::move(mo));
    }
    return result;
  }
  Mat<FpField> csys((int)conds.size(), K.cols, F);
  for (int r = 0; r < (int)conds.size(); ++r)
    for (int c = 0; c < K.cols; ++c) csys.at(r, c) = conds[r][c];
  Mat<FpField> K2 = kernel_basis(csys, F);
  result.filter_active = (K2.cols != K.cols);
  for (int c2 = 0; c2 < K2.cols; ++c2) {
    PolyMat acc(N.rank(), M.rank(), p, nv);
    for (int c = 0; c < K.cols; ++c) {
      if (K2.at(c, c2) == 0) continue;
      acc = acc.add(kphi[c].scaled(K2.at(c, c2)));
    }
    SBimMorphism mo;
    mo.degree = d;
    mo.mat = acc;
    result.basis.push_back(std::move(mo));
  }
  return result;
}

// determinant of the constant part; for a degree-0 morphism between objects
// with matching degree profiles the determinant is a scalar, so this decides
// invertibility over R
inline u32 const_det(const PolyMat& m, u32 p) {
  int n = m.rows;
  FpField F(p);
  Mat<FpField> c(n, n, F);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const GradedPoly& e = m.at(i, j);
      c.at(i, j) = (e.is_zero() || e.t.front().m.total() != 0) ? 0 : e.t.front().c;
    }
  u32 det = 1;
  for (int col = 0, row = 0; col < n && row < n; ++col) {
    int sel = -1;
    for (int i = row; i < n; ++i)
      if (c.at(i, col)) { sel = i; break; }
    if (sel < 0) return 0;
    if (sel != row) {
      for (int j = 0; j < n; ++j) std::swap(c.at(sel, j), c.at(row, j));
      det = fp_neg(det, p);
    }
    det = fp_mul(det, c.at(row, col), p);
    u32 inv = fp_inv(c.at(row, col), p);
    for (int i = row + 1; i < n; ++i) {
      u32 f = fp_mul(c.at(i, col), inv, p);
      if (!f) continue;
      for (int j = col; j < n; ++j) c.at(i, j) = fp_sub(c.at(i, j), fp_mul(f, c.at(row, j), p), p);
    }
    ++row;
  }
  return det;
}

}  // namespace pkl
