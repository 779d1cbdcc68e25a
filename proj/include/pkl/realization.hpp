#pragma once

// The balanced realization of (W_aff, S_aff) over F_p on t*, acting on
// R = Sym(t) with generators in degree 2.  For a finite reflection s_alpha
// the realization root alpha_s in t is the differential of alpha^vee and the
// coroot alpha_s^vee in t* is the differential of alpha; for the affine
// generator t_beta s_beta they are d(-beta^vee) and d(-beta).  Translations
// act trivially: the W_aff action on R factors through W.

#include <stdexcept>
#include <vector>

#include "pkl/poly.hpp"
#include "pkl/weyl.hpp"

namespace pkl {

struct Realization {
  RootDatumPtr rd;
  AffineGenerators S;
  u32 p;
  int nv;  // = rank, the dimension of t

  // per generator: realization root in R (degree 2, a linear form in the
  // t-basis), realization coroot as a functional on t (coordinates in X mod p),
  // and the chosen delta with demazure(s, delta) = 1
  std::vector<GradedPoly> alpha;
  std::vector<std::vector<u32>> alpha_check;
  std::vector<GradedPoly> delta;

  explicit Realization(RootDatumPtr d) : rd(d), S(d), p(d->p), nv(d->rank) {
    for (int i = 0; i < S.count(); ++i) {
      bool affine = (i >= rd->rank);
      int ridx = affine ? rd->highest_root_index : i;
      std::int64_t sign = affine ? -1 : 1;
      const Coweight& cv = rd->coroots[ridx];  // alpha_s = d(+-beta^vee) in t
      const Weight& wv = rd->roots[ridx];      // alpha_s^vee = d(+-beta) in t*
      std::vector<i64> lf(nv);
      for (int j = 0; j < nv; ++j) lf[j] = sign * cv[j];
      alpha.push_back(GradedPoly::linear(p, nv, lf));
      std::vector<u32> ac(nv);
      for (int j = 0; j < nv; ++j) ac[j] = fp_norm(sign * wv[j], p);
      alpha_check.push_back(ac);
      if (alpha.back().is_zero()) throw std::logic_error("Realization: alpha_s = 0");
      bool cz = true;
      for (auto c : ac)
        if (c) cz = false;
      if (cz) throw std::logic_error("Realization: alpha_s^vee = 0");
      // <alpha_s, alpha_s^vee> = 2
      if (pair_with(ac, alpha.back()) != 2 % p)
        throw std::logic_error("Realization: <alpha_s, alpha_s^vee> != 2");
      delta.push_back(make_delta(i));
    }
  }

  // apply the functional (coords in X mod p) to a degree-2 element of R
  u32 pair_with(const std::vector<u32>& functional, const GradedPoly& lin) const {
    u32 s = 0;
    for (auto& tm : lin.t)
      for (int j = 0; j < nv; ++j)
        if (tm.m.e[j] == 1 && tm.m.total() == 1)
          s = fp_add(s, fp_mul(functional[j], tm.c, p), p);
    return s;
  }

  // matrix of the W-projection of generator i acting on t (the variables):
  // y -> y - <alpha_s^vee, y> alpha_s, with alpha_s in t.
  std::vector<std::vector<u32>> gen_matrix_on_t(int i) const {
    std::vector<std::vector<u32>> m(nv, std::vector<u32>(nv, 0));
    // columns: image of x_j
    std::vector<u32> aco(nv, 0);  // coordinates of alpha_s in the t-basis
    for (auto& tm : alpha[i].t)
      for (int j = 0; j < nv; ++j)
        if (tm.m.e[j] == 1) aco[j] = tm.c;
    for (int j = 0; j < nv; ++j) {
      for (int k = 0; k < nv; ++k) m[j][k] = (j == k) ? 1 : 0;
      u32 c = alpha_check[i][j];  // <alpha_s^vee, x_j>
      for (int k = 0; k < nv; ++k) m[j][k] = fp_sub(m[j][k], fp_mul(c, aco[k], p), p);
    }
    return m;
  }

  // matrix on t of the W-projection of an arbitrary finite Weyl element
  std::vector<std::vector<u32>> weyl_matrix_on_t(const FiniteWeylElt& w) const {
    std::vector<std::vector<u32>> m(nv, std::vector<u32>(nv, 0));
    for (int j = 0; j < nv; ++j) m[j][j] = 1;
    // word [i0, i1, ...] acts as s_{i0} after s_{i1} after ...; substitution
    // matrices compose contravariantly: (A then-apply B)[j][k] = sum_l B[j][l] A[l][k]
    for (int i : w.word()) {
      auto g = gen_matrix_on_t(i);
      std::vector<std::vector<u32>> r(nv, std::vector<u32>(nv, 0));
      for (int j = 0; j < nv; ++j)
        for (int k = 0; k < nv; ++k) {
          u32 acc = 0;
          for (int l = 0; l < nv; ++l) acc = fp_add(acc, fp_mul(g[j][l], m[l][k], p), p);
          r[j][k] = acc;
        }
      m = r;
    }
    return m;
  }

  GradedPoly w_act(const FiniteWeylElt& w, const GradedPoly& f) const {
    if (w.is_identity()) return f;
    return f.substitute(weyl_matrix_on_t(w));
  }
  GradedPoly gen_act(int i, const GradedPoly& f) const { return f.substitute(gen_matrix_on_t(i)); }
  // W_ext acts through its W-projection
  GradedPoly ext_act(const ExtWeylElt& x, const GradedPoly& f) const { return w_act(x.fin, f); }

  // Demazure operator (f - s f)/alpha_s; division must be exact
  GradedPoly demazure(int i, const GradedPoly& f) const {
    GradedPoly num = f - gen_act(i, f);
    if (num.is_zero()) return GradedPoly::zero(p, nv);
    return num.exact_div(alpha[i]);
  }

  bool is_invariant(int i, const GradedPoly& f) const { return gen_act(i, f) == f; }

  // f = a + b delta with a, b s-invariant; b = demazure(f), a = f - b delta
  std::pair<GradedPoly, GradedPoly> invariant_split(int i, const GradedPoly& f) const {
    GradedPoly b = demazure(i, f);
    GradedPoly a = f - b * delta[i];
    return {a, b};
  }

  GradedPoly var(int j) const { return GradedPoly::variable(p, nv, j); }

 private:
  // canonical degree-2 element with demazure(s, delta) = 1: the first basis
  // vector of t with nonzero pairing against alpha_s^vee, scaled so that the
  // pairing is 1 (for the presets this is a fundamental coweight image)
  GradedPoly make_delta(int i) const {
    for (int j = 0; j < nv; ++j) {
      u32 c = alpha_check[i][j];
      if (c) {
        GradedPoly d = GradedPoly::variable(p, nv, j, fp_inv(c, p));
        GradedPoly dd = (d - d.substitute(gen_matrix_on_t(i))).exact_div(alpha[i]);
        if (!(dd == GradedPoly::constant(p, nv, 1)))
          throw std::logic_error("Realization: delta normalization failed");
        return d;
      }
    }
    throw std::logic_error("Realization: no delta candidate");
  }
};

}  // namespace pkl
