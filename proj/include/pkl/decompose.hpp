#pragma once

/*
  Krull-Schmidt decomposition of Soergel bimodule objects.

  End^0(M) is a finite-dimensional F_p-algebra.  A proper idempotent is
  found by Fitting decomposition of pseudorandom elements: the minimal
  polynomial of a sample element is factored over F_p; whenever it has two
  coprime factors f, g with u f + v g = 1, the element (u f)(a) is an exact
  idempotent in F_p[a], so no lifting along the radical is ever needed.
  Recursion on the two summands terminates since ranks drop.  An object is
  declared indecomposable when End^0 is one-dimensional, or when
  kMaxFittingTries sample elements produce only prime-power minimal
  polynomials.  The latter is a seeded, reproducible heuristic; every
  decomposition is certified afterwards by character accounting, which
  keeps correctness independent of the search.

  The summand cut out by an idempotent e is presented on the columns of e
  whose constant parts are pivot columns: by graded Nakayama these columns
  are a free basis of the image, and the induced right action is recovered
  by exact degreewise linear solves.
*/

#include <optional>

#include "pkl/polyfactor.hpp"
#include "pkl/sbim.hpp"

namespace pkl {

constexpr int kMaxFittingTries = 40;

namespace detail {

// coordinates of a degree-0 endomorphism in the slot basis
struct EndCoords {
  std::vector<HomSlot> slots;
  std::map<std::tuple<int, int, std::array<std::uint8_t, kMaxVars>>, int> index;

  explicit EndCoords(const SBimObject& M) {
    slots = hom_slots(M.deg, M.deg, 0, M.nv());
    for (size_t i = 0; i < slots.size(); ++i)
      index.emplace(std::make_tuple(slots[i].row, slots[i].col, slots[i].mono.e), (int)i);
  }
  std::vector<u32> coords(const PolyMat& m) const {
    std::vector<u32> v(slots.size(), 0);
    for (int b = 0; b < m.rows; ++b)
      for (int a = 0; a < m.cols; ++a)
        for (auto& tm : m.at(b, a).t) {
          auto it = index.find(std::make_tuple(b, a, tm.m.e));
          if (it == index.end()) throw std::logic_error("EndCoords: entry outside slot pattern");
          v[it->second] = tm.c;
        }
    return v;
  }
};

// minimal polynomial of a in End^0(M), via the first linear dependence
// among its powers
inline UPoly min_poly(const SBimObject& M, const PolyMat& a, const EndCoords& C) {
  const u32 p = M.p();
  FpField F(p);
  Echelon<FpField> span((int)C.slots.size(), F);
  std::vector<std::vector<u32>> pow_coords;
  PolyMat pw = PolyMat::identity(M.rank(), p, M.nv());
  while (true) {
    std::vector<u32> co = C.coords(pw);
    if (!span.insert(co)) {
      int k = (int)pow_coords.size();
      Mat<FpField> aug((int)C.slots.size(), k + 1, F);
      for (int i = 0; i < (int)C.slots.size(); ++i) {
        for (int j = 0; j < k; ++j) aug.at(i, j) = pow_coords[j][i];
        aug.at(i, k) = co[i];
      }
      auto piv = rref(aug, F);
      // a^k = sum c_j a^j, so m(T) = T^k - sum c_j T^j
      UPoly m(k + 1, 0);
      m[k] = 1;
      for (size_t r = 0; r < piv.size(); ++r) {
        if (piv[r] == k) throw std::logic_error("min_poly: inconsistent solve");
        m[piv[r]] = fp_neg(aug.at((int)r, k), p);
      }
      up_trim(m);
      return m;
    }
    pow_coords.push_back(std::move(co));
    pw = pw.mul(a);
  }
}

inline PolyMat eval_poly_at(const UPoly& f, const PolyMat& a, u32 p, int nv, int n) {
  PolyMat r(n, n, p, nv);
  for (int i = up_deg(f); i >= 0; --i) {
    r = r.mul(a);
    if (i <= up_deg(f) && f[i]) r = r.add(PolyMat::identity(n, p, nv).scaled(f[i]));
  }
  return r;
}

}  // namespace detail

// Express each column of W in the graded basis V: returns S with V S = W.
// Column k of V is homogeneous "of degree vdeg[k]" (entry (r,k) has degree
// vdeg[k] - ambient_deg[r]), similarly wdeg for W.  Throws if inconsistent.
inline PolyMat express_in_basis(const std::vector<int>& ambient_deg, const PolyMat& V,
                                const std::vector<int>& vdeg, const PolyMat& W,
                                const std::vector<int>& wdeg, u32 p, int nv) {
  FpField F(p);
  PolyMat S((int)vdeg.size(), (int)wdeg.size(), p, nv);
  (void)ambient_deg;
  for (int l = 0; l < W.cols; ++l) {
    std::vector<std::pair<int, Mono>> uslots;
    for (int k = 0; k < (int)vdeg.size(); ++k) {
      int e = wdeg[l] - vdeg[k];
      if (e < 0 || e % 2) continue;
      for (auto& m : detail::monomials_of_degree(nv, e / 2)) uslots.push_back({k, m});
    }
    std::map<std::pair<int, std::array<std::uint8_t, kMaxVars>>, std::vector<u32>> eqs;
    auto touch = [&](int row, const Mono& m) -> std::vector<u32>& {
      auto& v = eqs[{row, m.e}];
      if (v.empty()) v.assign(uslots.size() + 1, 0);
      return v;
    };
    for (size_t u = 0; u < uslots.size(); ++u) {
      auto [k, mono] = uslots[u];
      GradedPoly mp(p, nv);
      mp.t.push_back({mono, 1});
      for (int r = 0; r < V.rows; ++r) {
        if (V.at(r, k).is_zero()) continue;
        GradedPoly prod = V.at(r, k) * mp;
        for (auto& tm : prod.t) {
          auto& v = touch(r, tm.m);
          v[u] = fp_add(v[u], tm.c, p);
        }
      }
    }
    for (int r = 0; r < W.rows; ++r)
      for (auto& tm : W.at(r, l).t) {
        auto& v = touch(r, tm.m);
        v.back() = fp_add(v.back(), tm.c, p);
      }
    Mat<FpField> aug((int)eqs.size(), (int)uslots.size() + 1, F);
    int ri = 0;
    for (auto& [key, row] : eqs) {
      for (size_t j = 0; j < row.size(); ++j) aug.at(ri, (int)j) = row[j];
      ++ri;
    }
    auto piv = rref(aug, F);
    std::vector<u32> sol(uslots.size(), 0);
    for (size_t r = 0; r < piv.size(); ++r) {
      if (piv[r] == (int)uslots.size())
        throw std::logic_error("express_in_basis: inconsistent system");
      sol[piv[r]] = aug.at((int)r, (int)uslots.size());
    }
    for (size_t u = 0; u < uslots.size(); ++u) {
      if (!sol[u]) continue;
      GradedPoly t(p, nv);
      t.t.push_back({uslots[u].second, sol[u]});
      S.at(uslots[u].first, l) = S.at(uslots[u].first, l) + t;
    }
  }
  return S;
}

// summand of M cut out by the idempotent e (labels left empty)
inline SBimObject split_summand(const SBimObject& M, const PolyMat& e) {
  const u32 p = M.p();
  FpField F(p);
  int n = M.rank();
  Mat<FpField> ebar(n, n, F);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const GradedPoly& q = e.at(i, j);
      ebar.at(i, j) = (q.is_zero() || q.t.front().m.total() != 0) ? 0 : q.t.front().c;
    }
  Mat<FpField> red = ebar;
  std::vector<int> piv = rref(red, F);
  SBimObject S;
  S.R = M.R;
  for (int j : piv) S.deg.push_back(M.deg[j]);
  PolyMat V(n, (int)piv.size(), p, M.nv());
  for (size_t k = 0; k < piv.size(); ++k)
    for (int i = 0; i < n; ++i) V.at(i, (int)k) = e.at(i, piv[k]);
  std::vector<int> wdeg = S.deg;
  for (auto& d : wdeg) d += 2;  // the action raises internal degree by 2
  for (int v = 0; v < M.nv(); ++v) {
    PolyMat W = M.act[v].mul(V);
    PolyMat Sv = express_in_basis(M.deg, V, S.deg, W, wdeg, p, M.nv());
    if (!(V.mul(Sv) == W)) throw std::logic_error("split_summand: induced action mismatch");
    S.act.push_back(std::move(Sv));
  }
  // push the decomposition data into the summand: the x-part of S is the
  // image e(M_Q^x) written in the V-basis (e respects the parts since it
  // passed the compatibility filter)
  RatField Q(p, M.nv());
  Mat<RatField> Vq(n, V.cols, Q);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < V.cols; ++j) Vq.at(i, j) = RatFunc(V.at(i, j));
  int parts_total = 0;
  for (auto& [x, Px] : M.parts) {
    PolyMat eP = e.mul(Px);
    if (eP.is_zero()) continue;
    Mat<RatField> aug(n, V.cols + eP.cols, Q);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < V.cols; ++j) aug.at(i, j) = Vq.at(i, j);
      for (int j = 0; j < eP.cols; ++j) aug.at(i, V.cols + j) = RatFunc(eP.at(i, j));
    }
    auto piv = rref(aug, Q);
    for (int c : piv)
      if (c >= V.cols) throw std::logic_error("split_summand: part image outside the summand");
    // solutions: column j of eP expressed as sum over pivot rows
    Echelon<RatField> indep(V.cols, Q);
    std::vector<std::vector<RatFunc>> kept;
    for (int j = 0; j < eP.cols; ++j) {
      std::vector<RatFunc> sol(V.cols, Q.zero());
      for (size_t r = 0; r < piv.size(); ++r) sol[piv[r]] = aug.at((int)r, V.cols + j);
      if (indep.insert(sol)) kept.push_back(std::move(sol));
    }
    if (kept.empty()) continue;
    PolyMat out(V.cols, (int)kept.size(), p, M.nv());
    for (size_t c = 0; c < kept.size(); ++c) {
      GradedPoly lcm = GradedPoly::constant(p, M.nv(), 1);
      for (int r = 0; r < V.cols; ++r) {
        GradedPoly g = poly_gcd(lcm, kept[c][r].den);
        lcm = lcm.exact_div(g) * kept[c][r].den;
      }
      for (int r = 0; r < V.cols; ++r)
        out.at(r, (int)c) = kept[c][r].num * lcm.exact_div(kept[c][r].den);
    }
    parts_total += out.cols;
    S.parts.emplace(x, std::move(out));
  }
  if (parts_total != S.rank())
    throw std::logic_error("split_summand: decomposition parts do not exhaust the summand");
  S.check_shape();
  S.check_commuting();
  S.check_parts_eigen();
  return S;
}

inline std::optional<PolyMat> find_proper_idempotent(const SBimObject& M,
                                                     const std::vector<SBimMorphism>& endo,
                                                     Rng& rng) {
  const u32 p = M.p();
  detail::EndCoords C(M);
  for (int trial = 0; trial < kMaxFittingTries; ++trial) {
    PolyMat a(M.rank(), M.rank(), p, M.nv());
    for (auto& mo : endo) {
      u32 c = rng.below(p);
      if (c) a = a.add(mo.mat.scaled(c));
    }
    UPoly m = detail::min_poly(M, a, C);
    if (up_deg(m) < 2) continue;
    Rng frng(rng.next());
    auto fac = up_factor(m, p, frng);
    if (fac.size() < 2) continue;
    UPoly f{1};
    for (int i = 0; i < fac[0].second; ++i) f = up_mul(f, fac[0].first, p);
    UPoly g = up_divmod(m, f, p).first;
    UPoly gg, u;
    up_ext_gcd(f, g, p, gg, u);
    if (up_deg(gg) != 0) throw std::logic_error("find_proper_idempotent: factors not coprime");
    UPoly uf = up_mod(up_mul(u, f, p), m, p);
    PolyMat e = detail::eval_poly_at(uf, a, p, M.nv(), M.rank());
    if (e.is_zero()) continue;
    if (!(e.mul(e) == e))
      throw std::logic_error("find_proper_idempotent: evaluation not idempotent");
    if (e == PolyMat::identity(M.rank(), p, M.nv())) continue;
    return e;
  }
  return std::nullopt;
}

// full decomposition into (claimed) indecomposables, labels not yet assigned
inline void decompose_raw(const SBimObject& M, Rng& rng, std::vector<SBimObject>& out) {
  HomSpaceResult endo = hom_space(M, M, 0);
  if ((int)endo.basis.size() <= 1) {
    out.push_back(M);
    return;
  }
  auto e = find_proper_idempotent(M, endo.basis, rng);
  if (!e) {
    out.push_back(M);
    return;
  }
  SBimObject S1 = split_summand(M, *e);
  SBimObject S2 = split_summand(M, PolyMat::identity(M.rank(), M.p(), M.nv()).sub(*e));
  if (S1.rank() + S2.rank() != M.rank())
    throw std::logic_error("decompose_raw: ranks of summands do not add up");
  decompose_raw(S1, rng, out);
  decompose_raw(S2, rng, out);
}

/*
  Registry of canonical indecomposables B_w for w in W_aff (plus the rank-1
  objects Delta_w for length-0 elements of W_ext), built bottom-up: B_w is
  the unique summand of B_{ws} tensor B_s not isomorphic to a shift of an
  already-known B_y.  Identification is by an explicit degree-0 morphism
  with unit constant determinant (the determinant of a degree-0 morphism
  between objects with equal degree profiles is a scalar).  The character of
  the new summand is derived from the accounting identity
      ch(B_u tensor B_s) = sum of summand characters,
  and certified to be a nonnegative Laurent character with top term H_w.
*/

struct Registry {
  std::shared_ptr<const Realization> R;
  u64 seed;
  std::map<ExtWeylElt, SBimObject> cache;
  bool filter_seen = false;  // decomposition-compatibility filter ever active
  int built_up_to = -1;

  Registry(std::shared_ptr<const Realization> real, u64 sd = 1) : R(std::move(real)), seed(sd) {}

  std::optional<std::pair<ExtWeylElt, int>> identify(const SBimObject& S) {
    std::vector<int> sdeg = S.deg;
    std::sort(sdeg.begin(), sdeg.end());
    for (auto& [y, By] : cache) {
      if (By.rank() != S.rank()) continue;
      std::vector<int> bdeg = By.deg;
      std::sort(bdeg.begin(), bdeg.end());
      int k = bdeg[0] - sdeg[0];
      bool match = true;
      for (size_t i = 0; i < bdeg.size(); ++i)
        if (bdeg[i] - sdeg[i] != k) match = false;
      if (!match) continue;
      SBimObject Byk = shift(By, k);
      HomSpaceResult homs = hom_space(Byk, S, 0);
      filter_seen = filter_seen || homs.filter_active;
      for (auto& mo : homs.basis)
        if (const_det(mo.mat, S.p()) != 0) return std::make_pair(y, k);
      Rng rng(seed ^ 0x5eedbeefull);
      for (int t = 0; t < 8 && homs.basis.size() > 1; ++t) {
        PolyMat acc(S.rank(), S.rank(), S.p(), S.nv());
        for (auto& mo : homs.basis) acc = acc.add(mo.mat.scaled(rng.below(S.p())));
        if (const_det(acc, S.p()) != 0) return std::make_pair(y, k);
      }
    }
    return std::nullopt;
  }

  const SBimObject& indecomposable(const ExtWeylElt& w) {
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
    build_all_up_to(length(w));
    it = cache.find(w);
    if (it == cache.end())
      throw std::logic_error("Registry: element not reachable (outside W_aff?)");
    return it->second;
  }

  void build_all_up_to(int maxlen) {
    if (maxlen <= built_up_to) return;
    std::vector<ExtWeylElt> layer{ExtWeylElt::identity(R->rd)};
    std::set<std::pair<Weight, std::vector<std::uint8_t>>> seen;
    auto key = [](const ExtWeylElt& x) { return std::make_pair(x.trans, x.fin.perm); };
    seen.insert(key(layer[0]));
    build_single(layer[0]);
    for (int d = 1; d <= maxlen; ++d) {
      std::vector<ExtWeylElt> next;
      for (auto& x : layer)
        for (int i = 0; i < R->S.count(); ++i) {
          ExtWeylElt y = x * R->S.gens[i];
          if (length(y) == d && seen.insert(key(y)).second) {
            next.push_back(y);
            build_single(y);
          }
        }
      layer = std::move(next);
    }
    built_up_to = maxlen;
  }

  void build_single(const ExtWeylElt& w) {
    if (cache.count(w)) return;
    int len = length(w);
    if (len == 0) {
      cache.emplace(w, delta(R, w));
      return;
    }
    std::vector<int> rw = reduced_word(w, R->S);
    if (len == 1) {
      cache.emplace(w, bs_gen(R, rw[0]));
      return;
    }
    ExtWeylElt u = ExtWeylElt::identity(R->rd);
    for (size_t i = 0; i + 1 < rw.size(); ++i) u = u * R->S.gens[rw[i]];
    const SBimObject& Bu = indecomposable(u);
    SBimObject M = tensor(Bu, bs_gen(R, rw.back()));
    std::vector<SBimObject> parts;
    Rng rng(seed ^ (0x9e3779b97f4a7c15ull * (u64)(len * 131 + rw.back() + 7)));
    decompose_raw(M, rng, parts);
    LabelSet remaining = M.labels;
    SBimObject* fresh = nullptr;
    int fresh_count = 0;
    for (auto& part : parts) {
      auto idd = identify(part);
      if (idd) {
        auto [y, k] = *idd;
        for (auto& [x, c] : cache.at(y).labels) label_add(remaining, x, -c.shifted(k));
      } else {
        ++fresh_count;
        fresh = &part;
      }
    }
    if (fresh_count != 1)
      throw std::logic_error("Registry: expected exactly one new indecomposable, got " +
                             std::to_string(fresh_count));
    fresh->labels = remaining;
    auto itw = fresh->labels.find(w);
    if (itw == fresh->labels.end() || !(itw->second == LaurentInt::constant(1)))
      throw std::logic_error("Registry: top label of new indecomposable is not H_w");
    for (auto& [x, c] : fresh->labels) {
      if (!c.nonneg_coeffs())
        throw std::logic_error("Registry: negative multiplicity in certified character");
      // derived character must match the dimension of the stored part
      auto pit = fresh->parts.find(x);
      i64 pcols = (pit == fresh->parts.end()) ? 0 : pit->second.cols;
      if (pcols != c.at_one())
        throw std::logic_error("Registry: character and decomposition part disagree");
    }
    for (auto& [x, px] : fresh->parts)
      if (!fresh->labels.count(x))
        throw std::logic_error("Registry: decomposition part without matching label");
    cache.emplace(w, *fresh);
  }
};

// Public decomposition: split M, identify every summand against the registry
// (built as far as the labels of M require), attach characters, certify the
// accounting identity.  Objects with a single indecomposable summand are
// returned as-is (their own labels are already the character).
struct DecompositionPiece {
  SBimObject object;
  std::optional<std::pair<ExtWeylElt, int>> ident;  // (registry key, shift)
};

inline std::vector<DecompositionPiece> decompose(const SBimObject& M, Registry& reg,
                                                 u64 seed = 1) {
  std::vector<SBimObject> parts;
  Rng rng(seed);
  decompose_raw(M, rng, parts);
  std::vector<DecompositionPiece> out;
  if (parts.size() == 1) {
    DecompositionPiece piece;
    piece.object = M;
    piece.ident = reg.identify(M);
    out.push_back(std::move(piece));
    return out;
  }
  int maxlen = 0;
  for (auto& [x, c] : M.labels)
    if (x.in_affine()) maxlen = std::max(maxlen, length(x));
  reg.build_all_up_to(maxlen);
  LabelSet total;
  for (auto& part : parts) {
    auto idd = reg.identify(part);
    if (!idd) throw std::logic_error("decompose: summand not identifiable");
    auto [y, k] = *idd;
    DecompositionPiece piece;
    piece.object = part;
    piece.ident = std::make_pair(y, k);
    LabelSet ls;
    for (auto& [x, c] : reg.cache.at(y).labels) ls[x] = c.shifted(k);
    piece.object.labels = ls;
    for (auto& [x, c] : ls) label_add(total, x, c);
    out.push_back(std::move(piece));
  }
  if (!(total == M.labels)) throw std::logic_error("decompose: character accounting failed");
  return out;
}

}  // namespace pkl
