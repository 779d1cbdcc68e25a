#pragma once

// Root data: weight lattice X = Z^rank, simple roots/coroots, Cartan
// pairing, the prime p, rho.  Ships A1 and A2 presets; arbitrary
// simply-laced data is accepted when the torsion check passes.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace pkl {

using Weight = std::vector<std::int64_t>;   // element of X in the basis Z^rank
using Coweight = std::vector<std::int64_t>; // element of X^vee (dual basis)

inline std::int64_t pair_wc(const Weight& la, const Coweight& y) {
  std::int64_t s = 0;
  for (size_t i = 0; i < la.size(); ++i) s += la[i] * y[i];
  return s;
}

inline Weight add_w(const Weight& a, const Weight& b) {
  Weight r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
inline Weight sub_w(const Weight& a, const Weight& b) {
  Weight r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
inline Weight scale_w(const Weight& a, std::int64_t c) {
  Weight r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

// Smith normal form diagonal of a small integer matrix.
inline std::vector<std::int64_t> smith_diagonal(std::vector<std::vector<std::int64_t>> m) {
  size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<std::int64_t> diag;
  size_t r0 = 0, c0 = 0;
  while (r0 < rows && c0 < cols) {
    // find a nonzero pivot
    size_t pi = r0, pj = c0;
    bool found = false;
    for (size_t i = r0; i < rows && !found; ++i)
      for (size_t j = c0; j < cols && !found; ++j)
        if (m[i][j]) { pi = i; pj = j; found = true; }
    if (!found) break;
    std::swap(m[r0], m[pi]);
    for (auto& row : m) std::swap(row[c0], row[pj]);
    // clear row and column by Euclid
    bool again = true;
    while (again) {
      again = false;
      for (size_t i = r0 + 1; i < rows; ++i) {
        while (m[i][c0]) {
          std::int64_t q = m[i][c0] / m[r0][c0];
          for (size_t j = c0; j < cols; ++j) m[i][j] -= q * m[r0][j];
          if (m[i][c0]) { std::swap(m[r0], m[i]); again = true; }
        }
      }
      for (size_t j = c0 + 1; j < cols; ++j) {
        while (m[r0][j]) {
          std::int64_t q = m[r0][j] / m[r0][c0];
          for (size_t i = r0; i < rows; ++i) m[i][j] -= q * m[i][c0];
          if (m[r0][j]) {
            for (size_t i = r0; i < rows; ++i) std::swap(m[i][c0], m[i][j]);
            again = true;
          }
        }
      }
    }
    diag.push_back(std::abs(m[r0][c0]));
    ++r0;
    ++c0;
  }
  return diag;
}

struct RootDatum {
  int rank = 0;
  std::uint32_t p = 0;
  std::vector<Weight> simple_roots;
  std::vector<Coweight> simple_coroots;
  std::vector<std::vector<std::int64_t>> cartan;  // cartan[i][j] = <alpha_i, alpha_j^vee>
  Weight rho;
  std::string name;

  std::vector<Weight> roots;       // all roots, positives first
  std::vector<Coweight> coroots;   // matching order
  int num_positive = 0;
  int highest_root_index = 0;      // index into roots (a positive root)

  static std::shared_ptr<const RootDatum> make(int rank, std::uint32_t p,
                                               std::vector<Weight> sroots,
                                               std::vector<Coweight> scoroots,
                                               std::string name = "custom") {
    auto rd = std::make_shared<RootDatum>();
    rd->rank = rank;
    rd->p = p;
    rd->simple_roots = std::move(sroots);
    rd->simple_coroots = std::move(scoroots);
    rd->name = std::move(name);
    rd->finish();
    return rd;
  }

  static std::shared_ptr<const RootDatum> preset(const std::string& type, std::uint32_t p) {
    if (type == "A1") {
      // X = Z (weight lattice of SL2), alpha = 2, alpha^vee = 1
      return make(1, p, {{2}}, {{1}}, "A1");
    }
    if (type == "A2") {
      // X = Z^2 in the fundamental-weight basis; coroot basis dual to it
      return make(2, p, {{2, -1}, {-1, 2}}, {{1, 0}, {0, 1}}, "A2");
    }
    throw std::invalid_argument("unknown root datum preset: " + type);
  }

  void finish() {
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("RootDatum: p must be an odd prime");
    if (rank <= 0 || (int)simple_roots.size() != rank || (int)simple_coroots.size() != rank)
      throw std::invalid_argument("RootDatum: inconsistent rank");
    cartan.assign(rank, std::vector<std::int64_t>(rank, 0));
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) cartan[i][j] = pair_wc(simple_roots[i], simple_coroots[j]);
    for (int i = 0; i < rank; ++i)
      if (cartan[i][i] != 2) throw std::invalid_argument("RootDatum: diagonal Cartan entry != 2");
    build_roots();
    rho = compute_rho();
    check_torsion();
  }

  static bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  // Z R cap pX = p Z R  <=>  X / Z R has no p-torsion  <=>  no elementary
  // divisor of the root-lattice inclusion is divisible by p.
  void check_torsion() const {
    std::vector<std::vector<std::int64_t>> m(rank, std::vector<std::int64_t>(rank));
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) m[i][j] = simple_roots[j][i];  // roots as columns
    for (std::int64_t d : smith_diagonal(m))
      if (d != 0 && d % p == 0)
        throw std::invalid_argument("RootDatum: X/ZR has p-torsion (p = " + std::to_string(p) + ")");
  }

  void build_roots() {
    // close the simple roots under simple reflections
    std::set<Weight> seen(simple_roots.begin(), simple_roots.end());
    std::vector<Weight> queue(simple_roots.begin(), simple_roots.end());
    std::vector<std::pair<Weight, Coweight>> pairs;
    for (int i = 0; i < rank; ++i) pairs.push_back({simple_roots[i], simple_coroots[i]});
    while (!queue.empty()) {
      Weight a = queue.back();
      queue.pop_back();
      for (int i = 0; i < rank; ++i) {
        Weight b = sub_w(a, scale_w(simple_roots[i], pair_wc(a, simple_coroots[i])));
        if (!seen.count(b)) {
          seen.insert(b);
          queue.push_back(b);
        }
      }
    }
    // a root is positive iff it is a nonnegative combination of simple roots;
    // recover the coroot of w(alpha_i) by acting on coroots in parallel
    std::vector<Weight> pos, neg;
    for (auto& a : seen) {
      if (is_positive_comb(a)) pos.push_back(a);
      else neg.push_back(a);
    }
    std::sort(pos.begin(), pos.end());
    num_positive = (int)pos.size();
    roots = pos;
    for (auto& a : neg) roots.push_back(a);
    coroots.resize(roots.size());
    for (size_t r = 0; r < roots.size(); ++r) coroots[r] = coroot_of(roots[r]);
    // highest root: the positive root with maximal height
    int best = 0;
    std::int64_t besth = -1;
    for (int r = 0; r < num_positive; ++r) {
      std::int64_t h = height(roots[r]);
      if (h > besth) { besth = h; best = r; }
    }
    highest_root_index = best;
  }

  bool is_positive_comb(const Weight& a) const {
    // solve a = sum c_i alpha_i over Q, all c_i >= 0 (simple roots independent)
    std::vector<std::int64_t> c = root_coords_times_det(a);
    std::int64_t det = root_det();
    for (auto x : c)
      if ((det > 0 && x < 0) || (det < 0 && x > 0)) return false;
    return true;
  }

  std::int64_t height(const Weight& a) const {
    std::vector<std::int64_t> c = root_coords_times_det(a);
    std::int64_t det = root_det(), s = 0;
    for (auto x : c) s += x;
    return s / det;
  }

  // Cramer solve of [simple roots as columns] * c = a, scaled by det
  std::int64_t root_det() const {
    return det_of([&](int i, int j) { return simple_roots[j][i]; });
  }
  std::vector<std::int64_t> root_coords_times_det(const Weight& a) const {
    std::vector<std::int64_t> c(rank);
    for (int k = 0; k < rank; ++k)
      c[k] = det_of([&](int i, int j) { return j == k ? a[i] : simple_roots[j][i]; });
    return c;
  }
  template <class Get>
  std::int64_t det_of(Get get) const {
    // Laplace expansion; rank <= 4 in practice
    std::vector<int> perm(rank);
    std::iota(perm.begin(), perm.end(), 0);
    std::int64_t det = 0;
    do {
      int sgn = perm_sign(perm);
      std::int64_t prod = 1;
      for (int i = 0; i < rank; ++i) prod *= get(i, perm[i]);
      det += sgn * prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
  }
  static int perm_sign(const std::vector<int>& perm) {
    int s = 1;
    for (size_t i = 0; i < perm.size(); ++i)
      for (size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) s = -s;
    return s;
  }

  // lambda in ZR?  (exact integral solve)
  bool in_root_lattice(const Weight& a) const {
    std::int64_t det = root_det();
    std::vector<std::int64_t> c = root_coords_times_det(a);
    for (auto x : c)
      if (x % det != 0) return false;
    // verify (guards against overflow-free exactness assumptions)
    Weight chk(rank, 0);
    for (int j = 0; j < rank; ++j) chk = add_w(chk, scale_w(simple_roots[j], c[j] / det));
    return chk == a;
  }

  bool in_p_root_lattice(const Weight& a) const {
    for (auto x : a)
      if (x % (std::int64_t)p != 0) return false;
    Weight b(rank);
    for (int i = 0; i < rank; ++i) b[i] = a[i] / (std::int64_t)p;
    return in_root_lattice(b);
  }

  Weight compute_rho() const {
    Weight two_rho(rank, 0);
    for (int r = 0; r < num_positive; ++r) two_rho = add_w(two_rho, roots[r]);
    for (auto& x : two_rho) {
      if (x % 2 != 0) throw std::invalid_argument("RootDatum: rho not in X");
    }
    Weight r(rank);
    for (int i = 0; i < rank; ++i) r[i] = two_rho[i] / 2;
    return r;
  }

  Coweight coroot_of(const Weight& a) const {
    // w(alpha_i) has coroot w(alpha_i^vee); find it by tracking a chain of
    // simple reflections from a back to a simple root
    for (int i = 0; i < rank; ++i)
      if (a == simple_roots[i]) return simple_coroots[i];
    // BFS: apply reflections until simple, then push the coroot forward
    struct Node { Weight w; std::vector<int> path; };
    std::vector<Node> queue{{a, {}}};
    std::set<Weight> seen{a};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      Node n = queue[qi];
      for (int i = 0; i < rank; ++i) {
        Weight b = sub_w(n.w, scale_w(simple_roots[i], pair_wc(n.w, simple_coroots[i])));
        std::vector<int> path = n.path;
        path.push_back(i);
        for (int j = 0; j < rank; ++j)
          if (b == simple_roots[j]) {
            Coweight cv = simple_coroots[j];
            for (auto it = path.rbegin(); it != path.rend(); ++it)
              cv = refl_coweight(*it, cv);
            return cv;
          }
        if (b == scale_w(a, -1) || seen.count(b)) continue;
        seen.insert(b);
        queue.push_back({b, path});
      }
    }
    throw std::logic_error("coroot_of: chain to a simple root not found");
  }

  Weight refl_weight(int i, const Weight& la) const {
    return sub_w(la, scale_w(simple_roots[i], pair_wc(la, simple_coroots[i])));
  }
  Coweight refl_coweight(int i, const Coweight& y) const {
    return sub_w(y, scale_w(simple_coroots[i], pair_wc(simple_roots[i], y)));
  }

  // Coxeter number = height of the highest root + 1
  std::int64_t coxeter_number() const { return height(roots[highest_root_index]) + 1; }
};

using RootDatumPtr = std::shared_ptr<const RootDatum>;

}  // namespace pkl
