#pragma once

// Dense exact linear algebra over an arbitrary field (F_p, F_q, or the
// rational function field), templated on a field-ops object.

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace pkl {

template <class F>
struct Mat {
  using E = typename F::Elt;
  int rows = 0, cols = 0;
  std::vector<E> a;

  Mat() = default;
  Mat(int r, int c, const F& f) : rows(r), cols(c), a(static_cast<size_t>(r) * c, f.zero()) {}

  E& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const E& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static Mat identity(int n, const F& f) {
    Mat m(n, n, f);
    for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
  }

  Mat mul(const Mat& o, const F& f) const {
    if (cols != o.rows) throw std::logic_error("Mat::mul: shape mismatch");
    Mat r(rows, o.cols, f);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        const E& x = at(i, k);
        if (f.is_zero(x)) continue;
        for (int j = 0; j < o.cols; ++j)
          r.at(i, j) = f.add(r.at(i, j), f.mul(x, o.at(k, j)));
      }
    return r;
  }

  Mat add(const Mat& o, const F& f) const {
    Mat r(rows, cols, f);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = f.add(a[i], o.a[i]);
    return r;
  }
  Mat sub(const Mat& o, const F& f) const {
    Mat r(rows, cols, f);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = f.sub(a[i], o.a[i]);
    return r;
  }
  Mat scaled(const E& s, const F& f) const {
    Mat r(rows, cols, f);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = f.mul(a[i], s);
    return r;
  }

  std::vector<E> apply(const std::vector<E>& v, const F& f) const {
    std::vector<E> r(rows, f.zero());
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (!f.is_zero(at(i, j))) r[i] = f.add(r[i], f.mul(at(i, j), v[j]));
    return r;
  }

  bool is_zero(const F& f) const {
    for (auto& x : a)
      if (!f.is_zero(x)) return false;
    return true;
  }
};

// In-place reduced row echelon form; returns pivot column list.
template <class F>
std::vector<int> rref(Mat<F>& m, const F& f) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int sel = -1;
    for (int i = r; i < m.rows; ++i)
      if (!f.is_zero(m.at(i, c))) { sel = i; break; }
    if (sel < 0) continue;
    if (sel != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
    typename F::Elt inv = f.inv(m.at(r, c));
    for (int j = c; j < m.cols; ++j) m.at(r, j) = f.mul(m.at(r, j), inv);
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || f.is_zero(m.at(i, c))) continue;
      typename F::Elt factor = m.at(i, c);
      for (int j = c; j < m.cols; ++j)
        m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
int mat_rank(Mat<F> m, const F& f) {
  return static_cast<int>(rref(m, f).size());
}

// Basis of the right kernel, as columns stacked into a matrix (cols = nullity).
template <class F>
Mat<F> kernel_basis(Mat<F> m, const F& f) {
  std::vector<int> pivots = rref(m, f);
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : pivots) is_pivot[c] = true;
  int nfree = m.cols - static_cast<int>(pivots.size());
  Mat<F> K(m.cols, nfree, f);
  int kcol = 0;
  for (int c = 0; c < m.cols; ++c) {
    if (is_pivot[c]) continue;
    K.at(c, kcol) = f.one();
    for (size_t pr = 0; pr < pivots.size(); ++pr)
      K.at(pivots[pr], kcol) = f.neg(m.at(static_cast<int>(pr), c));
    ++kcol;
  }
  return K;
}

template <class F>
Mat<F> mat_inverse(const Mat<F>& m, const F& f) {
  if (m.rows != m.cols) throw std::logic_error("mat_inverse: not square");
  int n = m.rows;
  Mat<F> aug(n, 2 * n, f);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = f.one();
  }
  auto piv = rref(aug, f);
  if (static_cast<int>(piv.size()) != n) throw std::domain_error("mat_inverse: singular");
  Mat<F> inv(n, n, f);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

// Row space basis of m, one echelon row per basis vector.
template <class F>
Mat<F> row_space_basis(Mat<F> m, const F& f) {
  auto piv = rref(m, f);
  Mat<F> b(static_cast<int>(piv.size()), m.cols, f);
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < m.cols; ++j) b.at(i, j) = m.at(i, j);
  return b;
}

// Incremental echelon accumulator over F: used to build linear spans and
// quotient-space structure without materializing huge systems at once.
template <class F>
struct Echelon {
  const F* f;
  int cols;
  std::vector<std::vector<typename F::Elt>> rows;  // reduced rows
  std::vector<int> lead;                           // leading column of each row

  Echelon(int ncols, const F& field) : f(&field), cols(ncols) {}

  int rank() const { return static_cast<int>(rows.size()); }

  // Reduce v against the stored rows; returns the residue.
  std::vector<typename F::Elt> residue(std::vector<typename F::Elt> v) const {
    for (size_t r = 0; r < rows.size(); ++r) {
      const auto& x = v[lead[r]];
      if (f->is_zero(x)) continue;
      typename F::Elt factor = x;
      for (int j = lead[r]; j < cols; ++j)
        v[j] = f->sub(v[j], f->mul(factor, rows[r][j]));
    }
    return v;
  }

  // Insert v into the span; returns true if the rank grew.
  bool insert(std::vector<typename F::Elt> v) {
    v = residue(std::move(v));
    int lc = -1;
    for (int j = 0; j < cols; ++j)
      if (!f->is_zero(v[j])) { lc = j; break; }
    if (lc < 0) return false;
    typename F::Elt inv = f->inv(v[lc]);
    for (int j = lc; j < cols; ++j) v[j] = f->mul(v[j], inv);
    // back-substitute into existing rows
    for (size_t r = 0; r < rows.size(); ++r) {
      typename F::Elt factor = rows[r][lc];
      if (f->is_zero(factor)) continue;
      for (int j = lc; j < cols; ++j)
        rows[r][j] = f->sub(rows[r][j], f->mul(factor, v[j]));
    }
    size_t pos = 0;
    while (pos < rows.size() && lead[pos] < lc) ++pos;
    rows.insert(rows.begin() + pos, std::move(v));
    lead.insert(lead.begin() + pos, lc);
    return true;
  }

  bool contains(std::vector<typename F::Elt> v) const {
    v = residue(std::move(v));
    for (auto& x : v)
      if (!f->is_zero(x)) return false;
    return true;
  }
};

}  // namespace pkl
