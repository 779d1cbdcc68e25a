#pragma once

// Laurent polynomials in v with integer coefficients, sparse canonical form.

#include <cstdint>
#include <map>
#include <sstream>
#include <string>

namespace pkl {

struct LaurentInt {
  std::map<int, std::int64_t> c;  // exponent -> coefficient, no zeros stored

  LaurentInt() = default;
  static LaurentInt monomial(std::int64_t coeff, int exp) {
    LaurentInt r;
    if (coeff) r.c[exp] = coeff;
    return r;
  }
  static LaurentInt constant(std::int64_t coeff) { return monomial(coeff, 0); }

  bool is_zero() const { return c.empty(); }
  bool operator==(const LaurentInt&) const = default;

  LaurentInt& operator+=(const LaurentInt& o) {
    for (auto& [e, a] : o.c) {
      auto it = c.find(e);
      if (it == c.end()) c.emplace(e, a);
      else if ((it->second += a) == 0) c.erase(it);
    }
    return *this;
  }
  LaurentInt& operator-=(const LaurentInt& o) {
    for (auto& [e, a] : o.c) {
      auto it = c.find(e);
      if (it == c.end()) c.emplace(e, -a);
      else if ((it->second -= a) == 0) c.erase(it);
    }
    return *this;
  }
  friend LaurentInt operator+(LaurentInt a, const LaurentInt& b) { return a += b; }
  friend LaurentInt operator-(LaurentInt a, const LaurentInt& b) { return a -= b; }
  friend LaurentInt operator*(const LaurentInt& a, const LaurentInt& b) {
    LaurentInt r;
    for (auto& [e1, c1] : a.c)
      for (auto& [e2, c2] : b.c) {
        auto it = r.c.find(e1 + e2);
        if (it == r.c.end()) r.c.emplace(e1 + e2, c1 * c2);
        else if ((it->second += c1 * c2) == 0) r.c.erase(it);
      }
    return r;
  }
  LaurentInt operator-() const {
    LaurentInt r;
    for (auto& [e, a] : c) r.c[e] = -a;
    return r;
  }

  std::int64_t coeff(int e) const {
    auto it = c.find(e);
    return it == c.end() ? 0 : it->second;
  }
  std::int64_t at_one() const {
    std::int64_t s = 0;
    for (auto& [e, a] : c) s += a;
    return s;
  }
  // bar involution v -> v^{-1}
  LaurentInt bar() const {
    LaurentInt r;
    for (auto& [e, a] : c) r.c[-e] = a;
    return r;
  }
  LaurentInt shifted(int d) const {  // multiply by v^d
    LaurentInt r;
    for (auto& [e, a] : c) r.c[e + d] = a;
    return r;
  }
  int min_deg() const { return c.empty() ? 0 : c.begin()->first; }
  int max_deg() const { return c.empty() ? 0 : c.rbegin()->first; }
  bool nonneg_coeffs() const {
    for (auto& [e, a] : c) if (a < 0) return false;
    return true;
  }

  std::string str() const {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, a] : c) {
      if (!first) os << (a >= 0 ? " + " : " - ");
      else if (a < 0) os << "-";
      std::int64_t m = a >= 0 ? a : -a;
      if (m != 1 || e == 0) os << m;
      if (e != 0) {
        if (m != 1) os << "*";
        os << "v";
        if (e != 1) os << "^" << e;
      }
      first = false;
    }
    return os.str();
  }
};

}  // namespace pkl
