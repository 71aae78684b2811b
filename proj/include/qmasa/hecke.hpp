#pragma once

#include <map>
#include <stdexcept>
#include <utility>

#include "qmasa/coxeter.hpp"
#include "qmasa/polynomial.hpp"

namespace qmasa {

// Element of the deformed group algebra: finite sum  sum_w c_w(p) T_w  with
// polynomial coefficients in the deformation parameter p.  The defining
// relations are
//   T_s T_w = T_{sw}            if |sw| > |w|,
//   T_s T_w = T_{sw} + p T_w    if |sw| < |w|,
// and symmetrically on the right.  At p = 0 this is the group algebra.
//
// The basis {T_w} is orthonormal for the trace inner product <x,y> = tau(y*x):
// T_w applied to the vacuum vector gives the point mass at w.
class HeckeElement {
 public:
  using Terms = std::map<Word, PolyP, LenLexLess>;

  HeckeElement() = default;

  static HeckeElement unit() { return basis(Word{}); }
  static HeckeElement basis(const Word& w) {
    HeckeElement e;
    e.t_[w] = poly_one();
    return e;
  }

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t support_size() const { return t_.size(); }

  PolyP coeff(const Word& w) const {
    auto it = t_.find(w);
    return it == t_.end() ? PolyP() : it->second;
  }

  void add_term(const Word& w, const PolyP& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = t_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  void set_term(const Word& w, const PolyP& c) {
    if (c.is_zero())
      t_.erase(w);
    else
      t_[w] = c;
  }

  HeckeElement& operator+=(const HeckeElement& o) {
    for (const auto& [w, c] : o.t_) add_term(w, c);
    return *this;
  }
  HeckeElement& operator-=(const HeckeElement& o) {
    for (const auto& [w, c] : o.t_) add_term(w, -c);
    return *this;
  }
  friend HeckeElement operator+(HeckeElement a, const HeckeElement& b) { return a += b; }
  friend HeckeElement operator-(HeckeElement a, const HeckeElement& b) { return a -= b; }

  HeckeElement& scale(const PolyP& s) {
    if (s.is_zero()) {
      t_.clear();
      return *this;
    }
    for (auto& [w, c] : t_) c *= s;
    return *this;
  }
  HeckeElement& scale(const Rational& s) { return scale(PolyP(s)); }

  friend bool operator==(const HeckeElement& a, const HeckeElement& b) {
    return a.t_ == b.t_;
  }
  friend bool operator!=(const HeckeElement& a, const HeckeElement& b) {
    return !(a == b);
  }

  int top_degree() const {  // -1 for the zero element
    return t_.empty() ? -1 : static_cast<int>(t_.rbegin()->first.size());
  }
  int bottom_degree() const {
    return t_.empty() ? -1 : static_cast<int>(t_.begin()->first.size());
  }

  // True when every word in the support has the same length (set in *deg).
  bool is_homogeneous(int* deg = nullptr) const {
    if (t_.empty()) return false;
    int d = static_cast<int>(t_.begin()->first.size());
    if (static_cast<int>(t_.rbegin()->first.size()) != d) return false;
    if (deg) *deg = d;
    return true;
  }

 private:
  Terms t_;
};

namespace detail {

// T_s * (c T_w), appended into out.  No validation: callers check s < L.
inline void gen_left_term(int s, const Word& w, const PolyP& c, HeckeElement& out) {
  if (!w.empty() && w.front() == static_cast<Letter>(s)) {
    out.add_term(Word(w.begin() + 1, w.end()), c);
    out.add_term(w, poly_p() * c);
  } else {
    Word sw;
    sw.reserve(w.size() + 1);
    sw.push_back(static_cast<Letter>(s));
    sw.insert(sw.end(), w.begin(), w.end());
    out.add_term(std::move(sw), c);
  }
}

inline void gen_right_term(const Word& w, const PolyP& c, int s, HeckeElement& out) {
  if (!w.empty() && w.back() == static_cast<Letter>(s)) {
    out.add_term(Word(w.begin(), w.end() - 1), c);
    out.add_term(w, poly_p() * c);
  } else {
    Word ws = w;
    ws.push_back(static_cast<Letter>(s));
    out.add_term(std::move(ws), c);
  }
}

}  // namespace detail

inline HeckeElement mul_generator(int L, int s, const HeckeElement& a) {
  check_num_factors(L);
  check_letter(s, L);
  HeckeElement out;
  for (const auto& [w, c] : a.terms()) detail::gen_left_term(s, w, c, out);
  return out;
}

inline HeckeElement mul_generator_right(int L, const HeckeElement& a, int s) {
  check_num_factors(L);
  check_letter(s, L);
  HeckeElement out;
  for (const auto& [w, c] : a.terms()) detail::gen_right_term(w, c, s, out);
  return out;
}

// T_w * a: letters act from the innermost one outward.
inline HeckeElement word_mul_left(int L, const Word& w, HeckeElement a) {
  check_num_factors(L);
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    check_letter(*it, L);
    HeckeElement next;
    for (const auto& [u, c] : a.terms()) detail::gen_left_term(*it, u, c, next);
    a = std::move(next);
  }
  return a;
}

inline HeckeElement word_mul_right(int L, HeckeElement a, const Word& w) {
  check_num_factors(L);
  for (Letter s : w) {
    check_letter(s, L);
    HeckeElement next;
    for (const auto& [u, c] : a.terms()) detail::gen_right_term(u, c, s, next);
    a = std::move(next);
  }
  return a;
}

inline HeckeElement mul(int L, const HeckeElement& a, const HeckeElement& b) {
  HeckeElement out;
  for (const auto& [w, cw] : a.terms()) {
    HeckeElement wb = word_mul_left(L, w, b);
    wb.scale(cw);
    out += wb;
  }
  return out;
}

// Degree-range component: words w with lmin <= |w| <= lmax.
inline HeckeElement project_range(int lmin, int lmax, const HeckeElement& a) {
  HeckeElement out;
  if (lmax < 0) return out;
  for (const auto& [w, c] : a.terms()) {
    int len = static_cast<int>(w.size());
    if (len >= lmin && len <= lmax) out.set_term(w, c);
  }
  return out;
}

inline HeckeElement project_degree(int l, const HeckeElement& a) {
  return project_range(l, l, a);
}

// Product followed by projection onto degrees [lmin, lmax], computed with
// reachability pruning: multiplying by one more generator changes word length
// by at most one, so a partial term at length r with k letters still pending
// can only land in [r-k, r+k].  Equal to project_range(lmin, lmax, mul(a,b)).
inline HeckeElement mul_project(int L, const HeckeElement& a, const HeckeElement& b,
                                int lmin, int lmax) {
  check_num_factors(L);
  HeckeElement out;
  if (lmax < 0) return out;
  for (const auto& [w, cw] : a.terms()) {
    const int k = static_cast<int>(w.size());
    for (const auto& [v, cv] : b.terms()) {
      const int r = static_cast<int>(v.size());
      if (r + k < lmin || r - k > lmax) continue;
      HeckeElement cur;
      cur.set_term(v, poly_one());
      for (int i = k; i-- > 0;) {
        const int remaining = i;  // letters of w still to apply after this one
        HeckeElement next;
        for (const auto& [u, cu] : cur.terms())
          detail::gen_left_term(w[i], u, cu, next);
        HeckeElement pruned;
        for (const auto& [u, cu] : next.terms()) {
          const int len = static_cast<int>(u.size());
          if (len + remaining < lmin || len - remaining > lmax) continue;
          pruned.set_term(u, cu);
        }
        cur = std::move(pruned);
        if (cur.is_zero()) break;
      }
      cur = project_range(lmin, lmax, cur);
      cur.scale(cw * cv);
      out += cur;
    }
  }
  return out;
}

// Adjoint: coefficients are real polynomials in p, so star only inverts words.
inline HeckeElement star(const HeckeElement& a) {
  HeckeElement out;
  for (const auto& [w, c] : a.terms()) out.set_term(inverse(w), c);
  return out;
}

inline PolyP trace(const HeckeElement& a) { return a.coeff(Word{}); }

// <a,b> = tau(b* a); the T-basis is orthonormal, so this is the coefficient
// dot product.
inline PolyP inner_poly(const HeckeElement& a, const HeckeElement& b) {
  const auto& s = a.support_size() <= b.support_size() ? a : b;
  const auto& t = a.support_size() <= b.support_size() ? b : a;
  PolyP acc;
  for (const auto& [w, c] : s.terms()) {
    PolyP d = t.coeff(w);
    if (!d.is_zero()) acc += c * d;
  }
  return acc;
}

inline Rational inner_at(const HeckeElement& a, const HeckeElement& b, const Rational& p) {
  return inner_poly(a, b).eval(p);
}

inline Rational norm2_at(const HeckeElement& a, const Rational& p) {
  return inner_at(a, a, p);
}

// Evaluate all coefficients at a concrete p.
inline std::map<Word, Rational, LenLexLess> evaluate(const HeckeElement& a,
                                                     const Rational& p) {
  std::map<Word, Rational, LenLexLess> out;
  for (const auto& [w, c] : a.terms()) {
    Rational v = c.eval(p);
    if (v != 0) out[w] = v;
  }
  return out;
}

}  // namespace qmasa
