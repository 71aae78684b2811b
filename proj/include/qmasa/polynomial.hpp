#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmasa/rational.hpp"

namespace qmasa {

// Univariate polynomial in the deformation parameter p, dense coefficient
// vector, always trimmed.  degree() of the zero polynomial is -1.
class PolyP {
 public:
  PolyP() = default;
  explicit PolyP(const Rational& constant) {
    if (constant != 0) c_.push_back(constant);
  }
  PolyP(long num, long den) : PolyP(rat(num, den)) {}

  static PolyP variable() {
    PolyP p;
    p.c_ = {Rational(0), Rational(1)};
    return p;
  }
  static PolyP constant(const Rational& r) { return PolyP(r); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }

  Rational coeff(int d) const {
    if (d < 0 || d >= static_cast<int>(c_.size())) return Rational(0);
    return c_[d];
  }

  Rational constant_term() const { return coeff(0); }

  void set_coeff(int d, const Rational& v) {
    if (d < 0) throw std::invalid_argument("negative degree");
    if (d >= static_cast<int>(c_.size())) {
      if (v == 0) return;
      c_.resize(d + 1, Rational(0));
    }
    c_[d] = v;
    trim();
  }

  PolyP& operator+=(const PolyP& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  PolyP& operator-=(const PolyP& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend PolyP operator+(PolyP a, const PolyP& b) { return a += b; }
  friend PolyP operator-(PolyP a, const PolyP& b) { return a -= b; }
  PolyP operator-() const {
    PolyP r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }

  friend PolyP operator*(const PolyP& a, const PolyP& b) {
    PolyP r;
    if (a.is_zero() || b.is_zero()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
  }
  PolyP& operator*=(const PolyP& o) { return *this = *this * o; }

  PolyP& scale(const Rational& s) {
    if (s == 0) {
      c_.clear();
      return *this;
    }
    for (auto& c : c_) c *= s;
    return *this;
  }
  friend PolyP operator*(PolyP a, const Rational& s) { return a.scale(s); }
  friend PolyP operator*(const Rational& s, PolyP a) { return a.scale(s); }

  friend bool operator==(const PolyP& a, const PolyP& b) { return a.c_ == b.c_; }
  friend bool operator!=(const PolyP& a, const PolyP& b) { return !(a == b); }

  Rational eval(const Rational& p) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * p + *it;
    return acc;
  }

  // Nonzero coefficients keyed by degree; used by the JSON writer.
  std::map<int, Rational> coefficients() const {
    std::map<int, Rational> m;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) m[static_cast<int>(i)] = c_[i];
    return m;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    for (int d = degree(); d >= 0; --d) {
      if (c_[d] == 0) continue;
      if (!out.empty()) out += " + ";
      out += rat_str(c_[d]);
      if (d >= 1) out += "*p";
      if (d >= 2) out += "^" + std::to_string(d);
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline PolyP poly_one() { return PolyP(Rational(1)); }
inline PolyP poly_p() { return PolyP::variable(); }

}  // namespace qmasa
