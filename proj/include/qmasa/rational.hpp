#pragma once

#include <gmpxx.h>

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace qmasa {

// Exact rational scalar used throughout the library.  All algebraic
// identities are checked with these; doubles only appear in quadrature,
// eigenvalue computations and report output.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Canonical text form: "num/den", or plain "num" when den == 1.
inline std::string rat_str(const Rational& r) { return r.get_str(); }

inline double rat_double(const Rational& r) { return r.get_d(); }

// Accepts "num", "num/den", or a plain decimal such as "-0.25".
inline Rational rat_parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto dot = s.find('.');
  if (dot == std::string::npos) {
    Rational r;
    if (r.set_str(s, 10) != 0)
      throw std::invalid_argument("bad rational literal: " + s);
    if (r.get_den() == 0)
      throw std::invalid_argument("rational with zero denominator: " + s);
    r.canonicalize();
    return r;
  }
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  std::size_t frac_len = s.size() - dot - 1;
  if (frac_len == 0 || digits.empty())
    throw std::invalid_argument("bad decimal literal: " + s);
  mpz_class num;
  if (num.set_str(digits, 10) != 0)
    throw std::invalid_argument("bad decimal literal: " + s);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace qmasa
