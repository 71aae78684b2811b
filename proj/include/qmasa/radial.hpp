#pragma once

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <vector>

#include "qmasa/hecke.hpp"

namespace qmasa {

// Characteristic function of the length-n sphere: h_n = sum_{|w|=n} T_w.
// h_0 is the unit, h := h_1 generates the radial subalgebra together with it.
inline HeckeElement radial_sphere(int L, int n) {
  check_num_factors(L);
  HeckeElement out;
  for (const Word& w : sphere(L, n)) out.set_term(w, poly_one());
  return out;
}

inline HeckeElement radial_generator(int L) { return radial_sphere(L, 1); }

// h * a as a single pass of generator actions.
inline HeckeElement radial_mul(int L, const HeckeElement& a) {
  check_num_factors(L);
  HeckeElement out;
  for (int s = 0; s < L; ++s)
    for (const auto& [w, c] : a.terms()) detail::gen_left_term(s, w, c, out);
  return out;
}

// Residual of the three-term recurrence satisfied by the sphere sums:
//   h h_n = h_{n+1} + (L-1) h_{n-1} + p h_n   (n >= 2)
//   h h_1 = h_2 + L h_0 + p h_1               (n = 1)
//   h h_0 = h_1                               (n = 0)
// The residual is identically zero; returning it keeps the check honest.
inline HeckeElement recurrence_residual(int L, int n) {
  HeckeElement lhs = radial_mul(L, radial_sphere(L, n));
  HeckeElement rhs;
  if (n == 0) {
    rhs = radial_sphere(L, 1);
  } else if (n == 1) {
    rhs = radial_sphere(L, 2);
    HeckeElement id = HeckeElement::unit();
    id.scale(rat(L));
    rhs += id;
    HeckeElement mid = radial_sphere(L, 1);
    mid.scale(poly_p());
    rhs += mid;
  } else {
    rhs = radial_sphere(L, n + 1);
    HeckeElement down = radial_sphere(L, n - 1);
    down.scale(rat(L - 1));
    rhs += down;
    HeckeElement mid = radial_sphere(L, n);
    mid.scale(poly_p());
    rhs += mid;
  }
  return lhs - rhs;
}

// Polynomial in x (coefficients are polynomials in p) expressing h_n as
// P_n(h).  From the recurrence:
//   P_0 = 1, P_1 = x, P_2 = x^2 - p x - L,
//   P_{n+1} = (x - p) P_n - (L-1) P_{n-1}   (n >= 2).
using XPoly = std::vector<PolyP>;  // index = power of x

inline XPoly sphere_polynomial(int L, int n) {
  check_num_factors(L);
  if (n < 0) return {};
  std::vector<XPoly> P(std::max(3, n + 1));
  P[0] = {poly_one()};
  P[1] = {PolyP(), poly_one()};
  P[2] = {PolyP(rat(-L)), -poly_p(), poly_one()};
  for (int m = 3; m <= n; ++m) {
    XPoly next(m + 1);
    for (int i = 0; i <= m - 1; ++i) {
      next[i + 1] += P[m - 1][i];                    // x * P_{m-1}
      next[i] -= poly_p() * P[m - 1][i];             // -p * P_{m-1}
    }
    for (int i = 0; i <= m - 2; ++i) next[i] -= PolyP(rat(L - 1)) * P[m - 2][i];
    P[m] = std::move(next);
  }
  return P[n];
}

inline HeckeElement eval_xpoly(int L, const XPoly& coeffs) {
  HeckeElement acc;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = radial_mul(L, acc);
    HeckeElement c = HeckeElement::unit();
    c.scale(*it);
    acc += c;
  }
  return acc;
}

// tau(h^n) as an exact polynomial in p, by multiplying out the power.
inline PolyP moment_poly(int L, int n) {
  HeckeElement a = HeckeElement::unit();
  for (int i = 0; i < n; ++i) a = radial_mul(L, a);
  return trace(a);
}

// Independent check on the moments: tau(h^n) counts weighted closed walks on
// the word-length ladder.  A word of length r gains a letter (coefficient
// carried from its unique parent), loses its first letter (one contribution
// from each of its children: L at the root, L-1 elsewhere), or stays with
// weight p (only at r >= 1).
inline Rational moment_walk(int L, int n, const Rational& p) {
  check_num_factors(L);
  std::vector<Rational> u(n + 2, Rational(0));
  u[0] = 1;
  for (int step = 0; step < n; ++step) {
    std::vector<Rational> v(n + 2, Rational(0));
    for (int r = 0; r <= n; ++r) {
      if (u[r] == 0) continue;
      if (r + 1 <= n + 1) v[r + 1] += u[r];
      if (r >= 1) {
        v[r - 1] += u[r] * (r - 1 == 0 ? L : L - 1);
        v[r] += u[r] * p;
      }
    }
    u = std::move(v);
  }
  return u[0];
}

// Spectral density of h with respect to the trace.  Writing Lt = L-1 and
// y = x - p, the candidate density on [p - 2 sqrt(Lt), p + 2 sqrt(Lt)] is
//   rho(x) = Lt sqrt(4 Lt - y^2) / (pi * B(x)),
//   B(x)   = -y^2 - p(2-L) y + p^2 (L-1) + L^2  =  -x^2 + L p x + L^2.
// B is concave, so B > 0 on the whole support iff B > 0 at both endpoints;
// when that fails the formula is not a probability density (flagged, never
// silently integrated through).
struct DensityReport {
  bool anomaly = false;          // denominator lost positivity inside support
  double support_lo = 0, support_hi = 0;
  double normalization = 0;      // integral of the unnormalized formula
  std::vector<double> moments;   // normalized moments m_0..m_nmax
};

inline double density_bracket(int L, double p, double x) {
  return -x * x + L * p * x + double(L) * L;
}

inline double density_unnormalized(int L, double p, double x) {
  const double Lt = L - 1;
  const double y = x - p;
  const double rad = 4.0 * Lt - y * y;
  if (rad <= 0) return 0.0;
  const double B = density_bracket(L, p, x);
  if (B <= 0) return 0.0;  // callers detect this case via the endpoint test
  return Lt * std::sqrt(rad) / (M_PI * B);
}

inline DensityReport density_report(int L, const Rational& p, int nmax,
                                    double tol = 1e-12) {
  check_num_factors(L);
  DensityReport rep;
  const double pd = rat_double(p);
  const double half_width = 2.0 * std::sqrt(double(L - 1));
  rep.support_lo = pd - half_width;
  rep.support_hi = pd + half_width;
  if (density_bracket(L, pd, rep.support_lo) <= 0 ||
      density_bracket(L, pd, rep.support_hi) <= 0) {
    rep.anomaly = true;
    return rep;
  }
  boost::math::quadrature::tanh_sinh<double> integ;
  auto raw = [&](int n) {
    return integ.integrate(
        [&](double x) { return std::pow(x, n) * density_unnormalized(L, pd, x); },
        rep.support_lo, rep.support_hi, tol);
  };
  rep.normalization = raw(0);
  rep.moments.resize(nmax + 1);
  for (int n = 0; n <= nmax; ++n) rep.moments[n] = raw(n) / rep.normalization;
  return rep;
}

// Conditional expectation onto the radial subalgebra: average coefficients
// over each sphere.
inline HeckeElement radial_project(int L, const HeckeElement& a) {
  check_num_factors(L);
  HeckeElement out;
  if (a.is_zero()) return out;
  const int top = a.top_degree();
  for (int n = 0; n <= top; ++n) {
    PolyP total;
    for (const auto& [w, c] : a.terms())
      if (static_cast<int>(w.size()) == n) total += c;
    if (total.is_zero()) continue;
    Rational inv_count(1);
    inv_count /= Rational(static_cast<long>(sphere_count(L, n)));
    total.scale(inv_count);
    for (const Word& w : sphere(L, n)) out.set_term(w, total);
  }
  return out;
}

}  // namespace qmasa
