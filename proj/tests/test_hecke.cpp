#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qmasa/hecke.hpp"
#include "qmasa/radial.hpp"

using namespace qmasa;

namespace {

// Random element supported on ball(radius) with small integer coefficients.
HeckeElement random_element(int L, int radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  HeckeElement out;
  for (const Word& w : ball(L, radius)) {
    long c = static_cast<long>(rng() % 7) - 3;
    if (c != 0) out.add_term(w, PolyP(Rational(c)));
  }
  if (out.is_zero()) out = HeckeElement::unit();
  return out;
}

}  // namespace

TEST_CASE("generators satisfy the quadratic relation T_s^2 = 1 + p T_s") {
  for (int L : {3, 4})
    for (int s = 0; s < L; ++s) {
      HeckeElement ts = HeckeElement::basis(Word{static_cast<Letter>(s)});
      HeckeElement expected = HeckeElement::unit();
      HeckeElement lin = ts;
      lin.scale(poly_p());
      expected += lin;
      REQUIRE(mul(L, ts, ts) == expected);
    }
}

TEST_CASE("basis products at p = 0 reduce to the group multiplication") {
  const int L = 3;
  for (const Word& u : ball(L, 2))
    for (const Word& v : ball(L, 2)) {
      auto prod = evaluate(mul(L, HeckeElement::basis(u), HeckeElement::basis(v)),
                           Rational(0));
      REQUIRE(prod.size() == 1);
      REQUIRE(prod.begin()->first == multiply(u, v));
      REQUIRE(prod.begin()->second == 1);
    }
}

TEST_CASE("square of the radial generator") {
  // h^2 = h_2 + p h + L h_0, exactly as polynomials in p.
  for (int L : {3, 4, 5}) {
    HeckeElement h = radial_generator(L);
    HeckeElement rhs = radial_sphere(L, 2);
    HeckeElement mid = h;
    mid.scale(poly_p());
    rhs += mid;
    HeckeElement id = HeckeElement::unit();
    id.scale(rat(L));
    rhs += id;
    REQUIRE(mul(L, h, h) == rhs);
  }
}

TEST_CASE("multiplication is associative on seeded elements") {
  const int L = 3;
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    HeckeElement a = random_element(L, 2, seed);
    HeckeElement b = random_element(L, 2, seed + 100);
    HeckeElement c = random_element(L, 2, seed + 200);
    REQUIRE(mul(L, mul(L, a, b), c) == mul(L, a, mul(L, b, c)));
  }
}

TEST_CASE("star is an antihomomorphism and an involution") {
  const int L = 3;
  for (std::uint64_t seed : {21u, 22u}) {
    HeckeElement a = random_element(L, 2, seed);
    HeckeElement b = random_element(L, 2, seed + 50);
    REQUIRE(star(star(a)) == a);
    REQUIRE(star(mul(L, a, b)) == mul(L, star(b), star(a)));
  }
}

TEST_CASE("trace is the unit coefficient and commutes") {
  const int L = 3;
  for (std::uint64_t seed : {31u, 32u, 33u}) {
    HeckeElement a = random_element(L, 2, seed);
    HeckeElement b = random_element(L, 2, seed + 50);
    REQUIRE(trace(mul(L, a, b)) == trace(mul(L, b, a)));
  }
  REQUIRE(trace(HeckeElement::unit()) == poly_one());
  REQUIRE(trace(radial_generator(L)).is_zero());
}

TEST_CASE("the T basis is orthonormal for the trace inner product") {
  const int L = 3;
  auto words = ball(L, 2);
  for (const Word& u : words)
    for (const Word& w : words) {
      PolyP ip = inner_poly(HeckeElement::basis(u), HeckeElement::basis(w));
      if (u == w)
        REQUIRE(ip == poly_one());
      else
        REQUIRE(ip.is_zero());
    }
}

TEST_CASE("trace positivity on seeded elements") {
  const int L = 3;
  for (std::uint64_t seed : {41u, 42u, 43u}) {
    HeckeElement a = random_element(L, 2, seed);
    for (const Rational& p : {Rational(0), rat(-1, 2), rat(1, 3)}) {
      // tau(a* a) = <a,a> must be strictly positive for a != 0.
      REQUIRE(inner_at(a, a, p) > 0);
      REQUIRE(trace(mul(L, star(a), a)).eval(p) == inner_at(a, a, p));
    }
  }
}

TEST_CASE("windowed product agrees with multiply-then-project") {
  const int L = 3;
  for (std::uint64_t seed : {51u, 52u}) {
    HeckeElement a = random_element(L, 2, seed);
    HeckeElement b = random_element(L, 2, seed + 50);
    HeckeElement full = mul(L, a, b);
    for (auto [lo, hi] : {std::pair{0, 0}, {1, 2}, {4, 4}, {0, 4}, {3, 9}})
      REQUIRE(mul_project(L, a, b, lo, hi) == project_range(lo, hi, full));
  }
}

TEST_CASE("word multiplication engines agree with the generic product") {
  const int L = 3;
  HeckeElement a = random_element(L, 2, 61);
  for (const Word& w : ball(L, 3)) {
    REQUIRE(word_mul_left(L, w, a) == mul(L, HeckeElement::basis(w), a));
    REQUIRE(word_mul_right(L, a, w) == mul(L, a, HeckeElement::basis(w)));
  }
}

TEST_CASE("degree bookkeeping") {
  const int L = 3;
  HeckeElement h2 = radial_sphere(L, 2);
  int deg = -1;
  REQUIRE(h2.is_homogeneous(&deg));
  REQUIRE(deg == 2);
  REQUIRE(h2.top_degree() == 2);
  REQUIRE(h2.bottom_degree() == 2);
  HeckeElement mixed = h2 + HeckeElement::unit();
  REQUIRE_FALSE(mixed.is_homogeneous());
  REQUIRE(mixed.top_degree() == 2);
  REQUIRE(mixed.bottom_degree() == 0);
  REQUIRE(project_degree(2, mixed) == h2);
  REQUIRE(project_degree(1, mixed).is_zero());
}
