#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qmasa/pukanszky.hpp"

using namespace qmasa;

namespace {

PolyP coeff_at(const CoeffTable& t, int k, int j) {
  auto it = t.find({k, j});
  return it == t.end() ? PolyP() : it->second;
}

}  // namespace

TEST_CASE("defect spaces have the expected ranks") {
  struct Expect {
    int L, l, dim, rank;
  };
  for (const Expect& e :
       {Expect{3, 1, 3, 1}, Expect{3, 2, 6, 5}, Expect{3, 3, 12, 9},
        Expect{4, 1, 4, 1}, Expect{4, 2, 12, 7}, Expect{4, 3, 36, 20}}) {
    DefectSpace ds = defect_space(e.L, e.l);
    REQUIRE(ds.sphere_dim == e.dim);
    REQUIRE(ds.rank == e.rank);
    REQUIRE(static_cast<int>(ds.complement.size()) == e.dim - e.rank);
  }
}

TEST_CASE("complement samples are orthogonal to the defect space") {
  for (int L : {3, 4})
    for (int l : {1, 2}) {
      HeckeElement g = complement_sample(L, l, 4242);
      int deg = -1;
      REQUIRE(g.is_homogeneous(&deg));
      REQUIRE(deg == l);
      HeckeElement h1 = radial_generator(L);
      for (const Word& x : sphere(L, l - 1)) {
        HeckeElement bx = HeckeElement::basis(x);
        REQUIRE(inner_poly(g, mul_project(L, h1, bx, l, l)).is_zero());
        REQUIRE(inner_poly(g, mul_project(L, bx, h1, l, l)).is_zero());
      }
    }
}

TEST_CASE("top-degree product engines agree with the generic product") {
  const int L = 3;
  for (int l : {1, 2}) {
    HeckeElement g = sphere_sample(L, l, 909);
    for (int m = 0; m <= 2; ++m)
      for (int n = 0; n <= 2; ++n) {
        HeckeElement full =
            mul(L, mul(L, radial_sphere(L, m), g), radial_sphere(L, n));
        REQUIRE(orbit_mn(L, g, m, n) == project_degree(l + m + n, full));
      }
  }
  // Shrink engines recover the full-cancellation component: every word has
  // L-1 reduced right extensions, so shrinking the extension gives (L-1) g.
  HeckeElement g = sphere_sample(L, 2, 910);
  HeckeElement expected = g;
  expected.scale(rat(L - 1));
  REQUIRE(shrink_right_sphere(orbit_mn(L, g, 0, 1), 1) == expected);
  REQUIRE(shrink_left_sphere(1, orbit_mn(L, g, 1, 0)) == expected);
  REQUIRE_THROWS_AS(shrink_right_sphere(g + HeckeElement::unit(), 1),
                    std::invalid_argument);
}

TEST_CASE("commutation relations hold exactly on the test window") {
  for (int L : {3, 4})
    for (std::uint64_t seed : {1u, 2u}) {
      // Raise relation for m >= 1 needs no orthogonality.
      OrbitTable plain(L, sphere_sample(L, 2, seed));
      for (int m = 1; m <= 2; ++m)
        for (int n = 0; n <= 2; ++n)
          REQUIRE(relation_raise_residual(plain, m, n).is_zero());

      // At m = 0 it needs a seed orthogonal to the defect space.
      OrbitTable ortho(L, complement_sample(L, 2, seed));
      for (int n = 0; n <= 2; ++n)
        REQUIRE(relation_raise_residual(ortho, 0, n).is_zero());

      // Level-1 variant carries the boundary correction.
      OrbitTable level1(L, complement_sample(L, 1, seed));
      for (int n = 0; n <= 3; ++n)
        REQUIRE(relation_level1_residual(level1, n).is_zero());

      HeckeElement g = sphere_sample(L, 2, seed + 7);
      for (int m = 0; m <= 2; ++m)
        for (int n = 0; n <= 2; ++n)
          REQUIRE(relation_top_swap_residual(L, g, 2, m, n).is_zero());
      REQUIRE(relation_bottom_swap_residual(L, g, 2, 1, 1).is_zero());
      REQUIRE(relation_bottom_swap_residual(L, g, 2, 2, 0).is_zero());
      REQUIRE_THROWS_AS(relation_bottom_swap_residual(L, g, 2, 2, 1),
                        std::invalid_argument);

      for (int l : {1, 2, 3})
        REQUIRE(
            relation_round_trip_residual(L, sphere_sample(L, l, seed + 9), l)
                .is_zero());

      HeckeElement b = complement_sample(L, 1, seed + 11);
      for (int n = 1; n <= 3; ++n)
        REQUIRE(relation_reflect_residual(L, b, n).is_zero());

      for (int m = 1; m <= 2; ++m)
        for (int n = 1; n <= 2; ++n)
          REQUIRE(relation_collapse_residual(ortho, m, n).is_zero());
    }
}

TEST_CASE("gram structure of the level-one orbit family") {
  const int L = 3;
  OrbitTable b1(L, complement_sample(L, 1, 31));
  OrbitTable b2(L, complement_sample(L, 1, 32));
  const Rational base = inner_poly(b1.seed(), b2.seed()).constant_term();
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; m + n <= 3; ++n)
      for (int mp = 0; mp <= 3; ++mp)
        for (int np = 0; mp + np <= 3; ++np) {
          PolyP ip = orbit_inner(b1, m, n, b2, mp, np);
          REQUIRE(ip.is_constant());  // p-free
          REQUIRE(ip.constant_term() ==
                  level1_gram_prediction(L, m, n, mp, np, base));
        }
}

TEST_CASE("gram structure of a higher-level orbit family") {
  const int L = 3;
  OrbitTable g1(L, complement_sample(L, 2, 33));
  OrbitTable g2(L, sphere_sample(L, 2, 34));
  const Rational base = inner_poly(g1.seed(), g2.seed()).constant_term();
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; m + n <= 3; ++n)
      for (int mp = 0; mp <= 3; ++mp)
        for (int np = 0; mp + np <= 3; ++np) {
          PolyP ip = orbit_inner(g1, m, n, g2, mp, np);
          REQUIRE(ip.is_constant());
          REQUIRE(ip.constant_term() ==
                  level_l_gram_prediction(L, m, n, mp, np, base));
        }
}

TEST_CASE("gram prediction sign pattern") {
  // Same total degree, different splits: sign alternates with |n - n'|.
  REQUIRE(level1_gram_prediction(3, 1, 0, 0, 1, Rational(1)) == -1);
  REQUIRE(level1_gram_prediction(3, 2, 0, 0, 2, Rational(1)) == 1);
  REQUIRE(level1_gram_prediction(3, 1, 1, 1, 1, Rational(1)) == 4);
  REQUIRE(level1_gram_prediction(3, 1, 0, 1, 1, Rational(1)) == 0);
  REQUIRE(level_l_gram_prediction(3, 2, 1, 2, 1, Rational(1)) == 8);
  REQUIRE(level_l_gram_prediction(3, 1, 0, 0, 1, Rational(1)) == 0);
}

TEST_CASE("orbit expansion solves, reconstructs, and matches the recursion") {
  const int L = 3;
  OrbitTable b(L, complement_sample(L, 1, 41));
  OrbitTable g(L, complement_sample(L, 2, 42));
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) {
      ExpansionResult eb = expand_product(b, m, n);
      REQUIRE(eb.reconstructs);
      REQUIRE(eb.coeffs == expansion_recursion(L, m, n, true));
      ExpansionResult eg = expand_product(g, m, n);
      REQUIRE(eg.reconstructs);
      REQUIRE(eg.coeffs == expansion_recursion(L, m, n, false));
    }
}

TEST_CASE("level-one and higher tables are linked shell by shell") {
  const int L = 3;
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n) {
      CoeffTable bb = expansion_recursion(L, m, n, true);
      CoeffTable cc = expansion_recursion(L, m, n, false);
      for (int k = 0; k <= m; ++k)
        for (int j = 0; j <= n; ++j)
          REQUIRE(coeff_at(cc, k, j) ==
                  coeff_at(bb, k, j) + coeff_at(bb, k + 1, j + 1));
      // Out-of-window corner vanishes, so the link closes at (m, n) with a
      // leading coefficient of one on both sides.
      REQUIRE(coeff_at(bb, m + 1, n + 1).is_zero());
      REQUIRE(coeff_at(bb, m, n) == poly_one());
      REQUIRE(coeff_at(cc, m, n) == poly_one());
    }
}

TEST_CASE("known level-one table entries") {
  const int L = 3;
  // b h = b_{0,1} + p b.
  CoeffTable t01 = expansion_recursion(L, 0, 1, true);
  REQUIRE(coeff_at(t01, 0, 1) == poly_one());
  REQUIRE(coeff_at(t01, 0, 0) == poly_p());
  // h b h = b_{1,1} + p b_{0,1} + p b_{1,0} + (p^2 - 1) b.
  CoeffTable t11 = expansion_recursion(L, 1, 1, true);
  REQUIRE(coeff_at(t11, 1, 1) == poly_one());
  REQUIRE(coeff_at(t11, 0, 1) == poly_p());
  REQUIRE(coeff_at(t11, 1, 0) == poly_p());
  REQUIRE(coeff_at(t11, 0, 0) == poly_p() * poly_p() - poly_one());
}

TEST_CASE("intertwiner between orbit families") {
  const int L = 3;
  IntertwinerReport rep = intertwiner_check(L, 2, 12376, 12377, 5, 3);
  REQUIRE(rep.exact);
  REQUIRE(rep.sigma_min.size() == 5);
  REQUIRE(rep.shift_norm == Catch::Approx(0.5));
  REQUIRE(rep.floor_strict == Catch::Approx(0.2886751346));
  REQUIRE(rep.floor_quadratic == Catch::Approx(0.4330127019));
  const double frozen[5] = {1.85996221990, 1.57873258861, 1.38619226146,
                            1.24927828635, 1.14839846050};
  for (int i = 0; i < 5; ++i) {
    REQUIRE(rep.sigma_min[i] == Catch::Approx(frozen[i]).epsilon(1e-8));
    REQUIRE(rep.sigma_min[i] > rep.floor_quadratic);
    if (i > 0) REQUIRE(rep.sigma_min[i] < rep.sigma_min[i - 1]);
  }
  REQUIRE_THROWS_AS(intertwiner_check(L, 1, 1, 2, 2, 1), std::invalid_argument);
}

TEST_CASE("toeplitz eigenvalue bracket") {
  for (double a : {0.5, -0.5})
    for (int k : {2, 4, 8, 16, 32}) {
      ToeplitzBounds tb = toeplitz_bounds(a, k);
      REQUIRE(tb.lower == Catch::Approx(1.0 / 3.0));
      REQUIRE(tb.upper == Catch::Approx(3.0));
      REQUIRE(tb.eig_min > tb.lower);
      REQUIRE(tb.eig_max < tb.upper);
    }
  ToeplitzBounds tight = toeplitz_bounds(0.5, 32);
  REQUIRE(tight.eig_min - tight.lower ==
          Catch::Approx(0.000700210144416).epsilon(1e-6));
  ToeplitzBounds id = toeplitz_bounds(0.0, 5);
  REQUIRE(id.eig_min == Catch::Approx(1.0));
  REQUIRE(id.eig_max == Catch::Approx(1.0));
  REQUIRE_THROWS_AS(toeplitz_bounds(1.0, 4), std::invalid_argument);
}

TEST_CASE("orbits of different levels are orthogonal") {
  for (int L : {3, 4}) {
    CrossLevelReport rep = cross_level_check(L, 1, 2, 51, 52, 3);
    REQUIRE(rep.all_zero);
    REQUIRE(rep.rewrite_consistent);
    REQUIRE(rep.seed_pairing_zero);
    REQUIRE(rep.pairs_checked > 0);
  }
  REQUIRE_THROWS_AS(cross_level_check(3, 2, 2, 1, 2, 2), std::invalid_argument);
}

TEST_CASE("radial and orbit vectors exhaust each degree space") {
  for (int D = 1; D <= 4; ++D) {
    ExhaustionReport rep = span_exhaustion(3, D);
    REQUIRE(rep.dim == static_cast<int>(sphere_count(3, D)));
    REQUIRE(rep.rank == rep.dim);
  }
  REQUIRE(span_exhaustion(3, 1).dim == 3);
  REQUIRE(span_exhaustion(3, 4).dim == 24);
}
