#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qmasa/masa_probe.hpp"

using namespace qmasa;

TEST_CASE("adjacent pair construction validates the configuration") {
  REQUIRE_NOTHROW(AdjacentPair(3, Word{1}, 0, 0));
  REQUIRE_NOTHROW(AdjacentPair(3, Word{}, 0, 1));
  // a.z or z.b not reduced, or the degenerate w == v case.
  REQUIRE_THROWS_AS(AdjacentPair(3, Word{0}, 0, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(AdjacentPair(3, Word{1}, 0, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(AdjacentPair(3, Word{}, 2, 2), std::invalid_argument);
  REQUIRE_THROWS_AS(AdjacentPair(3, Word{0, 0, 1}, 1, 0), std::invalid_argument);
  AdjacentPair pr(3, Word{1, 2}, 0, 0);
  REQUIRE(pr.w() == Word{0, 1, 2});
  REQUIRE(pr.v() == Word{1, 2, 0});
}

TEST_CASE("correction layers have the predicted support") {
  for (int L : {3, 4}) {
    AdjacentPair pr(L, Word{1}, 0, 0);
    const Word w = pr.w(), v = pr.v();
    for (int k = 0; k <= 3; ++k) {
      auto words = psi_k_words(pr, k);
      REQUIRE(words.size() == psi_k_count(L, k));
      for (const Word& u : words) {
        REQUIRE(is_reduced(u));
        REQUIRE(static_cast<int>(u.size()) == static_cast<int>(w.size()) + 1 + 2 * k);
        // Every layer word contains the junction block a.z.b in the middle.
        Word mid(u.begin() + k, u.end() - k);
        Word core = w;
        core.push_back(pr.b);
        REQUIRE(mid == core);
      }
    }
  }
}

TEST_CASE("explicit intertwining defect matches the closed form") {
  // The defect || (e_v - e_w) - [h, eta] ||^2 is independent of the
  // deformation parameter; the closed form depends only on L, delta, K.
  for (const AdjacentPair& pr :
       {AdjacentPair(3, Word{1}, 0, 0), AdjacentPair(3, Word{}, 0, 1),
        AdjacentPair(4, Word{1, 2}, 0, 3)}) {
    for (const Rational& delta : {rat(2, 5), rat(1, 10)})
      for (int K = 0; K <= 2; ++K) {
        Rational closed = commutator_residual2_closed(pr.L, delta, K);
        for (const Rational& p : {Rational(0), rat(-1, 2), rat(1, 3)})
          REQUIRE(intertwining_residual2(pr, delta, K, p) == closed);
      }
  }
}

TEST_CASE("closed-form residual limit") {
  // As K grows the residual^2 tends to 2(L-1) delta^2 / (1 - (1-delta)^2),
  // i.e. 4 delta / (2 - delta) at L = 3; at delta = 2/5 the limit is 1.
  Rational r2 = commutator_residual2_closed(3, rat(2, 5), 400);
  REQUIRE(std::abs(rat_double(r2) - 1.0) < 1e-12);
}

TEST_CASE("truncation depths at the published tolerance") {
  const double tol = 1e-8;
  REQUIRE(truncation_depth(rat(2, 5), tol) == 19);
  REQUIRE(truncation_depth(rat(1, 5), tol) == 46);
  REQUIRE(truncation_depth(rat(1, 10), tol) == 101);
  REQUIRE(truncation_depth(rat(1, 20), tol) == 215);
  REQUIRE_NOTHROW(check_truncation_depth(rat(1, 10), tol, 101));
  REQUIRE_THROWS_AS(check_truncation_depth(rat(1, 10), tol, 100),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(truncation_depth(rat(3, 2), tol), std::invalid_argument);
  REQUIRE_THROWS_AS(truncation_depth(rat(1, 10), -1.0), std::invalid_argument);
}

TEST_CASE("residuals decrease with delta and scale like sqrt(delta)") {
  const int L = 3;
  const double tol = 1e-8;
  double prev = 2.0;
  for (const Rational& d : {rat(2, 5), rat(1, 5), rat(1, 10), rat(1, 20)}) {
    int K = truncation_depth(d, tol);
    double r = std::sqrt(rat_double(commutator_residual2_closed(L, d, K)));
    REQUIRE(r < prev);
    prev = r;
  }
  // Frozen value for the delta = 1/10 point.
  double r10 = std::sqrt(rat_double(
      commutator_residual2_closed(L, rat(1, 10), truncation_depth(rat(1, 10), tol))));
  REQUIRE(r10 == Catch::Approx(0.458831470101).epsilon(1e-9));
}

TEST_CASE("adjacency chains connect words link by link") {
  const int L = 3;
  // Direct interpolation: last letter of w differs from first letter of v.
  {
    const Word v = word_parse("0,1,0", L), w = word_parse("2,1,2", L);
    AdjacencyChain chain = adjacency_chain(L, v, w);
    REQUIRE(chain.orientation == +1);
    REQUIRE(chain.words.front() == w);
    REQUIRE(chain.words.back() == v);
    REQUIRE(chain.words.size() == 4);
  }
  // Buffered interpolation when the junction letter collides.
  {
    const Word v = word_parse("0,1", L), w = word_parse("1,0", L);
    AdjacencyChain chain = adjacency_chain(L, v, w);
    REQUIRE(chain.orientation == -1);
    REQUIRE(chain.words.front() == v);
    REQUIRE(chain.words.back() == w);
  }
  // In both cases consecutive words form honest adjacent pairs: equal
  // length, and the tail of one is the head of the next.
  for (auto [vs, ws] : {std::pair{"0,1,0", "2,1,2"}, {"0,1", "1,0"},
                        {"0,1,2", "2,1,0"}}) {
    AdjacencyChain chain = adjacency_chain(L, word_parse(vs, L), word_parse(ws, L));
    for (std::size_t i = 0; i + 1 < chain.words.size(); ++i) {
      const Word& a = chain.words[i];
      const Word& b = chain.words[i + 1];
      REQUIRE(a.size() == b.size());
      REQUIRE(is_reduced(a));
      Word az(a.begin() + 1, a.end());
      Word bz(b.begin(), b.end() - 1);
      bool fwd = (az == bz);
      Word bz2(b.begin() + 1, b.end());
      Word az2(a.begin(), a.end() - 1);
      REQUIRE((fwd || bz2 == az2));
    }
  }
  REQUIRE_THROWS_AS(adjacency_chain(L, Word{0}, Word{0, 1, 0}),
                    std::invalid_argument);
}

TEST_CASE("chain residual budget is additive over the links") {
  const int L = 3;
  ChainResidual cr = chain_residual(L, word_parse("0,1,0", L),
                                    word_parse("2,1,2", L), rat(1, 10), 1e-8);
  REQUIRE(cr.links == 3);
  REQUIRE(cr.K == 101);
  REQUIRE(cr.per_link == Catch::Approx(0.458831470101).epsilon(1e-9));
  REQUIRE(cr.total == Catch::Approx(3 * cr.per_link));
}

TEST_CASE("commutant relaxation kernel sizes and radial interior") {
  // The dropped boundary equations admit K+1 radial solutions plus
  // boundary-supported artifacts; the interior restriction is exactly radial.
  struct Expect {
    int L, K, rows, cols, kernel, interior;
  };
  for (const Expect& e : {Expect{3, 4, 22, 46, 28, 3}, Expect{3, 5, 46, 94, 53, 4},
                          Expect{4, 4, 53, 161, 112, 3}}) {
    CommutantProbe rep = commutant_probe(e.L, e.K);
    REQUIRE(rep.rows == e.rows);
    REQUIRE(rep.cols == e.cols);
    REQUIRE(rep.kernel_dim == e.kernel);
    REQUIRE(rep.kernel_dim >= e.K + 1);
    REQUIRE(rep.interior_dim == e.interior);  // one radial vector per sphere
    REQUIRE(rep.interior_is_radial);
    for (std::size_t i = 0; i < rep.interior_part_norm.size(); ++i)
      if (rep.interior_part_norm[i] > 0)
        REQUIRE(rep.radial_distance_rel[i] >= 0.0);
  }
  REQUIRE_THROWS_AS(commutant_probe(3, 1), std::invalid_argument);
}
