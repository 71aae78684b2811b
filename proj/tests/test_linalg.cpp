#include <catch2/catch_amalgamated.hpp>

#include "qmasa/linalg.hpp"

using namespace qmasa;

namespace {

RatMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  RatMatrix out;
  for (const auto& r : rows) {
    RatVector v;
    for (long x : r) v.push_back(Rational(x));
    out.push_back(std::move(v));
  }
  return out;
}

bool is_zero_vec(const RatVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

RatVector mat_apply(const RatMatrix& m, const RatVector& x) {
  RatVector out(m.size(), Rational(0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) out[i] += m[i][j] * x[j];
  return out;
}

}  // namespace

TEST_CASE("rank of knowns") {
  REQUIRE(rank(mat({{1, 2}, {2, 4}})) == 1);
  REQUIRE(rank(mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == 3);
  REQUIRE(rank(mat({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}})) == 2);
  REQUIRE(rank(mat({{0, 0}, {0, 0}})) == 0);
}

TEST_CASE("kernel basis spans the null space exactly") {
  RatMatrix m = mat({{1, 2, 3}, {4, 5, 6}});
  auto basis = kernel_basis(m);
  REQUIRE(basis.size() == 1);
  REQUIRE(is_zero_vec(mat_apply(m, basis[0])));
  REQUIRE_FALSE(is_zero_vec(basis[0]));

  // rank + nullity = columns, on a wider example.
  RatMatrix wide = mat({{1, 1, 1, 1, 1}, {1, 2, 3, 4, 5}});
  auto kb = kernel_basis(wide);
  REQUIRE(static_cast<int>(kb.size()) + rank(wide) == 5);
  for (const auto& v : kb) REQUIRE(is_zero_vec(mat_apply(wide, v)));

  REQUIRE(kernel_basis(mat({{1, 0}, {0, 1}})).empty());
}

TEST_CASE("solve returns the exact solution and reports singularity") {
  RatMatrix a = mat({{2, 1}, {1, 3}});
  RatVector b{Rational(5), Rational(10)};
  RatVector x = solve(a, b);
  REQUIRE(x[0] == 1);
  REQUIRE(x[1] == 3);
  REQUIRE_THROWS_AS(solve(mat({{1, 2}, {2, 4}}), RatVector{Rational(1), Rational(2)}),
                    std::runtime_error);
  REQUIRE_THROWS_AS(solve(mat({{1, 2, 3}}), RatVector{Rational(1)}),
                    std::invalid_argument);
}

TEST_CASE("positive definiteness via exact elimination") {
  // Hilbert matrix: notoriously ill conditioned but exactly PD.
  RatMatrix hilbert(4, RatVector(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) hilbert[i][j] = rat(1, i + j + 1);
  REQUIRE(positive_definite(hilbert));

  REQUIRE_FALSE(positive_definite(mat({{1, 2}, {2, 1}})));
  REQUIRE_FALSE(positive_definite(mat({{0, 0}, {0, 1}})));
  REQUIRE(positive_semidefinite(mat({{0, 0}, {0, 1}})));
  REQUIRE(positive_semidefinite(mat({{1, 1}, {1, 1}})));
  REQUIRE_FALSE(positive_semidefinite(mat({{1, 2}, {2, 1}})));
  REQUIRE_FALSE(positive_semidefinite(mat({{0, 1}, {1, 0}})));
  // Rank-one Gram matrix: elimination hits a zero pivot mid-run and must
  // keep going instead of consulting the factored part of the matrix.
  REQUIRE(positive_semidefinite(mat({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}})));
  REQUIRE_FALSE(positive_semidefinite(mat({{1, 1, 0}, {1, 1, 1}, {0, 1, 1}})));
}

TEST_CASE("gram schmidt produces orthogonal rational vectors") {
  std::vector<RatVector> rows = {
      {Rational(1), Rational(1), Rational(0)},
      {Rational(1), Rational(0), Rational(1)},
      {Rational(2), Rational(1), Rational(1)},  // dependent on the first two
  };
  auto ortho = gram_schmidt(rows);
  REQUIRE(ortho.size() == 2);
  REQUIRE(dot(ortho[0], ortho[1]) == 0);
  REQUIRE(dot(ortho[0], ortho[0]) > 0);
}
