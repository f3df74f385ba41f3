#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "reedy/matrix.hpp"

using namespace reedy;

TEST_CASE("modular inverses and fractions") {
  CHECK(inverse_mod(3, 7) == 5);
  CHECK(inverse_mod(100, 101) == 100);
  Field F = Field::gf(7);
  CHECK(Scalar::fraction(F, 1, 3) == Scalar(F, 5L));
  CHECK_THROWS(Scalar::fraction(F, 1, 14));
  CHECK_THROWS(Field::gf(6));
  Field Q = Field::rationals();
  CHECK((Scalar::fraction(Q, 2, 4) * Scalar(Q, 2L)).is_one());
}

TEST_CASE("kernel dimension agrees with enumeration over GF(3)") {
  Field F = Field::gf(3);
  std::mt19937_64 rng(31);
  for (int t = 0; t < 40; ++t) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 5;
    std::vector<std::vector<long>> rows(r, std::vector<long>(c));
    for (auto& row : rows)
      for (auto& x : row) x = static_cast<long>(rng() % 3);
    Matrix M = Matrix::from_rows(F, rows);
    const Matrix K = kernel_basis(M);
    std::uint64_t expected = 1;
    for (std::size_t i = 0; i < K.cols(); ++i) expected *= 3;
    CHECK(oracle::null_count(rows, c, 3) == expected);
    CHECK(rank(M) + K.cols() == c);
    CHECK((M * K).is_zero());
  }
}

TEST_CASE("rational inverse of the 3x3 Hilbert matrix") {
  Field Q = Field::rationals();
  Matrix H(Q, 3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) H.set(i, j, Scalar::fraction(Q, 1, static_cast<long>(i + j + 1)));
  auto inv = inverse(H);
  REQUIRE(inv.has_value());
  CHECK(*inv == Matrix::from_rows(Q, {{9, -36, 30}, {-36, 192, -180}, {30, -180, 180}}));
  CHECK_FALSE(inverse(Matrix::from_rows(Q, {{1, 2}, {2, 4}})).has_value());
}

TEST_CASE("reduced echelon form is canonical") {
  Field Q = Field::rationals();
  Matrix A = Matrix::from_rows(Q, {{2, 4, 6}, {1, 2, 4}});
  Echelon e = rref(A);
  CHECK(e.reduced == Matrix::from_rows(Q, {{1, 2, 0}, {0, 0, 1}}));
  CHECK(e.pivots == std::vector<std::size_t>{0, 2});
  CHECK(rref(e.reduced).reduced == e.reduced);
  CHECK(same_span(span_basis(A.transpose()), A.transpose()));
}

TEST_CASE("solve and cokernel") {
  Field F = Field::gf(5);
  Matrix A = Matrix::from_rows(F, {{1, 0}, {0, 1}, {1, 1}});
  auto x = solve(A, Matrix::from_rows(F, {{2}, {3}, {0}}));
  REQUIRE(x.has_value());
  CHECK(*x == Matrix::from_rows(F, {{2}, {3}}));
  CHECK_FALSE(solve(A, Matrix::from_rows(F, {{1}, {1}, {1}})).has_value());
  Cokernel ck = cokernel(A);
  CHECK(ck.dim == 1);
  CHECK((ck.projection * A).is_zero());
  CHECK(ck.projection * ck.lift == Matrix::identity(F, 1));
}

TEST_CASE("span intersection") {
  Field Q = Field::rationals();
  Matrix a = Matrix::from_rows(Q, {{1, 0}, {0, 1}, {0, 0}});
  Matrix b = Matrix::from_rows(Q, {{0, 0}, {1, 0}, {0, 1}});
  Matrix i = span_intersection(a, b);
  CHECK(i.cols() == 1);
  CHECK(in_span(i, Matrix::from_rows(Q, {{0}, {5}, {0}})));
  CHECK(span_sum(a, b).cols() == 3);
}
