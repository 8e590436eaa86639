#include "mrlrc/linalg.hpp"

#include <random>

#include "doctest.h"
#include "oracles.hpp"

using namespace mrlrc;

namespace {

Matrix random_matrix(const FieldPtr& f, std::size_t rows, std::size_t cols,
                     std::mt19937_64& rng) {
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      Coeffs c(f->degree());
      for (auto& v : c) v = rng() % f->q();
      m.set(i, j, f->from_coords(std::move(c)));
    }
  }
  return m;
}

Matrix random_invertible(const FieldPtr& f, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    Matrix m = random_matrix(f, n, n, rng);
    if (m.rank() == n) return m;
  }
}

std::vector<FieldElement> base_points(const FieldPtr& f, std::initializer_list<std::uint64_t> xs) {
  std::vector<FieldElement> out;
  for (auto x : xs) out.push_back(f->from_base(x));
  return out;
}

}  // namespace

TEST_CASE("rank basics") {
  FieldPtr f11 = Field::prime(11);
  CHECK(Matrix(f11, 3, 3).rank() == 0);
  CHECK(Matrix::identity(f11, 4).rank() == 4);
  CHECK(Matrix(f11, 0, 5).rank() == 0);

  // 4x4 Vandermonde on distinct points of F_11: determinant is the product of
  // differences, so the minor oracle certifies full rank.
  const Matrix v = vandermonde(f11, base_points(f11, {2, 3, 5, 7}), 0, 4);
  CHECK(v.rank() == 4);
  CHECK(oracle::minor_rank(v) == 4);
  CHECK_FALSE(oracle::determinant(v).is_zero());
}

TEST_CASE("rank agrees with the minor oracle") {
  std::mt19937_64 rng(10);
  for (auto f : {Field::prime(2), Field::prime(11), Field::extension(11, 2)}) {
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
      Matrix m = random_matrix(f, rows, cols, rng);
      if (trial % 3 == 0 && cols >= 2) {
        // plant a duplicate column to exercise deficiency
        for (std::size_t i = 0; i < rows; ++i) m.set(i, cols - 1, m.at(i, 0));
      }
      CHECK(m.rank() == oracle::minor_rank(m));
    }
  }
}

TEST_CASE("rank is invariant under row and column permutation") {
  std::mt19937_64 rng(11);
  FieldPtr f = Field::prime(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    const Matrix m = random_matrix(f, rows, cols, rng);
    std::vector<std::size_t> rp(rows), cp(cols);
    for (std::size_t i = 0; i < rows; ++i) rp[i] = i;
    for (std::size_t j = 0; j < cols; ++j) cp[j] = j;
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    CHECK(m.select_rows(rp).select_columns(cp).rank() == m.rank());
  }
}

TEST_CASE("invert") {
  FieldPtr f11 = Field::prime(11);
  CHECK(Matrix::identity(f11, 3).inverse() == Matrix::identity(f11, 3));

  Matrix d(f11, 2, 2);
  d.set_base(0, 0, 2);
  d.set_base(1, 1, 3);
  Matrix expect(f11, 2, 2);
  expect.set_base(0, 0, 6);  // 2*6 = 12 = 1 mod 11
  expect.set_base(1, 1, 4);  // 3*4 = 12 = 1 mod 11
  CHECK(d.inverse() == expect);

  Matrix singular(f11, 2, 2);
  singular.set_base(0, 0, 1);
  singular.set_base(1, 0, 1);
  CHECK_THROWS_AS(singular.inverse(), SingularMatrix);

  std::mt19937_64 rng(12);
  for (auto f : {Field::prime(11), Field::extension(11, 2)}) {
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t n = 1 + rng() % 5;
      const Matrix m = random_invertible(f, n, rng);
      CHECK(m * m.inverse() == Matrix::identity(f, n));
      CHECK(m.inverse() * m == Matrix::identity(f, n));
    }
  }
}

TEST_CASE("schur complement") {
  FieldPtr f11 = Field::prime(11);
  std::mt19937_64 rng(13);

  SUBCASE("A = I gives D - C*B") {
    const std::size_t s = 2, rest = 3;
    Matrix m(f11, s + rest, s + rest);
    Matrix b = random_matrix(f11, s, rest, rng);
    Matrix c = random_matrix(f11, rest, s, rng);
    Matrix d = random_matrix(f11, rest, rest, rng);
    for (std::size_t i = 0; i < s; ++i) m.set_base(i, i, 1);
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < rest; ++j) m.set(i, s + j, b.at(i, j));
    }
    for (std::size_t i = 0; i < rest; ++i) {
      for (std::size_t j = 0; j < s; ++j) m.set(s + i, j, c.at(i, j));
      for (std::size_t j = 0; j < rest; ++j) m.set(s + i, s + j, d.at(i, j));
    }
    const SchurResult res = schur_complement(m, s, s);
    CHECK(res.complement == d - c * b);
  }

  SUBCASE("C = 0 gives D") {
    Matrix m = random_matrix(f11, 5, 5, rng);
    for (std::size_t i = 2; i < 5; ++i) {
      for (std::size_t j = 0; j < 2; ++j) m.set_base(i, j, 0);
    }
    while (m.block(0, 0, 2, 2).rank() != 2) m = random_matrix(f11, 5, 5, rng);
    for (std::size_t i = 2; i < 5; ++i) {
      for (std::size_t j = 0; j < 2; ++j) m.set_base(i, j, 0);
    }
    const SchurResult res = schur_complement(m, 2, 2);
    CHECK(res.complement == m.block(2, 2, 3, 3));
  }

  SUBCASE("matches explicit column elimination on random blocks") {
    for (auto f : {Field::prime(11), Field::extension(11, 2)}) {
      for (int trial = 0; trial < 40; ++trial) {
        const std::size_t size = 2 + rng() % 4;
        const std::size_t split = 1 + rng() % (size - 1);
        Matrix m = random_matrix(f, size, size, rng);
        while (m.block(0, 0, split, split).rank() != split) {
          m = random_matrix(f, size, size, rng);
        }
        const SchurResult res = schur_complement(m, split, split);
        const Matrix by_ops = oracle::schur_by_column_ops(m, split);
        CHECK(res.transformed == by_ops);
        CHECK(res.complement == by_ops.block(split, split, size - split, size - split));
      }
    }
  }

  SUBCASE("errors") {
    Matrix m(f11, 4, 4);  // zero top-left block
    CHECK_THROWS_AS(schur_complement(m, 2, 2), SingularBlock);
    CHECK_THROWS_AS(schur_complement(m, 1, 2), InvalidParams);
  }

  SUBCASE("rank([A,0;C,S]) = rank(A) + rank(S) when A is invertible") {
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t size = 2 + rng() % 4;
      const std::size_t split = 1 + rng() % (size - 1);
      Matrix m = random_matrix(f11, size, size, rng);
      while (m.block(0, 0, split, split).rank() != split) {
        m = random_matrix(f11, size, size, rng);
      }
      const SchurResult res = schur_complement(m, split, split);
      CHECK(res.transformed.rank() == split + res.complement.rank());
      CHECK(res.transformed.rank() == m.rank());  // column operations preserve rank
    }
  }
}

TEST_CASE("vandermonde") {
  FieldPtr f11 = Field::prime(11);
  const Matrix ones = vandermonde(f11, base_points(f11, {3, 7, 9}), 0, 1);
  for (std::size_t j = 0; j < 3; ++j) CHECK(ones.at(0, j) == f11->one());

  CHECK(vandermonde(f11, base_points(f11, {0, 1, 5, 8}), 0, 4).rank() == 4);
  CHECK(vandermonde(f11, base_points(f11, {0, 1, 5, 5}), 0, 4).rank() == 3);

  const Matrix shifted = vandermonde(f11, base_points(f11, {2, 3}), 2, 3);
  CHECK(shifted.at(0, 0) == f11->from_base(4));
  CHECK(shifted.at(1, 0) == f11->from_base(8));
  CHECK(shifted.at(2, 1) == f11->from_base(81 % 11));
}

TEST_CASE("moore") {
  FieldPtr f = Field::extension(11, 3);
  std::mt19937_64 rng(14);

  SUBCASE("independent betas give full column rank at m rows") {
    // 1, y, y^2 are a basis, hence independent over F_11.
    const std::vector<FieldElement> basis = {f->from_coords({1, 0, 0}), f->from_coords({0, 1, 0}),
                                             f->from_coords({0, 0, 1})};
    CHECK(moore(f, basis, 3).rank() == 3);
  }
  SUBCASE("a base-field multiple collapses the rank") {
    const FieldElement b1 = f->from_coords({3, 5, 1});
    const std::vector<FieldElement> betas = {b1, b1 * f->from_base(7)};
    CHECK(moore(f, betas, 3).rank() == 1);
  }
  SUBCASE("single nonzero beta has rank 1") {
    CHECK(moore(f, {f->from_coords({0, 2, 4})}, 3).rank() == 1);
  }
  SUBCASE("full column rank iff F_q-linearly independent (sampled)") {
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t s = 1 + rng() % 3;
      std::vector<FieldElement> betas;
      for (std::size_t i = 0; i < s; ++i) {
        Coeffs c(3);
        for (auto& v : c) v = rng() % 11;
        betas.push_back(f->from_coords(std::move(c)));
      }
      Matrix coords_matrix(Field::prime(11), 3, s);
      for (std::size_t j = 0; j < s; ++j) {
        for (std::size_t l = 0; l < 3; ++l) coords_matrix.set_base(l, j, betas[j].coords()[l]);
      }
      const bool independent = coords_matrix.rank() == s;
      CHECK((moore(f, betas, 3).rank() == s) == independent);
    }
  }
}

TEST_CASE("solve_linear") {
  std::mt19937_64 rng(15);
  FieldPtr f = Field::extension(11, 2);

  SUBCASE("unique solutions") {
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t n = 1 + rng() % 4;
      const Matrix a = random_invertible(f, n, rng);
      std::vector<FieldElement> x;
      for (std::size_t i = 0; i < n; ++i) {
        Coeffs c(2);
        for (auto& v : c) v = rng() % 11;
        x.push_back(f->from_coords(std::move(c)));
      }
      const SolveResult res = solve_linear(a, mat_vec(a, x));
      REQUIRE(res.outcome == SolveOutcome::ok);
      CHECK(res.solution == x);
    }
  }
  SUBCASE("rank deficiency and inconsistency are told apart") {
    Matrix a(f, 2, 2);
    a.set_base(0, 0, 1);
    a.set_base(1, 0, 1);  // two equal columns of (1,1); rank 1
    a.set_base(0, 1, 1);
    a.set_base(1, 1, 1);
    CHECK(solve_linear(a, {f->one(), f->one()}).outcome == SolveOutcome::rank_deficient);

    Matrix b(f, 2, 1);
    b.set_base(0, 0, 1);
    b.set_base(1, 0, 1);
    CHECK(solve_linear(b, {f->one(), f->zero()}).outcome == SolveOutcome::inconsistent);
    CHECK(solve_linear(b, {f->one(), f->one()}).outcome == SolveOutcome::ok);
  }
}

TEST_CASE("matrix plumbing") {
  FieldPtr f = Field::prime(7);
  std::mt19937_64 rng(16);
  const Matrix a = random_matrix(f, 3, 4, rng);
  const Matrix b = random_matrix(f, 4, 2, rng);
  CHECK((a * b).rows() == 3);
  CHECK((a * Matrix::identity(f, 4)) == a);
  CHECK(Matrix::hconcat(a, a).cols() == 8);
  CHECK(Matrix::vconcat(a, a).rows() == 6);
  CHECK(Matrix::vconcat(Matrix(f, 0, 4), a) == a);
  CHECK(a.block(0, 0, 3, 4) == a);
  CHECK_THROWS_AS(a * a, LengthMismatch);

  const Matrix lifted = a.lifted(Field::extension(7, 2));
  CHECK(lifted.at(1, 1).coords()[0] == a.at(1, 1).coords()[0]);
  CHECK(lifted.at(1, 1).coords()[1] == 0);
  CHECK(lifted.rank() == a.rank());
}
