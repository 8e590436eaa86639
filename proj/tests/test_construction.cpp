#include "mrlrc/construction.hpp"

#include <set>

#include "doctest.h"

using namespace mrlrc;

TEST_CASE("derive_params") {
  SUBCASE("(8,4,2,1,2)") {
    const CodeParams p = derive_params(8, 4, 2, 1, 2);
    CHECK(p.t == 2);
    CHECK(p.m == 2);
    CHECK(p.q == 11);
    CHECK(p.k == 4);
  }
  SUBCASE("(12,4,3,1,3)") {
    const CodeParams p = derive_params(12, 4, 3, 1, 3);
    CHECK(p.t == 2);
    CHECK(p.m == 4);
    CHECK(p.q == 13);
    CHECK(p.k == 6);
  }
  SUBCASE("(6,3,4,1,2) has the right field shape but no information symbols") {
    const FieldShape s = derive_field_shape(6, 3, 4, 1, 2);
    CHECK(s.t == 3);
    CHECK(s.m == 3);
    CHECK(s.q == 7);
    CHECK_THROWS_AS(derive_params(6, 3, 4, 1, 2), InvalidParams);  // k = 0
  }
  SUBCASE("m = 1 corner (4,2,1,1,2)") {
    const CodeParams p = derive_params(4, 2, 1, 1, 2);
    CHECK(p.t == 2);
    CHECK(p.m == 1);
    CHECK(p.q == 5);
    CHECK(p.k == 1);
  }
  SUBCASE("every violation has its own message") {
    auto message_of = [](auto fn) {
      try {
        fn();
      } catch (const InvalidParams& e) {
        return std::string(e.what());
      }
      return std::string{};
    };
    const std::string bad_n = message_of([] { return derive_params(9, 4, 2, 1, 2); });
    const std::string bad_g = message_of([] { return derive_params(4, 4, 2, 1, 1); });
    const std::string bad_a = message_of([] { return derive_params(8, 4, 2, 0, 2); });
    const std::string bad_h = message_of([] { return derive_params(8, 4, 0, 1, 2); });
    const std::string bad_t = message_of([] { return derive_params(4, 2, 4, 2, 2); });  // t=4 > r=2
    const std::string bad_k = message_of([] { return derive_params(6, 3, 4, 1, 2); });
    const std::set<std::string> messages = {bad_n, bad_g, bad_a, bad_h, bad_t, bad_k};
    CHECK(messages.size() == 6);
    for (const auto& msg : messages) CHECK_FALSE(msg.empty());
  }
}

TEST_CASE("evaluation_points") {
  const CodeParams p = derive_params(8, 4, 2, 1, 2);
  SUBCASE("canonical order") {
    const EvaluationPoints pts = evaluation_points(p);
    CHECK(pts.x[0] == std::vector<std::uint64_t>{0, 1, 2, 3});
    CHECK(pts.x[1] == std::vector<std::uint64_t>{4, 5, 6, 7});
    CHECK(points_distinct(pts));
  }
  SUBCASE("seeded shuffle stays distinct, in range, and deterministic") {
    const EvaluationPoints a = evaluation_points(p, 42);
    const EvaluationPoints b = evaluation_points(p, 42);
    const EvaluationPoints c = evaluation_points(p, 43);
    CHECK(a.x == b.x);
    CHECK(a.x != c.x);
    CHECK(points_distinct(a));
    for (const auto& row : a.x) {
      for (auto x : row) CHECK(x < p.q);
    }
  }
}

TEST_CASE("build_local_parity") {
  FieldPtr base = Field::prime(11);
  SUBCASE("a = 1 is the all-ones row") {
    const Matrix a1 = build_local_parity(base, {0, 1, 2, 3}, 1);
    for (std::size_t j = 0; j < 4; ++j) CHECK(a1.at(0, j) == base->one());
  }
  SUBCASE("a = 2 on {0,1,2,3}") {
    const Matrix a2 = build_local_parity(base, {0, 1, 2, 3}, 2);
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(a2.at(0, j) == base->one());
      CHECK(a2.at(1, j) == base->from_base(j));
    }
  }
}

TEST_CASE("build_beta") {
  const CodeParams p = derive_params(8, 4, 2, 1, 2);
  FieldPtr ext = Field::extension(p.q, p.m);
  SUBCASE("x = 0 vanishes for t >= 1") {
    CHECK(build_beta(ext, 0, p.t).is_zero());
  }
  SUBCASE("x = 1 gives the all-ones coordinate vector") {
    CHECK(build_beta(ext, 1, p.t) == ext->from_coords(Coeffs(p.m, 1)));
  }
  SUBCASE("coordinate l is x^(t+l)") {
    for (std::uint64_t x = 0; x < p.q; ++x) {
      const Coeffs c = build_beta(ext, x, p.t).coords();
      for (std::uint32_t l = 0; l < p.m; ++l) {
        CHECK(c[l] == ext->base_pow(x, p.t + l));
      }
    }
  }
}

TEST_CASE("build_global_parity row counts") {
  for (auto [n, r, h, a, g] : {std::array<std::uint32_t, 5>{8, 4, 2, 1, 2},
                               {12, 4, 3, 1, 3},
                               {10, 5, 4, 2, 2}}) {
    const CodeParams p = derive_params(n, r, h, a, g);
    FieldPtr base = Field::prime(p.q);
    FieldPtr ext = Field::extension(p.q, p.m);
    const EvaluationPoints pts = evaluation_points(p);
    const GlobalParity gp = build_global_parity(base, ext, pts.x[0], p);
    CHECK(gp.vandermonde_rows.rows() == p.t - p.a);
    CHECK(gp.gabidulin_rows.rows() == p.h + p.a - p.t);
    CHECK(gp.vandermonde_rows.rows() + gp.gabidulin_rows.rows() == p.h);
    CHECK(gp.betas.size() == p.r);
  }
}

TEST_CASE("h = 1 makes the Gabidulin block empty") {
  const CodeParams p = derive_params(6, 3, 1, 1, 2);
  const ParityCheck pc = assemble_parity(p, evaluation_points(p));
  CHECK(p.h + p.a - p.t == 0);
  CHECK(pc.gabidulin_rows[0].rows() == 0);
  CHECK(pc.H.rows() == p.parity_rows());
  CHECK(pc.H.rank() == p.parity_rows());
}

TEST_CASE("assemble_H") {
  const CodeParams p = derive_params(8, 4, 2, 1, 2);
  const ParityCheck pc = assemble_parity(p, evaluation_points(p));

  SUBCASE("diagonal blocks carry the local parities, off-diagonal is zero") {
    for (std::uint32_t i = 0; i < p.g; ++i) {
      for (std::uint32_t u = 0; u < p.a; ++u) {
        for (std::uint32_t j = 0; j < p.r; ++j) {
          const FieldElement entry = pc.H.at(i * p.a + u, i * p.r + j);
          CHECK(entry == pc.ext->from_base(*pc.local[i].cell(u, j)));
          const FieldElement other = pc.H.at(((i + 1) % p.g) * p.a + u, i * p.r + j);
          CHECK(other.is_zero());
        }
      }
    }
  }
  SUBCASE("rank is ga+h") {
    CHECK(pc.H.rank() == p.parity_rows());
  }
  SUBCASE("powers increase steadily from 0 to ga+h-1 down each column stack") {
    for (std::uint32_t i = 0; i < p.g; ++i) {
      for (std::uint32_t j = 0; j < p.r; ++j) {
        const std::uint64_t x = pc.points.x[i][j];
        Coeffs stack;
        for (std::uint32_t u = 0; u < p.a; ++u) stack.push_back(*pc.local[i].cell(u, j));
        for (std::uint32_t u = 0; u < p.t - p.a; ++u) {
          stack.push_back(*pc.vandermonde_rows[i].cell(u, j));
        }
        for (auto c : pc.betas[i][j].coords()) stack.push_back(c);
        REQUIRE(stack.size() == p.parity_rows());
        for (std::uint32_t u = 0; u < stack.size(); ++u) {
          CHECK(stack[u] == pc.base->base_pow(x, u));
        }
      }
    }
  }
  SUBCASE("construction is deterministic") {
    const ParityCheck again = assemble_parity(p, evaluation_points(p));
    CHECK(again.H == pc.H);
  }
}

TEST_CASE("steadily increasing powers on a g=3, a=2 code") {
  const CodeParams p = derive_params(12, 4, 2, 2, 3);
  const ParityCheck pc = assemble_parity(p, evaluation_points(p));
  for (std::uint32_t i = 0; i < p.g; ++i) {
    for (std::uint32_t j = 0; j < p.r; ++j) {
      const std::uint64_t x = pc.points.x[i][j];
      Coeffs stack;
      for (std::uint32_t u = 0; u < p.a; ++u) stack.push_back(*pc.local[i].cell(u, j));
      for (std::uint32_t u = 0; u < p.t - p.a; ++u) {
        stack.push_back(*pc.vandermonde_rows[i].cell(u, j));
      }
      for (auto c : pc.betas[i][j].coords()) stack.push_back(c);
      REQUIRE(stack.size() == p.parity_rows());
      for (std::uint32_t u = 0; u < stack.size(); ++u) {
        CHECK(stack[u] == pc.base->base_pow(x, u));
      }
    }
  }
}
