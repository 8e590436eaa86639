#include "mrlrc/code.hpp"

#include <random>

#include "doctest.h"
#include "mrlrc/verify.hpp"

using namespace mrlrc;

namespace {

std::vector<FieldElement> random_message(const MrLrcCode& code, std::mt19937_64& rng) {
  const FieldPtr& f = code.parity.ext;
  std::vector<FieldElement> msg;
  for (std::uint32_t i = 0; i < code.parity.params.k; ++i) {
    Coeffs c(f->degree());
    for (auto& v : c) v = rng() % f->q();
    msg.push_back(f->from_coords(std::move(c)));
  }
  return msg;
}

MrLrcCode small_code() {
  const CodeParams p = derive_params(8, 4, 2, 1, 2);
  return make_code(assemble_parity(p, evaluation_points(p)));
}

}  // namespace

TEST_CASE("make_code") {
  const MrLrcCode code = small_code();
  const CodeParams& p = code.parity.params;

  SUBCASE("dimension and info positions") {
    CHECK(p.k == 4);
    CHECK(code.generator.rows() == 4);
    CHECK(code.generator.cols() == 8);
    // {0,1,2,3} is not valid: its complement is one whole group, whose columns
    // miss the other group's local row. The greedy moves to {0,1,2,4}.
    CHECK(code.info_positions == std::vector<std::size_t>{0, 1, 2, 4});
  }
  SUBCASE("generator is orthogonal to every parity check") {
    for (std::size_t u = 0; u < code.generator.rows(); ++u) {
      std::vector<FieldElement> row;
      for (std::size_t j = 0; j < code.generator.cols(); ++j) row.push_back(code.generator.at(u, j));
      for (const FieldElement& s : mat_vec(code.parity.H, row)) CHECK(s.is_zero());
    }
  }
  SUBCASE("systematic on the info positions") {
    for (std::size_t u = 0; u < p.k; ++u) {
      for (std::size_t v = 0; v < p.k; ++v) {
        const FieldElement entry = code.generator.at(u, code.info_positions[v]);
        CHECK(entry == (u == v ? code.parity.ext->one() : code.parity.ext->zero()));
      }
    }
  }
  SUBCASE("(12,4,3,1,3) info positions") {
    const CodeParams p3 = derive_params(12, 4, 3, 1, 3);
    const MrLrcCode code3 = make_code(assemble_parity(p3, evaluation_points(p3)));
    CHECK(code3.info_positions == std::vector<std::size_t>{0, 1, 2, 4, 5, 6});
  }
  SUBCASE("rank-deficient parity is rejected") {
    const CodeParams p2 = derive_params(8, 4, 2, 1, 2);
    EvaluationPoints pts = evaluation_points(p2);
    pts.x[0][1] = pts.x[0][0];  // duplicate point; H keeps equal columns
    ParityCheck parity = assemble_parity(p2, pts);
    // rank(H) is still ga+h here, so make_code succeeds; force deficiency by
    // zeroing a full parity row instead.
    for (std::size_t j = 0; j < parity.H.cols(); ++j) {
      parity.H.set(0, j, parity.ext->zero());
    }
    CHECK_THROWS_AS(make_code(std::move(parity)), RankDeficientParity);
  }
}

TEST_CASE("encode") {
  const MrLrcCode code = small_code();
  const FieldPtr& f = code.parity.ext;
  std::mt19937_64 rng(20);

  SUBCASE("zero message gives the zero codeword") {
    const auto cw = encode(code, std::vector<FieldElement>(4, f->zero()));
    for (const auto& s : cw) CHECK(s.is_zero());
  }
  SUBCASE("unit message picks out a generator row") {
    std::vector<FieldElement> msg(4, f->zero());
    msg[2] = f->one();
    const auto cw = encode(code, msg);
    for (std::size_t j = 0; j < 8; ++j) CHECK(cw[j] == code.generator.at(2, j));
  }
  SUBCASE("every codeword satisfies every parity") {
    for (int trial = 0; trial < 100; ++trial) {
      const auto cw = encode(code, random_message(code, rng));
      for (const FieldElement& s : mat_vec(code.parity.H, cw)) CHECK(s.is_zero());
    }
  }
  SUBCASE("message restricted to info positions is the message") {
    const auto msg = random_message(code, rng);
    const auto cw = encode(code, msg);
    for (std::size_t u = 0; u < msg.size(); ++u) CHECK(cw[code.info_positions[u]] == msg[u]);
  }
  SUBCASE("length mismatch") {
    CHECK_THROWS_AS(encode(code, std::vector<FieldElement>(3, f->zero())), LengthMismatch);
  }
}

TEST_CASE("is_maximal_correctable") {
  const CodeParams p = derive_params(8, 4, 2, 1, 2);
  auto pat = [&](std::vector<std::size_t> pos) { return make_pattern(p, std::move(pos)); };
  CHECK(is_maximal_correctable(p, pat({0, 1, 4, 5})));      // e = (2,2)
  CHECK(is_maximal_correctable(p, pat({0, 4, 5, 6})));      // e = (1,3)
  CHECK_FALSE(is_maximal_correctable(p, pat({4, 5, 6, 7})));  // e = (0,4): group 1 below a
  CHECK_FALSE(is_maximal_correctable(p, pat({0, 4, 5})));     // size 3 != ga+h
  CHECK_THROWS_AS(pat({0, 0, 1, 2}), InvalidParams);
  CHECK_THROWS_AS(pat({0, 1, 2, 9}), InvalidParams);
}

TEST_CASE("erasure_decode") {
  const MrLrcCode code = small_code();
  const CodeParams& p = code.parity.params;
  const FieldPtr& f = code.parity.ext;
  std::mt19937_64 rng(21);

  SUBCASE("empty pattern returns the word unchanged") {
    const auto cw = encode(code, random_message(code, rng));
    CHECK(erasure_decode(code, cw, make_pattern(p, {})) == cw);
  }
  SUBCASE("round trip over every maximal pattern") {
    const auto msg = random_message(code, rng);
    const auto cw = encode(code, msg);
    std::size_t patterns = 0;
    for_each_maximal_pattern(p, [&](const ErasurePattern& pattern) {
      auto corrupted = cw;
      for (auto pos : pattern.positions) corrupted[pos] = f->from_base(rng());  // garbage
      CHECK(erasure_decode(code, corrupted, pattern) == cw);
      ++patterns;
      return true;
    });
    CHECK(patterns == 68);
  }
  SUBCASE("subsets of maximal patterns stay decodable") {
    const auto cw = encode(code, random_message(code, rng));
    for (int trial = 0; trial < 50; ++trial) {
      const auto all = enumerate_maximal_patterns(p);
      const ErasurePattern& full = all[rng() % all.size()];
      std::vector<std::size_t> subset;
      for (auto pos : full.positions) {
        if (rng() % 2 == 0) subset.push_back(pos);
      }
      CHECK(erasure_decode(code, cw, make_pattern(p, subset)) == cw);
    }
  }
  SUBCASE("six erasures exceed the ga+h = 4 parities") {
    const auto cw = encode(code, random_message(code, rng));
    CHECK_THROWS_AS(erasure_decode(code, cw, make_pattern(p, {0, 1, 2, 4, 5, 6})),
                    UncorrectablePattern);
  }
  SUBCASE("a corrupted surviving symbol is detected") {
    auto cw = encode(code, random_message(code, rng));
    cw[7] = cw[7] + f->one();
    CHECK_THROWS_AS(erasure_decode(code, cw, make_pattern(p, {0, 4})), InconsistentWord);
  }
}

TEST_CASE("local_repair") {
  const MrLrcCode code = small_code();
  const CodeParams& p = code.parity.params;
  const FieldPtr& f = code.parity.ext;
  std::mt19937_64 rng(22);

  SUBCASE("a = 1: the one parity determines the symbol") {
    const auto cw = encode(code, random_message(code, rng));
    auto word = cw;
    word[2] = f->zero();
    const LocalRepairResult res = local_repair(code, 0, word, {2});
    REQUIRE(res.repaired.size() == 1);
    CHECK(res.repaired[0].first == 2);
    CHECK(res.repaired[0].second == cw[2]);
    CHECK(res.reads.size() == p.r - p.a);
    for (auto pos : res.reads) {
      CHECK(pos < p.r);   // inside group 0
      CHECK(pos != 2);    // never reads the erased position
    }
  }
  SUBCASE("agrees with global decoding on random single-group erasures") {
    for (int trial = 0; trial < 100; ++trial) {
      const auto cw = encode(code, random_message(code, rng));
      const std::uint32_t group = rng() % p.g;
      const std::size_t pos = group * p.r + rng() % p.r;
      auto word = cw;
      word[pos] = f->zero();
      const auto via_local = local_repair(code, group, word, {pos});
      const auto via_global = erasure_decode(code, word, make_pattern(p, {pos}));
      REQUIRE(via_local.repaired.size() == 1);
      CHECK(via_local.repaired[0].second == via_global[pos]);
      CHECK(via_local.repaired[0].second == cw[pos]);
    }
  }
  SUBCASE("too many erasures in the group") {
    const auto cw = encode(code, random_message(code, rng));
    CHECK_THROWS_AS(local_repair(code, 0, cw, {0, 1}), TooManyLocalErasures);
  }
  SUBCASE("positions must lie in the group") {
    const auto cw = encode(code, random_message(code, rng));
    CHECK_THROWS_AS(local_repair(code, 0, cw, {5}), InvalidParams);
  }
  SUBCASE("a = 2 code: repairs with fewer erasures still read only r-a symbols") {
    const CodeParams p2 = derive_params(10, 5, 2, 2, 2);
    const MrLrcCode code2 = make_code(assemble_parity(p2, evaluation_points(p2)));
    const auto cw = encode(code2, random_message(code2, rng));
    for (std::uint32_t group = 0; group < 2; ++group) {
      for (std::size_t local = 0; local < 5; ++local) {
        const std::size_t pos = group * 5 + local;
        auto word = cw;
        word[pos] = code2.parity.ext->zero();
        const auto res = local_repair(code2, group, word, {pos});
        CHECK(res.reads.size() == p2.r - p2.a);  // 3, not 4
        for (auto read : res.reads) {
          CHECK(read / p2.r == group);
          CHECK(read != pos);
        }
        REQUIRE(res.repaired.size() == 1);
        CHECK(res.repaired[0].second == cw[pos]);
      }
    }
    // two erasures: reads the remaining three
    auto word = cw;
    word[0] = code2.parity.ext->zero();
    word[3] = code2.parity.ext->zero();
    const auto res = local_repair(code2, 0, word, {0, 3});
    CHECK(res.reads == std::vector<std::size_t>{1, 2, 4});
    CHECK(res.repaired.size() == 2);
    CHECK(res.repaired[0].second == cw[0]);
    CHECK(res.repaired[1].second == cw[3]);
  }
}
