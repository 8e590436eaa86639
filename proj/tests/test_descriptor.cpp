#include "mrlrc/descriptor.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "json.hpp"

using namespace mrlrc;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("mrlrc_test_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

MrLrcCode small_code() {
  const CodeParams p = derive_params(8, 4, 2, 1, 2);
  return make_code(assemble_parity(p, evaluation_points(p)));
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("descriptor round trip") {
  TempDir tmp;
  const MrLrcCode code = small_code();
  const CodeDescriptor d = make_descriptor(code, /*emit_matrix=*/false);
  CHECK(d.hash_hex.size() == 64);
  save_descriptor(d, tmp.file("code.json"));

  const CodeDescriptor loaded = load_descriptor(tmp.file("code.json"));
  CHECK(loaded.params.n == 8);
  CHECK(loaded.params.q == 11);
  CHECK(loaded.modulus == Coeffs{1, 0, 1});
  CHECK(loaded.points == d.points);
  CHECK(loaded.info_positions == d.info_positions);
  CHECK(loaded.hash_hex == d.hash_hex);

  const ParityCheck parity = parity_from_descriptor(loaded);
  CHECK(parity.H == code.parity.H);
  const MrLrcCode rebuilt = code_from_descriptor(loaded);
  CHECK(rebuilt.generator == code.generator);
}

TEST_CASE("descriptor bytes are deterministic") {
  TempDir tmp;
  const MrLrcCode code = small_code();
  save_descriptor(make_descriptor(code, false), tmp.file("a.json"));
  save_descriptor(make_descriptor(code, false), tmp.file("b.json"));
  CHECK(slurp(tmp.file("a.json")) == slurp(tmp.file("b.json")));

  const CodeDescriptor with_matrix = make_descriptor(code, true);
  CHECK(with_matrix.has_matrix);
  CHECK(with_matrix.hash_hex != make_descriptor(code, false).hash_hex);  // hash covers H
  save_descriptor(with_matrix, tmp.file("h.json"));
  const CodeDescriptor loaded = load_descriptor(tmp.file("h.json"));
  CHECK(loaded.matrix.size() == code.parity.H.rows());
}

TEST_CASE("hash mismatch detection") {
  TempDir tmp;
  const MrLrcCode code = small_code();
  save_descriptor(make_descriptor(code, false), tmp.file("code.json"));

  // sabotage: edit one evaluation point, keeping the stale hash
  nlohmann::json j = nlohmann::json::parse(slurp(tmp.file("code.json")));
  j["points"][1][0] = 0;
  std::ofstream(tmp.file("evil.json"), std::ios::binary) << j.dump(2);

  CHECK_THROWS_AS(load_descriptor(tmp.file("evil.json")), HashMismatch);
  const CodeDescriptor forced = load_descriptor(tmp.file("evil.json"), /*force=*/true);
  CHECK(forced.points[1][0] == 0);  // the edit took effect
  // the forced parity is rebuilt from the edited points
  const ParityCheck parity = parity_from_descriptor(forced);
  CHECK_FALSE(points_distinct(parity.points));
}

TEST_CASE("codeword files") {
  TempDir tmp;
  const MrLrcCode code = small_code();
  const CodeDescriptor d = make_descriptor(code, false);
  const FieldPtr& f = code.parity.ext;

  std::mt19937_64 rng(33);
  std::vector<FieldElement> msg;
  for (int i = 0; i < 4; ++i) {
    msg.push_back(f->from_coords({rng() % 11, rng() % 11}));
  }
  const auto word = encode(code, msg);
  write_codeword(tmp.file("w.bin"), d, word);
  CHECK(read_codeword(tmp.file("w.bin"), d, f) == word);

  SUBCASE("refuses words from another code") {
    const CodeParams other = derive_params(12, 4, 3, 1, 3);
    const MrLrcCode other_code = make_code(assemble_parity(other, evaluation_points(other)));
    const CodeDescriptor od = make_descriptor(other_code, false);
    CHECK_THROWS_AS(read_codeword(tmp.file("w.bin"), od, other_code.parity.ext), HashMismatch);
  }
  SUBCASE("mask round trip") {
    write_mask(tmp.file("mask.txt"), 8, {1, 5, 6});
    CHECK(read_mask(tmp.file("mask.txt"), 8) == std::vector<std::size_t>{1, 5, 6});
    CHECK(slurp(tmp.file("mask.txt")) == "01000110\n");
    CHECK_THROWS_AS(read_mask(tmp.file("mask.txt"), 9), DescriptorError);
  }
  SUBCASE("symbol text round trip") {
    write_symbols_text(tmp.file("msg.txt"), msg);
    CHECK(read_symbols_text(tmp.file("msg.txt"), f, 4) == msg);
    CHECK_THROWS_AS(read_symbols_text(tmp.file("msg.txt"), f, 5), DescriptorError);
  }
}

TEST_CASE("sha256 known vectors") {
  CHECK(sha256_hex(std::string{}) ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex(std::string{"abc"}) ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
