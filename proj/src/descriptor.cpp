#include "mrlrc/descriptor.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mrlrc {

using nlohmann::json;

std::string sha256_hex(const void* data, std::size_t len) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int digest_len = 0;
  if (EVP_Digest(data, len, digest, &digest_len, EVP_sha256(), nullptr) != 1) {
    throw DescriptorError("SHA-256 computation failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * digest_len);
  for (unsigned int i = 0; i < digest_len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

std::string sha256_hex(const std::string& data) { return sha256_hex(data.data(), data.size()); }

namespace {

json params_to_json(const CodeParams& p) {
  return json{{"n", p.n}, {"r", p.r}, {"h", p.h}, {"a", p.a}, {"g", p.g},
              {"t", p.t}, {"m", p.m}, {"k", p.k}, {"q", p.q}};
}

json semantic_json(const CodeDescriptor& d) {
  json j;
  j["version"] = d.version;
  j["params"] = params_to_json(d.params);
  j["field"] = json{{"q", d.params.q}, {"m", d.params.m}, {"modulus", d.modulus}};
  j["points"] = d.points;
  j["info_positions"] = d.info_positions;
  if (d.has_matrix) j["H"] = d.matrix;
  return j;
}

std::vector<unsigned char> hex_to_bytes(const std::string& hex) {
  if (hex.size() % 2 != 0) throw DescriptorError("odd-length hex string");
  auto nib = [](char c) -> unsigned {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw DescriptorError("invalid hex digit");
  };
  std::vector<unsigned char> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<unsigned char>((nib(hex[2 * i]) << 4) | nib(hex[2 * i + 1]));
  }
  return out;
}

}  // namespace

std::string descriptor_canonical_json(const CodeDescriptor& d) { return semantic_json(d).dump(); }

std::string descriptor_hash(const CodeDescriptor& d) {
  return sha256_hex(descriptor_canonical_json(d));
}

CodeDescriptor make_descriptor(const MrLrcCode& code, bool emit_matrix) {
  CodeDescriptor d;
  d.params = code.parity.params;
  d.modulus = code.parity.ext->modulus();
  d.points = code.parity.points.x;
  d.info_positions = code.info_positions;
  if (emit_matrix) {
    d.has_matrix = true;
    const Matrix& h = code.parity.H;
    d.matrix.resize(h.rows());
    for (std::size_t i = 0; i < h.rows(); ++i) {
      d.matrix[i].reserve(h.cols());
      for (std::size_t j = 0; j < h.cols(); ++j) d.matrix[i].push_back(h.at(i, j).coords());
    }
  }
  d.hash_hex = descriptor_hash(d);
  return d;
}

void save_descriptor(const CodeDescriptor& d, const std::string& path) {
  json j = semantic_json(d);
  j["hash"] = d.hash_hex;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DescriptorError("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
  if (!out) throw DescriptorError("failed writing " + path);
}

CodeDescriptor load_descriptor(const std::string& path, bool force) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DescriptorError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DescriptorError("malformed descriptor " + path + ": " + e.what());
  }
  CodeDescriptor d;
  try {
    d.version = j.at("version").get<std::string>();
    const json& p = j.at("params");
    d.params.n = p.at("n").get<std::uint32_t>();
    d.params.r = p.at("r").get<std::uint32_t>();
    d.params.h = p.at("h").get<std::uint32_t>();
    d.params.a = p.at("a").get<std::uint32_t>();
    d.params.g = p.at("g").get<std::uint32_t>();
    d.params.t = p.at("t").get<std::uint32_t>();
    d.params.m = p.at("m").get<std::uint32_t>();
    d.params.k = p.at("k").get<std::uint32_t>();
    d.params.q = p.at("q").get<std::uint64_t>();
    d.modulus = j.at("field").at("modulus").get<Coeffs>();
    d.points = j.at("points").get<std::vector<std::vector<std::uint64_t>>>();
    d.info_positions = j.at("info_positions").get<std::vector<std::size_t>>();
    if (j.contains("H")) {
      d.has_matrix = true;
      d.matrix = j.at("H").get<std::vector<std::vector<Coeffs>>>();
    }
    d.hash_hex = j.at("hash").get<std::string>();
  } catch (const json::exception& e) {
    throw DescriptorError("descriptor " + path + " is missing fields: " + e.what());
  }
  if (d.version != "mrlrc-descriptor/1") {
    throw DescriptorError("unsupported descriptor version " + d.version);
  }
  const std::string recomputed = descriptor_hash(d);
  if (recomputed != d.hash_hex && !force) {
    throw HashMismatch("descriptor hash mismatch in " + path + " (stored " + d.hash_hex +
                       ", recomputed " + recomputed + ")");
  }
  return d;
}

ParityCheck parity_from_descriptor(const CodeDescriptor& d) {
  const CodeParams& p = d.params;
  const CodeParams derived = derive_params(p.n, p.r, p.h, p.a, p.g);
  if (derived.t != p.t || derived.m != p.m || derived.q != p.q || derived.k != p.k) {
    throw DescriptorError("descriptor parameters disagree with their derivation");
  }
  if (d.modulus.size() != static_cast<std::size_t>(p.m) + 1) {
    throw DescriptorError("modulus degree disagrees with m");
  }
  EvaluationPoints pts;
  pts.x = d.points;
  ParityCheck pc = assemble_parity(derived, pts);
  // Swap in the stored modulus if it differs from the deterministic default.
  if (pc.ext->modulus() != d.modulus) {
    FieldPtr ext = Field::extension(p.q, d.modulus);
    ParityCheck rebuilt;
    rebuilt.params = derived;
    rebuilt.base = pc.base;
    rebuilt.ext = ext;
    rebuilt.points = pts;
    for (std::uint32_t i = 0; i < p.g; ++i) {
      rebuilt.local.push_back(build_local_parity(rebuilt.base, pts.x[i], p.a));
      GlobalParity gp = build_global_parity(rebuilt.base, ext, pts.x[i], derived);
      rebuilt.vandermonde_rows.push_back(std::move(gp.vandermonde_rows));
      rebuilt.gabidulin_rows.push_back(std::move(gp.gabidulin_rows));
      rebuilt.betas.push_back(std::move(gp.betas));
    }
    rebuilt.H = assemble_H(derived, ext, rebuilt.local, rebuilt.vandermonde_rows,
                           rebuilt.gabidulin_rows);
    return rebuilt;
  }
  return pc;
}

MrLrcCode code_from_descriptor(const CodeDescriptor& d) {
  return make_code(parity_from_descriptor(d), d.info_positions);
}

namespace {
constexpr char kCodewordMagic[4] = {'M', 'R', 'L', 'W'};
constexpr unsigned char kCodewordVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw DescriptorError("truncated codeword file");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}
}  // namespace

void write_codeword(const std::string& path, const CodeDescriptor& d,
                    const std::vector<FieldElement>& word) {
  if (word.size() != d.params.n) throw LengthMismatch("codeword must have n symbols");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DescriptorError("cannot open " + path + " for writing");
  out.write(kCodewordMagic, 4);
  out.put(static_cast<char>(kCodewordVersion));
  const auto hash = hex_to_bytes(d.hash_hex);
  out.write(reinterpret_cast<const char*>(hash.data()), static_cast<std::streamsize>(hash.size()));
  put_u32(out, d.params.n);
  put_u32(out, d.params.m);
  for (const auto& sym : word) {
    for (auto c : sym.coords()) put_u32(out, static_cast<std::uint32_t>(c));
  }
  if (!out) throw DescriptorError("failed writing " + path);
}

std::vector<FieldElement> read_codeword(const std::string& path, const CodeDescriptor& d,
                                        const FieldPtr& ext) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DescriptorError("cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || !std::equal(magic, magic + 4, kCodewordMagic)) {
    throw DescriptorError(path + " is not a codeword file");
  }
  if (in.get() != kCodewordVersion) throw DescriptorError("unsupported codeword version");
  std::vector<unsigned char> hash(32);
  in.read(reinterpret_cast<char*>(hash.data()), 32);
  if (!in) throw DescriptorError("truncated codeword file");
  if (hex_to_bytes(d.hash_hex) != hash) {
    throw HashMismatch("codeword was written for a different descriptor");
  }
  const std::uint32_t n = get_u32(in), m = get_u32(in);
  if (n != d.params.n || m != d.params.m) {
    throw DescriptorError("codeword dimensions disagree with the descriptor");
  }
  std::vector<FieldElement> word;
  word.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    Coeffs c(m);
    for (std::uint32_t l = 0; l < m; ++l) {
      c[l] = get_u32(in);
      if (c[l] >= ext->q()) throw DescriptorError("codeword coefficient out of range");
    }
    word.push_back(ext->from_coords(std::move(c)));
  }
  return word;
}

void write_mask(const std::string& path, std::uint32_t n, const std::vector<std::size_t>& erased) {
  std::string line(n, '0');
  for (auto pos : erased) {
    if (pos >= n) throw LengthMismatch("mask position out of range");
    line[pos] = '1';
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DescriptorError("cannot open " + path + " for writing");
  out << line << "\n";
}

std::vector<std::size_t> read_mask(const std::string& path, std::uint32_t n) {
  std::ifstream in(path);
  if (!in) throw DescriptorError("cannot open " + path);
  std::string line;
  std::getline(in, line);
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
  if (line.size() != n) {
    throw DescriptorError("mask must have exactly n = " + std::to_string(n) + " characters");
  }
  std::vector<std::size_t> erased;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '1') {
      erased.push_back(i);
    } else if (line[i] != '0') {
      throw DescriptorError("mask characters must be 0 or 1");
    }
  }
  return erased;
}

void write_symbols_text(const std::string& path, const std::vector<FieldElement>& symbols) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DescriptorError("cannot open " + path + " for writing");
  for (const auto& sym : symbols) {
    const Coeffs& c = sym.coords();
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << c[i];
    out << "\n";
  }
}

std::vector<FieldElement> read_symbols_text(const std::string& path, const FieldPtr& field,
                                            std::size_t expected_count) {
  std::ifstream in(path);
  if (!in) throw DescriptorError("cannot open " + path);
  std::vector<FieldElement> out;
  out.reserve(expected_count);
  for (std::size_t s = 0; s < expected_count; ++s) {
    Coeffs c(field->degree());
    for (auto& v : c) {
      if (!(in >> v)) {
        throw DescriptorError("expected " + std::to_string(expected_count * field->degree()) +
                              " coefficients in " + path);
      }
      if (v >= field->q()) throw DescriptorError("coefficient out of range in " + path);
    }
    out.push_back(field->from_coords(std::move(c)));
  }
  return out;
}

}  // namespace mrlrc
