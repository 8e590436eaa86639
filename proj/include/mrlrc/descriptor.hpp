#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mrlrc/code.hpp"

namespace mrlrc {

/// On-disk description of a constructed code: everything needed to rebuild it
/// bit-exactly, plus a SHA-256 over the canonical JSON of the semantic fields.
/// Identical parameters always produce byte-identical descriptor files.
struct CodeDescriptor {
  std::string version = "mrlrc-descriptor/1";
  CodeParams params;
  Coeffs modulus;                                  // field: q, m from params + this
  std::vector<std::vector<std::uint64_t>> points;  // g x r evaluation grid
  std::vector<std::size_t> info_positions;
  bool has_matrix = false;
  std::vector<std::vector<Coeffs>> matrix;  // optional H dump, row-major coefficient lists
  std::string hash_hex;
};

std::string sha256_hex(const void* data, std::size_t len);
std::string sha256_hex(const std::string& data);

CodeDescriptor make_descriptor(const MrLrcCode& code, bool emit_matrix);

/// Canonical JSON (sorted keys, no whitespace) of everything except the hash.
std::string descriptor_canonical_json(const CodeDescriptor& d);
std::string descriptor_hash(const CodeDescriptor& d);

void save_descriptor(const CodeDescriptor& d, const std::string& path);

/// Parses and re-hashes; a stored hash that does not match the recomputed one
/// throws HashMismatch unless force is set.
CodeDescriptor load_descriptor(const std::string& path, bool force = false);

/// Rebuilds the parity check from the descriptor (field from the stored
/// modulus, blocks from the stored points). Parameter consistency is
/// re-derived and checked.
ParityCheck parity_from_descriptor(const CodeDescriptor& d);
MrLrcCode code_from_descriptor(const CodeDescriptor& d);

// Codeword files are binary: magic, version, the descriptor hash (so files
// can't be mixed up across codes), n, m, then n*m little-endian u32
// coefficients. Masks and messages are line-oriented text.

void write_codeword(const std::string& path, const CodeDescriptor& d,
                    const std::vector<FieldElement>& word);
std::vector<FieldElement> read_codeword(const std::string& path, const CodeDescriptor& d,
                                        const FieldPtr& ext);

/// Mask file: one line of n characters, '1' = erased.
void write_mask(const std::string& path, std::uint32_t n, const std::vector<std::size_t>& erased);
std::vector<std::size_t> read_mask(const std::string& path, std::uint32_t n);

/// Symbol text files: one symbol per line, m little-endian decimal coefficients.
void write_symbols_text(const std::string& path, const std::vector<FieldElement>& symbols);
std::vector<FieldElement> read_symbols_text(const std::string& path, const FieldPtr& field,
                                            std::size_t expected_count);

}  // namespace mrlrc
