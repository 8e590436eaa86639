#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mrlrc/construction.hpp"

namespace mrlrc {

/// A set of erased coordinates together with its per-group census.
struct ErasurePattern {
  std::vector<std::size_t> positions;   // sorted, unique, < n
  std::vector<std::uint32_t> per_group; // e_i = |E intersect group i|
};

/// Validates positions (bounds, duplicates), sorts them and fills per_group.
ErasurePattern make_pattern(const CodeParams& params, std::vector<std::size_t> positions);

/// True iff |E| = ga+h and every group holds between a and r erasures,
/// i.e. E decomposes as a per group plus h extras.
bool is_maximal_correctable(const CodeParams& params, const ErasurePattern& pattern);

/// A usable erasure code: systematic generator on deterministically chosen
/// information positions. Immutable and safe to share across threads.
struct MrLrcCode {
  ParityCheck parity;
  std::vector<std::size_t> info_positions;  // k columns, lexicographically first valid set
  Matrix generator;                         // k x n over F_{q^m}, identity on info_positions
};

/// Builds the systematic code. Throws RankDeficientParity if rank(H) < ga+h.
MrLrcCode make_code(ParityCheck parity);

/// Same, but with externally supplied info positions (descriptor loading);
/// the choice is validated against H.
MrLrcCode make_code(ParityCheck parity, std::vector<std::size_t> info_positions);

/// codeword = message * generator; the codeword restricted to the information
/// positions equals the message.
std::vector<FieldElement> encode(const MrLrcCode& code, const std::vector<FieldElement>& message);

/// Recovers the erased coordinates: local repair first in every group with at
/// most `a` erasures, then one global solve for the remainder. Succeeds exactly
/// when the erased columns of H are linearly independent.
std::vector<FieldElement> erasure_decode(const MrLrcCode& code, std::vector<FieldElement> word,
                                         const ErasurePattern& pattern);

struct LocalRepairResult {
  std::vector<std::pair<std::size_t, FieldElement>> repaired;  // erased position -> value
  std::vector<std::size_t> reads;  // positions actually read; always inside the
                                   // group and at most r-a of them
};

/// Repairs up to `a` erasures inside one group from that group's local parities
/// alone. Fewer than `a` erasures are padded with virtual ones so the read set
/// is always r-a in-group symbols.
LocalRepairResult local_repair(const MrLrcCode& code, std::uint32_t group,
                               const std::vector<FieldElement>& word,
                               const std::vector<std::size_t>& erased_in_group);

}  // namespace mrlrc
