#include "mrlrc/code.hpp"

#include <algorithm>
#include <cassert>
#include <string>

namespace mrlrc {

ErasurePattern make_pattern(const CodeParams& params, std::vector<std::size_t> positions) {
  std::sort(positions.begin(), positions.end());
  if (std::adjacent_find(positions.begin(), positions.end()) != positions.end()) {
    throw InvalidParams("erasure pattern has duplicate positions");
  }
  if (!positions.empty() && positions.back() >= params.n) {
    throw InvalidParams("erasure position out of range");
  }
  ErasurePattern p;
  p.per_group.assign(params.g, 0);
  for (auto pos : positions) p.per_group[pos / params.r] += 1;
  p.positions = std::move(positions);
  return p;
}

bool is_maximal_correctable(const CodeParams& params, const ErasurePattern& pattern) {
  if (pattern.positions.size() != params.parity_rows()) return false;
  for (auto e : pattern.per_group) {
    if (e < params.a || e > params.r) return false;
  }
  return true;
}

namespace {

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& sorted) {
  std::vector<std::size_t> out;
  out.reserve(n - sorted.size());
  std::size_t idx = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (idx < sorted.size() && sorted[idx] == j) {
      ++idx;
    } else {
      out.push_back(j);
    }
  }
  return out;
}

}  // namespace

MrLrcCode make_code(ParityCheck parity) {
  const CodeParams& p = parity.params;
  const std::size_t full = p.parity_rows();
  if (parity.H.rank() != full) {
    throw RankDeficientParity("parity-check matrix does not have full row rank");
  }
  // Lexicographically first k columns whose complement stays a column basis.
  std::vector<std::size_t> info;
  for (std::size_t j = 0; j < p.n && info.size() < p.k; ++j) {
    std::vector<std::size_t> candidate = info;
    candidate.push_back(j);
    if (parity.H.select_columns(complement(p.n, candidate)).rank() == full) {
      info = std::move(candidate);
    }
  }
  assert(info.size() == p.k);
  return make_code(std::move(parity), std::move(info));
}

MrLrcCode make_code(ParityCheck parity, std::vector<std::size_t> info_positions) {
  const CodeParams& p = parity.params;
  const std::size_t full = p.parity_rows();
  if (info_positions.size() != p.k) throw InvalidParams("wrong number of information positions");
  std::sort(info_positions.begin(), info_positions.end());
  const std::vector<std::size_t> par = complement(p.n, info_positions);
  Matrix hp = parity.H.select_columns(par);
  Matrix hp_inv;
  try {
    hp_inv = hp.inverse();
  } catch (const SingularMatrix&) {
    throw RankDeficientParity("parity columns for the given information set are singular");
  }
  // Parity values per unit message: Y = -HP^{-1} H(info).
  Matrix hi = parity.H.select_columns(info_positions);
  Matrix y = hp_inv * hi;
  const FieldPtr& ext = parity.ext;
  Matrix gen(ext, p.k, p.n);
  for (std::size_t u = 0; u < p.k; ++u) {
    gen.set_base(u, info_positions[u], 1);
    for (std::size_t l = 0; l < full; ++l) {
      Coeffs negv(ext->degree());
      ext->neg(y.cell(l, u), negv.data());
      std::copy(negv.begin(), negv.end(), gen.cell(u, par[l]));
    }
  }
  MrLrcCode code;
  code.parity = std::move(parity);
  code.info_positions = std::move(info_positions);
  code.generator = std::move(gen);
  return code;
}

std::vector<FieldElement> encode(const MrLrcCode& code, const std::vector<FieldElement>& message) {
  if (message.size() != code.parity.params.k) {
    throw LengthMismatch("message must have k = " + std::to_string(code.parity.params.k) +
                         " symbols, got " + std::to_string(message.size()));
  }
  return vec_mat(message, code.generator);
}

namespace {

// Syndrome of a fully known word: H * word.
std::vector<FieldElement> syndrome(const ParityCheck& parity,
                                   const std::vector<FieldElement>& word) {
  return mat_vec(parity.H, word);
}

bool all_zero(const std::vector<FieldElement>& v) {
  return std::all_of(v.begin(), v.end(), [](const FieldElement& x) { return x.is_zero(); });
}

}  // namespace

LocalRepairResult local_repair(const MrLrcCode& code, std::uint32_t group,
                               const std::vector<FieldElement>& word,
                               const std::vector<std::size_t>& erased_in_group) {
  const CodeParams& p = code.parity.params;
  if (group >= p.g) throw InvalidParams("group index out of range");
  if (word.size() != p.n) throw LengthMismatch("word must have n symbols");
  const std::size_t lo = static_cast<std::size_t>(group) * p.r;
  const std::size_t hi = lo + p.r;
  std::vector<std::size_t> erased = erased_in_group;
  std::sort(erased.begin(), erased.end());
  if (std::adjacent_find(erased.begin(), erased.end()) != erased.end()) {
    throw InvalidParams("duplicate erased positions");
  }
  for (auto pos : erased) {
    if (pos < lo || pos >= hi) throw InvalidParams("erased position outside the group");
  }
  if (erased.size() > p.a) {
    throw TooManyLocalErasures("group " + std::to_string(group) + " has " +
                               std::to_string(erased.size()) + " erasures, local repair handles at most " +
                               std::to_string(p.a));
  }
  LocalRepairResult result;
  if (erased.empty()) return result;

  // Pad with virtual erasures so exactly `a` symbols are treated as unknown;
  // the remaining r-a symbols are the only ones read.
  std::vector<std::size_t> unknowns = erased;
  for (std::size_t pos = lo; pos < hi && unknowns.size() < p.a; ++pos) {
    if (!std::binary_search(erased.begin(), erased.end(), pos)) unknowns.push_back(pos);
  }
  std::sort(unknowns.begin(), unknowns.end());

  const FieldPtr& ext = code.parity.ext;
  const Matrix a_lift = code.parity.local[group].lifted(ext);
  std::vector<std::size_t> unknown_local, read_local;
  for (auto pos : unknowns) unknown_local.push_back(pos - lo);
  for (std::size_t j = 0; j < p.r; ++j) {
    if (!std::binary_search(unknown_local.begin(), unknown_local.end(), j)) read_local.push_back(j);
  }

  // rhs = -sum over read symbols of A_i column * value; only reads are touched.
  std::vector<FieldElement> rhs(p.a, ext->zero());
  for (auto j : read_local) {
    const std::size_t pos = lo + j;
    result.reads.push_back(pos);
    for (std::uint32_t u = 0; u < p.a; ++u) {
      rhs[u] = rhs[u] - a_lift.at(u, j) * word[pos];
    }
  }
  const SolveResult sol = solve_linear(a_lift.select_columns(unknown_local), rhs);
  if (sol.outcome != SolveOutcome::ok) {
    throw SingularMatrix("local parity system is singular; the group is not MDS");
  }
  for (std::size_t idx = 0; idx < unknowns.size(); ++idx) {
    if (std::binary_search(erased.begin(), erased.end(), unknowns[idx])) {
      result.repaired.emplace_back(unknowns[idx], sol.solution[idx]);
    }
  }
  return result;
}

std::vector<FieldElement> erasure_decode(const MrLrcCode& code, std::vector<FieldElement> word,
                                         const ErasurePattern& pattern) {
  const CodeParams& p = code.parity.params;
  if (word.size() != p.n) throw LengthMismatch("word must have n symbols");
  const FieldPtr& ext = code.parity.ext;
  for (auto pos : pattern.positions) word[pos] = ext->zero();

  // Local phase: groups with at most `a` erasures are repaired in isolation.
  std::vector<std::vector<std::size_t>> by_group(p.g);
  for (auto pos : pattern.positions) by_group[pos / p.r].push_back(pos);
  std::vector<std::size_t> remaining;
  for (std::uint32_t i = 0; i < p.g; ++i) {
    if (by_group[i].empty()) continue;
    if (by_group[i].size() <= p.a) {
      LocalRepairResult rep;
      try {
        rep = local_repair(code, i, word, by_group[i]);
      } catch (const SingularMatrix&) {
        throw UncorrectablePattern("local parity columns of group " + std::to_string(i) +
                                   " are dependent");
      }
      for (const auto& [pos, value] : rep.repaired) word[pos] = value;
    } else {
      remaining.insert(remaining.end(), by_group[i].begin(), by_group[i].end());
    }
  }

  // Global phase: solve H(E_rem) x = -H(known) y over all ga+h parities.
  if (!remaining.empty()) {
    std::vector<FieldElement> rhs(p.parity_rows(), ext->zero());
    const std::vector<FieldElement> syn = syndrome(code.parity, word);  // erased already zeroed
    for (std::size_t u = 0; u < rhs.size(); ++u) rhs[u] = -syn[u];
    const SolveResult sol = solve_linear(code.parity.H.select_columns(remaining), rhs);
    if (sol.outcome == SolveOutcome::rank_deficient) {
      throw UncorrectablePattern("erased columns of H are linearly dependent");
    }
    if (sol.outcome == SolveOutcome::inconsistent) {
      throw InconsistentWord("surviving symbols satisfy no codeword");
    }
    for (std::size_t idx = 0; idx < remaining.size(); ++idx) {
      word[remaining[idx]] = sol.solution[idx];
    }
  }

  if (!all_zero(syndrome(code.parity, word))) {
    throw InconsistentWord("repaired word violates a parity check");
  }
  return word;
}

}  // namespace mrlrc
