#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mrlrc/code.hpp"

namespace mrlrc {

struct VerificationReport {
  std::string mode;  // "exhaustive" | "sampled" | "structured"
  std::uint64_t total_patterns = 0;
  std::uint64_t checked = 0;
  std::uint64_t failure_count = 0;
  std::vector<ErasurePattern> failures;  // lexicographically first witnesses, capped
  std::vector<std::string> notes;        // e.g. contradiction messages, capped
  std::uint64_t seed = 0;                // sampled mode only
  std::uint64_t trials = 0;              // sampled mode only
  std::chrono::milliseconds elapsed{0};

  bool pass() const { return failure_count == 0; }
};

/// Number of maximal correctable patterns: the sum over compositions
/// (e_1..e_g), a <= e_i <= r, sum e_i = ga+h, of prod C(r, e_i).
/// Saturates at UINT64_MAX.
std::uint64_t count_maximal_patterns(const CodeParams& params);

/// Streams every maximal correctable pattern exactly once, in lexicographic
/// order of the sorted position lists. The callback returns false to stop.
void for_each_maximal_pattern(const CodeParams& params,
                              const std::function<bool(const ErasurePattern&)>& fn);

std::vector<ErasurePattern> enumerate_maximal_patterns(const CodeParams& params);

/// Every a-subset of every local parity matrix has rank a.
bool verify_local_mds(const ParityCheck& parity);

/// First (group, column subset) whose local columns are dependent, if any.
std::optional<std::pair<std::uint32_t, std::vector<std::size_t>>> find_local_mds_violation(
    const ParityCheck& parity);

/// Uniform draws from the maximal-pattern distribution: a composition chosen
/// with probability proportional to its pattern count, then uniform subsets
/// per group. Deterministic under a fixed seed.
std::vector<ErasurePattern> sample_maximal_patterns(const CodeParams& params, std::uint64_t count,
                                                    std::uint64_t seed);

struct VerifyOptions {
  std::uint64_t budget = 10'000'000;  // max patterns for the exhaustive modes
  std::uint32_t jobs = 1;             // 0 = hardware concurrency
  std::size_t witness_cap = 100;      // failures retained in the report
};

/// rank(H(E)) = ga+h for every maximal pattern. Throws BudgetExceeded if the
/// pattern count is over options.budget (use the sampled mode instead).
VerificationReport verify_mr_exhaustive(const ParityCheck& parity, const VerifyOptions& options = {});

/// Uniform samples from the maximal-pattern distribution (composition chosen
/// by weight, then uniform subsets per group); deterministic under a fixed seed.
VerificationReport verify_mr_sampled(const ParityCheck& parity, std::uint64_t trials,
                                     std::uint64_t seed, const VerifyOptions& options = {});

/// Runs the structured reduction on every maximal pattern; a contradiction is
/// recorded as a failure witness, never swallowed.
VerificationReport verify_mr_structured(const ParityCheck& parity, const VerifyOptions& options = {});

/// The proof splits the pattern's columns arbitrarily; this policy pins a
/// deterministic choice and lets tests vary it.
struct SplitPolicy {
  bool take_last = false;    // X and S_i from the back instead of the front
  bool tie_highest = false;  // tie-break the pivot group to the highest index
};

struct StructuredSplits {
  std::uint32_t pivot_group = 0;                  // the proof's "group g"
  std::vector<std::size_t> x_cols, y_cols;        // local column indices in the pivot group
  std::vector<std::vector<std::size_t>> s_cols;   // per group, empty at the pivot
  std::vector<std::vector<std::size_t>> t_cols;
};

StructuredSplits make_splits(const CodeParams& params, const ErasurePattern& pattern,
                             const SplitPolicy& policy = {});

/// Full replay of the rank reduction H(E) -> M1 -> ... -> M5 plus the
/// Vandermonde route F -> F2, with every intermediate kept for inspection.
struct StructuredTrace {
  StructuredSplits splits;
  Matrix m2;                      // (h+a) x (h+a) over the extension
  Matrix m4;                      // (h+a-t) x (h+a-t) over the extension
  std::vector<FieldElement> m5;   // generators of m4's Moore columns
  Matrix m5_coords;               // m x (h+a-t) over F_q
  Matrix proof_vandermonde;       // F: (ga+h) x (ga+h) over F_q, columns in split order
  Matrix f2_beta_tail;            // beta rows of F_2 at the T/Y columns: m x (h+a-t)
  bool verdict = false;           // full column rank of m5_coords
};

/// Replays the construction's rank-reduction argument on one maximal pattern
/// and decides full rank from the reduced m x (h+a-t) coordinate matrix.
/// Steps the construction guarantees are asserted along the way: the column
/// structure of H, the Moore structure of the Gabidulin rows, invertibility of
/// the pivot blocks, and the Vandermonde shape of the proof matrix F. Any
/// violation throws InternalContradiction: the parity check then provably does
/// not come from the construction.
StructuredTrace structured_reduction_trace(const ParityCheck& parity, const ErasurePattern& pattern,
                                           const SplitPolicy& policy = {});

bool structured_rank_reduction(const ParityCheck& parity, const ErasurePattern& pattern,
                               const SplitPolicy& policy = {});

}  // namespace mrlrc
