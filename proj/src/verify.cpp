#include "mrlrc/verify.hpp"

#include <algorithm>
#include <cassert>
#include <thread>

#include "mrlrc/rng.hpp"

namespace mrlrc {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 sat_u64(u128 v) { return v > UINT64_MAX ? UINT64_MAX : static_cast<u64>(v); }

u64 binomial_sat(u64 n, u64 k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u128 num = 1;
  for (u64 i = 1; i <= k; ++i) {
    num = num * (n - k + i) / i;  // exact: prefix products of C are integral
    if (num > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<u64>(num);
}

// Valid per-group erasure counts: a <= e_i <= r, sum = ga+h.
void for_each_composition(const CodeParams& p,
                          const std::function<void(const std::vector<std::uint32_t>&)>& fn) {
  std::vector<std::uint32_t> comp(p.g);
  const std::uint32_t target = p.parity_rows();
  auto rec = [&](auto&& self, std::uint32_t group, std::uint32_t used) -> void {
    const std::uint32_t left = p.g - group;
    if (left == 0) {
      if (used == target) fn(comp);
      return;
    }
    for (std::uint32_t e = p.a; e <= p.r; ++e) {
      const std::uint32_t now = used + e;
      if (now + p.a * (left - 1) > target) break;
      if (now + static_cast<std::uint64_t>(p.r) * (left - 1) < target) continue;
      comp[group] = e;
      self(self, group + 1, now);
    }
  };
  rec(rec, 0, 0);
  (void)target;
}

}  // namespace

std::uint64_t count_maximal_patterns(const CodeParams& params) {
  u128 total = 0;
  for_each_composition(params, [&](const std::vector<std::uint32_t>& comp) {
    u128 prod = 1;
    for (auto e : comp) {
      prod *= binomial_sat(params.r, e);
      if (prod > UINT64_MAX) {
        prod = static_cast<u128>(UINT64_MAX) + 1;
        break;
      }
    }
    total += prod;
  });
  return sat_u64(total);
}

void for_each_maximal_pattern(const CodeParams& params,
                              const std::function<bool(const ErasurePattern&)>& fn) {
  const std::uint32_t target = params.parity_rows();
  std::vector<std::size_t> chosen;
  chosen.reserve(target);
  std::vector<std::uint32_t> cnt(params.g, 0);
  bool alive = true;

  // Depth-first over positions, include-branch first, which yields patterns in
  // lexicographic order of their sorted position lists. Interval feasibility
  // (lower_i = a - cnt_i, upper_i = remaining capacity) prunes dead branches.
  auto feasible = [&](std::size_t pos) {
    const std::uint32_t slots = target - static_cast<std::uint32_t>(chosen.size());
    std::uint64_t lower_sum = 0, upper_sum = 0;
    for (std::uint32_t i = 0; i < params.g; ++i) {
      const std::size_t group_end = static_cast<std::size_t>(i + 1) * params.r;
      const std::size_t avail = pos >= group_end
                                    ? 0
                                    : std::min<std::size_t>(params.r, group_end - pos);
      const std::uint32_t lower = cnt[i] >= params.a ? 0 : params.a - cnt[i];
      const std::size_t upper = std::min<std::size_t>(avail, params.r - cnt[i]);
      if (lower > upper) return false;
      lower_sum += lower;
      upper_sum += upper;
    }
    return lower_sum <= slots && slots <= upper_sum;
  };

  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (!alive || !feasible(pos)) return;
    if (chosen.size() == target) {
      ErasurePattern p;
      p.positions = chosen;
      p.per_group = cnt;
      alive = fn(p);
      return;
    }
    if (pos >= params.n) return;
    const std::uint32_t group = static_cast<std::uint32_t>(pos / params.r);
    if (cnt[group] < params.r) {
      chosen.push_back(pos);
      cnt[group] += 1;
      self(self, pos + 1);
      cnt[group] -= 1;
      chosen.pop_back();
      if (!alive) return;
    }
    self(self, pos + 1);
  };
  rec(rec, 0);
}

std::vector<ErasurePattern> enumerate_maximal_patterns(const CodeParams& params) {
  std::vector<ErasurePattern> out;
  for_each_maximal_pattern(params, [&](const ErasurePattern& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

std::optional<std::pair<std::uint32_t, std::vector<std::size_t>>> find_local_mds_violation(
    const ParityCheck& parity) {
  const CodeParams& p = parity.params;
  std::vector<std::size_t> subset(p.a);
  for (std::uint32_t i = 0; i < p.g; ++i) {
    // iterate a-subsets of {0..r-1}
    for (std::uint32_t j = 0; j < p.a; ++j) subset[j] = j;
    for (;;) {
      if (parity.local[i].select_columns(subset).rank() != p.a) {
        return std::make_pair(i, subset);
      }
      std::size_t pos = p.a;
      while (pos > 0 && subset[pos - 1] == p.r - (p.a - pos + 1)) --pos;
      if (pos == 0) break;
      subset[pos - 1] += 1;
      for (std::size_t j = pos; j < p.a; ++j) subset[j] = subset[j - 1] + 1;
    }
  }
  return std::nullopt;
}

bool verify_local_mds(const ParityCheck& parity) {
  return !find_local_mds_violation(parity).has_value();
}

namespace {

struct WitnessCollector {
  std::size_t cap;
  std::uint64_t count = 0;
  std::vector<std::pair<ErasurePattern, std::string>> witnesses;  // pattern, note

  void add(const ErasurePattern& p, std::string note = {}) {
    ++count;
    if (witnesses.size() < cap) witnesses.emplace_back(p, std::move(note));
  }
};

// Runs `check` over all maximal patterns, optionally striped across threads.
// Witnesses are merged in lexicographic order, so the report is deterministic
// regardless of the partition.
VerificationReport run_over_patterns(
    const ParityCheck& parity, const std::string& mode, const VerifyOptions& options,
    const std::function<bool(const ParityCheck&, const ErasurePattern&, std::string*)>& check) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.mode = mode;
  report.total_patterns = count_maximal_patterns(parity.params);
  if (report.total_patterns > options.budget) {
    throw BudgetExceeded("pattern count " + std::to_string(report.total_patterns) +
                         " exceeds the budget " + std::to_string(options.budget) +
                         "; use sampled verification");
  }
  std::uint32_t jobs = options.jobs == 0 ? std::thread::hardware_concurrency() : options.jobs;
  jobs = std::max<std::uint32_t>(1, std::min<std::uint64_t>(jobs, report.total_patterns ? report.total_patterns : 1));

  std::vector<WitnessCollector> collectors(jobs, WitnessCollector{options.witness_cap, 0, {}});
  std::vector<std::uint64_t> checked(jobs, 0);
  auto work = [&](std::uint32_t worker) {
    std::uint64_t index = 0;
    for_each_maximal_pattern(parity.params, [&](const ErasurePattern& p) {
      if (index++ % jobs != worker) return true;
      ++checked[worker];
      std::string note;
      if (!check(parity, p, &note)) collectors[worker].add(p, std::move(note));
      return true;
    });
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (std::uint32_t w = 0; w < jobs; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }

  for (std::uint32_t w = 0; w < jobs; ++w) {
    report.checked += checked[w];
    report.failure_count += collectors[w].count;
  }
  std::vector<std::pair<ErasurePattern, std::string>> merged;
  for (auto& c : collectors) {
    for (auto& w : c.witnesses) merged.push_back(std::move(w));
  }
  std::sort(merged.begin(), merged.end(),
            [](const auto& a, const auto& b) { return a.first.positions < b.first.positions; });
  if (merged.size() > options.witness_cap) merged.resize(options.witness_cap);
  for (auto& [pattern, note] : merged) {
    report.failures.push_back(std::move(pattern));
    report.notes.push_back(std::move(note));  // parallel to failures, may be empty
  }
  report.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  return report;
}

bool full_rank_on(const ParityCheck& parity, const ErasurePattern& pattern) {
  return parity.H.select_columns(pattern.positions).rank() == parity.params.parity_rows();
}

}  // namespace

VerificationReport verify_mr_exhaustive(const ParityCheck& parity, const VerifyOptions& options) {
  return run_over_patterns(parity, "exhaustive", options,
                           [](const ParityCheck& pc, const ErasurePattern& p, std::string*) {
                             return full_rank_on(pc, p);
                           });
}

VerificationReport verify_mr_structured(const ParityCheck& parity, const VerifyOptions& options) {
  return run_over_patterns(parity, "structured", options,
                           [](const ParityCheck& pc, const ErasurePattern& p, std::string* note) {
                             try {
                               return structured_rank_reduction(pc, p);
                             } catch (const InternalContradiction& e) {
                               *note = e.what();
                               return false;
                             }
                           });
}

std::vector<ErasurePattern> sample_maximal_patterns(const CodeParams& p, std::uint64_t count,
                                                    std::uint64_t seed) {
  std::vector<std::vector<std::uint32_t>> comps;
  std::vector<u64> weights;
  u64 total = 0;
  bool saturated = false;
  for_each_composition(p, [&](const std::vector<std::uint32_t>& comp) {
    u128 w = 1;
    for (auto e : comp) w *= binomial_sat(p.r, e);
    if (w > UINT64_MAX) saturated = true;
    comps.push_back(comp);
    weights.push_back(sat_u64(w));
  });
  if (comps.empty()) throw InvalidParams("no maximal patterns exist for these parameters");
  for (auto w : weights) {
    if (UINT64_MAX - total < w) saturated = true;
    if (saturated) break;
    total += w;
  }

  Rng rng(seed);
  std::vector<long double> cumulative;
  if (saturated) {
    long double acc = 0;
    for (auto w : weights) cumulative.push_back(acc += static_cast<long double>(w));
  }
  std::vector<ErasurePattern> out;
  out.reserve(count);
  for (std::uint64_t trial = 0; trial < count; ++trial) {
    // Stage 1: composition by weight.
    std::size_t ci = 0;
    if (!saturated) {
      u64 target = rng.below(total);
      while (target >= weights[ci]) target -= weights[ci++];
    } else {
      const long double u = static_cast<long double>(rng.next()) /
                            static_cast<long double>(UINT64_MAX);
      const long double target = u * cumulative.back();
      ci = static_cast<std::size_t>(
          std::lower_bound(cumulative.begin(), cumulative.end(), target) - cumulative.begin());
      ci = std::min(ci, comps.size() - 1);
    }
    // Stage 2: uniform e_i-subset per group (selection sampling).
    std::vector<std::size_t> positions;
    for (std::uint32_t i = 0; i < p.g; ++i) {
      std::uint32_t need = comps[ci][i];
      for (std::uint32_t j = 0; j < p.r && need > 0; ++j) {
        if (rng.below(p.r - j) < need) {
          positions.push_back(static_cast<std::size_t>(i) * p.r + j);
          --need;
        }
      }
    }
    out.push_back(make_pattern(p, std::move(positions)));
  }
  return out;
}

VerificationReport verify_mr_sampled(const ParityCheck& parity, std::uint64_t trials,
                                     std::uint64_t seed, const VerifyOptions& options) {
  if (trials < 1) throw InvalidParams("sampled verification needs at least one trial");
  const auto start = std::chrono::steady_clock::now();
  const CodeParams& p = parity.params;
  VerificationReport report;
  report.mode = "sampled";
  report.seed = seed;
  report.trials = trials;
  report.total_patterns = count_maximal_patterns(p);

  WitnessCollector collector{options.witness_cap, 0, {}};
  for (const ErasurePattern& pattern : sample_maximal_patterns(p, trials, seed)) {
    ++report.checked;
    if (!full_rank_on(parity, pattern)) collector.add(pattern);
  }
  report.failure_count = collector.count;
  for (auto& [pattern, note] : collector.witnesses) {
    report.failures.push_back(std::move(pattern));
    report.notes.push_back(std::move(note));
  }
  report.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  return report;
}

StructuredSplits make_splits(const CodeParams& params, const ErasurePattern& pattern,
                             const SplitPolicy& policy) {
  StructuredSplits s;
  std::vector<std::vector<std::size_t>> local(params.g);
  for (auto pos : pattern.positions) {
    local[pos / params.r].push_back(pos % params.r);
  }
  std::uint32_t best = 0;
  for (std::uint32_t i = 1; i < params.g; ++i) {
    const bool bigger = local[i].size() > local[best].size();
    const bool tie = local[i].size() == local[best].size();
    if (bigger || (tie && policy.tie_highest)) best = i;
  }
  s.pivot_group = best;
  if (local[best].size() < params.t) {
    throw InternalContradiction("no local group holds t = " + std::to_string(params.t) +
                                " erased columns; the pattern is not maximal");
  }
  auto take = [&](const std::vector<std::size_t>& from, std::size_t count,
                  std::vector<std::size_t>* taken, std::vector<std::size_t>* rest) {
    if (policy.take_last) {
      taken->assign(from.end() - count, from.end());
      rest->assign(from.begin(), from.end() - count);
    } else {
      taken->assign(from.begin(), from.begin() + count);
      rest->assign(from.begin() + count, from.end());
    }
  };
  s.s_cols.resize(params.g);
  s.t_cols.resize(params.g);
  take(local[best], params.t, &s.x_cols, &s.y_cols);
  for (std::uint32_t i = 0; i < params.g; ++i) {
    if (i == best) continue;
    take(local[i], params.a, &s.s_cols[i], &s.t_cols[i]);
  }
  return s;
}

namespace {

// Row vector of beta values at the given local columns, as a 1 x k matrix.
Matrix beta_row(const ParityCheck& pc, std::uint32_t group, const std::vector<std::size_t>& cols) {
  Matrix out(pc.ext, 1, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) out.set(0, j, pc.betas[group][cols[j]]);
  return out;
}

void assert_column_structure(const ParityCheck& pc, const ErasurePattern& pattern) {
  const CodeParams& p = pc.params;
  const std::uint32_t md = pc.ext->degree();
  for (auto pos : pattern.positions) {
    const std::uint32_t i = static_cast<std::uint32_t>(pos / p.r);
    const std::size_t j = pos % p.r;
    for (std::uint32_t row = 0; row < p.g * p.a; ++row) {
      const std::uint32_t owner = row / p.a;
      const std::uint64_t* cell = pc.H.cell(row, pos);
      if (owner == i) {
        const std::uint64_t expect = *pc.local[i].cell(row % p.a, j);
        if (cell[0] != expect ||
            !std::all_of(cell + 1, cell + md, [](std::uint64_t v) { return v == 0; })) {
          throw InternalContradiction("H local rows do not match the A blocks at column " +
                                      std::to_string(pos));
        }
      } else if (!pc.ext->is_zero(cell)) {
        throw InternalContradiction("H has a nonzero entry outside the diagonal local blocks");
      }
    }
    for (std::uint32_t u = 0; u < p.t - p.a; ++u) {
      const std::uint64_t* cell = pc.H.cell(p.g * p.a + u, pos);
      if (cell[0] != *pc.vandermonde_rows[i].cell(u, j) ||
          !std::all_of(cell + 1, cell + md, [](std::uint64_t v) { return v == 0; })) {
        throw InternalContradiction("H Vandermonde rows do not match the V blocks at column " +
                                    std::to_string(pos));
      }
    }
    for (std::uint32_t u = 0; u < p.h + p.a - p.t; ++u) {
      const std::uint64_t* cell = pc.H.cell(p.g * p.a + (p.t - p.a) + u, pos);
      if (!std::equal(cell, cell + md, pc.gabidulin_rows[i].cell(u, j))) {
        throw InternalContradiction("H Gabidulin rows do not match the G blocks at column " +
                                    std::to_string(pos));
      }
    }
  }
}

void assert_moore_structure(const ParityCheck& pc, const ErasurePattern& pattern) {
  const CodeParams& p = pc.params;
  for (auto pos : pattern.positions) {
    const std::uint32_t i = static_cast<std::uint32_t>(pos / p.r);
    const std::size_t j = pos % p.r;
    FieldElement power = pc.betas[i][j];
    for (std::uint32_t u = 0; u < p.h + p.a - p.t; ++u) {
      if (pc.gabidulin_rows[i].at(u, j) != power) {
        throw InternalContradiction(
            "Gabidulin rows of group " + std::to_string(i) +
            " are not the Frobenius tower of the stored betas (column " + std::to_string(pos) +
            ", row " + std::to_string(u) + ")");
      }
      power = power.frobenius();
    }
  }
}

// Clear `cleared` columns of F using `using_cols`, with coefficients taken
// from the square pivot block F[pivot_rows, using_cols].
void clear_columns(Matrix& f, const std::vector<std::size_t>& pivot_rows,
                   const std::vector<std::size_t>& using_cols,
                   const std::vector<std::size_t>& cleared) {
  if (cleared.empty()) return;
  Matrix pivot_block = f.select_rows(pivot_rows).select_columns(using_cols);
  Matrix target_block = f.select_rows(pivot_rows).select_columns(cleared);
  Matrix coeff = pivot_block.inverse() * target_block;  // |using| x |cleared|
  const auto& fld = f.field();
  std::vector<std::uint64_t> t(fld->degree());
  for (std::size_t row = 0; row < f.rows(); ++row) {
    for (std::size_t c = 0; c < cleared.size(); ++c) {
      for (std::size_t u = 0; u < using_cols.size(); ++u) {
        fld->mul(f.cell(row, using_cols[u]), coeff.cell(u, c), t.data());
        fld->sub(f.cell(row, cleared[c]), t.data(), f.cell(row, cleared[c]));
      }
    }
  }
}

}  // namespace

StructuredTrace structured_reduction_trace(const ParityCheck& pc, const ErasurePattern& pattern,
                                           const SplitPolicy& policy) {
  const CodeParams& p = pc.params;
  if (!is_maximal_correctable(p, pattern)) {
    throw InvalidParams("structured reduction expects a maximal correctable pattern");
  }
  assert_column_structure(pc, pattern);
  assert_moore_structure(pc, pattern);

  StructuredTrace trace;
  trace.splits = make_splits(p, pattern, policy);
  const StructuredSplits& sp = trace.splits;
  const std::uint32_t gamma = sp.pivot_group;
  const std::uint32_t gab_rows = p.h + p.a - p.t;

  // Columns of the proof matrices, in the paper's order: S_1 T_1 ... Y X.
  std::vector<std::uint64_t> ordered_points;
  std::vector<std::pair<std::uint32_t, std::size_t>> ordered_cols;  // (group, local col)
  for (std::uint32_t i = 0; i < p.g; ++i) {
    if (i == gamma) continue;
    for (auto j : sp.s_cols[i]) ordered_cols.emplace_back(i, j);
    for (auto j : sp.t_cols[i]) ordered_cols.emplace_back(i, j);
  }
  for (auto j : sp.y_cols) ordered_cols.emplace_back(gamma, j);
  for (auto j : sp.x_cols) ordered_cols.emplace_back(gamma, j);
  for (auto [i, j] : ordered_cols) ordered_points.push_back(pc.points.x[i][j]);

  // The proof matrix F: stacking the A rows, V rows and beta coordinates of
  // the pattern's columns must give the plain Vandermonde of its points.
  const std::size_t full = p.parity_rows();
  {
    std::vector<FieldElement> pts;
    for (auto x : ordered_points) pts.push_back(pc.base->from_base(x));
    trace.proof_vandermonde = vandermonde(pc.base, pts, 0, full);
    Matrix stacked(pc.base, full, ordered_cols.size());
    for (std::size_t c = 0; c < ordered_cols.size(); ++c) {
      const auto [i, j] = ordered_cols[c];
      for (std::uint32_t u = 0; u < p.a; ++u) {
        stacked.set_base(u, c, *pc.local[i].cell(u, j));
      }
      for (std::uint32_t u = 0; u < p.t - p.a; ++u) {
        stacked.set_base(p.a + u, c, *pc.vandermonde_rows[i].cell(u, j));
      }
      const Coeffs& bc = pc.betas[i][j].coords();
      for (std::uint32_t u = 0; u < p.m; ++u) {
        stacked.set_base(p.t + u, c, bc[u]);
      }
    }
    if (!(stacked == trace.proof_vandermonde)) {
      throw InternalContradiction(
          "the stacked A/V/beta coordinates are not the Vandermonde matrix of the "
          "evaluation points");
    }
    if (trace.proof_vandermonde.rank() != full) {
      throw InternalContradiction("the proof's Vandermonde matrix is singular: the pattern's "
                                  "evaluation points are not distinct");
    }
  }

  // Step 1: in each non-pivot group, eliminate the T_i columns against the
  // invertible a x a block A_i(S_i). Tracks the Schur complements of the V
  // rows and the beta generators.
  std::vector<Matrix> v_prime(p.g), g_prime(p.g), beta_prime(p.g);
  for (std::uint32_t i = 0; i < p.g; ++i) {
    if (i == gamma || sp.t_cols[i].empty()) continue;
    Matrix a_s = pc.local[i].select_columns(sp.s_cols[i]);
    Matrix a_t = pc.local[i].select_columns(sp.t_cols[i]);
    Matrix r_i;
    try {
      r_i = a_s.inverse() * a_t;  // over F_q
    } catch (const SingularMatrix&) {
      throw InternalContradiction("A_" + std::to_string(i) +
                                  "(S_i) is singular; the local block is not MDS");
    }
    const Matrix r_ext = r_i.lifted(pc.ext);
    v_prime[i] = pc.vandermonde_rows[i].select_columns(sp.t_cols[i]) -
                 pc.vandermonde_rows[i].select_columns(sp.s_cols[i]) * r_i;
    g_prime[i] = pc.gabidulin_rows[i].select_columns(sp.t_cols[i]) -
                 pc.gabidulin_rows[i].select_columns(sp.s_cols[i]) * r_ext;
    beta_prime[i] = beta_row(pc, i, sp.t_cols[i]) - beta_row(pc, i, sp.s_cols[i]) * r_ext;
  }

  // M2: the (h+a) x (h+a) submatrix on columns [T_1 .. T_{g-1} | Y | X] and the
  // pivot group's local rows plus all global rows.
  {
    Matrix m2(pc.ext, p.h + p.a, p.h + p.a);
    std::size_t col = 0;
    auto put_col = [&](const Matrix& a_part, const Matrix& v_part, const Matrix& g_part,
                       std::size_t src) {
      const std::uint32_t md = pc.ext->degree();
      for (std::uint32_t u = 0; u < p.a; ++u) {
        if (!a_part.empty()) {
          std::copy(a_part.cell(u, src), a_part.cell(u, src) + md, m2.cell(u, col));
        }
      }
      for (std::uint32_t u = 0; u < p.t - p.a; ++u) {
        std::copy(v_part.cell(u, src), v_part.cell(u, src) + md, m2.cell(p.a + u, col));
      }
      for (std::uint32_t u = 0; u < gab_rows; ++u) {
        std::copy(g_part.cell(u, src), g_part.cell(u, src) + md, m2.cell(p.t + u, col));
      }
      ++col;
    };
    for (std::uint32_t i = 0; i < p.g; ++i) {
      if (i == gamma || sp.t_cols[i].empty()) continue;
      const Matrix v_ext = v_prime[i].lifted(pc.ext);
      for (std::size_t c = 0; c < sp.t_cols[i].size(); ++c) {
        put_col(Matrix{}, v_ext, g_prime[i], c);
      }
    }
    const Matrix a_y = pc.local[gamma].select_columns(sp.y_cols).lifted(pc.ext);
    const Matrix v_y = pc.vandermonde_rows[gamma].select_columns(sp.y_cols).lifted(pc.ext);
    const Matrix g_y = pc.gabidulin_rows[gamma].select_columns(sp.y_cols);
    for (std::size_t c = 0; c < sp.y_cols.size(); ++c) put_col(a_y, v_y, g_y, c);
    const Matrix a_x = pc.local[gamma].select_columns(sp.x_cols).lifted(pc.ext);
    const Matrix v_x = pc.vandermonde_rows[gamma].select_columns(sp.x_cols).lifted(pc.ext);
    const Matrix g_x = pc.gabidulin_rows[gamma].select_columns(sp.x_cols);
    for (std::size_t c = 0; c < sp.x_cols.size(); ++c) put_col(a_x, v_x, g_x, c);
    assert(col == p.h + p.a);
    trace.m2 = std::move(m2);
  }

  // Step 2: eliminate against the t x t Vandermonde W(X) = [A_g(X); V_g(X)].
  Matrix w_x = Matrix::vconcat(pc.local[gamma].select_columns(sp.x_cols),
                               pc.vandermonde_rows[gamma].select_columns(sp.x_cols));
  Matrix w_x_inv;
  try {
    w_x_inv = w_x.inverse();
  } catch (const SingularMatrix&) {
    throw InternalContradiction("W(X) is singular; the pivot group's points are not distinct");
  }
  const Matrix beta_x = beta_row(pc, gamma, sp.x_cols);
  const Matrix g_x = pc.gabidulin_rows[gamma].select_columns(sp.x_cols);

  std::vector<Matrix> m4_blocks, m5_blocks;
  for (std::uint32_t i = 0; i < p.g; ++i) {
    if (i == gamma || sp.t_cols[i].empty()) continue;
    // V''_i = [0; V'_i], padded to the t rows W(X) acts on.
    Matrix v_dd(pc.base, p.t, sp.t_cols[i].size());
    for (std::uint32_t u = 0; u < p.t - p.a; ++u) {
      for (std::size_t c = 0; c < sp.t_cols[i].size(); ++c) {
        std::copy(v_prime[i].cell(u, c), v_prime[i].cell(u, c) + 1, v_dd.cell(p.a + u, c));
      }
    }
    const Matrix u_i = (w_x_inv * v_dd).lifted(pc.ext);
    m4_blocks.push_back(g_prime[i] - g_x * u_i);
    m5_blocks.push_back(beta_prime[i] - beta_x * u_i);
  }
  if (!sp.y_cols.empty()) {
    Matrix w_y = Matrix::vconcat(pc.local[gamma].select_columns(sp.y_cols),
                                 pc.vandermonde_rows[gamma].select_columns(sp.y_cols));
    const Matrix k_y = (w_x_inv * w_y).lifted(pc.ext);
    m4_blocks.push_back(pc.gabidulin_rows[gamma].select_columns(sp.y_cols) - g_x * k_y);
    m5_blocks.push_back(beta_row(pc, gamma, sp.y_cols) - beta_x * k_y);
  }

  trace.m4 = Matrix(pc.ext, gab_rows, 0);
  Matrix m5_row(pc.ext, 1, 0);
  for (std::size_t b = 0; b < m4_blocks.size(); ++b) {
    trace.m4 = Matrix::hconcat(trace.m4, m4_blocks[b]);
    m5_row = Matrix::hconcat(m5_row, m5_blocks[b]);
  }
  for (std::size_t c = 0; c < m5_row.cols(); ++c) trace.m5.push_back(m5_row.at(0, c));

  // Lemma 1 turns full rank of the Moore block M4 into F_q-linear independence
  // of its generators: decide via the m x (h+a-t) coordinate matrix.
  trace.m5_coords = Matrix(pc.base, p.m, trace.m5.size());
  for (std::size_t c = 0; c < trace.m5.size(); ++c) {
    const Coeffs& bc = trace.m5[c].coords();
    for (std::uint32_t u = 0; u < p.m; ++u) trace.m5_coords.set_base(u, c, bc[u]);
  }
  trace.verdict = trace.m5_coords.rank() == trace.m5.size();

  // Replay the same two elimination rounds on F itself; the beta rows its
  // T/Y columns end with must be exactly the coordinates of M5.
  {
    Matrix f2 = trace.proof_vandermonde;
    std::size_t base_col = 0;
    std::vector<std::size_t> t_positions, y_positions, x_positions;
    std::vector<std::size_t> a_rows(p.a), w_rows(p.t);
    for (std::uint32_t u = 0; u < p.a; ++u) a_rows[u] = u;
    for (std::uint32_t u = 0; u < p.t; ++u) w_rows[u] = u;
    for (std::uint32_t i = 0; i < p.g; ++i) {
      if (i == gamma) continue;
      std::vector<std::size_t> s_positions;
      for (std::size_t c = 0; c < sp.s_cols[i].size(); ++c) s_positions.push_back(base_col + c);
      base_col += sp.s_cols[i].size();
      std::vector<std::size_t> t_here;
      for (std::size_t c = 0; c < sp.t_cols[i].size(); ++c) t_here.push_back(base_col + c);
      base_col += sp.t_cols[i].size();
      clear_columns(f2, a_rows, s_positions, t_here);
      t_positions.insert(t_positions.end(), t_here.begin(), t_here.end());
    }
    for (std::size_t c = 0; c < sp.y_cols.size(); ++c) y_positions.push_back(base_col + c);
    base_col += sp.y_cols.size();
    for (std::size_t c = 0; c < sp.x_cols.size(); ++c) x_positions.push_back(base_col + c);
    std::vector<std::size_t> to_clear = t_positions;
    to_clear.insert(to_clear.end(), y_positions.begin(), y_positions.end());
    clear_columns(f2, w_rows, x_positions, to_clear);

    std::vector<std::size_t> beta_rows(p.m);
    for (std::uint32_t u = 0; u < p.m; ++u) beta_rows[u] = p.t + u;
    trace.f2_beta_tail = f2.select_rows(beta_rows).select_columns(to_clear);
    if (!(trace.f2_beta_tail == trace.m5_coords)) {
      throw InternalContradiction("the Vandermonde-route replay disagrees with the Schur route");
    }
  }
  return trace;
}

bool structured_rank_reduction(const ParityCheck& pc, const ErasurePattern& pattern,
                               const SplitPolicy& policy) {
  return structured_reduction_trace(pc, pattern, policy).verdict;
}

}  // namespace mrlrc
