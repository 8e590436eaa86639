#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mrlrc/linalg.hpp"

namespace mrlrc {

/// The (n, r, h, a, g) tuple plus everything derived from it:
///   t = a + ceil(h/g), m = h + ga - t, q = least prime >= n, k = n - ga - h.
struct CodeParams {
  std::uint32_t n = 0;  // code length
  std::uint32_t r = 0;  // local group size, n = g*r
  std::uint32_t h = 0;  // global parities
  std::uint32_t a = 0;  // local parities per group
  std::uint32_t g = 0;  // number of local groups
  std::uint32_t t = 0;
  std::uint32_t m = 0;  // extension degree: the field is F_{q^m}
  std::uint32_t k = 0;  // dimension
  std::uint64_t q = 0;  // base field order

  std::uint32_t parity_rows() const { return g * a + h; }
};

/// Field shape only (t, m, q); defined even when the dimension k would be 0.
struct FieldShape {
  std::uint32_t t = 0;
  std::uint32_t m = 0;
  std::uint64_t q = 0;
};

/// Validates everything except k >= 1. Throws InvalidParams with a distinct
/// message per violated constraint.
FieldShape derive_field_shape(std::uint32_t n, std::uint32_t r, std::uint32_t h,
                              std::uint32_t a, std::uint32_t g);

/// Full parameter derivation; additionally requires k = n - ga - h >= 1.
CodeParams derive_params(std::uint32_t n, std::uint32_t r, std::uint32_t h,
                         std::uint32_t a, std::uint32_t g);

/// g x r grid of base-field residues; the honest builders keep all g*r points
/// pairwise distinct (a requirement of the construction, checked by verify).
struct EvaluationPoints {
  std::vector<std::vector<std::uint64_t>> x;
};

/// Canonical deterministic assignment: x[i][j] = i*r + j, leftovers unused.
EvaluationPoints evaluation_points(const CodeParams& params);

/// Seeded variant: shuffles the q field elements and takes the first n, so any
/// partition into distinct points can be exercised.
EvaluationPoints evaluation_points(const CodeParams& params, std::uint64_t shuffle_seed);

bool points_distinct(const EvaluationPoints& points);

/// A_i: the a x r Vandermonde rows x^0 .. x^{a-1} on the group's points.
Matrix build_local_parity(const FieldPtr& base, const std::vector<std::uint64_t>& group_points,
                          std::uint32_t a);

/// beta(x): the extension element with coordinates (x^t, x^{t+1}, ..., x^{t+m-1}).
FieldElement build_beta(const FieldPtr& ext, std::uint64_t x, std::uint32_t t);

struct GlobalParity {
  Matrix vandermonde_rows;            // V_i: (t-a) x r over the base field
  Matrix gabidulin_rows;              // G_i: (h+a-t) x r over the extension
  std::vector<FieldElement> betas;    // beta_{i,1..r}
};

GlobalParity build_global_parity(const FieldPtr& base, const FieldPtr& ext,
                                 const std::vector<std::uint64_t>& group_points,
                                 const CodeParams& params);

/// The assembled parity-check matrix and every block it is made of.
struct ParityCheck {
  CodeParams params;
  FieldPtr base;  // F_q
  FieldPtr ext;   // F_{q^m}
  EvaluationPoints points;
  std::vector<Matrix> local;                       // A_i over F_q
  std::vector<Matrix> vandermonde_rows;            // V_i over F_q
  std::vector<Matrix> gabidulin_rows;              // G_i over F_{q^m}
  std::vector<std::vector<FieldElement>> betas;    // per group
  Matrix H;                                        // (ga+h) x n over F_{q^m}
};

/// Stack the blocks into the (ga+h) x n parity-check matrix: block-diagonal
/// local rows over the concatenated global rows [V_i; G_i].
Matrix assemble_H(const CodeParams& params, const FieldPtr& ext,
                  const std::vector<Matrix>& local,
                  const std::vector<Matrix>& vandermonde_rows,
                  const std::vector<Matrix>& gabidulin_rows);

ParityCheck assemble_parity(const CodeParams& params, const EvaluationPoints& points);

}  // namespace mrlrc
