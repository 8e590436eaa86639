// Independent test oracles. These deliberately avoid the library's elimination
// code paths: rank via largest nonzero minor, Schur complements via literal
// column operations with a self-contained solver.
#pragma once

#include <vector>

#include "mrlrc/linalg.hpp"

namespace mrlrc::oracle {

inline FieldElement determinant(const Matrix& m) {
  const std::size_t n = m.rows();
  const auto& f = m.field();
  if (n == 0) return f->one();
  if (n == 1) return m.at(0, 0);
  FieldElement det = f->zero();
  std::vector<std::size_t> rest_rows;
  for (std::size_t i = 1; i < n; ++i) rest_rows.push_back(i);
  bool negate = false;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::size_t> rest_cols;
    for (std::size_t c = 0; c < n; ++c) {
      if (c != j) rest_cols.push_back(c);
    }
    const FieldElement cofactor =
        m.at(0, j) * determinant(m.select_rows(rest_rows).select_columns(rest_cols));
    det = negate ? det - cofactor : det + cofactor;
    negate = !negate;
  }
  return det;
}

/// Rank as the size of the largest square submatrix with nonzero determinant.
/// Exponential; use only on small matrices.
inline std::size_t minor_rank(const Matrix& m) {
  const std::size_t bound = std::min(m.rows(), m.cols());
  auto subsets = [](std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur(k);
    for (std::size_t i = 0; i < k; ++i) cur[i] = i;
    if (k == 0) {
      out.push_back({});
      return out;
    }
    for (;;) {
      out.push_back(cur);
      std::size_t pos = k;
      while (pos > 0 && cur[pos - 1] == n - (k - pos + 1)) --pos;
      if (pos == 0) break;
      cur[pos - 1] += 1;
      for (std::size_t i = pos; i < k; ++i) cur[i] = cur[i - 1] + 1;
    }
    return out;
  };
  for (std::size_t k = bound; k >= 1; --k) {
    for (const auto& rows : subsets(m.rows(), k)) {
      for (const auto& cols : subsets(m.cols(), k)) {
        if (!determinant(m.select_rows(rows).select_columns(cols)).is_zero()) return k;
      }
    }
  }
  return 0;
}

/// Solves the square system A x = b by its own elimination (no shared code
/// with Matrix::inverse). A must be invertible.
inline std::vector<FieldElement> tiny_solve(const Matrix& a, std::vector<FieldElement> b) {
  const std::size_t n = a.rows();
  std::vector<std::vector<FieldElement>> w(n, std::vector<FieldElement>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w[i][j] = a.at(i, j);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && w[piv][c].is_zero()) ++piv;
    std::swap(w[piv], w[c]);
    std::swap(b[piv], b[c]);
    const FieldElement inv = w[c][c].inverse();
    for (std::size_t j = 0; j < n; ++j) w[c][j] = w[c][j] * inv;
    b[c] = b[c] * inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || w[i][c].is_zero()) continue;
      const FieldElement factor = w[i][c];
      for (std::size_t j = 0; j < n; ++j) w[i][j] = w[i][j] - factor * w[c][j];
      b[i] = b[i] - factor * b[c];
    }
  }
  return b;
}

/// Lemma-2 route: remove each B column with literal column operations against
/// the A block, returning the transformed matrix (complement in place of D).
inline Matrix schur_by_column_ops(const Matrix& m, std::size_t split) {
  Matrix out = m;
  const Matrix a = m.block(0, 0, split, split);
  for (std::size_t j = split; j < m.cols(); ++j) {
    std::vector<FieldElement> bj;
    for (std::size_t i = 0; i < split; ++i) bj.push_back(m.at(i, j));
    const std::vector<FieldElement> lambda = tiny_solve(a, bj);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      FieldElement v = out.at(i, j);
      for (std::size_t l = 0; l < split; ++l) v = v - lambda[l] * m.at(i, l);
      out.set(i, j, v);
    }
  }
  return out;
}

}  // namespace mrlrc::oracle
