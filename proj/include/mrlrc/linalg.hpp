#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mrlrc/gf.hpp"

namespace mrlrc {

/// Dense matrix over one Field, row-major flat storage of canonical residues
/// (stride degree() per entry). Matrices are values: operations are pure,
/// results are new matrices, and read-only sharing across threads is safe.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);  // zero-filled
  static Matrix identity(const FieldPtr& field, std::size_t n);

  const FieldPtr& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  FieldElement at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const FieldElement& v);
  void set_base(std::size_t i, std::size_t j, std::uint64_t residue);

  std::uint64_t* cell(std::size_t i, std::size_t j) {
    return d_.data() + (i * cols_ + j) * stride_;
  }
  const std::uint64_t* cell(std::size_t i, std::size_t j) const {
    return d_.data() + (i * cols_ + j) * stride_;
  }

  bool operator==(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix operator*(const Matrix& rhs) const;

  /// Rank by exact Gaussian elimination; the pivot is always the first row
  /// with a nonzero entry in the current column, so results are deterministic.
  std::size_t rank() const;

  /// Inverse of a square matrix; throws SingularMatrix if rank < dimension.
  Matrix inverse() const;

  Matrix select_columns(std::span<const std::size_t> cols) const;
  Matrix select_rows(std::span<const std::size_t> rows) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const;

  /// Embed a prime-field matrix into an extension of the same characteristic.
  Matrix lifted(const FieldPtr& ext) const;

  static Matrix hconcat(const Matrix& left, const Matrix& right);
  static Matrix vconcat(const Matrix& top, const Matrix& bottom);

 private:
  FieldPtr field_;
  std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
  std::vector<std::uint64_t> d_;
};

/// M * x for a column vector x.
std::vector<FieldElement> mat_vec(const Matrix& m, const std::vector<FieldElement>& x);
/// x^T * M for a row vector x.
std::vector<FieldElement> vec_mat(const std::vector<FieldElement>& x, const Matrix& m);

struct SchurResult {
  Matrix transformed;  // [A, 0; C, D - C A^{-1} B]
  Matrix complement;   // D - C A^{-1} B
};

/// Column-eliminate the B block of M = [A, B; C, D] using the invertible
/// square block A = M[0..split, 0..split). Throws SingularBlock if A is not
/// invertible and InvalidParams if row_split != col_split.
SchurResult schur_complement(const Matrix& m, std::size_t row_split, std::size_t col_split);

/// entry (u, v) = points[v]^(first_power + u).
Matrix vandermonde(const FieldPtr& field, const std::vector<FieldElement>& points,
                   std::uint64_t first_power, std::size_t num_rows);

/// entry (u, v) = betas[v]^(q^u): successive Frobenius images.
Matrix moore(const FieldPtr& field, const std::vector<FieldElement>& betas,
             std::size_t num_rows);

enum class SolveOutcome { ok, rank_deficient, inconsistent };

struct SolveResult {
  SolveOutcome outcome;
  std::vector<FieldElement> solution;  // valid iff outcome == ok
};

/// Unique solution of A x = b: requires full column rank and a consistent
/// system; the outcome reports which condition failed otherwise.
SolveResult solve_linear(const Matrix& a, const std::vector<FieldElement>& b);

}  // namespace mrlrc
