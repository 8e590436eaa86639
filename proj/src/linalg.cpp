#include "mrlrc/linalg.hpp"

#include <algorithm>
#include <cassert>

namespace mrlrc {

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)),
      rows_(rows),
      cols_(cols),
      stride_(field_->degree()),
      d_(rows * cols * field_->degree(), 0) {}

Matrix Matrix::identity(const FieldPtr& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set_base(i, i, 1);
  return m;
}

FieldElement Matrix::at(std::size_t i, std::size_t j) const {
  return field_->from_coords(Coeffs(cell(i, j), cell(i, j) + stride_));
}

void Matrix::set(std::size_t i, std::size_t j, const FieldElement& v) {
  if (!v.field()->same(*field_)) throw Error("matrix entry from a different field");
  std::copy(v.coords().begin(), v.coords().end(), cell(i, j));
}

void Matrix::set_base(std::size_t i, std::size_t j, std::uint64_t residue) {
  field_->set_base(cell(i, j), residue);
}

bool Matrix::operator==(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) return false;
  if (rows_ == 0 || cols_ == 0) return true;
  return field_->same(*rhs.field_) && d_ == rhs.d_;
}

namespace {

void check_same_shape(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() ||
      (!a.empty() && !a.field()->same(*b.field()))) {
    throw LengthMismatch("matrix shape/field mismatch");
  }
}

// In-place elimination working directly on a matrix's storage.
// `jordan` clears above pivots too (needed for inverse / solve).
// Returns the pivot columns in order. Columns >= pivot_limit never pivot
// (augmented part).
std::vector<std::size_t> eliminate(Matrix& m, bool jordan, std::size_t pivot_limit) {
  const Field& f = *m.field();
  const std::size_t md = f.degree();
  std::vector<std::size_t> pivots;
  std::vector<std::uint64_t> factor(md), pivinv(md), t(md);
  std::size_t pr = 0;
  for (std::size_t c = 0; c < pivot_limit && pr < m.rows(); ++c) {
    std::size_t piv = pr;
    while (piv < m.rows() && f.is_zero(m.cell(piv, c))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != pr) {
      for (std::size_t j = c; j < m.cols(); ++j) {
        std::swap_ranges(m.cell(pr, j), m.cell(pr, j) + md, m.cell(piv, j));
      }
    }
    f.inv(m.cell(pr, c), pivinv.data());
    for (std::size_t j = c; j < m.cols(); ++j) {
      f.mul(m.cell(pr, j), pivinv.data(), t.data());
      std::copy(t.begin(), t.end(), m.cell(pr, j));
    }
    const std::size_t row_begin = jordan ? 0 : pr + 1;
    for (std::size_t r = row_begin; r < m.rows(); ++r) {
      if (r == pr || f.is_zero(m.cell(r, c))) continue;
      std::copy(m.cell(r, c), m.cell(r, c) + md, factor.data());
      for (std::size_t j = c; j < m.cols(); ++j) {
        f.submul(m.cell(r, j), factor.data(), m.cell(pr, j));
      }
    }
    pivots.push_back(c);
    ++pr;
  }
  return pivots;
}

}  // namespace

Matrix Matrix::operator+(const Matrix& rhs) const {
  check_same_shape(*this, rhs);
  Matrix out = *this;
  for (std::size_t i = 0; i < d_.size(); i += stride_) {
    field_->add(out.d_.data() + i, rhs.d_.data() + i, out.d_.data() + i);
  }
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  check_same_shape(*this, rhs);
  Matrix out = *this;
  for (std::size_t i = 0; i < d_.size(); i += stride_) {
    field_->sub(out.d_.data() + i, rhs.d_.data() + i, out.d_.data() + i);
  }
  return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_ || (!empty() && !rhs.empty() && !field_->same(*rhs.field_))) {
    throw LengthMismatch("matrix product shape/field mismatch");
  }
  const FieldPtr& f = field_ ? field_ : rhs.field_;
  Matrix out(f, rows_, rhs.cols_);
  std::vector<std::uint64_t> acc(out.stride_), t(out.stride_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < rhs.cols_; ++j) {
      f->set_zero(acc.data());
      for (std::size_t k = 0; k < cols_; ++k) {
        f->mul(cell(i, k), rhs.cell(k, j), t.data());
        f->add(acc.data(), t.data(), acc.data());
      }
      std::copy(acc.begin(), acc.end(), out.cell(i, j));
    }
  }
  return out;
}

std::size_t Matrix::rank() const {
  if (empty()) return 0;
  Matrix work = *this;
  return eliminate(work, /*jordan=*/false, cols_).size();
}

Matrix Matrix::inverse() const {
  if (rows_ != cols_) throw SingularMatrix("inverse of a non-square matrix");
  if (rows_ == 0) return *this;
  Matrix work = hconcat(*this, identity(field_, rows_));
  const auto pivots = eliminate(work, /*jordan=*/true, rows_);
  if (pivots.size() != rows_) throw SingularMatrix("matrix is singular");
  return work.block(0, rows_, rows_, rows_);
}

Matrix Matrix::select_columns(std::span<const std::size_t> cols) const {
  Matrix out(field_, rows_, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] >= cols_) throw LengthMismatch("column index out of range");
    for (std::size_t i = 0; i < rows_; ++i) {
      std::copy(cell(i, cols[j]), cell(i, cols[j]) + stride_, out.cell(i, j));
    }
  }
  return out;
}

Matrix Matrix::select_rows(std::span<const std::size_t> rows) const {
  Matrix out(field_, rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= rows_) throw LengthMismatch("row index out of range");
    std::copy(cell(rows[i], 0), cell(rows[i], 0) + cols_ * stride_, out.cell(i, 0));
  }
  return out;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const {
  if (r0 + nrows > rows_ || c0 + ncols > cols_) throw LengthMismatch("block out of range");
  Matrix out(field_, nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i) {
    std::copy(cell(r0 + i, c0), cell(r0 + i, c0) + ncols * stride_, out.cell(i, 0));
  }
  return out;
}

Matrix Matrix::lifted(const FieldPtr& ext) const {
  if (!field_->is_prime_field() || ext->q() != field_->q()) {
    throw Error("lifted() embeds a prime-field matrix into an extension of the same q");
  }
  Matrix out(ext, rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      out.set_base(i, j, *cell(i, j));
    }
  }
  return out;
}

Matrix Matrix::hconcat(const Matrix& left, const Matrix& right) {
  if (left.rows_ != right.rows_) throw LengthMismatch("hconcat row mismatch");
  const FieldPtr& f = left.field_ ? left.field_ : right.field_;
  Matrix out(f, left.rows_, left.cols_ + right.cols_);
  for (std::size_t i = 0; i < out.rows_; ++i) {
    std::copy(left.cell(i, 0), left.cell(i, 0) + left.cols_ * left.stride_, out.cell(i, 0));
    std::copy(right.cell(i, 0), right.cell(i, 0) + right.cols_ * right.stride_,
              out.cell(i, left.cols_));
  }
  return out;
}

Matrix Matrix::vconcat(const Matrix& top, const Matrix& bottom) {
  if (top.cols_ != bottom.cols_) throw LengthMismatch("vconcat column mismatch");
  const FieldPtr& f = top.field_ ? top.field_ : bottom.field_;
  Matrix out(f, top.rows_ + bottom.rows_, top.cols_);
  std::copy(top.d_.begin(), top.d_.end(), out.d_.begin());
  std::copy(bottom.d_.begin(), bottom.d_.end(), out.d_.begin() + top.d_.size());
  return out;
}

std::vector<FieldElement> mat_vec(const Matrix& m, const std::vector<FieldElement>& x) {
  if (x.size() != m.cols()) throw LengthMismatch("mat_vec length mismatch");
  const auto& f = m.field();
  std::vector<std::uint64_t> acc(f->degree()), t(f->degree());
  std::vector<FieldElement> out;
  out.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    f->set_zero(acc.data());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      f->mul(m.cell(i, j), x[j].coords().data(), t.data());
      f->add(acc.data(), t.data(), acc.data());
    }
    out.push_back(f->from_coords(Coeffs(acc.begin(), acc.end())));
  }
  return out;
}

std::vector<FieldElement> vec_mat(const std::vector<FieldElement>& x, const Matrix& m) {
  if (x.size() != m.rows()) throw LengthMismatch("vec_mat length mismatch");
  const auto& f = m.field();
  std::vector<std::uint64_t> acc(f->degree()), t(f->degree());
  std::vector<FieldElement> out;
  out.reserve(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    f->set_zero(acc.data());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      f->mul(x[i].coords().data(), m.cell(i, j), t.data());
      f->add(acc.data(), t.data(), acc.data());
    }
    out.push_back(f->from_coords(Coeffs(acc.begin(), acc.end())));
  }
  return out;
}

SchurResult schur_complement(const Matrix& m, std::size_t row_split, std::size_t col_split) {
  if (row_split != col_split) {
    throw InvalidParams("schur split must leave a square top-left block");
  }
  const std::size_t s = row_split;
  if (s > m.rows() || s > m.cols()) throw LengthMismatch("schur split out of range");
  Matrix a = m.block(0, 0, s, s);
  Matrix b = m.block(0, s, s, m.cols() - s);
  Matrix c = m.block(s, 0, m.rows() - s, s);
  Matrix d = m.block(s, s, m.rows() - s, m.cols() - s);
  Matrix a_inv;
  try {
    a_inv = a.inverse();
  } catch (const SingularMatrix&) {
    throw SingularBlock("top-left block is singular");
  }
  Matrix complement = d - c * (a_inv * b);
  Matrix zero(m.field(), s, m.cols() - s);
  Matrix transformed =
      Matrix::vconcat(Matrix::hconcat(a, zero), Matrix::hconcat(c, complement));
  return SchurResult{std::move(transformed), std::move(complement)};
}

Matrix vandermonde(const FieldPtr& field, const std::vector<FieldElement>& points,
                   std::uint64_t first_power, std::size_t num_rows) {
  Matrix out(field, num_rows, points.size());
  std::vector<std::uint64_t> cur(field->degree());
  for (std::size_t v = 0; v < points.size(); ++v) {
    if (!points[v].field()->same(*field)) throw Error("point from a different field");
    field->pow(points[v].coords().data(), first_power, cur.data());
    for (std::size_t u = 0; u < num_rows; ++u) {
      std::copy(cur.begin(), cur.end(), out.cell(u, v));
      if (u + 1 < num_rows) {
        std::vector<std::uint64_t> next(field->degree());
        field->mul(cur.data(), points[v].coords().data(), next.data());
        cur = std::move(next);
      }
    }
  }
  return out;
}

Matrix moore(const FieldPtr& field, const std::vector<FieldElement>& betas,
             std::size_t num_rows) {
  Matrix out(field, num_rows, betas.size());
  std::vector<std::uint64_t> cur(field->degree());
  for (std::size_t v = 0; v < betas.size(); ++v) {
    if (!betas[v].field()->same(*field)) throw Error("beta from a different field");
    std::copy(betas[v].coords().begin(), betas[v].coords().end(), cur.begin());
    for (std::size_t u = 0; u < num_rows; ++u) {
      std::copy(cur.begin(), cur.end(), out.cell(u, v));
      if (u + 1 < num_rows) {
        std::vector<std::uint64_t> next(field->degree());
        field->frobenius(cur.data(), next.data());
        cur = std::move(next);
      }
    }
  }
  return out;
}

SolveResult solve_linear(const Matrix& a, const std::vector<FieldElement>& b) {
  if (b.size() != a.rows()) throw LengthMismatch("solve_linear rhs length mismatch");
  const auto& f = a.field();
  Matrix work(f, a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::copy(a.cell(i, 0), a.cell(i, 0) + a.cols() * f->degree(), work.cell(i, 0));
    work.set(i, a.cols(), b[i]);
  }
  const auto pivots = eliminate(work, /*jordan=*/true, a.cols());
  if (pivots.size() < a.cols()) {
    return SolveResult{SolveOutcome::rank_deficient, {}};
  }
  // Any leftover row must be entirely zero including the rhs.
  for (std::size_t r = pivots.size(); r < a.rows(); ++r) {
    if (!f->is_zero(work.cell(r, a.cols()))) {
      return SolveResult{SolveOutcome::inconsistent, {}};
    }
  }
  std::vector<FieldElement> x;
  x.reserve(a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) {
    x.push_back(work.at(c, a.cols()));
  }
  return SolveResult{SolveOutcome::ok, std::move(x)};
}

}  // namespace mrlrc
