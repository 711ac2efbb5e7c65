#include "multifol/linalg.hpp"

#include <utility>

#include "multifol/error.hpp"

namespace multifol {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::DimensionMismatch, std::string("matrix shapes differ in ") + op,
                nlohmann::json::array({nlohmann::json::array({a.rows(), a.cols()}),
                                       nlohmann::json::array({b.rows(), b.cols()})}));
}

void require_same_ambient(const Subspace& s, const Subspace& t) {
  if (s.ambient_dim() != t.ambient_dim())
    throw Error(ErrorCode::DimensionMismatch, "subspaces live in different ambient spaces",
                nlohmann::json::array({s.ambient_dim(), t.ambient_dim()}));
}

}  // namespace

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::ShapeMismatch, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      throw Error(ErrorCode::ShapeMismatch, "ragged matrix rows",
                  nlohmann::json::array({r, rows[r].size(), cols}));
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

std::vector<Vector> Matrix::row_list() const {
  std::vector<Vector> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row_vector(r));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Vector Matrix::apply(std::span<const Rational> v) const {
  if (v.size() != cols_)
    throw Error(ErrorCode::DimensionMismatch, "vector length does not match matrix columns",
                nlohmann::json::array({v.size(), cols_}));
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (sgn((*this)(r, c)) != 0) out[r] += (*this)(r, c) * v[c];
  return out;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (sgn(x) != 0) return false;
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_)
    throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch",
                nlohmann::json::array({nlohmann::json::array({a.rows_, a.cols_}),
                                       nlohmann::json::array({b.rows_, b.cols_})}));
  Matrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (sgn(b(k, j)) != 0) out(i, j) += aik * b(k, j);
    }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "sum");
  Matrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "difference");
  Matrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

Matrix operator*(const Rational& s, const Matrix& m) {
  Matrix out = m;
  for (auto& x : out.data_) x *= s;
  return out;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
  if (top.cols() != bottom.cols())
    throw Error(ErrorCode::DimensionMismatch, "vstack column mismatch");
  Matrix out(top.rows() + bottom.rows(), top.cols());
  for (std::size_t r = 0; r < top.rows(); ++r)
    for (std::size_t c = 0; c < top.cols(); ++c) out(r, c) = top(r, c);
  for (std::size_t r = 0; r < bottom.rows(); ++r)
    for (std::size_t c = 0; c < top.cols(); ++c) out(top.rows() + r, c) = bottom(r, c);
  return out;
}

Matrix hstack(const Matrix& left, const Matrix& right) {
  if (left.rows() != right.rows())
    throw Error(ErrorCode::DimensionMismatch, "hstack row mismatch");
  Matrix out(left.rows(), left.cols() + right.cols());
  for (std::size_t r = 0; r < left.rows(); ++r) {
    for (std::size_t c = 0; c < left.cols(); ++c) out(r, c) = left(r, c);
    for (std::size_t c = 0; c < right.cols(); ++c) out(r, left.cols() + c) = right(r, c);
  }
  return out;
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) out(a.rows() + r, a.cols() + c) = b(r, c);
  return out;
}

Matrix rref(const Matrix& m, std::vector<std::size_t>& pivots) {
  Matrix a = m;
  pivots.clear();
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < a.cols() && lead_row < a.rows(); ++c) {
    std::size_t p = lead_row;
    while (p < a.rows() && sgn(a(p, c)) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != lead_row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(lead_row, j));
    const Rational inv = 1 / a(lead_row, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(lead_row, j) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == lead_row || sgn(a(r, c)) == 0) continue;
      const Rational f = a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (sgn(a(lead_row, j)) != 0) a(r, j) -= f * a(lead_row, j);
    }
    pivots.push_back(c);
    ++lead_row;
  }
  Matrix out(lead_row, a.cols());
  for (std::size_t r = 0; r < lead_row; ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
  return out;
}

Matrix rref(const Matrix& m) {
  std::vector<std::size_t> pivots;
  return rref(m, pivots);
}

std::size_t rank(const Matrix& m) { return rref(m).rows(); }

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  std::vector<std::size_t> pivots;
  Matrix r = rref(hstack(m, Matrix::identity(n)), pivots);
  if (r.rows() < n || (n > 0 && pivots[n - 1] >= n)) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
  return inv;
}

Matrix right_inverse(const Matrix& m) {
  std::vector<std::size_t> pivots;
  Matrix r = rref(m, pivots);
  if (r.rows() != m.rows())
    throw Error(ErrorCode::NotEpimorphism, "matrix is not surjective",
                nlohmann::json::array({m.rows(), r.rows()}));
  // The pivot columns of m form an invertible square block B; place B^-1.
  Matrix block(m.rows(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < pivots.size(); ++k) block(i, k) = m(i, pivots[k]);
  Matrix binv = *inverse(block);
  Matrix out(m.cols(), m.rows());
  for (std::size_t k = 0; k < pivots.size(); ++k)
    for (std::size_t j = 0; j < m.rows(); ++j) out(pivots[k], j) = binv(k, j);
  return out;
}

bool is_epimorphism(const Matrix& m) { return rank(m) == m.rows(); }

bool is_isomorphism(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

Subspace Subspace::row_space(const Matrix& m) {
  Subspace s;
  s.ambient_ = m.cols();
  s.basis_ = rref(m, s.pivots_);
  return s;
}

Subspace Subspace::span(std::size_t ambient_dim, const std::vector<Vector>& vectors) {
  return row_space(Matrix::from_rows(vectors, ambient_dim));
}

Subspace Subspace::full(std::size_t ambient_dim) { return row_space(Matrix::identity(ambient_dim)); }

bool Subspace::contains(std::span<const Rational> v) const {
  if (v.size() != ambient_)
    throw Error(ErrorCode::DimensionMismatch, "vector does not live in the ambient space",
                nlohmann::json::array({v.size(), ambient_}));
  // Reduce v against the RREF basis using the pivot entries.
  Vector rest(v.begin(), v.end());
  for (std::size_t k = 0; k < pivots_.size(); ++k) {
    const Rational f = rest[pivots_[k]];
    if (sgn(f) == 0) continue;
    for (std::size_t c = 0; c < ambient_; ++c)
      if (sgn(basis_(k, c)) != 0) rest[c] -= f * basis_(k, c);
  }
  for (const auto& x : rest)
    if (sgn(x) != 0) return false;
  return true;
}

bool Subspace::contains(const Subspace& other) const {
  require_same_ambient(*this, other);
  for (std::size_t r = 0; r < other.dim(); ++r)
    if (!contains(other.basis_.row(r))) return false;
  return true;
}

Subspace kernel(const Matrix& m) {
  std::vector<std::size_t> pivots;
  Matrix r = rref(m, pivots);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.cols());
    v[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(k, f);
    basis.push_back(std::move(v));
  }
  return Subspace::span(m.cols(), basis);
}

Subspace image(const Matrix& m) { return Subspace::row_space(m.transpose()); }

Subspace sum(const Subspace& s, const Subspace& t) {
  require_same_ambient(s, t);
  return Subspace::row_space(vstack(s.basis(), t.basis()));
}

Subspace annihilator(const Subspace& s) { return kernel(s.basis()); }

Subspace intersect(const Subspace& s, const Subspace& t) {
  require_same_ambient(s, t);
  return annihilator(sum(annihilator(s), annihilator(t)));
}

Matrix quotient_map(std::size_t ambient_dim, const Subspace& s) {
  if (s.ambient_dim() != ambient_dim)
    throw Error(ErrorCode::DimensionMismatch, "subspace ambient dimension mismatch");
  std::vector<bool> is_pivot(ambient_dim, false);
  for (auto p : s.pivots()) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < ambient_dim; ++c)
    if (!is_pivot[c]) free.push_back(c);
  // q(x)_r = x[free_r] - sum_k x[pivot_k] * basis_k[free_r].
  Matrix q(free.size(), ambient_dim);
  for (std::size_t r = 0; r < free.size(); ++r) {
    q(r, free[r]) = 1;
    for (std::size_t k = 0; k < s.pivots().size(); ++k) q(r, s.pivots()[k]) = -s.basis()(k, free[r]);
  }
  return q;
}

Matrix quotient_section(std::size_t ambient_dim, const Subspace& s) {
  if (s.ambient_dim() != ambient_dim)
    throw Error(ErrorCode::DimensionMismatch, "subspace ambient dimension mismatch");
  std::vector<bool> is_pivot(ambient_dim, false);
  for (auto p : s.pivots()) is_pivot[p] = true;
  Matrix sec(ambient_dim, ambient_dim - s.dim());
  std::size_t r = 0;
  for (std::size_t c = 0; c < ambient_dim; ++c)
    if (!is_pivot[c]) sec(c, r++) = 1;
  return sec;
}

std::vector<Vector> extend_basis(const Subspace& s, const Subspace& t) {
  require_same_ambient(s, t);
  Subspace acc = intersect(s, t);
  std::vector<Vector> out;
  for (std::size_t r = 0; r < t.dim() && acc.dim() < t.dim(); ++r) {
    if (acc.contains(t.basis().row(r))) continue;
    out.push_back(t.basis().row_vector(r));
    acc = sum(acc, Subspace::span(t.ambient_dim(), {out.back()}));
  }
  return out;
}

}  // namespace multifol
