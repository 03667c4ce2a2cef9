#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lieshear/error.hpp"
#include "lieshear/rational.hpp"

namespace lieshear {

/// Column vector in the frame E_1, ..., E_n of a Lie algebra.
class Vector {
 public:
  Vector() = default;
  explicit Vector(int dim) : components_(static_cast<std::size_t>(dim)) {}
  explicit Vector(std::vector<Rational> components)
      : components_(std::move(components)) {}

  /// E_index, 1-based.
  static Vector basis(int dim, int index) {
    if (index < 1 || index > dim) {
      throw DimensionError("basis vector E" + std::to_string(index) +
                           " outside dimension " + std::to_string(dim));
    }
    Vector v(dim);
    v.components_[static_cast<std::size_t>(index - 1)] = 1;
    return v;
  }

  int dim() const { return static_cast<int>(components_.size()); }

  /// 1-based component access.
  const Rational& operator[](int index) const {
    return components_[static_cast<std::size_t>(index - 1)];
  }
  Rational& operator[](int index) {
    return components_[static_cast<std::size_t>(index - 1)];
  }

  std::span<const Rational> components() const { return components_; }

  bool is_zero() const {
    return std::all_of(components_.begin(), components_.end(),
                       [](const Rational& c) { return c == 0; });
  }

  Vector& operator+=(const Vector& o) {
    check_same(o);
    for (std::size_t i = 0; i < components_.size(); ++i)
      components_[i] += o.components_[i];
    return *this;
  }
  Vector& operator-=(const Vector& o) {
    check_same(o);
    for (std::size_t i = 0; i < components_.size(); ++i)
      components_[i] -= o.components_[i];
    return *this;
  }
  Vector& operator*=(const Rational& s) {
    for (auto& c : components_) c *= s;
    return *this;
  }

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator-(Vector a) { return a *= Rational(-1); }
  friend Vector operator*(const Rational& s, Vector a) { return a *= s; }
  friend bool operator==(const Vector& a, const Vector& b) {
    return a.components_ == b.components_;
  }

 private:
  void check_same(const Vector& o) const {
    if (o.dim() != dim()) throw DimensionError("vector dimension mismatch");
  }

  std::vector<Rational> components_;
};

/// Dense exact matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {}
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != cols_)
        throw DimensionError("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Matrix whose columns are the given vectors.
  static Matrix from_columns(std::span<const Vector> columns, int dim) {
    Matrix m(dim, static_cast<int>(columns.size()));
    for (int j = 0; j < m.cols_; ++j)
      for (int i = 0; i < dim; ++i) m(i, j) = columns[static_cast<std::size_t>(j)][i + 1];
    return m;
  }

  static Matrix from_rows(std::span<const Vector> rows, int dim) {
    Matrix m(static_cast<int>(rows.size()), dim);
    for (int i = 0; i < m.rows_; ++i)
      for (int j = 0; j < dim; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][j + 1];
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  /// 0-based element access.
  Rational& operator()(int r, int c) {
    return data_[static_cast<std::size_t>(r * cols_ + c)];
  }
  const Rational& operator()(int r, int c) const {
    return data_[static_cast<std::size_t>(r * cols_ + c)];
  }

  Vector row(int r) const {
    Vector v(cols_);
    for (int c = 0; c < cols_; ++c) v[c + 1] = (*this)(r, c);
    return v;
  }
  Vector column(int c) const {
    Vector v(rows_);
    for (int r = 0; r < rows_; ++r) v[r + 1] = (*this)(r, c);
    return v;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool is_square() const { return rows_ == cols_; }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (int r = 0; r < rows_; ++r)
      for (int c = r + 1; c < cols_; ++c)
        if ((*this)(r, c) != (*this)(c, r)) return false;
    return true;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const Rational& x) { return x == 0; });
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
    Matrix p(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (aik == 0) continue;
        for (int j = 0; j < b.cols_; ++j) p(i, j) += aik * b(k, j);
      }
    return p;
  }
  friend Vector operator*(const Matrix& a, const Vector& v) {
    if (a.cols_ != v.dim()) throw DimensionError("matrix-vector shape mismatch");
    Vector out(a.rows_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) out[i + 1] += a(i, k) * v[k + 1];
    return out;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    a.check_same(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    a.check_same(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend Matrix operator*(const Rational& s, Matrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_)
      throw DimensionError("matrix shape mismatch");
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row-echelon form. Returns the pivot columns.
inline std::vector<int> rref_in_place(Matrix& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int pivot = -1;
    for (int r = row; r < m.rows(); ++r)
      if (m(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != row)
      for (int c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(row, c));
    const Rational inv = 1 / m(row, col);
    for (int c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Rational f = m(r, col);
      for (int c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline int rank(Matrix m) { return static_cast<int>(rref_in_place(m).size()); }

/// Basis of {x : m x = 0}, one vector per free column, in echelon order.
inline std::vector<Vector> nullspace(Matrix m) {
  const auto pivots = rref_in_place(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Vector> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    Vector v(m.cols());
    v[free + 1] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r] + 1] = -m(static_cast<int>(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Rational determinant(Matrix m) {
  if (!m.is_square()) throw DimensionError("determinant of non-square matrix");
  Rational det = 1;
  const int n = m.rows();
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (m(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(m(pivot, c), m(col, c));
      det = -det;
    }
    det *= m(col, col);
    for (int r = col + 1; r < n; ++r) {
      if (m(r, col) == 0) continue;
      const Rational f = m(r, col) / m(col, col);
      for (int c = col; c < n; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

inline std::optional<Matrix> inverse(const Matrix& m) {
  if (!m.is_square()) throw DimensionError("inverse of non-square matrix");
  const int n = m.rows();
  Matrix aug(n, 2 * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  const auto pivots = rref_in_place(aug);
  if (static_cast<int>(pivots.size()) < n || pivots[static_cast<std::size_t>(n - 1)] != n - 1)
    return std::nullopt;
  Matrix inv(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

/// Leading principal minors det(M[0..k, 0..k]) for k = 1..n.
inline std::vector<Rational> leading_principal_minors(const Matrix& m) {
  if (!m.is_square()) throw DimensionError("minors of non-square matrix");
  std::vector<Rational> minors;
  for (int k = 1; k <= m.rows(); ++k) {
    Matrix sub(k, k);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) sub(r, c) = m(r, c);
    minors.push_back(determinant(std::move(sub)));
  }
  return minors;
}

enum class Definiteness { positive, negative, indefinite_or_degenerate };

/// Sylvester's criterion; the matrix must be symmetric.
inline Definiteness definiteness(const Matrix& m) {
  if (!m.is_symmetric()) throw DimensionError("definiteness of non-symmetric matrix");
  const auto minors = leading_principal_minors(m);
  bool positive = true;
  bool negative = true;
  for (std::size_t k = 0; k < minors.size(); ++k) {
    const int s = sgn(minors[k]);
    if (s <= 0) positive = false;
    // (-1)^(k+1) det_k > 0 for negative definite
    if (s == 0 || (k % 2 == 0 ? s > 0 : s < 0)) negative = false;
  }
  if (positive) return Definiteness::positive;
  if (negative) return Definiteness::negative;
  return Definiteness::indefinite_or_degenerate;
}

/// A linear subspace of Q^n stored as the nonzero rows of a reduced
/// row-echelon basis; two equal subspaces have identical representations.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(int ambient) : ambient_(ambient) {}

  static Subspace span(std::span<const Vector> vectors, int ambient) {
    Subspace s(ambient);
    if (vectors.empty()) return s;
    Matrix m = Matrix::from_rows(vectors, ambient);
    const auto pivots = rref_in_place(m);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      s.basis_.push_back(m.row(static_cast<int>(r)));
    s.pivots_ = pivots;
    return s;
  }

  static Subspace full(int ambient) {
    std::vector<Vector> b;
    for (int i = 1; i <= ambient; ++i) b.push_back(Vector::basis(ambient, i));
    return span(b, ambient);
  }

  int ambient() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  bool is_zero() const { return basis_.empty(); }
  const std::vector<Vector>& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }

  bool contains(const Vector& v) const {
    Vector r = v;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Rational c = r[pivots_[i] + 1];
      if (c != 0) r -= c * basis_[i];
    }
    return r.is_zero();
  }

  bool contains(const Subspace& other) const {
    return std::all_of(other.basis_.begin(), other.basis_.end(),
                       [&](const Vector& v) { return contains(v); });
  }

  /// {w : <b, w> = 0 for all b in basis}; in dual terms the annihilator.
  Subspace annihilator() const {
    if (basis_.empty()) return full(ambient_);
    const auto kernel = nullspace(Matrix::from_rows(basis_, ambient_));
    return span(kernel, ambient_);
  }

  Subspace sum(const Subspace& other) const {
    std::vector<Vector> all = basis_;
    all.insert(all.end(), other.basis_.begin(), other.basis_.end());
    return span(all, ambient_);
  }

  Subspace intersect(const Subspace& other) const {
    // U ∩ V = Ann(Ann U + Ann V)
    return annihilator().sum(other.annihilator()).annihilator();
  }

  /// Standard basis vectors completing this subspace to the whole space
  /// (the non-pivot coordinates), in increasing order.
  std::vector<Vector> standard_complement() const {
    std::vector<bool> used(static_cast<std::size_t>(ambient_), false);
    for (int p : pivots_) used[static_cast<std::size_t>(p)] = true;
    std::vector<Vector> out;
    for (int i = 0; i < ambient_; ++i)
      if (!used[static_cast<std::size_t>(i)]) out.push_back(Vector::basis(ambient_, i + 1));
    return out;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  int ambient_ = 0;
  std::vector<Vector> basis_;
  std::vector<int> pivots_;
};

inline Rational dot(const Vector& a, const Vector& b) {
  if (a.dim() != b.dim()) throw DimensionError("dot product dimension mismatch");
  Rational s = 0;
  for (int i = 1; i <= a.dim(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace lieshear
