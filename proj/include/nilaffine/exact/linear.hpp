#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nilaffine/exact/matrix.hpp"

namespace nilaffine {

template <class T>
struct Rref {
  Matrix<T> reduced;
  std::vector<std::size_t> pivots;  // pivot column of row r, for r < rank
  std::size_t rank() const { return pivots.size(); }
};

template <class T>
struct RrefWithTransform {
  Rref<T> rref;
  Matrix<T> transform;  // transform * input == rref.reduced
};

namespace detail {

// Gauss-Jordan with leftmost-column / topmost-row pivoting. `companion` (if
// non-null) receives the same row operations.
template <class T>
Rref<T> gauss_jordan(Matrix<T> m, Matrix<T>* companion) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  auto swap_rows = [](Matrix<T>& a, std::size_t r1, std::size_t r2) {
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(r1, c), a(r2, c));
  };
  auto scale_row = [](Matrix<T>& a, std::size_t r, const T& s) {
    for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) *= s;
  };
  auto add_row = [](Matrix<T>& a, std::size_t dst, const T& f, std::size_t src) {
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (!(a(src, c) == T{})) a(dst, c) -= f * a(src, c);
  };

  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c) == T{}) ++p;
    if (p == rows) continue;
    if (p != r) {
      swap_rows(m, p, r);
      if (companion) swap_rows(*companion, p, r);
    }
    T inv = T(1) / m(r, c);
    scale_row(m, r, inv);
    if (companion) scale_row(*companion, r, inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == T{}) continue;
      T f = m(i, c);
      add_row(m, i, f, r);
      if (companion) add_row(*companion, i, f, r);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

}  // namespace detail

/// Unique reduced row echelon form. Ties are broken by leftmost column, topmost row.
template <class T>
Rref<T> rref(Matrix<T> m) {
  return detail::gauss_jordan<T>(std::move(m), nullptr);
}

template <class T>
RrefWithTransform<T> rref_with_transform(Matrix<T> m) {
  Matrix<T> t = Matrix<T>::identity(m.rows());
  auto r = detail::gauss_jordan<T>(std::move(m), &t);
  return {std::move(r), std::move(t)};
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
  return rref(m).rank();
}

/// Basis of {v : M v = 0}; one vector per free column, with 1 in that column.
template <class T>
std::vector<Vector<T>> nullspace(const Matrix<T>& m) {
  auto r = rref(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Vector<T>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vector<T> v(cols);
    v[f] = T(1);
    for (std::size_t row = 0; row < r.rank(); ++row) v[r.pivots[row]] = -r.reduced(row, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse of a non-square matrix");
  auto r = rref_with_transform(m);
  if (r.rref.rank() != m.rows()) return std::nullopt;
  return r.transform;
}

/// True iff M^n = 0, using repeated squaring.
template <class T>
bool is_nilpotent_matrix(const Matrix<T>& m) {
  if (!m.is_square()) throw std::invalid_argument("nilpotency test needs a square matrix");
  const std::size_t n = m.rows();
  Matrix<T> power = m;
  for (std::size_t e = 1; e < n; e *= 2) {
    if (power.is_zero()) return true;
    power = power * power;
  }
  return power.is_zero();
}

/// A subspace of T^n held as the nonzero rows of an RREF matrix, so that
/// equal subspaces have literally equal representations.
template <class T>
class Subspace {
 public:
  explicit Subspace(std::size_t ambient = 0) : basis_(0, ambient) {}

  static Subspace span(const std::vector<Vector<T>>& vectors, std::size_t ambient) {
    Subspace s(ambient);
    if (vectors.empty()) return s;
    auto r = rref(Matrix<T>::from_rows(vectors, ambient));
    s.basis_ = Matrix<T>(r.rank(), ambient);
    for (std::size_t i = 0; i < r.rank(); ++i)
      for (std::size_t c = 0; c < ambient; ++c) s.basis_(i, c) = r.reduced(i, c);
    return s;
  }

  static Subspace whole(std::size_t ambient) {
    std::vector<Vector<T>> e;
    for (std::size_t i = 0; i < ambient; ++i) e.push_back(unit_vector<T>(ambient, i));
    return span(e, ambient);
  }

  std::size_t ambient() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix<T>& basis_matrix() const { return basis_; }
  std::vector<Vector<T>> basis() const {
    std::vector<Vector<T>> out;
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_.row(i));
    return out;
  }

  bool contains(const Vector<T>& v) const {
    auto rows = basis();
    rows.push_back(v);
    return rank(Matrix<T>::from_rows(rows, ambient())) == dim();
  }

  /// Annihilator rows: W = { v : annihilator() * v = 0 }.
  Matrix<T> annihilator() const {
    auto ns = nullspace(basis_);
    return Matrix<T>::from_rows(ns, ambient());
  }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

 private:
  Matrix<T> basis_;
};

}  // namespace nilaffine
