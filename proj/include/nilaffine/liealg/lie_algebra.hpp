#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nilaffine/exact/linear.hpp"
#include "nilaffine/exact/scalar.hpp"

namespace nilaffine {

using ScalarVector = Vector<Scalar>;
using ScalarMatrix = Matrix<Scalar>;

/// One input bracket [X_i, X_j] = sum_k c_k X_k (0-based indices). Pairs
/// with i > j are normalized by a sign flip.
struct BracketSpec {
  std::size_t i = 0;
  std::size_t j = 0;
  std::vector<std::pair<std::size_t, Scalar>> terms;
};

/// Finite-dimensional Lie algebra given by structure constants on a basis
/// X_1..X_n. Only pairs i < j are stored; absent pairs bracket to zero.
class LieAlgebra {
 public:
  LieAlgebra() = default;

  LieAlgebra(std::string name, std::size_t dim, std::int64_t d, const std::vector<BracketSpec>& brackets)
      : name_(std::move(name)), dim_(dim), d_(d) {
    if (dim_ == 0) throw std::invalid_argument("Lie algebra dimension must be positive");
    if (!is_square_free(d_)) throw std::invalid_argument("field parameter d=" + std::to_string(d_) + " is not square-free");
    for (const auto& b : brackets) {
      if (b.i >= dim_ || b.j >= dim_)
        throw std::out_of_range("bracket index out of range: [X" + std::to_string(b.i + 1) + ",X" + std::to_string(b.j + 1) + "]");
      ScalarVector v(dim_);
      for (const auto& [k, c] : b.terms) {
        if (k >= dim_) throw std::out_of_range("bracket target index X" + std::to_string(k + 1) + " out of range");
        check_field(c);
        v[k] += c;
      }
      if (b.i == b.j) {
        if (!is_zero_vector(v)) throw std::invalid_argument("[X" + std::to_string(b.i + 1) + ",X" + std::to_string(b.i + 1) + "] must be zero");
        continue;
      }
      auto key = std::minmax(b.i, b.j);
      if (b.i > b.j)
        for (auto& x : v) x = -x;
      if (constants_.count(key))
        throw std::invalid_argument("bracket [X" + std::to_string(key.first + 1) + ",X" + std::to_string(key.second + 1) + "] given twice");
      if (!is_zero_vector(v)) constants_.emplace(key, std::move(v));
    }
  }

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  std::int64_t d() const { return d_; }

  /// Nonzero brackets keyed by (i, j), i < j, value is the coordinate vector.
  const std::map<std::pair<std::size_t, std::size_t>, ScalarVector>& constants() const { return constants_; }

  bool is_abelian() const { return constants_.empty(); }

  /// c^k_{ij}, antisymmetric in (i, j).
  Scalar structure_constant(std::size_t i, std::size_t j, std::size_t k) const {
    if (i == j) return {};
    auto it = constants_.find(std::minmax(i, j));
    if (it == constants_.end()) return {};
    return i < j ? it->second[k] : -it->second[k];
  }

  ScalarVector bracket_basis(std::size_t i, std::size_t j) const {
    ScalarVector v(dim_);
    if (i == j) return v;
    auto it = constants_.find(std::minmax(i, j));
    if (it == constants_.end()) return v;
    v = it->second;
    if (i > j)
      for (auto& x : v) x = -x;
    return v;
  }

  /// Bilinear extension of the structure constants.
  ScalarVector bracket(const ScalarVector& x, const ScalarVector& y) const {
    if (x.size() != dim_ || y.size() != dim_) throw std::invalid_argument("bracket: vector length does not match algebra dimension");
    ScalarVector out(dim_);
    for (const auto& [key, v] : constants_) {
      auto [i, j] = key;
      Scalar coeff = x[i] * y[j] - x[j] * y[i];
      if (coeff.is_zero()) continue;
      axpy(out, coeff, v);
    }
    return out;
  }

  /// Matrix of ad(X_i) = [X_i, .].
  ScalarMatrix ad(std::size_t i) const {
    ScalarMatrix m(dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      auto v = bracket_basis(i, j);
      for (std::size_t k = 0; k < dim_; ++k) m(k, j) = v[k];
    }
    return m;
  }

  ScalarMatrix ad(const ScalarVector& x) const {
    ScalarMatrix m(dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      auto v = bracket(x, unit_vector<Scalar>(dim_, j));
      for (std::size_t k = 0; k < dim_; ++k) m(k, j) = v[k];
    }
    return m;
  }

  std::vector<BracketSpec> bracket_specs() const {
    std::vector<BracketSpec> out;
    for (const auto& [key, v] : constants_) {
      BracketSpec b{key.first, key.second, {}};
      for (std::size_t k = 0; k < dim_; ++k)
        if (!v[k].is_zero()) b.terms.emplace_back(k, v[k]);
      out.push_back(std::move(b));
    }
    return out;
  }

  /// Same structure constants (names and field tags aside).
  bool same_structure(const LieAlgebra& o) const { return dim_ == o.dim_ && constants_ == o.constants_; }

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
    return a.name_ == b.name_ && a.d_ == b.d_ && a.same_structure(b);
  }

 private:
  void check_field(const Scalar& c) const {
    if (!c.is_rational() && c.d() != d_)
      throw FieldMismatch("structure constant " + c.str() + " is not in Q(sqrt(" + std::to_string(d_) + "))");
  }

  std::string name_;
  std::size_t dim_ = 0;
  std::int64_t d_ = 1;
  std::map<std::pair<std::size_t, std::size_t>, ScalarVector> constants_;
};

inline LieAlgebra abelian_algebra(std::size_t n, std::int64_t d = 1) {
  return LieAlgebra("R" + std::to_string(n), n, d, {});
}

struct JacobiViolation {
  std::size_t i, j, k;  // 0-based, i < j < k
  ScalarVector residual;
};

struct JacobiReport {
  std::vector<JacobiViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Jac(i,j,k) = [[X_i,X_j],X_k] + [[X_j,X_k],X_i] + [[X_k,X_i],X_j] over all basis triples.
inline JacobiReport check_jacobi(const LieAlgebra& l) {
  JacobiReport report;
  const std::size_t n = l.dim();
  auto e = [n](std::size_t i) { return unit_vector<Scalar>(n, i); };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        ScalarVector r = l.bracket(l.bracket_basis(i, j), e(k));
        r = r + l.bracket(l.bracket_basis(j, k), e(i));
        r = r + l.bracket(l.bracket_basis(k, i), e(j));
        if (!is_zero_vector(r)) report.violations.push_back({i, j, k, std::move(r)});
      }
  return report;
}

/// Structure constants transported to the basis Y_i = P e_i (columns of P).
inline LieAlgebra change_basis(const LieAlgebra& l, const ScalarMatrix& p, std::string name = {}) {
  auto p_inv = inverse(p);
  if (!p_inv) throw std::invalid_argument("change_basis: matrix is singular");
  const std::size_t n = l.dim();
  std::vector<BracketSpec> specs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      ScalarVector v = *p_inv * l.bracket(p.column(i), p.column(j));
      BracketSpec b{i, j, {}};
      for (std::size_t k = 0; k < n; ++k)
        if (!v[k].is_zero()) b.terms.emplace_back(k, v[k]);
      if (!b.terms.empty()) specs.push_back(std::move(b));
    }
  return LieAlgebra(name.empty() ? l.name() : std::move(name), n, l.d(), specs);
}

}  // namespace nilaffine
