#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "nilaffine/liealg/lie_algebra.hpp"

namespace nilaffine {

struct LeibnizViolation {
  std::size_t i, j;  // 0-based basis pair, i < j
  ScalarVector residual;
};

/// First pair (i, j) with E[X_i,X_j] != [E X_i, X_j] + [X_i, E X_j], if any.
inline std::optional<LeibnizViolation> leibniz_violation(const LieAlgebra& l, const ScalarMatrix& e) {
  const std::size_t n = l.dim();
  if (e.rows() != n || e.cols() != n) throw std::invalid_argument("derivation matrix has the wrong size");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      ScalarVector r = e * l.bracket_basis(i, j);
      r = r - l.bracket(e.column(i), unit_vector<Scalar>(n, j));
      r = r - l.bracket(unit_vector<Scalar>(n, i), e.column(j));
      if (!is_zero_vector(r)) return LeibnizViolation{i, j, std::move(r)};
    }
  return std::nullopt;
}

inline bool is_derivation(const LieAlgebra& l, const ScalarMatrix& e) { return !leibniz_violation(l, e); }

/// Basis of Der(L).
///
/// Every basis matrix has a designated anchor entry (r, c) where it is 1 and
/// every other basis matrix is 0, so the coefficient of E_k in a derivation D
/// is simply D(r_k, c_k). Anchors are the earliest free entries in row-major
/// order and the basis is sorted by anchor.
struct DerivationSpace {
  std::size_t n = 0;
  std::vector<ScalarMatrix> basis;
  std::vector<std::pair<std::size_t, std::size_t>> anchors;

  std::size_t dim() const { return basis.size(); }

  ScalarMatrix combine(const std::vector<Scalar>& coeffs) const {
    ScalarMatrix m(n, n);
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (!coeffs[k].is_zero()) m += basis[k] * coeffs[k];
    return m;
  }

  /// Coordinates of a derivation in this basis.
  std::vector<Scalar> coordinates(const ScalarMatrix& d) const {
    std::vector<Scalar> c;
    for (auto [r, col] : anchors) c.push_back(d(r, col));
    return c;
  }
};

/// The Leibniz rule as a linear system in the n^2 entries of an unknown matrix.
/// Unknown (r, c) sits in column n^2 - 1 - (r n + c), so that RREF picks its
/// pivots among the late entries and leaves the early ones free.
inline ScalarMatrix leibniz_system(const LieAlgebra& l) {
  const std::size_t n = l.dim();
  const std::size_t unknowns = n * n;
  auto col = [&](std::size_t r, std::size_t c) { return unknowns - 1 - (r * n + c); };
  std::vector<ScalarVector> rows;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      ScalarVector b = l.bracket_basis(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        ScalarVector eq(unknowns);
        // (E [X_i,X_j])_k
        for (std::size_t c = 0; c < n; ++c)
          if (!b[c].is_zero()) eq[col(k, c)] += b[c];
        // - [E X_i, X_j]_k - [X_i, E X_j]_k
        for (std::size_t r = 0; r < n; ++r) {
          Scalar a = l.structure_constant(r, j, k);
          if (!a.is_zero()) eq[col(r, i)] -= a;
          Scalar c2 = l.structure_constant(i, r, k);
          if (!c2.is_zero()) eq[col(r, j)] -= c2;
        }
        if (!is_zero_vector(eq)) rows.push_back(std::move(eq));
      }
    }
  return ScalarMatrix::from_rows(rows, unknowns);
}

inline DerivationSpace derivation_space(const LieAlgebra& l) {
  const std::size_t n = l.dim();
  const std::size_t unknowns = n * n;
  auto r = rref(leibniz_system(l));
  std::vector<bool> pivot(unknowns, false);
  for (auto p : r.pivots) pivot[p] = true;

  DerivationSpace space;
  space.n = n;
  // Walking free columns from the right visits anchors in row-major order.
  for (std::size_t f = unknowns; f-- > 0;) {
    if (pivot[f]) continue;
    ScalarVector v(unknowns);
    v[f] = Scalar(1);
    for (std::size_t row = 0; row < r.rank(); ++row) v[r.pivots[row]] = -r.reduced(row, f);
    ScalarMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < n; ++c) m(i, c) = v[unknowns - 1 - (i * n + c)];
    std::size_t idx = unknowns - 1 - f;
    space.basis.push_back(std::move(m));
    space.anchors.emplace_back(idx / n, idx % n);
  }
  return space;
}

}  // namespace nilaffine
