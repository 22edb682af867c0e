#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nilaffine/affine/rep.hpp"

namespace nilaffine {

/// Bilinear product X_i . X_j = sum_k p^k_{ij} X_k on a Lie algebra.
///
/// Constants are dense over ordered pairs: LR-products have no symmetry.
class LRStructure {
 public:
  explicit LRStructure(LieAlgebra parent) : parent_(std::move(parent)) {
    const std::size_t n = parent_.dim();
    p_.assign(n, std::vector<ScalarVector>(n, ScalarVector(n)));
  }

  /// constants[i][j][k] = p^k_{ij}.
  LRStructure(LieAlgebra parent, std::vector<std::vector<ScalarVector>> constants)
      : parent_(std::move(parent)), p_(std::move(constants)) {
    const std::size_t n = parent_.dim();
    if (p_.size() != n) throw std::invalid_argument("LR product table has the wrong size");
    for (const auto& row : p_) {
      if (row.size() != n) throw std::invalid_argument("LR product table has the wrong size");
      for (const auto& v : row)
        if (v.size() != n) throw std::invalid_argument("LR product table has the wrong size");
    }
  }

  const LieAlgebra& parent() const { return parent_; }
  std::size_t dim() const { return parent_.dim(); }
  const std::vector<std::vector<ScalarVector>>& constants() const { return p_; }
  const ScalarVector& product_basis(std::size_t i, std::size_t j) const { return p_[i][j]; }

  ScalarVector product(const ScalarVector& x, const ScalarVector& y) const {
    const std::size_t n = dim();
    if (x.size() != n || y.size() != n) throw std::invalid_argument("LR product: vector length mismatch");
    ScalarVector out(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (y[j].is_zero()) continue;
        axpy(out, x[i] * y[j], p_[i][j]);
      }
    }
    return out;
  }

  /// L(X_i): column j holds X_i . X_j.
  ScalarMatrix left(std::size_t i) const {
    const std::size_t n = dim();
    ScalarMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) m(k, j) = p_[i][j][k];
    return m;
  }

  /// R(X_i): column j holds X_j . X_i.
  ScalarMatrix right(std::size_t i) const {
    const std::size_t n = dim();
    ScalarMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) m(k, j) = p_[j][i][k];
    return m;
  }

  friend bool operator==(const LRStructure& a, const LRStructure& b) {
    return a.parent_.same_structure(b.parent_) && a.p_ == b.p_;
  }

 private:
  LieAlgebra parent_;
  std::vector<std::vector<ScalarVector>> p_;
};

struct LRViolation {
  int identity;  // 1: X.(Y.Z) = Y.(X.Z), 2: (X.Y).Z = (X.Z).Y, 3: [X,Y] = X.Y - Y.X
  std::vector<std::size_t> witness;  // 0-based basis indices (triple, or pair for identity 3)
  ScalarVector residual;
};

struct LRReport {
  std::vector<LRViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// All three identities on all basis triples / pairs.
inline LRReport check_lr(const LRStructure& s) {
  LRReport report;
  const std::size_t n = s.dim();
  const auto& lie = s.parent();
  auto e = [n](std::size_t i) { return unit_vector<Scalar>(n, i); };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        if (x < y) {
          auto r = s.product(e(x), s.product_basis(y, z)) - s.product(e(y), s.product_basis(x, z));
          if (!is_zero_vector(r)) report.violations.push_back({1, {x, y, z}, std::move(r)});
        }
        if (y < z) {
          auto r = s.product(s.product_basis(x, y), e(z)) - s.product(s.product_basis(x, z), e(y));
          if (!is_zero_vector(r)) report.violations.push_back({2, {x, y, z}, std::move(r)});
        }
      }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      auto r = lie.bracket_basis(x, y) - (s.product_basis(x, y) - s.product_basis(y, x));
      if (!is_zero_vector(r)) report.violations.push_back({3, {x, y}, std::move(r)});
    }
  return report;
}

struct CompletenessVerdict {
  bool complete = false;
  std::optional<Flag<Scalar>> flag;
  std::optional<std::vector<Scalar>> non_nilpotent_combination;
};

/// Engel flag on {L(X_1), ..., L(X_n)}.
inline CompletenessVerdict check_complete(const LRStructure& s) {
  std::vector<ScalarMatrix> lefts;
  for (std::size_t i = 0; i < s.dim(); ++i) lefts.push_back(s.left(i));
  auto engel = engel_flag(lefts, s.dim());
  CompletenessVerdict v;
  v.complete = engel.ok();
  if (engel.ok())
    v.flag = std::move(engel.flag);
  else
    v.non_nilpotent_combination = find_non_nilpotent_combination(lefts);
  return v;
}

struct LRFromRep {
  LRStructure structure;
  /// Source basis change used to make t the identity: Y_i = P e_i with P = T^-1.
  ScalarMatrix reparametrization;
  AffineRep normalized;
};

/// X . Y = -D_X(Y), after re-parametrizing the abelian source so that t is
/// the identity.
inline LRFromRep rep_to_lr(const AffineRep& rep) {
  if (!rep.source().is_abelian()) throw std::invalid_argument("rep_to_lr: source algebra " + rep.source().name() + " is not abelian");
  auto verdict = check_simply_transitive(rep);
  if (!verdict.overall()) throw std::invalid_argument("rep_to_lr: representation is not simply transitive");
  const std::size_t n = rep.target().dim();
  auto p = inverse(rep.t_matrix());
  AffineRep normalized = change_source_basis(rep, *p);
  std::vector<std::vector<ScalarVector>> constants(n, std::vector<ScalarVector>(n, ScalarVector(n)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) constants[i][j][k] = -normalized.d()[i](k, j);
  return {LRStructure(rep.target(), std::move(constants)), *p, std::move(normalized)};
}

/// Abelian representation R^n -> n x| Der(n) with t = identity and D_i = -L(X_i).
inline AffineRep lr_to_rep(const LRStructure& s) {
  if (auto report = check_lr(s); !report.ok()) throw std::invalid_argument("lr_to_rep: product violates the LR identities");
  auto completeness = check_complete(s);
  if (!completeness.complete) throw std::invalid_argument("lr_to_rep: LR-structure is not complete (no common strict flag for the left multiplications)");
  const std::size_t n = s.dim();
  std::vector<ScalarVector> t;
  std::vector<ScalarMatrix> d;
  for (std::size_t i = 0; i < n; ++i) {
    t.push_back(unit_vector<Scalar>(n, i));
    d.push_back(-s.left(i));
  }
  std::int64_t field = s.parent().d();
  for (const auto& m : d)
    for (const auto& x : m.entries())
      if (!x.is_rational()) field = x.d();
  AffineRep rep(abelian_algebra(n), s.parent(), std::move(t), std::move(d), field);
  if (!check_simply_transitive(rep).overall()) throw std::logic_error("lr_to_rep: resulting representation failed verification");
  return rep;
}

}  // namespace nilaffine
