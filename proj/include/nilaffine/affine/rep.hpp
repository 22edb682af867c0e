#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nilaffine/exact/engel.hpp"
#include "nilaffine/liealg/derivations.hpp"
#include "nilaffine/liealg/semidirect.hpp"

namespace nilaffine {

/// Invalid representation data. Carries the offending D index and basis
/// pair when the failure is a Leibniz violation.
class RepError : public std::invalid_argument {
 public:
  explicit RepError(const std::string& what) : std::invalid_argument(what) {}
  RepError(const std::string& what, std::size_t d_index, std::size_t i, std::size_t j)
      : std::invalid_argument(what), d_index_(d_index), pair_(std::make_pair(i, j)) {}

  std::optional<std::size_t> d_index() const { return d_index_; }
  std::optional<std::pair<std::size_t, std::size_t>> pair() const { return pair_; }

 private:
  std::optional<std::size_t> d_index_;
  std::optional<std::pair<std::size_t, std::size_t>> pair_;
};

/// Linear map g -> n x| Der(n) given on the basis of g: X_i -> (t_i, D_i).
///
/// dim g and dim n may differ; only the bijectivity check requires equality.
class AffineRep {
 public:
  AffineRep(LieAlgebra source, LieAlgebra target, std::vector<ScalarVector> t, std::vector<ScalarMatrix> d,
            std::int64_t field_d = 1)
      : source_(std::move(source)), target_(std::move(target)), t_(std::move(t)), d_(std::move(d)), field_d_(field_d) {
    if (!is_square_free(field_d_)) throw RepError("field parameter d=" + std::to_string(field_d_) + " is not square-free");
    for (std::int64_t algebra_d : {source_.d(), target_.d()}) {
      if (algebra_d != 1 && field_d_ == 1) field_d_ = algebra_d;
      if (algebra_d != 1 && algebra_d != field_d_) throw RepError("source and target live over different fields");
    }
    const std::size_t m = source_.dim();
    const std::size_t n = target_.dim();
    if (t_.size() != m) throw RepError("expected " + std::to_string(m) + " translation vectors, got " + std::to_string(t_.size()));
    if (d_.size() != m) throw RepError("expected " + std::to_string(m) + " linear parts, got " + std::to_string(d_.size()));
    for (std::size_t i = 0; i < m; ++i) {
      if (t_[i].size() != n) throw RepError("t" + std::to_string(i + 1) + " has length " + std::to_string(t_[i].size()) + ", expected " + std::to_string(n));
      if (d_[i].rows() != n || d_[i].cols() != n) throw RepError("D" + std::to_string(i + 1) + " is not " + std::to_string(n) + "x" + std::to_string(n));
      for (const auto& s : t_[i]) check_field(s, "t" + std::to_string(i + 1));
      for (const auto& s : d_[i].entries()) check_field(s, "D" + std::to_string(i + 1));
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (auto v = leibniz_violation(target_, d_[i]))
        throw RepError("D" + std::to_string(i + 1) + " is not a derivation of " + target_.name() + ": Leibniz rule fails on pair (" +
                           std::to_string(v->i + 1) + "," + std::to_string(v->j + 1) + ")",
                       i, v->i, v->j);
    }
  }

  const LieAlgebra& source() const { return source_; }
  const LieAlgebra& target() const { return target_; }
  const std::vector<ScalarVector>& t() const { return t_; }
  const std::vector<ScalarMatrix>& d() const { return d_; }
  std::int64_t field_d() const { return field_d_; }

  /// t_X for X with coordinates x.
  ScalarVector translation(const ScalarVector& x) const {
    ScalarVector out(target_.dim());
    for (std::size_t i = 0; i < x.size(); ++i) axpy(out, x[i], t_[i]);
    return out;
  }

  /// D_X for X with coordinates x.
  ScalarMatrix linear_part(const ScalarVector& x) const {
    ScalarMatrix out(target_.dim(), target_.dim());
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!x[i].is_zero()) out += d_[i] * x[i];
    return out;
  }

  SemidirectElement image(const ScalarVector& x) const {
    if (x.size() != source_.dim()) throw std::invalid_argument("image: coordinate vector has the wrong length");
    return {translation(x), linear_part(x)};
  }

  SemidirectElement image_basis(std::size_t i) const { return {t_[i], d_[i]}; }

  /// n x m matrix with columns t_i.
  ScalarMatrix t_matrix() const { return ScalarMatrix::from_columns(t_, target_.dim()); }

  friend bool operator==(const AffineRep& a, const AffineRep& b) {
    return a.source_.same_structure(b.source_) && a.target_.same_structure(b.target_) && a.t_ == b.t_ && a.d_ == b.d_;
  }

 private:
  void check_field(const Scalar& s, const std::string& where) const {
    if (!s.is_rational() && s.d() != field_d_)
      throw RepError(where + " entry " + s.str() + " is not in Q(sqrt(" + std::to_string(field_d_) + "))");
  }

  LieAlgebra source_;
  LieAlgebra target_;
  std::vector<ScalarVector> t_;
  std::vector<ScalarMatrix> d_;
  std::int64_t field_d_ = 1;
};

struct HomomorphismViolation {
  std::size_t i, j;  // 0-based source pair
  ScalarVector translation_residual;
  ScalarMatrix linear_residual;
};

struct HomomorphismReport {
  std::optional<HomomorphismViolation> violation;
  bool ok() const { return !violation.has_value(); }
};

/// d rho([X_i,X_j]) == [d rho(X_i), d rho(X_j)] for all i < j.
inline HomomorphismReport check_homomorphism(const AffineRep& rep) {
  const std::size_t m = rep.source().dim();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      SemidirectElement lhs = rep.image(rep.source().bracket_basis(i, j));
      SemidirectElement rhs = semidirect_bracket(rep.target(), rep.image_basis(i), rep.image_basis(j));
      if (!(lhs == rhs)) return {HomomorphismViolation{i, j, lhs.x - rhs.x, lhs.d - rhs.d}};
    }
  return {};
}

/// Outcome of the two simply-transitivity conditions plus the homomorphism check.
struct RepVerdict {
  HomomorphismReport homomorphism;
  bool dims_match = false;
  std::size_t t_rank = 0;
  bool t_bijective = false;
  bool linear_parts_nilpotent = false;
  std::optional<Flag<Scalar>> flag;                         // certificate on success
  std::optional<std::vector<Scalar>> non_nilpotent_combination;  // evidence on failure, when found
  std::size_t stuck_dim = 0;

  bool overall() const { return homomorphism.ok() && t_bijective && linear_parts_nilpotent; }
};

inline RepVerdict check_simply_transitive(const AffineRep& rep) {
  RepVerdict v;
  v.homomorphism = check_homomorphism(rep);
  const std::size_t m = rep.source().dim();
  const std::size_t n = rep.target().dim();
  v.dims_match = m == n;
  v.t_rank = rank(rep.t_matrix());
  v.t_bijective = v.dims_match && v.t_rank == n;
  auto engel = engel_flag(rep.d(), n);
  v.linear_parts_nilpotent = engel.ok();
  if (engel.ok()) {
    v.flag = std::move(engel.flag);
  } else {
    v.stuck_dim = engel.stuck.dim();
    v.non_nilpotent_combination = find_non_nilpotent_combination(rep.d());
  }
  return v;
}

/// The same representation written in the source basis Y_i = P e_i.
inline AffineRep change_source_basis(const AffineRep& rep, const ScalarMatrix& p) {
  const std::size_t m = rep.source().dim();
  if (p.rows() != m || p.cols() != m) throw std::invalid_argument("change_source_basis: wrong matrix size");
  std::vector<ScalarVector> t;
  std::vector<ScalarMatrix> d;
  for (std::size_t i = 0; i < m; ++i) {
    ScalarVector col = p.column(i);
    t.push_back(rep.translation(col));
    d.push_back(rep.linear_part(col));
  }
  return AffineRep(change_basis(rep.source(), p), rep.target(), std::move(t), std::move(d), rep.field_d());
}

/// Composition with an automorphism A of the target: t_i -> A t_i, D_i -> A D_i A^-1.
inline AffineRep compose_target_automorphism(const AffineRep& rep, const ScalarMatrix& a) {
  auto a_inv = inverse(a);
  if (!a_inv) throw std::invalid_argument("compose_target_automorphism: matrix is singular");
  std::vector<ScalarVector> t;
  std::vector<ScalarMatrix> d;
  for (std::size_t i = 0; i < rep.source().dim(); ++i) {
    t.push_back(a * rep.t()[i]);
    d.push_back(a * rep.d()[i] * *a_inv);
  }
  return AffineRep(rep.source(), rep.target(), std::move(t), std::move(d), rep.field_d());
}

/// The representation X -> (X, 0) of an algebra on itself.
inline AffineRep trivial_rep(const LieAlgebra& g) {
  std::vector<ScalarVector> t;
  std::vector<ScalarMatrix> d;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    t.push_back(unit_vector<Scalar>(g.dim(), i));
    d.emplace_back(g.dim(), g.dim());
  }
  return AffineRep(g, g, std::move(t), std::move(d), g.d());
}

}  // namespace nilaffine
