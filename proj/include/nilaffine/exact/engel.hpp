#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "nilaffine/exact/linear.hpp"

namespace nilaffine {

/// Ordered basis A_1..A_n whose suffix spans V_i = <A_i, ..., A_n> are
/// strictly decreased by every matrix of the family it was built for.
template <class T>
struct Flag {
  std::vector<Vector<T>> basis;

  std::size_t dim() const { return basis.size(); }

  /// Columns are the flag vectors; P^-1 M P is strictly lower triangular.
  Matrix<T> change_of_basis() const { return Matrix<T>::from_columns(basis, basis.size()); }
};

template <class T>
struct EngelResult {
  std::optional<Flag<T>> flag;
  // On failure: the largest subspace W built so far; no vector outside W is
  // mapped into W by every family member.
  Subspace<T> stuck;

  bool ok() const { return flag.has_value(); }
};

/// Simultaneous strict triangularization of a family of n x n matrices.
///
/// Builds the flag from the bottom: with W the span of the vectors chosen so
/// far, take K = { v : M v in W for all M }. If K == W != T^n there is no
/// common strict flag. Otherwise the next vector is the element of K's RREF
/// basis with the rightmost pivot that is not already in W, and it is placed
/// in front of the vectors already chosen.
template <class T>
EngelResult<T> engel_flag(const std::vector<Matrix<T>>& family, std::size_t n) {
  for (const auto& m : family)
    if (m.rows() != n || m.cols() != n) throw std::invalid_argument("engel_flag: family members must all be n x n");

  std::vector<Vector<T>> reversed;
  Subspace<T> current(n);
  while (current.dim() < n) {
    Matrix<T> ann = current.annihilator();
    std::vector<Vector<T>> conditions;
    for (const auto& m : family) {
      Matrix<T> pm = ann * m;
      for (std::size_t r = 0; r < pm.rows(); ++r) conditions.push_back(pm.row(r));
    }
    Subspace<T> kernel = Subspace<T>::span(nullspace(Matrix<T>::from_rows(conditions, n)), n);
    if (kernel.dim() == current.dim()) return {std::nullopt, current};

    auto candidates = kernel.basis();
    std::optional<Vector<T>> chosen;
    for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
      if (!current.contains(*it)) {
        chosen = *it;
        break;
      }
    }
    reversed.push_back(*chosen);
    current = Subspace<T>::span(reversed, n);
  }
  Flag<T> flag;
  flag.basis.assign(reversed.rbegin(), reversed.rend());
  return {std::move(flag), current};
}

template <class T>
EngelResult<T> engel_flag(const std::vector<Matrix<T>>& family) {
  if (family.empty()) throw std::invalid_argument("engel_flag: empty family needs an explicit dimension");
  return engel_flag(family, family.front().rows());
}

/// True iff M V_i is contained in V_{i+1} for every i.
template <class T>
bool flag_is_strict_for(const Flag<T>& flag, const Matrix<T>& m) {
  auto p = flag.change_of_basis();
  auto p_inv = inverse(p);
  if (!p_inv) return false;
  Matrix<T> conj = *p_inv * m * p;
  for (std::size_t r = 0; r < conj.rows(); ++r)
    for (std::size_t c = r; c < conj.cols(); ++c)
      if (!(conj(r, c) == T{})) return false;
  return true;
}

/// Searches for coefficients whose combination of the family is not
/// nilpotent: single members first, then pairwise sums, then seeded
/// small-integer combinations.
template <class T>
std::optional<std::vector<T>> find_non_nilpotent_combination(const std::vector<Matrix<T>>& family, unsigned seed = 0,
                                                             int attempts = 64) {
  const std::size_t m = family.size();
  if (m == 0) return std::nullopt;
  auto combine = [&](const std::vector<T>& coeffs) {
    Matrix<T> acc(family.front().rows(), family.front().cols());
    for (std::size_t i = 0; i < m; ++i)
      if (!(coeffs[i] == T{})) acc += family[i] * coeffs[i];
    return acc;
  };
  auto try_coeffs = [&](const std::vector<T>& coeffs) { return !is_nilpotent_matrix(combine(coeffs)); };

  for (std::size_t i = 0; i < m; ++i) {
    std::vector<T> c(m);
    c[i] = T(1);
    if (try_coeffs(c)) return c;
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      std::vector<T> c(m);
      c[i] = T(1);
      c[j] = T(1);
      if (try_coeffs(c)) return c;
    }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-3, 3);
  for (int a = 0; a < attempts; ++a) {
    std::vector<T> c(m);
    for (auto& x : c) x = T(dist(rng));
    if (try_coeffs(c)) return c;
  }
  return std::nullopt;
}

}  // namespace nilaffine
