#pragma once

#include <cstddef>
#include <vector>

#include "nilaffine/liealg/lie_algebra.hpp"

namespace nilaffine {

using ScalarSubspace = Subspace<Scalar>;

/// [A, B] spanned by brackets of basis vectors.
inline ScalarSubspace bracket_span(const LieAlgebra& l, const ScalarSubspace& a, const ScalarSubspace& b) {
  std::vector<ScalarVector> gens;
  auto ab = a.basis();
  auto bb = b.basis();
  for (const auto& x : ab)
    for (const auto& y : bb) {
      auto v = l.bracket(x, y);
      if (!is_zero_vector(v)) gens.push_back(std::move(v));
    }
  return ScalarSubspace::span(gens, l.dim());
}

/// L, [L,L], [[L,L],[L,L]], ... up to and including the first repeated term.
inline std::vector<ScalarSubspace> derived_series(const LieAlgebra& l) {
  std::vector<ScalarSubspace> series{ScalarSubspace::whole(l.dim())};
  while (true) {
    auto next = bracket_span(l, series.back(), series.back());
    bool stable = next == series.back();
    series.push_back(std::move(next));
    if (stable || series.back().dim() == 0) break;
  }
  return series;
}

/// L, [L,L], [L,[L,L]], ... up to and including the first repeated term.
inline std::vector<ScalarSubspace> lower_central_series(const LieAlgebra& l) {
  auto whole = ScalarSubspace::whole(l.dim());
  std::vector<ScalarSubspace> series{whole};
  while (true) {
    auto next = bracket_span(l, whole, series.back());
    bool stable = next == series.back();
    series.push_back(std::move(next));
    if (stable || series.back().dim() == 0) break;
  }
  return series;
}

inline bool is_nilpotent_algebra(const LieAlgebra& l) { return lower_central_series(l).back().dim() == 0; }

/// [[L,L],[L,L]] = 0.
inline bool is_two_step_solvable(const LieAlgebra& l) {
  auto whole = ScalarSubspace::whole(l.dim());
  auto derived = bracket_span(l, whole, whole);
  return bracket_span(l, derived, derived).dim() == 0;
}

/// Joint kernel of all ad(X_i).
inline ScalarSubspace center(const LieAlgebra& l) {
  const std::size_t n = l.dim();
  std::vector<ScalarVector> rows;
  for (std::size_t i = 0; i < n; ++i) {
    auto a = l.ad(i);
    for (std::size_t r = 0; r < n; ++r) rows.push_back(a.row(r));
  }
  return ScalarSubspace::span(nullspace(ScalarMatrix::from_rows(rows, n)), n);
}

}  // namespace nilaffine
