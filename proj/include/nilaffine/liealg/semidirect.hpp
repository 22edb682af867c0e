#pragma once

#include <stdexcept>

#include "nilaffine/liealg/lie_algebra.hpp"

namespace nilaffine {

/// Element (X, D) of n x| Der(n).
struct SemidirectElement {
  ScalarVector x;
  ScalarMatrix d;

  friend bool operator==(const SemidirectElement&, const SemidirectElement&) = default;
};

/// [(X,D),(X',D')] = ([X,X'] + D X' - D' X, [D,D']).
inline SemidirectElement semidirect_bracket(const LieAlgebra& n, const SemidirectElement& a, const SemidirectElement& b) {
  const std::size_t dim = n.dim();
  if (a.x.size() != dim || b.x.size() != dim || a.d.rows() != dim || a.d.cols() != dim || b.d.rows() != dim ||
      b.d.cols() != dim)
    throw std::invalid_argument("semidirect_bracket: component sizes do not match the algebra");
  ScalarVector x = n.bracket(a.x, b.x) + a.d * b.x - b.d * a.x;
  return {std::move(x), commutator(a.d, b.d)};
}

inline SemidirectElement operator+(const SemidirectElement& a, const SemidirectElement& b) {
  return {a.x + b.x, a.d + b.d};
}

inline SemidirectElement operator*(const Scalar& s, const SemidirectElement& a) {
  ScalarVector x = a.x;
  for (auto& v : x) v *= s;
  return {std::move(x), a.d * s};
}

}  // namespace nilaffine
