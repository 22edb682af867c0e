#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nilaffine/liealg/lie_algebra.hpp"

namespace nilaffine {

namespace detail {

// Brackets written 1-based as {i, j, k, c}: [X_i, X_j] = c X_k.
struct Bracket1 {
  std::size_t i, j, k;
  long c;
};

inline LieAlgebra algebra_1based(std::string name, std::size_t dim, std::vector<Bracket1> brackets) {
  std::vector<BracketSpec> specs;
  for (const auto& b : brackets) specs.push_back({b.i - 1, b.j - 1, {{b.k - 1, Scalar(b.c)}}});
  return LieAlgebra(std::move(name), dim, 1, specs);
}

}  // namespace detail

inline LieAlgebra heisenberg3() { return detail::algebra_1based("h3", 3, {{1, 2, 3, 1}}); }

inline LieAlgebra heisenberg3_plus_r() { return detail::algebra_1based("h3+R", 4, {{1, 2, 3, 1}}); }

inline LieAlgebra filiform4() { return detail::algebra_1based("f4", 4, {{1, 2, 3, 1}, {1, 3, 4, 1}}); }

inline LieAlgebra heisenberg3_plus_r2() { return detail::algebra_1based("h3+R2", 5, {{1, 2, 3, 1}}); }

inline LieAlgebra g5_6() {
  return detail::algebra_1based("g5_6", 5, {{1, 2, 3, 1}, {1, 3, 4, 1}, {1, 4, 5, 1}, {2, 3, 5, 1}});
}

inline LieAlgebra g6_18() {
  return detail::algebra_1based("g6_18", 6, {{1, 2, 3, 1}, {1, 3, 4, 1}, {1, 4, 5, 1}, {2, 5, 6, 1}, {3, 4, 6, -1}});
}

/// The twelve algebras with printed brackets: R1..R6, h3, h3+R, f4, h3+R2, g5_6, g6_18.
inline std::vector<LieAlgebra> catalog() {
  std::vector<LieAlgebra> out;
  for (std::size_t n = 1; n <= 6; ++n) out.push_back(abelian_algebra(n));
  out.push_back(heisenberg3());
  out.push_back(heisenberg3_plus_r());
  out.push_back(filiform4());
  out.push_back(heisenberg3_plus_r2());
  out.push_back(g5_6());
  out.push_back(g6_18());
  return out;
}

inline std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const auto& l : catalog()) names.push_back(l.name());
  return names;
}

inline std::optional<LieAlgebra> find_in_catalog(std::string_view name) {
  for (auto& l : catalog())
    if (l.name() == name) return l;
  return std::nullopt;
}

}  // namespace nilaffine
