#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "nilaffine/nilaffine.hpp"

namespace testing_support {

using namespace nilaffine;

inline std::filesystem::path corpus(const std::string& rel) { return std::filesystem::path(NILAFFINE_CORPUS_DIR) / rel; }

// Numerator in [-num, num], denominator in [1, den].
inline Rational random_rational(std::mt19937_64& rng, int num = 9, int den = 6) {
  std::uniform_int_distribution<int> n(-num, num), q(1, den);
  return Rational(n(rng)) / q(rng);
}

inline Scalar random_scalar(std::mt19937_64& rng, std::int64_t d = 1) {
  if (d == 1) return random_rational(rng);
  return Scalar(random_rational(rng), random_rational(rng), d);
}

inline ScalarVector random_vector(std::mt19937_64& rng, std::size_t n, std::int64_t d = 1) {
  ScalarVector v(n);
  for (auto& x : v) x = random_scalar(rng, d);
  return v;
}

inline ScalarMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, std::int64_t d = 1) {
  ScalarMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = random_scalar(rng, d);
  return m;
}

inline ScalarMatrix random_invertible(std::mt19937_64& rng, std::size_t n) {
  for (;;) {
    auto m = random_matrix(rng, n, n);
    if (inverse(m)) return m;
  }
}

// exp(D) for nilpotent D, an automorphism when D is a derivation.
inline ScalarMatrix exp_nilpotent(const ScalarMatrix& d) {
  const std::size_t n = d.rows();
  ScalarMatrix out = ScalarMatrix::identity(n), term = ScalarMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    term = term * d * Scalar(Rational(1, k));
    out += term;
  }
  return out;
}

// ---- independent integer oracles ----

using IntMatrix = std::vector<std::vector<long long>>;

// Fraction-free Bareiss elimination; entries stay integral throughout.
inline std::size_t bareiss_rank(IntMatrix a) {
  if (a.empty()) return 0;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  __int128 prev = 1;
  std::vector<std::vector<__int128>> m(rows, std::vector<__int128>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m[i][j] = a[i][j];
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}

// Integer structure constants c[i][j][k] with [X_i,X_j] = sum_k c[i][j][k] X_k.
using IntConstants = std::vector<std::vector<std::vector<long long>>>;

inline IntConstants int_constants(std::size_t n, const std::vector<std::vector<int>>& brackets) {
  IntConstants c(n, std::vector<std::vector<long long>>(n, std::vector<long long>(n, 0)));
  for (const auto& b : brackets) {  // {i, j, k, coeff}, 1-based
    c[b[0] - 1][b[1] - 1][b[2] - 1] += b[3];
    c[b[1] - 1][b[0] - 1][b[2] - 1] -= b[3];
  }
  return c;
}

// dim Der = n^2 - rank of the Leibniz system, built directly from the constants.
inline std::size_t oracle_derivation_dim(const IntConstants& c) {
  const std::size_t n = c.size();
  IntMatrix sys;
  auto var = [n](std::size_t r, std::size_t col) { return r * n + col; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        // (D[X_i,X_j])_k - [D X_i, X_j]_k - [X_i, D X_j]_k
        std::vector<long long> row(n * n, 0);
        for (std::size_t l = 0; l < n; ++l) row[var(k, l)] += c[i][j][l];
        for (std::size_t l = 0; l < n; ++l) row[var(l, i)] -= c[l][j][k];
        for (std::size_t l = 0; l < n; ++l) row[var(l, j)] -= c[i][l][k];
        sys.push_back(row);
      }
  return n * n - bareiss_rank(sys);
}

// Dimensions of the lower central series, tracked with spanning sets.
inline std::vector<std::size_t> oracle_lower_central_dims(const IntConstants& c) {
  const std::size_t n = c.size();
  IntMatrix span;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<long long> e(n, 0);
    e[i] = 1;
    span.push_back(e);
  }
  std::vector<std::size_t> dims{n};
  while (dims.back() > 0) {
    IntMatrix next;
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& v : span) {
        std::vector<long long> w(n, 0);
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k) w[k] += v[j] * c[i][j][k];
        next.push_back(w);
      }
    std::size_t d = next.empty() ? 0 : bareiss_rank(next);
    if (d == dims.back()) break;
    dims.push_back(d);
    span = next;
  }
  return dims;
}

inline std::size_t oracle_center_dim(const IntConstants& c) {
  const std::size_t n = c.size();
  IntMatrix stacked;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<long long> row(n);
      for (std::size_t j = 0; j < n; ++j) row[j] = c[i][j][k];
      stacked.push_back(row);
    }
  return n - bareiss_rank(stacked);
}

inline const std::vector<std::string>& corpus_reps() {
  static const std::vector<std::string> files = {
      "reps/R3_to_h3.json",   "reps/h3_to_R3.json",     "reps/R4_to_R4.json",   "reps/h3+R_to_h3+R.json",
      "reps/f4_to_f4.json",   "reps/R4_to_h3+R.json",   "reps/R4_to_f4.json",   "reps/h3+R_to_R4.json",
      "reps/h3+R_to_f4.json", "reps/f4_to_R4.json",     "reps/f4_to_h3+R.json", "reps/h3+R2_to_g5_6.json",
      "witnesses/R5_to_h3+R2.json"};
  return files;
}

}  // namespace testing_support
