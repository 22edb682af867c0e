#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nilaffine/exact/rational.hpp"

namespace nilaffine {

/// Sorted (variable, exponent) pairs with positive exponents.
using Monomial = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

inline Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

inline std::uint32_t monomial_degree(const Monomial& m) {
  std::uint32_t d = 0;
  for (const auto& [v, e] : m) d += e;
  return d;
}

/// Sparse multivariate polynomial with rational coefficients. Zero
/// coefficients are never stored, so equality is structural.
class Poly {
 public:
  Poly() = default;
  Poly(int c) : Poly(Rational(c)) {}
  Poly(Rational c) {
    if (c != 0) terms_.emplace(Monomial{}, std::move(c));
  }

  static Poly variable(std::uint32_t v) {
    Poly p;
    p.terms_.emplace(Monomial{{v, 1}}, Rational(1));
    return p;
  }

  const std::map<Monomial, Rational>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

  Rational constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Total degree; the zero polynomial has degree 0.
  std::uint32_t degree() const {
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
    return d;
  }

  /// Coefficients of the degree-1 part.
  std::map<std::uint32_t, Rational> linear_part() const {
    std::map<std::uint32_t, Rational> out;
    for (const auto& [m, c] : terms_)
      if (m.size() == 1 && m[0].second == 1) out.emplace(m[0].first, c);
    return out;
  }

  std::set<std::uint32_t> variables() const {
    std::set<std::uint32_t> out;
    for (const auto& [m, c] : terms_)
      for (const auto& [v, e] : m) out.insert(v);
    return out;
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly operator-() const {
    Poly p;
    for (const auto& [m, c] : terms_) p.terms_.emplace(m, -c);
    return p;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly p;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) p.add_term(monomial_product(ma, mb), ca * cb);
    return p;
  }
  friend Poly operator/(const Poly& a, const Poly& b) {
    if (!b.is_constant() || b.is_zero()) throw std::domain_error("polynomial division is only defined by nonzero constants");
    Rational inv = 1 / b.constant_term();
    Poly p;
    for (const auto& [m, c] : a.terms_) p.terms_.emplace(m, c * inv);
    return p;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  /// Replaces each variable v with subst(v) when it returns a polynomial.
  Poly substitute(const std::function<const Poly*(std::uint32_t)>& subst) const {
    Poly out;
    for (const auto& [m, c] : terms_) {
      Poly term(c);
      Monomial kept;
      for (const auto& [v, e] : m) {
        if (const Poly* s = subst(v)) {
          for (std::uint32_t k = 0; k < e; ++k) term = term * *s;
        } else {
          kept.emplace_back(v, e);
        }
      }
      if (!kept.empty()) {
        Poly mono;
        mono.terms_.emplace(std::move(kept), Rational(1));
        term = term * mono;
      }
      out += term;
    }
    return out;
  }

  Rational evaluate(const std::function<Rational(std::uint32_t)>& value) const {
    Rational acc = 0;
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (const auto& [v, e] : m) {
        Rational x = value(v);
        for (std::uint32_t k = 0; k < e; ++k) t *= x;
      }
      acc += t;
    }
    return acc;
  }

  std::string str(const std::function<std::string(std::uint32_t)>& name) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      Rational mag = c < 0 ? Rational(-c) : c;
      out += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
      first = false;
      std::string factors;
      for (const auto& [v, e] : m) {
        if (!factors.empty()) factors += "*";
        factors += name(v);
        if (e > 1) factors += "^" + std::to_string(e);
      }
      if (factors.empty())
        out += to_string(mag);
      else if (mag == 1)
        out += factors;
      else
        out += to_string(mag) + "*" + factors;
    }
    return out;
  }

 private:
  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::map<Monomial, Rational> terms_;
};

}  // namespace nilaffine
