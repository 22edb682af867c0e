#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nilaffine/liealg/catalog.hpp"
#include "nilaffine/liealg/series.hpp"
#include "nilaffine/lr/lr_structure.hpp"
#include "nilaffine/obstruction/poly.hpp"

namespace nilaffine {

using ParametricMatrix = Matrix<Poly>;

/// Unknown u_{ik}: coefficient of derivation basis element E_k in D_i.
struct VariableInfo {
  std::size_t d_index = 0;      // i, 0-based
  std::size_t basis_index = 0;  // k, 0-based
  std::pair<std::size_t, std::size_t> anchor;  // entry of D_i equal to u_{ik}
  std::string name;   // "u[i,k]", 1-based
  std::string label;  // conventional name when one is known (g6_18), else empty

  std::string display() const { return label.empty() ? name : label; }
};

namespace detail {

inline Rational rational_of(const Scalar& s) {
  if (!s.is_rational()) throw std::invalid_argument("obstruction analysis works over Q only");
  return s.rat();
}

// Conventional parameter names for the g6_18 derivation pattern, keyed by anchor.
inline std::string g6_18_label(std::pair<std::size_t, std::size_t> anchor, std::size_t d_index) {
  static const std::map<std::pair<std::size_t, std::size_t>, std::pair<std::string, std::string>> names = {
      {{0, 0}, {"alpha", ""}}, {{1, 1}, {"beta", ""}},  {{2, 0}, {"gamma", "1"}}, {{2, 1}, {"gamma", "2"}},
      {{3, 0}, {"delta", ""}}, {{4, 0}, {"eps", "1"}},  {{4, 1}, {"eps", "2"}},   {{5, 0}, {"phi", "1"}},
      {{5, 1}, {"phi", "2"}},
  };
  auto it = names.find(anchor);
  if (it == names.end()) return {};
  return it->second.first + "_" + std::to_string(d_index + 1) + it->second.second;
}

}  // namespace detail

inline std::vector<VariableInfo> obstruction_variables(const LieAlgebra& n, const DerivationSpace& space) {
  const bool conventional = n.same_structure(g6_18()) && space.dim() == 9;
  std::vector<VariableInfo> vars;
  for (std::size_t i = 0; i < n.dim(); ++i)
    for (std::size_t k = 0; k < space.dim(); ++k) {
      VariableInfo v;
      v.d_index = i;
      v.basis_index = k;
      v.anchor = space.anchors[k];
      v.name = "u[" + std::to_string(i + 1) + "," + std::to_string(k + 1) + "]";
      if (conventional) v.label = detail::g6_18_label(v.anchor, i);
      vars.push_back(std::move(v));
    }
  return vars;
}

/// General derivation sum_k u_{ik} E_k with fresh unknowns for D_i.
inline ParametricMatrix parametric_derivation(const DerivationSpace& space, std::size_t i) {
  const std::size_t n = space.n;
  const std::size_t r = space.dim();
  ParametricMatrix m(n, n);
  for (std::size_t k = 0; k < r; ++k) {
    Poly u = Poly::variable(static_cast<std::uint32_t>(i * r + k));
    for (std::size_t row = 0; row < n; ++row)
      for (std::size_t col = 0; col < n; ++col) {
        const Scalar& e = space.basis[k](row, col);
        if (!e.is_zero()) m(row, col) += u * Poly(detail::rational_of(e));
      }
  }
  return m;
}

inline ParametricMatrix parametric_derivation(const LieAlgebra& n, std::size_t i) {
  return parametric_derivation(derivation_space(n), i);
}

/// Names one scalar equation of the system.
struct EquationRef {
  enum class Kind { Translation, Commutator };
  Kind kind = Kind::Translation;
  std::size_t i = 0, j = 0;      // basis pair, i < j
  std::size_t row = 0, col = 0;  // coordinate (translation) or matrix entry (commutator)

  friend bool operator==(const EquationRef&, const EquationRef&) = default;
};

/// Polynomial system for abelian simply transitive representations on n:
/// t_i = X_i, D_i = sum_k u_{ik} E_k.
class AbelianSystem {
 public:
  explicit AbelianSystem(const LieAlgebra& n) : algebra_(n), space_(derivation_space(n)) {
    const std::size_t dim = n.dim();
    for (std::size_t i = 0; i < dim; ++i) d_.push_back(parametric_derivation(space_, i));
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i + 1; j < dim; ++j) {
        auto c = commutator(d_[i], d_[j]);
        commutators_.emplace(std::make_pair(i, j), std::move(c));
      }
  }

  const LieAlgebra& algebra() const { return algebra_; }
  const DerivationSpace& space() const { return space_; }
  const std::vector<ParametricMatrix>& d() const { return d_; }
  std::size_t variable_count() const { return algebra_.dim() * space_.dim(); }

  /// [X_i,X_j] + D_i(X_j) - D_j(X_i), coordinate `row`; or entry (row, col) of [D_i, D_j].
  Poly equation(const EquationRef& ref) const {
    if (ref.kind == EquationRef::Kind::Translation) {
      Poly p(detail::rational_of(algebra_.structure_constant(ref.i, ref.j, ref.row)));
      p += d_[ref.i](ref.row, ref.j);
      p -= d_[ref.j](ref.row, ref.i);
      return p;
    }
    return commutators_.at({ref.i, ref.j})(ref.row, ref.col);
  }

  std::vector<EquationRef> translation_refs() const {
    std::vector<EquationRef> refs;
    const std::size_t n = algebra_.dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t c = 0; c < n; ++c) {
          EquationRef ref{EquationRef::Kind::Translation, i, j, c, 0};
          if (!equation(ref).is_zero()) refs.push_back(ref);
        }
    return refs;
  }

  std::vector<EquationRef> commutator_refs() const {
    std::vector<EquationRef> refs;
    const std::size_t n = algebra_.dim();
    for (const auto& [pair, m] : commutators_)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          if (!m(r, c).is_zero()) refs.push_back({EquationRef::Kind::Commutator, pair.first, pair.second, r, c});
    return refs;
  }

  /// D_i at a rational point u.
  std::vector<ScalarMatrix> specialize(const std::vector<Rational>& u) const {
    const std::size_t r = space_.dim();
    std::vector<ScalarMatrix> out;
    for (std::size_t i = 0; i < algebra_.dim(); ++i) {
      std::vector<Scalar> coeffs;
      for (std::size_t k = 0; k < r; ++k) coeffs.emplace_back(u[i * r + k]);
      out.push_back(space_.combine(coeffs));
    }
    return out;
  }

 private:
  LieAlgebra algebra_;
  DerivationSpace space_;
  std::vector<ParametricMatrix> d_;
  std::map<std::pair<std::size_t, std::size_t>, ParametricMatrix> commutators_;
};

/// Affine substitution u_v -> S[v]; free variables map to themselves.
using AffineMap = std::vector<Poly>;

inline AffineMap identity_map(std::size_t count) {
  AffineMap s;
  for (std::size_t v = 0; v < count; ++v) s.push_back(Poly::variable(static_cast<std::uint32_t>(v)));
  return s;
}

inline std::vector<std::uint32_t> free_variables(const AffineMap& s) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; v < s.size(); ++v)
    if (s[v] == Poly::variable(v)) out.push_back(v);
  return out;
}

inline Poly apply_map(const Poly& p, const AffineMap& s) {
  return p.substitute([&](std::uint32_t v) -> const Poly* { return &s[v]; });
}

struct LinearSolve {
  // Consistent: pivot variable -> affine expression in the remaining variables.
  std::map<std::uint32_t, Poly> pivots;
  std::size_t rank = 0;
  // Inconsistent: multipliers over the equations with sum = nonzero constant.
  std::optional<std::vector<Rational>> infeasible;
  Rational infeasible_value = 0;
};

/// Exact elimination on degree <= 1 polynomials. Variables are ordered by
/// index, so pivots are the lowest-indexed variables.
inline LinearSolve solve_linear(const std::vector<Poly>& eqs) {
  std::set<std::uint32_t> var_set;
  for (const auto& e : eqs) {
    if (e.degree() > 1) throw std::logic_error("solve_linear: equation of degree > 1");
    auto vs = e.variables();
    var_set.insert(vs.begin(), vs.end());
  }
  std::vector<std::uint32_t> vars(var_set.begin(), var_set.end());
  std::map<std::uint32_t, std::size_t> column;
  for (std::size_t c = 0; c < vars.size(); ++c) column[vars[c]] = c;
  const std::size_t cols = vars.size() + 1;
  Matrix<Rational> a(eqs.size(), cols);
  for (std::size_t r = 0; r < eqs.size(); ++r) {
    for (const auto& [v, c] : eqs[r].linear_part()) a(r, column[v]) = c;
    a(r, cols - 1) = -eqs[r].constant_term();
  }
  auto red = rref_with_transform(a);
  LinearSolve out;
  out.rank = red.rref.rank();
  for (std::size_t row = 0; row < red.rref.rank(); ++row) {
    std::size_t p = red.rref.pivots[row];
    if (p == cols - 1) {
      std::vector<Rational> lambda;
      for (std::size_t e = 0; e < eqs.size(); ++e) lambda.push_back(red.transform(row, e));
      Poly sum;
      for (std::size_t e = 0; e < eqs.size(); ++e) sum += eqs[e] * Poly(lambda[e]);
      out.infeasible = std::move(lambda);
      out.infeasible_value = sum.constant_term();
      out.rank = row;
      return out;
    }
    Poly expr(red.rref.reduced(row, cols - 1));
    for (std::size_t c = p + 1; c + 1 < cols; ++c)
      if (red.rref.reduced(row, c) != 0) expr -= Poly(red.rref.reduced(row, c)) * Poly::variable(vars[c]);
    out.pivots.emplace(vars[p], std::move(expr));
  }
  return out;
}

enum class Verdict { Obstructed, Found, Undetermined };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Obstructed: return "Obstructed";
    case Verdict::Found: return "Found";
    case Verdict::Undetermined: return "Undetermined";
  }
  return "?";
}

/// One round of linear forcing: the listed equations, linear after the
/// previous round's substitution, and the substitution after solving them.
struct ForcingStage {
  std::vector<EquationRef> equations;
  AffineMap map;
};

struct CommutatorCertificate {
  std::size_t i = 0, j = 0, row = 0, col = 0;
  Rational value = 0;
};

struct InfeasibilityCertificate {
  std::size_t stage = 0;  // index into ObstructionOutcome::stages; that stage has an empty map
  std::vector<Rational> multipliers;
  Rational value = 0;
};

struct ResidualEquation {
  EquationRef ref;
  Poly poly;
};

struct ObstructionOptions {
  int samples = 32;
  std::uint64_t seed = 0;
  // Shuffles equation order before each elimination; the outcome must not depend on it.
  std::optional<std::uint64_t> shuffle_seed;
};

struct ObstructionOutcome {
  Verdict verdict = Verdict::Undetermined;
  std::string algebra;
  bool two_step_solvable = true;
  std::size_t derivation_dim = 0;
  std::vector<VariableInfo> variables;
  std::vector<ForcingStage> stages;
  std::map<std::uint32_t, Rational> forced;
  std::optional<CommutatorCertificate> commutator;
  std::optional<InfeasibilityCertificate> infeasible;
  std::optional<AffineRep> witness_rep;
  std::optional<LRStructure> witness_lr;
  std::string witness_origin;  // "zero" or "sample <k>"
  std::vector<ResidualEquation> residual;
  std::uint32_t max_residual_degree = 0;  // over all commutator entries after the first substitution
};

namespace detail {

inline std::optional<std::pair<AffineRep, LRStructure>> try_witness(const AbelianSystem& sys, const AffineMap& s,
                                                                   const std::vector<std::uint32_t>& free_vars,
                                                                   const std::vector<Rational>& values,
                                                                   const std::vector<ResidualEquation>& residual) {
  std::map<std::uint32_t, Rational> point;
  for (std::size_t f = 0; f < free_vars.size(); ++f) point[free_vars[f]] = values[f];
  auto value_of = [&](std::uint32_t v) {
    auto it = point.find(v);
    return it == point.end() ? Rational(0) : it->second;
  };
  for (const auto& eq : residual)
    if (eq.poly.evaluate(value_of) != 0) return std::nullopt;
  std::vector<Rational> u;
  for (const auto& p : s) u.push_back(p.evaluate(value_of));
  const std::size_t n = sys.algebra().dim();
  std::vector<ScalarVector> t;
  for (std::size_t i = 0; i < n; ++i) t.push_back(unit_vector<Scalar>(n, i));
  AffineRep rep(abelian_algebra(n), sys.algebra(), std::move(t), sys.specialize(u));
  if (!check_simply_transitive(rep).overall()) return std::nullopt;
  auto lr = rep_to_lr(rep);
  if (!check_lr(lr.structure).ok() || !check_complete(lr.structure).complete) return std::nullopt;
  return std::make_pair(std::move(rep), std::move(lr.structure));
}

}  // namespace detail

/// Decides whether R^n can act simply transitively on the group of n by
/// NIL-affine maps, by linear forcing on the defining polynomial system.
inline ObstructionOutcome obstruct_abelian(const LieAlgebra& n, const ObstructionOptions& opts = {}) {
  if (n.d() != 1) throw std::invalid_argument("obstruct_abelian: only algebras over Q (d = 1) are supported");
  for (const auto& [key, v] : n.constants())
    for (const auto& c : v)
      if (!c.is_rational()) throw std::invalid_argument("obstruct_abelian: structure constants must be rational");
  if (!check_jacobi(n).ok()) throw std::invalid_argument("obstruct_abelian: " + n.name() + " violates the Jacobi identity");
  if (!is_nilpotent_algebra(n)) throw std::invalid_argument("obstruct_abelian: " + n.name() + " is not nilpotent");

  AbelianSystem sys(n);
  ObstructionOutcome out;
  out.algebra = n.name();
  out.two_step_solvable = is_two_step_solvable(n);
  out.derivation_dim = sys.space().dim();
  out.variables = obstruction_variables(n, sys.space());

  std::optional<std::mt19937_64> shuffler;
  if (opts.shuffle_seed) shuffler.emplace(*opts.shuffle_seed);

  const auto commutator_refs = sys.commutator_refs();
  AffineMap s = identity_map(sys.variable_count());
  std::vector<EquationRef> stage_refs = sys.translation_refs();
  bool first_round = true;

  auto record_forced = [&] {
    out.forced.clear();
    for (std::uint32_t v = 0; v < s.size(); ++v)
      if (s[v].is_constant()) out.forced.emplace(v, s[v].constant_term());
  };

  while (true) {
    if (shuffler) std::shuffle(stage_refs.begin(), stage_refs.end(), *shuffler);
    std::vector<Poly> eqs;
    for (const auto& ref : stage_refs) eqs.push_back(apply_map(sys.equation(ref), s));
    auto solved = solve_linear(eqs);
    if (solved.infeasible) {
      out.stages.push_back({stage_refs, {}});
      out.infeasible = InfeasibilityCertificate{out.stages.size() - 1, *solved.infeasible, solved.infeasible_value};
      out.verdict = Verdict::Obstructed;
      record_forced();
      return out;
    }
    for (auto& p : s) p = p.substitute([&](std::uint32_t v) -> const Poly* {
      auto it = solved.pivots.find(v);
      return it == solved.pivots.end() ? nullptr : &it->second;
    });
    out.stages.push_back({stage_refs, s});

    std::vector<Poly> substituted;
    for (const auto& ref : commutator_refs) {
      substituted.push_back(apply_map(sys.equation(ref), s));
      if (first_round) out.max_residual_degree = std::max(out.max_residual_degree, substituted.back().degree());
    }
    std::vector<EquationRef> next;
    std::vector<ResidualEquation> residual;
    for (std::size_t e = 0; e < commutator_refs.size(); ++e) {
      const auto& ref = commutator_refs[e];
      Poly& q = substituted[e];
      if (q.is_zero()) continue;
      if (q.is_constant()) {
        out.commutator = CommutatorCertificate{ref.i, ref.j, ref.row, ref.col, q.constant_term()};
        out.verdict = Verdict::Obstructed;
        record_forced();
        return out;
      }
      if (q.degree() == 1)
        next.push_back(ref);
      else
        residual.push_back({ref, std::move(q)});
    }
    first_round = false;
    if (next.empty()) {
      out.residual = std::move(residual);
      break;
    }
    stage_refs = std::move(next);
  }
  record_forced();

  const auto free_vars = free_variables(s);
  std::vector<std::vector<Rational>> candidates{std::vector<Rational>(free_vars.size(), Rational(0))};
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<int> numerator(-8, 8);
  std::uniform_int_distribution<int> denominator(1, 8);
  for (int k = 0; k < opts.samples; ++k) {
    std::vector<Rational> values;
    for (std::size_t f = 0; f < free_vars.size(); ++f) {
      int num = numerator(rng);
      values.emplace_back(num, denominator(rng));
    }
    candidates.push_back(std::move(values));
  }
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (auto w = detail::try_witness(sys, s, free_vars, candidates[c], out.residual)) {
      out.verdict = Verdict::Found;
      out.witness_rep = std::move(w->first);
      out.witness_lr = std::move(w->second);
      out.witness_origin = c == 0 ? "zero" : "sample " + std::to_string(c - 1);
      if (!out.two_step_solvable)
        throw std::logic_error("obstruct_abelian: witness found for a non-metabelian algebra; internal error");
      return out;
    }
  }
  out.verdict = Verdict::Undetermined;
  return out;
}

/// Re-checks an outcome against n from scratch. Obstructed: every forcing
/// round is replayed and checked to describe exactly the solution set of its
/// equations, then the certificate equation is re-evaluated. Found: the
/// witness goes through the full representation and LR checks.
inline bool verify_certificate(const ObstructionOutcome& outcome, const LieAlgebra& n) {
  try {
    if (outcome.verdict == Verdict::Found) {
      if (!outcome.witness_rep || !outcome.witness_lr) return false;
      const auto& rep = *outcome.witness_rep;
      if (!rep.source().is_abelian() || !rep.target().same_structure(n)) return false;
      if (!check_simply_transitive(rep).overall()) return false;
      const auto& lr = *outcome.witness_lr;
      if (!lr.parent().same_structure(n)) return false;
      if (!check_lr(lr).ok() || !check_complete(lr).complete) return false;
      return rep_to_lr(rep).structure == lr;
    }
    if (outcome.verdict != Verdict::Obstructed) return false;
    if (outcome.commutator.has_value() == outcome.infeasible.has_value()) return false;

    AbelianSystem sys(n);
    const std::size_t count = sys.variable_count();
    AffineMap prev = identity_map(count);
    for (std::size_t k = 0; k < outcome.stages.size(); ++k) {
      const auto& stage = outcome.stages[k];
      std::vector<Poly> eqs;
      for (const auto& ref : stage.equations) {
        if (ref.i >= ref.j || ref.j >= n.dim() || ref.row >= n.dim() || ref.col >= n.dim()) return false;
        Poly q = apply_map(sys.equation(ref), prev);
        if (q.degree() > 1) return false;
        eqs.push_back(std::move(q));
      }
      if (k == 0) {
        // The first round must be exactly the translation conditions.
        auto expected = sys.translation_refs();
        if (stage.equations.size() != expected.size()) return false;
        for (const auto& ref : expected)
          if (std::find(stage.equations.begin(), stage.equations.end(), ref) == stage.equations.end()) return false;
      } else {
        for (const auto& ref : stage.equations)
          if (ref.kind != EquationRef::Kind::Commutator) return false;
      }
      if (outcome.infeasible && outcome.infeasible->stage == k) {
        const auto& lambda = outcome.infeasible->multipliers;
        if (lambda.size() != eqs.size() || k + 1 != outcome.stages.size()) return false;
        Poly sum;
        for (std::size_t e = 0; e < eqs.size(); ++e) sum += eqs[e] * Poly(lambda[e]);
        return sum.is_constant() && !sum.is_zero() && sum.constant_term() == outcome.infeasible->value;
      }
      const AffineMap& next = stage.map;
      if (next.size() != count) return false;
      auto prev_free = free_variables(prev);
      auto next_free = free_variables(next);
      std::set<std::uint32_t> prev_free_set(prev_free.begin(), prev_free.end());
      for (auto v : next_free)
        if (!prev_free_set.count(v)) return false;
      auto restricted = [&](std::uint32_t v) -> const Poly* { return prev_free_set.count(v) ? &next[v] : nullptr; };
      for (std::uint32_t v = 0; v < count; ++v) {
        auto vars = next[v].variables();
        for (auto w : vars)
          if (!std::binary_search(next_free.begin(), next_free.end(), w)) return false;
        if (next[v].degree() > 1) return false;
        if (!(prev[v].substitute(restricted) == next[v])) return false;
      }
      std::size_t rank_needed = 0;
      {
        std::vector<std::uint32_t> cols(prev_free.begin(), prev_free.end());
        Matrix<Rational> a(eqs.size(), cols.size());
        for (std::size_t e = 0; e < eqs.size(); ++e) {
          for (const auto& [v, c] : eqs[e].linear_part()) {
            auto it = std::lower_bound(cols.begin(), cols.end(), v);
            if (it == cols.end() || *it != v) return false;
            a(e, static_cast<std::size_t>(it - cols.begin())) = c;
          }
          if (!eqs[e].substitute(restricted).is_zero()) return false;
        }
        rank_needed = rank(a);
      }
      if (next_free.size() + rank_needed != prev_free.size()) return false;
      prev = next;
    }
    if (outcome.infeasible) return false;

    for (const auto& [v, value] : outcome.forced)
      if (v >= count || !prev[v].is_constant() || prev[v].constant_term() != value) return false;

    const auto& cert = *outcome.commutator;
    if (cert.i >= cert.j || cert.j >= n.dim() || cert.row >= n.dim() || cert.col >= n.dim()) return false;
    Poly entry = apply_map(sys.equation({EquationRef::Kind::Commutator, cert.i, cert.j, cert.row, cert.col}), prev);
    return cert.value != 0 && entry.is_constant() && entry.constant_term() == cert.value;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace nilaffine
