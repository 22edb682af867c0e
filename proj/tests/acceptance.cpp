// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when any fails.
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nilaffine/io/json_io.hpp"
#include "nilaffine/nilaffine.hpp"

using namespace nilaffine;

namespace {

std::filesystem::path corpus(const std::string& rel) { return std::filesystem::path(NILAFFINE_CORPUS_DIR) / rel; }

struct Check {
  bool ok = true;
  std::ostringstream note;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) note << "; ";
      note << what;
      ok = false;
    }
  }
};

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n(-9, 9), d(1, 6);
  return Rational(n(rng)) / d(rng);
}

// ---- 1 ----
void catalog_validity(Check& c) {
  for (const auto& l : catalog()) {
    c.require(check_jacobi(l).ok(), l.name() + " fails Jacobi");
    c.require(is_nilpotent_algebra(l), l.name() + " not nilpotent");
  }
  const auto base = g6_18();
  std::size_t total = 0, broken = 0;
  std::vector<std::string> survivors;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j)
      for (std::size_t k = 0; k < 6; ++k) {
        auto specs = base.bracket_specs();
        bool placed = false;
        for (auto& s : specs)
          if (s.i == i && s.j == j) {
            s.terms.emplace_back(k, Scalar(1));
            placed = true;
          }
        if (!placed) specs.push_back({i, j, {{k, Scalar(1)}}});
        LieAlgebra mutated("g6_18*", 6, 1, specs);
        auto report = check_jacobi(mutated);
        ++total;
        if (!report.ok()) {
          ++broken;
          const auto& v = report.violations.front();
          c.require(v.i < v.j && v.j < v.k && !is_zero_vector(v.residual), "violation without a named triple");
        } else {
          survivors.push_back("c^" + std::to_string(k + 1) + "_" + std::to_string(i + 1) + std::to_string(j + 1));
        }
      }
  c.note << (c.ok ? "" : "; ") << broken << "/" << total << " single +1 mutations of g6_18 break Jacobi";
  if (!survivors.empty()) {
    c.ok = false;
    c.note << "; still Lie after +1:";
    for (const auto& s : survivors) c.note << " " << s;
  }
}

const std::vector<std::string> worked_reps = {
    "reps/R3_to_h3.json",   "reps/h3_to_R3.json", "reps/R4_to_R4.json", "reps/h3+R_to_h3+R.json", "reps/f4_to_f4.json",
    "reps/R4_to_h3+R.json", "reps/R4_to_f4.json", "reps/h3+R_to_R4.json", "reps/h3+R_to_f4.json", "reps/f4_to_R4.json",
    "reps/f4_to_h3+R.json", "reps/h3+R2_to_g5_6.json"};

// ---- 2 ----
void verification_corpus(Check& c) {
  std::size_t passed = 0;
  for (const auto& f : worked_reps) {
    auto rep = io::load_rep(corpus(f));
    bool ok = check_homomorphism(rep).ok() && check_simply_transitive(rep).overall();
    c.require(ok, f + " fails");
    passed += ok;
  }
  auto sqrt3 = io::load_rep(corpus("reps/h3+R2_to_g5_6.json"));
  bool irrational = false;
  for (const auto& m : sqrt3.d())
    for (const auto& x : m.entries()) irrational |= !x.is_rational();
  c.require(sqrt3.field_d() == 3 && irrational, "dim-5 rep not held exactly in Q(sqrt3)");
  if (c.ok) c.note << passed << " reps (2 dim-3, 9 dim-4, 1 dim-5 over Q(sqrt3)) pass";
}

// ---- 3 ----
void derivations_g6_18(Check& c) {
  auto space = derivation_space(g6_18());
  c.require(space.dim() == 9, "dimension " + std::to_string(space.dim()));
  auto m = parametric_derivation(space, 0);
  auto a = m(0, 0), b = m(1, 1);
  c.require(m(2, 2) == a + b && m(3, 3) == Poly(2) * a + b && m(4, 4) == Poly(3) * a + b && m(5, 5) == Poly(3) * a + Poly(2) * b,
            "diagonal pattern");
  c.require(m(3, 2) == m(2, 1), "(4,3) != (3,2)");
  c.require(m(5, 2) == -m(4, 0), "(6,3) != -(5,1)");
  c.require(m(5, 4) == -m(2, 0), "(6,5) != -(3,1)");
  c.require(m(5, 3) == m(3, 0), "(6,4) != (4,1)");
  if (c.ok) c.note << "dim 9, diagonal (a, b, a+b, 2a+b, 3a+b, 3a+2b) and linkages reproduced";
}

// ---- 4 ----
void obstruction(Check& c) {
  auto start = std::chrono::steady_clock::now();
  auto o = obstruct_abelian(g6_18());
  bool verified = verify_certificate(o, g6_18());
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.require(o.verdict == Verdict::Obstructed, "verdict " + to_string(o.verdict));
  std::map<std::string, Rational> forced;
  for (const auto& [v, value] : o.forced) forced[o.variables[v].display()] = value;
  auto expect = [&](const std::string& name, Rational value) {
    auto it = forced.find(name);
    c.require(it != forced.end() && it->second == value, name + " not forced to " + to_string(value));
  };
  expect("eps_41", Rational(1, 2));
  expect("gamma_12", Rational(-1, 2));
  expect("delta_3", Rational(1, 2));
  for (const char* z : {"alpha_3", "beta_3", "gamma_32", "eps_31"}) expect(z, 0);
  c.require(o.commutator && o.commutator->i == 0 && o.commutator->j == 1 && o.commutator->value != 0, "no nonzero [D1,D2] entry");
  c.require(verified, "verify_certificate false");
  c.require(secs <= 5.0, "took " + std::to_string(secs) + " s");
  if (c.ok)
    c.note << "Obstructed; entry (" << o.commutator->row + 1 << "," << o.commutator->col + 1 << ") of [D1,D2] = " << to_string(o.commutator->value)
           << "; verified; " << static_cast<int>(secs * 1000) << " ms";
}

// ---- 5 ----
void lr_round_trip(Check& c) {
  for (const char* f : {"reps/R3_to_h3.json", "reps/R4_to_h3+R.json", "reps/R4_to_f4.json"}) {
    auto rep = io::load_rep(corpus(f));
    auto s = rep_to_lr(rep).structure;
    c.require(check_lr(s).ok(), std::string(f) + ": LR identities fail");
    c.require(check_complete(s).complete, std::string(f) + ": not complete");
    c.require(lr_to_rep(s) == rep, std::string(f) + ": lr_to_rep does not recover the rep");
  }
  auto h = rep_to_lr(io::load_rep(corpus("reps/R3_to_h3.json"))).structure;
  std::mt19937_64 rng(1);
  for (int k = 0; k < 20; ++k) {
    ScalarVector x(3), y(3);
    for (auto& v : x) v = random_rational(rng);
    for (auto& v : y) v = random_rational(rng);
    Scalar expected = (x[0] * y[1] - x[1] * y[0]) * Scalar(Rational(1, 2));
    c.require(h.product(x, y) == ScalarVector({0, 0, expected}), "h3 product differs from ((x1y2 - x2y1)/2) X3");
  }
  if (c.ok) c.note << "3 reps round-trip exactly; h3 product is ((x1y2 - x2y1)/2) X3";
}

// ---- 6 ----
void engel_soundness(Check& c) {
  std::mt19937_64 rng(2024);
  std::size_t reps = 0;
  auto files = worked_reps;
  files.push_back("witnesses/R5_to_h3+R2.json");
  for (const auto& f : files) {
    auto rep = io::load_rep(corpus(f));
    if (!check_simply_transitive(rep).overall()) continue;
    ++reps;
    for (int k = 0; k < 100; ++k) {
      ScalarVector x(rep.source().dim());
      for (auto& v : x) v = random_rational(rng);
      if (!is_nilpotent_matrix(rep.linear_part(x))) {
        c.require(false, f + ": non-nilpotent combination");
        break;
      }
    }
    auto family = rep.d();
    family.push_back(ScalarMatrix::identity(rep.target().dim()));
    c.require(!engel_flag(family, rep.target().dim()).ok(), f + ": flag found with identity in family");
  }
  for (std::size_t n = 1; n <= 6; ++n) c.require(!engel_flag<Scalar>({ScalarMatrix::identity(n)}, n).ok(), "identity accepted");
  if (c.ok) c.note << reps << " passing reps x 100 combinations nilpotent; every family with the identity rejected";
}

// ---- 7 ----
void negative_controls(Check& c) {
  std::map<std::string, std::string> witness = {{"h3", "reps/R3_to_h3.json"},
                                                {"h3+R", "reps/R4_to_h3+R.json"},
                                                {"f4", "reps/R4_to_f4.json"},
                                                {"h3+R2", "witnesses/R5_to_h3+R2.json"}};
  for (const char* name : {"R1", "R2", "R3", "R4", "R5", "R6", "h3", "h3+R", "f4", "h3+R2"}) {
    auto l = *find_in_catalog(name);
    auto o = obstruct_abelian(l);
    c.require(o.verdict != Verdict::Obstructed, std::string(name) + " Obstructed");
    AffineRep w = witness.count(name) ? io::load_rep(corpus(witness.at(name))) : trivial_rep(l);
    c.require(w.source().is_abelian() && w.target().same_structure(l) && check_simply_transitive(w).overall(),
              std::string(name) + ": bundled witness fails");
  }
  auto o = obstruct_abelian(g6_18());
  c.require(!is_two_step_solvable(g6_18()), "g6_18 two-step solvable");
  c.require(o.verdict != Verdict::Found, "g6_18 Found");
  if (c.ok) c.note << "no Obstructed verdict on 10 algebras with witnesses; g6_18 not two-step solvable and not Found";
}

// ---- 8 ----
std::string capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  status = pclose(p);
  return out;
}

void determinism(Check& c) {
  const std::string cli = NILAFFINE_CLI_PATH;
  auto q = [](const std::string& s) { return "'" + s + "'"; };
  auto f = [&](const char* rel) { return q(corpus(rel).string()); };
  auto tmp = std::filesystem::temp_directory_path() / "nilaffine_acceptance";
  std::filesystem::create_directories(tmp);
  const std::vector<std::string> commands = {
      "check-lie g6_18",
      "check-lie " + f("algebras/g6_18.json"),
      "derivations g6_18",
      "check-rep " + f("reps/R3_to_h3.json"),
      "check-rep " + f("reps/h3+R2_to_g5_6.json"),
      "rep-to-lr " + f("reps/R4_to_f4.json"),
      "lr-to-rep " + f("lr/h3.json"),
      "check-lr " + f("lr/f4.json"),
      "obstruct-abelian g6_18",
      "obstruct-abelian h3+R2 --seed 7 --samples 16",
      "obstruct-abelian g5_6 --seed 0",
      "catalog list",
      "catalog show g5_6",
      "catalog export f4 " + q((tmp / "f4.json").string()),
  };
  std::size_t same = 0;
  for (const auto& cmd : commands) {
    int s1 = 0, s2 = 0;
    std::string full = q(cli) + " --json " + cmd + " 2>&1";
    auto a = capture(full, s1);
    auto b = capture(full, s2);
    bool ok = a == b && s1 == s2 && !a.empty();
    if (!io::json::accept(a)) ok = false;
    c.require(ok, "'" + cmd + "' output differs between runs or is not JSON");
    same += ok;
  }
  std::filesystem::remove_all(tmp);
  if (c.ok) c.note << same << " commands, two runs each, byte-identical --json";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"catalog validity", catalog_validity},
      {"simply transitive verification corpus", verification_corpus},
      {"derivation algebra of g6_18", derivations_g6_18},
      {"g6_18 obstruction", obstruction},
      {"rep / LR-structure round trip", lr_round_trip},
      {"Engel flag soundness", engel_soundness},
      {"negative controls", negative_controls},
      {"CLI determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cout << (c.ok ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].first << " (" << ms << " ms): " << c.note.str() << "\n";
    failures += !c.ok;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria pass\n";
  return failures == 0 ? 0 : 1;
}
