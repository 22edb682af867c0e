#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nilaffine/liealg/catalog.hpp"
#include "nilaffine/lr/lr_structure.hpp"

namespace nilaffine::io {

using json = nlohmann::json;

/// Malformed input. The message carries the file, and either a line/column
/// (syntax errors) or a JSON pointer to the offending value.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string at(const std::string& pointer) { return pointer.empty() ? "document root" : pointer; }

[[noreturn]] inline void fail(const std::string& pointer, const std::string& what) {
  throw InputError(at(pointer) + ": " + what);
}

inline const json& member(const json& obj, const char* key, const std::string& pointer) {
  if (!obj.is_object()) fail(pointer, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(pointer, std::string("missing key \"") + key + "\"");
  return *it;
}

inline std::int64_t integer(const json& v, const std::string& pointer) {
  if (!v.is_number_integer()) fail(pointer, "expected an integer");
  return v.get<std::int64_t>();
}

inline std::size_t index1(const json& v, std::size_t dim, const std::string& pointer) {
  auto i = integer(v, pointer);
  if (i < 1 || static_cast<std::size_t>(i) > dim)
    fail(pointer, "index " + std::to_string(i) + " out of range 1.." + std::to_string(dim));
  return static_cast<std::size_t>(i - 1);
}

inline Rational rational(const json& v, const std::string& pointer) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(pointer, e.what());
    }
  }
  fail(pointer, "expected a rational (integer or \"p/q\" string)");
}

}  // namespace detail

/// "p/q" or integer for rationals, ["p/q","r/s"] for p/q + r/s*sqrt(d).
inline Scalar scalar_from_json(const json& v, std::int64_t d, const std::string& pointer = {}) {
  if (v.is_array()) {
    if (v.size() != 2) detail::fail(pointer, "a quadratic scalar needs exactly two components");
    Rational a = detail::rational(v[0], pointer + "/0");
    Rational b = detail::rational(v[1], pointer + "/1");
    if (b != 0 && d == 1) detail::fail(pointer, "sqrt component given but the field is Q (d = 1)");
    if (b == 0) return Scalar(a);
    return Scalar(a, b, d);
  }
  return Scalar(detail::rational(v, pointer));
}

inline json rational_to_json(const Rational& r) {
  if (is_integral(r)) {
    const auto& num = boost::multiprecision::numerator(r);
    if (num >= std::numeric_limits<std::int64_t>::min() && num <= std::numeric_limits<std::int64_t>::max())
      return num.convert_to<std::int64_t>();
  }
  return to_string(r);
}

inline json scalar_to_json(const Scalar& s) {
  if (s.is_rational()) return rational_to_json(s.rat());
  return json::array({to_string(s.rat()), to_string(s.irr())});
}

inline json vector_to_json(const ScalarVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(scalar_to_json(x));
  return out;
}

inline json matrix_to_json(const ScalarMatrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r)));
  return out;
}

inline ScalarVector vector_from_json(const json& v, std::size_t len, std::int64_t d, const std::string& pointer) {
  if (!v.is_array() || v.size() != len) detail::fail(pointer, "expected an array of " + std::to_string(len) + " scalars");
  ScalarVector out;
  for (std::size_t i = 0; i < len; ++i) out.push_back(scalar_from_json(v[i], d, pointer + "/" + std::to_string(i)));
  return out;
}

inline ScalarMatrix matrix_from_json(const json& v, std::size_t n, std::int64_t d, const std::string& pointer) {
  if (!v.is_array() || v.size() != n) detail::fail(pointer, "expected " + std::to_string(n) + " rows");
  std::vector<ScalarVector> rows;
  for (std::size_t r = 0; r < n; ++r) rows.push_back(vector_from_json(v[r], n, d, pointer + "/" + std::to_string(r)));
  return ScalarMatrix::from_rows(rows, n);
}

/// Terms list [{"k": int, "c": scalar}], 1-based k.
inline std::vector<std::pair<std::size_t, Scalar>> terms_from_json(const json& v, std::size_t dim, std::int64_t d,
                                                                   const std::string& pointer) {
  if (!v.is_array()) detail::fail(pointer, "expected an array of terms");
  std::vector<std::pair<std::size_t, Scalar>> out;
  for (std::size_t t = 0; t < v.size(); ++t) {
    std::string p = pointer + "/" + std::to_string(t);
    std::size_t k = detail::index1(detail::member(v[t], "k", p), dim, p + "/k");
    out.emplace_back(k, scalar_from_json(detail::member(v[t], "c", p), d, p + "/c"));
  }
  return out;
}

inline json terms_to_json(const ScalarVector& v) {
  json out = json::array();
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!v[k].is_zero()) out.push_back({{"k", k + 1}, {"c", scalar_to_json(v[k])}});
  return out;
}

// ---- Lie algebras -----------------------------------------------------------

inline LieAlgebra algebra_from_json(const json& doc, const std::string& pointer = {}) {
  using detail::member;
  if (!doc.is_object()) detail::fail(pointer, "expected a Lie algebra object");
  const json& name = member(doc, "name", pointer);
  if (!name.is_string()) detail::fail(pointer + "/name", "expected a string");
  auto dim = detail::integer(member(doc, "dim", pointer), pointer + "/dim");
  if (dim < 1) detail::fail(pointer + "/dim", "dimension must be positive");
  std::int64_t d = doc.contains("d") ? detail::integer(doc["d"], pointer + "/d") : 1;
  if (!is_square_free(d)) detail::fail(pointer + "/d", "d must be a square-free positive integer");
  const json& brackets = member(doc, "brackets", pointer);
  if (!brackets.is_array()) detail::fail(pointer + "/brackets", "expected an array");
  std::vector<BracketSpec> specs;
  const auto n = static_cast<std::size_t>(dim);
  for (std::size_t b = 0; b < brackets.size(); ++b) {
    std::string p = pointer + "/brackets/" + std::to_string(b);
    BracketSpec spec;
    spec.i = detail::index1(member(brackets[b], "i", p), n, p + "/i");
    spec.j = detail::index1(member(brackets[b], "j", p), n, p + "/j");
    spec.terms = terms_from_json(member(brackets[b], "terms", p), n, d, p + "/terms");
    specs.push_back(std::move(spec));
  }
  try {
    return LieAlgebra(name.get<std::string>(), n, d, specs);
  } catch (const std::exception& e) {
    detail::fail(pointer + "/brackets", e.what());
  }
}

inline json algebra_to_json(const LieAlgebra& l) {
  json brackets = json::array();
  for (const auto& [key, v] : l.constants())
    brackets.push_back({{"i", key.first + 1}, {"j", key.second + 1}, {"terms", terms_to_json(v)}});
  return {{"name", l.name()}, {"dim", l.dim()}, {"d", l.d()}, {"brackets", brackets}};
}

/// "[X1,X2]=X3" style lines.
inline std::vector<std::string> bracket_lines(const LieAlgebra& l) {
  std::vector<std::string> lines;
  for (const auto& [key, v] : l.constants()) {
    std::string rhs;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k].is_zero()) continue;
      std::string term = "X" + std::to_string(k + 1);
      const Scalar& c = v[k];
      std::string coeff = c == Scalar(1) ? "" : c == Scalar(-1) ? "-" : (c.is_rational() ? c.str() : "(" + c.str() + ")");
      if (!rhs.empty()) {
        if (!coeff.empty() && coeff[0] == '-') {
          rhs += " - ";
          coeff = coeff.substr(1);
        } else {
          rhs += " + ";
        }
      }
      rhs += coeff + term;
    }
    lines.push_back("[X" + std::to_string(key.first + 1) + ",X" + std::to_string(key.second + 1) + "]=" + rhs);
  }
  return lines;
}

// ---- files --------------------------------------------------------------------

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Parses JSON text; syntax errors report line and column.
inline json parse_document(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw InputError(origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": JSON syntax error: " + e.what());
  }
}

template <class F>
auto with_origin(const std::string& origin, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError& e) {
    std::string msg = e.what();
    if (msg.rfind(origin, 0) == 0) throw;
    throw InputError(origin + ": " + msg);
  }
}

/// Catalog name, "R<n>" for any n, or a path (relative to `base`).
inline LieAlgebra resolve_algebra(const std::string& ref, const std::filesystem::path& base = {}) {
  if (auto l = find_in_catalog(ref)) return *l;
  if (ref.size() > 1 && ref[0] == 'R' && ref.find_first_not_of("0123456789", 1) == std::string::npos) {
    auto n = std::stoul(ref.substr(1));
    if (n > 0) return abelian_algebra(n);
  }
  std::filesystem::path p = ref;
  if (p.is_relative() && !base.empty()) p = base / p;
  if (std::filesystem::exists(p)) {
    auto doc = parse_document(read_text(p), p.string());
    return with_origin(p.string(), [&] { return algebra_from_json(doc); });
  }
  std::string names;
  for (const auto& n : catalog_names()) names += (names.empty() ? "" : ", ") + n;
  throw InputError("unknown algebra '" + ref + "' (not a file; catalog names: " + names + ")");
}

inline LieAlgebra algebra_ref_from_json(const json& v, const std::filesystem::path& base, const std::string& pointer) {
  if (v.is_string()) {
    try {
      return resolve_algebra(v.get<std::string>(), base);
    } catch (const InputError& e) {
      detail::fail(pointer, e.what());
    }
  }
  return algebra_from_json(v, pointer);
}

/// Catalog name when the algebra is the catalog entry of that name (or R<n>), else inline.
inline json algebra_ref_to_json(const LieAlgebra& l) {
  if (auto c = find_in_catalog(l.name()); c && c->same_structure(l) && c->d() == l.d()) return l.name();
  if (l.is_abelian() && l.d() == 1 && l.name() == "R" + std::to_string(l.dim())) return l.name();
  return algebra_to_json(l);
}

inline LieAlgebra load_algebra(const std::filesystem::path& path) { return resolve_algebra(path.string()); }

// ---- representations --------------------------------------------------------------

inline AffineRep rep_from_json(const json& doc, const std::filesystem::path& base = {}) {
  using detail::member;
  if (!doc.is_object()) detail::fail({}, "expected a representation object");
  LieAlgebra source = algebra_ref_from_json(member(doc, "source", {}), base, "/source");
  LieAlgebra target = algebra_ref_from_json(member(doc, "target", {}), base, "/target");
  std::int64_t d = doc.contains("d") ? detail::integer(doc["d"], "/d") : std::max(source.d(), target.d());
  if (!is_square_free(d)) detail::fail("/d", "d must be a square-free positive integer");
  const std::size_t m = source.dim();
  const std::size_t n = target.dim();
  const json& t = member(doc, "t", {});
  const json& dm = member(doc, "D", {});
  if (!t.is_array() || t.size() != m) detail::fail("/t", "expected " + std::to_string(m) + " translation vectors (one per source basis vector)");
  if (!dm.is_array() || dm.size() != m) detail::fail("/D", "expected " + std::to_string(m) + " matrices (one per source basis vector)");
  std::vector<ScalarVector> ts;
  std::vector<ScalarMatrix> ds;
  for (std::size_t i = 0; i < m; ++i) {
    ts.push_back(vector_from_json(t[i], n, d, "/t/" + std::to_string(i)));
    ds.push_back(matrix_from_json(dm[i], n, d, "/D/" + std::to_string(i)));
  }
  try {
    return AffineRep(std::move(source), std::move(target), std::move(ts), std::move(ds), d);
  } catch (const RepError& e) {
    std::string where = e.d_index() ? "/D/" + std::to_string(*e.d_index()) : std::string{};
    detail::fail(where, e.what());
  }
}

inline json rep_to_json(const AffineRep& rep) {
  json t = json::array();
  json d = json::array();
  for (const auto& v : rep.t()) t.push_back(vector_to_json(v));
  for (const auto& m : rep.d()) d.push_back(matrix_to_json(m));
  return {{"source", algebra_ref_to_json(rep.source())},
          {"target", algebra_ref_to_json(rep.target())},
          {"d", rep.field_d()},
          {"t", t},
          {"D", d}};
}

inline AffineRep load_rep(const std::filesystem::path& path) {
  auto doc = parse_document(read_text(path), path.string());
  return with_origin(path.string(), [&] { return rep_from_json(doc, path.parent_path()); });
}

// ---- LR-structures -----------------------------------------------------------------

inline LRStructure lr_from_json(const json& doc, const std::filesystem::path& base = {}) {
  using detail::member;
  if (!doc.is_object()) detail::fail({}, "expected an LR-structure object");
  LieAlgebra algebra = algebra_ref_from_json(member(doc, "algebra", {}), base, "/algebra");
  std::int64_t d = doc.contains("d") ? detail::integer(doc["d"], "/d") : algebra.d();
  if (!is_square_free(d)) detail::fail("/d", "d must be a square-free positive integer");
  const std::size_t n = algebra.dim();
  const json& product = member(doc, "product", {});
  if (!product.is_array()) detail::fail("/product", "expected an array");
  std::vector<std::vector<ScalarVector>> p(n, std::vector<ScalarVector>(n, ScalarVector(n)));
  std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
  for (std::size_t e = 0; e < product.size(); ++e) {
    std::string ptr = "/product/" + std::to_string(e);
    std::size_t i = detail::index1(member(product[e], "i", ptr), n, ptr + "/i");
    std::size_t j = detail::index1(member(product[e], "j", ptr), n, ptr + "/j");
    if (seen[i][j]) detail::fail(ptr, "product X" + std::to_string(i + 1) + ".X" + std::to_string(j + 1) + " given twice");
    seen[i][j] = true;
    for (auto& [k, c] : terms_from_json(member(product[e], "terms", ptr), n, d, ptr + "/terms")) p[i][j][k] += c;
  }
  return LRStructure(std::move(algebra), std::move(p));
}

inline json lr_to_json(const LRStructure& s) {
  json product = json::array();
  std::int64_t d = s.parent().d();
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < s.dim(); ++j) {
      const auto& v = s.product_basis(i, j);
      for (const auto& x : v)
        if (!x.is_rational()) d = x.d();
      if (!is_zero_vector(v)) product.push_back({{"i", i + 1}, {"j", j + 1}, {"terms", terms_to_json(v)}});
    }
  return {{"algebra", algebra_ref_to_json(s.parent())}, {"d", d}, {"product", product}};
}

inline LRStructure load_lr(const std::filesystem::path& path) {
  auto doc = parse_document(read_text(path), path.string());
  return with_origin(path.string(), [&] { return lr_from_json(doc, path.parent_path()); });
}

/// Stable serialization: sorted keys, two-space indent, trailing newline.
inline std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path.string() + ": cannot write file");
  out << text;
}

}  // namespace nilaffine::io
