#pragma once

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cohomkit/char_classes.hpp"
#include "cohomkit/perturbation.hpp"

namespace cohomkit {

using Json = nlohmann::ordered_json;

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ParseError("invalid JSON in file: " + path);
  return j;
}

inline void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Lie algebra files: {"dim": n, "labels": [...], "brackets": [{"i", "j",
// "coeffs": ["p/q", ...]}]}. Coefficients are exact rational strings.
// ---------------------------------------------------------------------------

inline Json algebra_to_json(const LieAlgebra& g) {
  Json j;
  j["dim"] = g.dim();
  if (!g.space.labels.empty()) j["labels"] = g.space.labels;
  Json brackets = Json::array();
  for (int i = 0; i < g.dim(); ++i)
    for (int k = i + 1; k < g.dim(); ++k) {
      bool nonzero = false;
      for (const Rational& v : g.c[i][k])
        if (!(v == 0)) nonzero = true;
      if (!nonzero) continue;
      Json entry;
      entry["i"] = i;
      entry["j"] = k;
      Json coeffs = Json::array();
      for (const Rational& v : g.c[i][k]) coeffs.push_back(rational_to_string(v));
      entry["coeffs"] = coeffs;
      brackets.push_back(entry);
    }
  j["brackets"] = brackets;
  return j;
}

inline LieAlgebra algebra_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer())
    throw ParseError("lie algebra file: missing integer 'dim'");
  const int dim = j["dim"].get<int>();
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) throw ParseError("lie algebra file: 'labels' must be an array");
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) throw ParseError("lie algebra file: labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  }
  std::vector<BracketEntry> entries;
  if (j.contains("brackets")) {
    if (!j["brackets"].is_array())
      throw ParseError("lie algebra file: 'brackets' must be an array");
    for (const auto& e : j["brackets"]) {
      if (!e.is_object() || !e.contains("i") || !e.contains("j") || !e.contains("coeffs") ||
          !e["i"].is_number_integer() || !e["j"].is_number_integer() || !e["coeffs"].is_array())
        throw ParseError("lie algebra file: bracket entries need integer i, j and a coeffs array");
      BracketEntry entry;
      entry.i = e["i"].get<int>();
      entry.j = e["j"].get<int>();
      for (const auto& c : e["coeffs"]) {
        if (!c.is_string()) throw ParseError("lie algebra file: coefficients must be strings");
        entry.coeffs.push_back(rational_from_string(c.get<std::string>()));
      }
      entries.push_back(std::move(entry));
    }
  }
  return make_lie_algebra(dim, std::move(labels), entries);
}

/// Either a builtin algebra name or a path to an algebra file.
inline LieAlgebra algebra_from_arg(const std::string& arg, bool is_file) {
  return is_file ? algebra_from_json(load_json_file(arg)) : builtin_algebra(arg);
}

// ---------------------------------------------------------------------------
// Complex matrices and tuples: a matrix is nested arrays of [re, im] pairs,
// a tuple file is a list of matrices.
// ---------------------------------------------------------------------------

inline Json matrix_to_json(const CMat& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(row);
  }
  return rows;
}

inline CMat matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix: expected a non-empty array of rows");
  const int rows = static_cast<int>(j.size());
  if (!j[0].is_array() || j[0].empty()) throw ParseError("matrix: rows must be non-empty arrays");
  const int cols = static_cast<int>(j[0].size());
  CMat m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols)
      throw ParseError("matrix: ragged rows");
    for (int c = 0; c < cols; ++c) {
      const Json& e = j[r][c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ParseError("matrix: entries must be [re, im] pairs");
      m(r, c) = std::complex<double>(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

inline Json tuple_to_json(const std::vector<CMat>& tuple) {
  Json j = Json::array();
  for (const CMat& m : tuple) j.push_back(matrix_to_json(m));
  return j;
}

inline std::vector<CMat> tuple_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("tuple: expected an array of matrices");
  std::vector<CMat> out;
  for (const auto& m : j) out.push_back(matrix_from_json(m));
  return out;
}

// ---------------------------------------------------------------------------
// Inline tuple notation: semicolon-separated diag(...) entries, where each
// diagonal value is a decimal number or `e`/-`e` for Euler's number.
// ---------------------------------------------------------------------------

namespace detail {
inline std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

inline double diag_entry(const std::string& tok) {
  if (tok == "e") return std::exp(1.0);
  if (tok == "-e") return -std::exp(1.0);
  try {
    size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw ParseError("tuple: bad diagonal entry '" + tok + "'");
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (...) {
    throw ParseError("tuple: bad diagonal entry '" + tok + "'");
  }
}
}  // namespace detail

inline std::vector<CMat> tuple_from_inline(const std::string& text) {
  const std::string s = detail::strip_spaces(text);
  if (s.empty()) throw ParseError("tuple: empty inline expression");
  std::vector<CMat> out;
  size_t pos = 0;
  while (pos < s.size()) {
    if (s.compare(pos, 5, "diag(") != 0)
      throw ParseError("tuple: expected diag(...) in inline expression");
    size_t close = s.find(')', pos);
    if (close == std::string::npos) throw ParseError("tuple: missing ')' in inline expression");
    std::string body = s.substr(pos + 5, close - pos - 5);
    if (body.empty()) throw ParseError("tuple: diag() needs at least one entry");
    std::vector<double> vals;
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) vals.push_back(detail::diag_entry(tok));
    CMat m = CMat::Zero(vals.size(), vals.size());
    for (size_t i = 0; i < vals.size(); ++i) m(i, i) = vals[i];
    out.push_back(m);
    pos = close + 1;
    if (pos < s.size()) {
      if (s[pos] != ';') throw ParseError("tuple: matrices must be separated by ';'");
      ++pos;
      if (pos == s.size()) throw ParseError("tuple: trailing ';'");
    }
  }
  return out;
}

/// A tuple argument is a file path when such a file exists, otherwise it is
/// parsed as the inline diag notation.
inline std::vector<CMat> tuple_from_arg(const std::string& arg) {
  std::ifstream probe(arg);
  if (probe) return tuple_from_json(load_json_file(arg));
  return tuple_from_inline(arg);
}

// ---------------------------------------------------------------------------
// Representation files: {"kind": ..., parameters}, nested through "of" /
// "parts". Optional source_size / target_size fields are validated.
// ---------------------------------------------------------------------------

inline GroupRep rep_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ParseError("rep file: missing string 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  GroupRep rep;
  if (kind == "identity") {
    if (!j.contains("size") || !j["size"].is_number_integer() || j["size"].get<int>() < 1)
      throw ParseError("rep file: identity needs a positive integer 'size'");
    rep = identity_rep(j["size"].get<int>());
  } else if (kind == "power") {
    if (!j.contains("k") || !j["k"].is_number_integer())
      throw ParseError("rep file: power needs an integer 'k'");
    rep = power_rep(j["k"].get<int>());
  } else if (kind == "det") {
    if (!j.contains("size") || !j["size"].is_number_integer() || j["size"].get<int>() < 1)
      throw ParseError("rep file: det needs a positive integer 'size'");
    rep = det_rep(j["size"].get<int>());
  } else if (kind == "blockdiag" || kind == "kron") {
    if (!j.contains("parts") || !j["parts"].is_array() || j["parts"].size() < 2)
      throw ParseError("rep file: " + kind + " needs a 'parts' array with at least two entries");
    rep = rep_from_json(j["parts"][0]);
    for (size_t i = 1; i < j["parts"].size(); ++i) {
      GroupRep next = rep_from_json(j["parts"][i]);
      try {
        rep = (kind == "blockdiag") ? direct_sum(rep, next) : tensor(rep, next);
      } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("rep file: ") + e.what());
      }
    }
  } else if (kind == "dual" || kind == "realify") {
    if (!j.contains("of") || !j["of"].is_object())
      throw ParseError("rep file: " + kind + " needs an 'of' sub-representation");
    GroupRep inner = rep_from_json(j["of"]);
    rep = (kind == "dual") ? dual(inner) : realify(inner);
  } else {
    throw ParseError("rep file: unknown kind '" + kind + "'");
  }
  if (j.contains("source_size") &&
      (!j["source_size"].is_number_integer() || j["source_size"].get<int>() != rep.source_size))
    throw ParseError("rep file: source_size does not match the construction");
  if (j.contains("target_size") &&
      (!j["target_size"].is_number_integer() || j["target_size"].get<int>() != rep.target_size))
    throw ParseError("rep file: target_size does not match the construction");
  return rep;
}

// ---------------------------------------------------------------------------
// Perturbation instances as regression fixtures. Rational matrices keep
// explicit shapes because zero-row placeholders carry meaning.
// ---------------------------------------------------------------------------

inline Json rational_matrix_to_json(const Matrix<Rational>& m) {
  Json j;
  j["rows"] = m.rows;
  j["cols"] = m.cols;
  Json entries = Json::array();
  for (const Rational& v : m.a) entries.push_back(rational_to_string(v));
  j["entries"] = entries;
  return j;
}

inline Matrix<Rational> rational_matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries") ||
      !j["rows"].is_number_integer() || !j["cols"].is_number_integer() ||
      !j["entries"].is_array())
    throw ParseError("matrix: expected {rows, cols, entries}");
  const int rows = j["rows"].get<int>();
  const int cols = j["cols"].get<int>();
  if (rows < 0 || cols < 0) throw ParseError("matrix: negative shape");
  const auto& entries = j["entries"];
  if (static_cast<int>(entries.size()) != rows * cols)
    throw ParseError("matrix: entry count does not match shape");
  Matrix<Rational> m(rows, cols);
  for (size_t i = 0; i < entries.size(); ++i) {
    if (!entries[i].is_string()) throw ParseError("matrix: entries must be rational strings");
    m.a[i] = rational_from_string(entries[i].get<std::string>());
  }
  return m;
}

namespace detail {
inline Json matrix_list_to_json(const std::vector<Matrix<Rational>>& v) {
  Json j = Json::array();
  for (const auto& m : v) j.push_back(rational_matrix_to_json(m));
  return j;
}

inline std::vector<Matrix<Rational>> matrix_list_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("instance: expected an array of matrices");
  std::vector<Matrix<Rational>> out;
  for (const auto& m : j) out.push_back(rational_matrix_from_json(m));
  return out;
}

inline Json matrix_grid_to_json(const std::vector<std::vector<Matrix<Rational>>>& v) {
  Json j = Json::array();
  for (const auto& col : v) j.push_back(matrix_list_to_json(col));
  return j;
}

inline std::vector<std::vector<Matrix<Rational>>> matrix_grid_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("instance: expected a grid of matrices");
  std::vector<std::vector<Matrix<Rational>>> out;
  for (const auto& col : j) out.push_back(matrix_list_from_json(col));
  return out;
}

inline Json graded_to_json(const GradedComplex& x) {
  Json j;
  j["dims"] = x.dims;
  j["d"] = matrix_list_to_json(x.d);
  return j;
}

inline GradedComplex graded_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("d") || !j["dims"].is_array())
    throw ParseError("instance: expected {dims, d} for an edge complex");
  GradedComplex x;
  for (const auto& v : j["dims"]) {
    if (!v.is_number_integer()) throw ParseError("instance: dims must be integers");
    x.dims.push_back(v.get<int>());
  }
  x.d = matrix_list_from_json(j["d"]);
  return x;
}
}  // namespace detail

inline Json instance_to_json(const AugmentedData& a) {
  Json j;
  j["width"] = a.D.width;
  j["height"] = a.D.height;
  j["truncated"] = a.D.truncated;
  j["dims"] = a.D.dims;
  j["d_vert"] = detail::matrix_grid_to_json(a.D.d_vert);
  j["d_horiz"] = detail::matrix_grid_to_json(a.D.d_horiz);
  j["x"] = detail::graded_to_json(a.X);
  j["i"] = detail::matrix_list_to_json(a.i_map);
  j["p"] = detail::matrix_list_to_json(a.p_map);
  j["h"] = detail::matrix_grid_to_json(a.h);
  j["y"] = detail::graded_to_json(a.Y);
  j["j"] = detail::matrix_list_to_json(a.j_map);
  j["has_vertical"] = a.has_vertical;
  if (a.has_vertical) {
    j["k"] = detail::matrix_grid_to_json(a.k);
    j["q"] = detail::matrix_list_to_json(a.q_map);
  }
  return j;
}

/// Parse and fully re-validate a stored instance; fixtures must satisfy
/// every augmentation identity, not just have the right shapes.
inline AugmentedData instance_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("instance: expected an object");
  for (const char* key : {"width", "height", "truncated", "dims", "d_vert", "d_horiz", "x", "i",
                          "p", "h", "y", "j", "has_vertical"})
    if (!j.contains(key)) throw ParseError(std::string("instance: missing field '") + key + "'");
  AugmentedData a;
  a.D.width = j["width"].get<int>();
  a.D.height = j["height"].get<int>();
  a.D.truncated = j["truncated"].get<bool>();
  if (!j["dims"].is_array()) throw ParseError("instance: dims must be an array");
  for (const auto& col : j["dims"]) a.D.dims.push_back(col.get<std::vector<int>>());
  a.D.d_vert = detail::matrix_grid_from_json(j["d_vert"]);
  a.D.d_horiz = detail::matrix_grid_from_json(j["d_horiz"]);
  a.X = detail::graded_from_json(j["x"]);
  a.i_map = detail::matrix_list_from_json(j["i"]);
  a.p_map = detail::matrix_list_from_json(j["p"]);
  a.h = detail::matrix_grid_from_json(j["h"]);
  a.Y = detail::graded_from_json(j["y"]);
  a.j_map = detail::matrix_list_from_json(j["j"]);
  a.has_vertical = j["has_vertical"].get<bool>();
  if (a.has_vertical) {
    if (!j.contains("k") || !j.contains("q"))
      throw ParseError("instance: vertical data needs 'k' and 'q'");
    a.k = detail::matrix_grid_from_json(j["k"]);
    a.q_map = detail::matrix_list_from_json(j["q"]);
  }
  validate_double_complex(a.D);
  validate_augmented(a);
  return a;
}

}  // namespace cohomkit
