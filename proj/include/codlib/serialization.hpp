#pragma once

#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "codlib/combinatorial.hpp"
#include "codlib/decompose.hpp"
#include "codlib/design.hpp"
#include "codlib/group.hpp"

namespace codlib {

// ordered_json keeps the documented field order in emitted files.
using Json = nlohmann::ordered_json;

inline Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c)
      row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline ComplexMatrix matrix_from_json(const Json& j) {
  require(j.is_array() && !j.empty(), Errc::parse_error, "matrix must be a nonempty array of rows");
  const Index rows = static_cast<Index>(j.size());
  require(j[0].is_array() && !j[0].empty(), Errc::parse_error, "matrix rows must be arrays");
  const Index cols = static_cast<Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    require(row.is_array() && static_cast<Index>(row.size()) == cols, Errc::parse_error,
            "matrix rows must share one length");
    for (Index c = 0; c < cols; ++c) {
      const Json& cell = row[static_cast<std::size_t>(c)];
      require(cell.is_array() && cell.size() == 2 && cell[0].is_number() && cell[1].is_number(),
              Errc::parse_error, "matrix entries are [re, im] pairs");
      m(r, c) = Complex(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  require_finite(m, "parsed matrix");
  return m;
}

inline Json design_to_json(const LinearDesign& d) {
  Json coeffs = Json::array();
  for (int i = 1; i <= d.vars(); ++i) {
    Json entry = Json::object();
    if (d.kind() == DesignKind::cod) {
      entry["A"] = matrix_to_json(d.a(i));
      entry["B"] = matrix_to_json(d.b(i));
    } else {
      entry["E"] = matrix_to_json(d.e(i));
    }
    coeffs.push_back(std::move(entry));
  }
  Json j = Json::object();
  j["kind"] = kind_name(d.kind());
  j["p"] = d.p();
  j["n"] = d.n();
  j["k"] = d.vars();
  j["coefficients"] = std::move(coeffs);
  return j;
}

inline LinearDesign design_from_json(const Json& j) {
  require(j.is_object(), Errc::parse_error, "design file must be a JSON object");
  for (const char* field : {"kind", "p", "n", "k", "coefficients"})
    require(j.contains(field), Errc::parse_error,
            std::string("design file is missing field '") + field + "'");
  const std::string kind_str = j["kind"].is_string() ? j["kind"].get<std::string>() : "";
  require(kind_str == "cod" || kind_str == "hod", Errc::parse_error,
          "design kind must be 'cod' or 'hod'");
  const DesignKind kind = kind_str == "cod" ? DesignKind::cod : DesignKind::hod;
  require(j["p"].is_number_integer() && j["n"].is_number_integer() && j["k"].is_number_integer(),
          Errc::parse_error, "p, n, k must be integers");
  const Index p = j["p"].get<Index>();
  const Index n = j["n"].get<Index>();
  const int k = j["k"].get<int>();
  const Json& coeffs = j["coefficients"];
  require(coeffs.is_array() && static_cast<int>(coeffs.size()) == k, Errc::parse_error,
          "coefficients must be an array of length k");

  std::vector<ComplexMatrix> a, b;
  for (const Json& entry : coeffs) {
    require(entry.is_object(), Errc::parse_error, "coefficient entries must be objects");
    if (kind == DesignKind::cod) {
      require(entry.contains("A") && entry.contains("B"), Errc::parse_error,
              "cod coefficients need A and B");
      a.push_back(matrix_from_json(entry["A"]));
      b.push_back(matrix_from_json(entry["B"]));
    } else {
      require(entry.contains("E"), Errc::parse_error, "hod coefficients need E");
      a.push_back(matrix_from_json(entry["E"]));
    }
    require(a.back().rows() == p && a.back().cols() == n, Errc::parse_error,
            "coefficient shape disagrees with p x n");
  }
  return kind == DesignKind::cod ? LinearDesign::cod(std::move(a), std::move(b))
                                 : LinearDesign::hod(std::move(a));
}

inline Json spec_to_json(const CanonicalSpec& spec) {
  Json j = Json::object();
  j["kind"] = kind_name(spec.kind);
  j["k"] = spec.vars;
  j["n1"] = spec.plus_blocks;
  j["n2"] = spec.minus_blocks;
  return j;
}

inline Json decomposition_to_json(const Decomposition& dec) {
  Json j = Json::object();
  j["n1"] = dec.spec.plus_blocks;
  j["n2"] = dec.spec.minus_blocks;
  j["U"] = matrix_to_json(dec.u);
  j["V"] = matrix_to_json(dec.v);
  j["residual"] = dec.residual;
  return j;
}

inline Json witness_to_json(const EquivalenceWitness& w) {
  Json j = Json::object();
  j["row_perm"] = w.row_perm;
  j["col_perm"] = w.col_perm;
  j["row_signs"] = w.row_signs;
  j["col_signs"] = w.col_signs;
  return j;
}

inline Json grid_to_json(const CombinatorialDesign& d) {
  Json rows = Json::array();
  for (Index r = 0; r < d.n(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < d.n(); ++c) {
      const SymbolicEntry& e = d.at(r, c);
      if (e.is_zero()) {
        row.push_back(nullptr);
      } else {
        Json cell = Json::object();
        cell["sign"] = e.sign;
        cell["var"] = e.var;
        cell["conj"] = e.conj;
        row.push_back(std::move(cell));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json element_to_json(const GroupElement& e) {
  Json j = Json::object();
  j["sign"] = e.sign;
  Json mask = Json::array();
  for (int i = 1; i <= e.m; ++i)
    if (e.mask & (std::uint32_t{1} << (i - 1))) mask.push_back(i);
  j["mask"] = std::move(mask);
  return j;
}

/// One line per row, entries comma-separated from the alphabet
/// {0, z3, -z3, z3*, -z3*} with the variable index inline.
inline std::string format_grid_text(const CombinatorialDesign& d) {
  std::ostringstream out;
  for (Index r = 0; r < d.n(); ++r) {
    for (Index c = 0; c < d.n(); ++c) {
      if (c > 0) out << ',';
      const SymbolicEntry& e = d.at(r, c);
      if (e.is_zero()) {
        out << '0';
      } else {
        if (e.sign < 0) out << '-';
        out << 'z' << e.var;
        if (e.conj) out << '*';
      }
    }
    out << '\n';
  }
  return out.str();
}

namespace detail {

inline SymbolicEntry parse_grid_token(std::string tok) {
  const auto notspace = [](char ch) { return ch != ' ' && ch != '\t' && ch != '\r'; };
  while (!tok.empty() && !notspace(tok.front())) tok.erase(tok.begin());
  while (!tok.empty() && !notspace(tok.back())) tok.pop_back();
  require(!tok.empty(), Errc::parse_error, "empty grid entry");
  if (tok == "0") return SymbolicEntry::zero();
  std::size_t pos = 0;
  int sign = 1;
  if (tok[pos] == '-') {
    sign = -1;
    ++pos;
  } else if (tok[pos] == '+') {
    ++pos;
  }
  require(pos < tok.size() && tok[pos] == 'z', Errc::parse_error,
          "grid entry must be 0 or [-]z<i>[*]: got '" + tok + "'");
  ++pos;
  std::size_t digits = 0;
  int var = 0;
  while (pos < tok.size() && tok[pos] >= '0' && tok[pos] <= '9') {
    var = var * 10 + (tok[pos] - '0');
    ++pos;
    ++digits;
    require(var <= 1000000, Errc::parse_error, "variable index out of range");
  }
  require(digits > 0, Errc::parse_error, "grid entry is missing its variable index");
  bool conj = false;
  if (pos < tok.size() && tok[pos] == '*') {
    conj = true;
    ++pos;
  }
  require(pos == tok.size() && var >= 1, Errc::parse_error,
          "grid entry must be 0 or [-]z<i>[*]: got '" + tok + "'");
  return SymbolicEntry::of(var, sign, conj);
}

}  // namespace detail

inline CombinatorialDesign parse_grid_text(const std::string& text) {
  std::vector<std::vector<SymbolicEntry>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<SymbolicEntry> row;
    std::string tok;
    std::istringstream ls(line);
    while (std::getline(ls, tok, ',')) row.push_back(detail::parse_grid_token(tok));
    rows.push_back(std::move(row));
  }
  require(!rows.empty(), Errc::parse_error, "empty grid");
  const Index n = static_cast<Index>(rows.size());
  std::vector<SymbolicEntry> cells;
  int k = 0;
  for (const auto& row : rows) {
    require(static_cast<Index>(row.size()) == n, Errc::parse_error, "grid is not square");
    for (const SymbolicEntry& e : row) {
      cells.push_back(e);
      k = std::max(k, e.var);
    }
  }
  require(k >= 1, Errc::parse_error, "grid has no variables");
  return CombinatorialDesign::from_grid(n, k, std::move(cells));
}

}  // namespace codlib
