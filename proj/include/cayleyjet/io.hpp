#ifndef CAYLEYJET_IO_HPP
#define CAYLEYJET_IO_HPP

// Plain-text polytope files:
//
//   # optional comments
//   dim 2
//   vertices 3
//   0 0
//   2 0
//   0 2

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "cayleyjet/polytope.hpp"

namespace cayleyjet {

namespace detail {

inline bool is_blank_or_comment(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

inline Error parse_error(std::size_t line, const std::string& what) {
  return Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
}

inline Integer parse_integer(const std::string& tok, std::size_t line) {
  std::size_t i = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
  if (i == tok.size()) throw parse_error(line, "expected an integer, got '" + tok + "'");
  for (std::size_t j = i; j < tok.size(); ++j)
    if (tok[j] < '0' || tok[j] > '9') throw parse_error(line, "expected an integer, got '" + tok + "'");
  return Integer(tok[0] == '+' ? tok.substr(1) : tok);
}

inline std::size_t parse_header(const std::string& text, const std::string& key, std::size_t line) {
  std::istringstream in(text);
  std::string word, value, extra;
  in >> word >> value;
  if (word != key || value.empty() || (in >> extra))
    throw parse_error(line, "expected '" + key + " <count>'");
  const auto n = parse_integer(value, line);
  if (n <= 0 || n > 1000000) throw parse_error(line, "'" + key + "' must be a positive count");
  return n.convert_to<std::size_t>();
}

}  // namespace detail

/// Parses and validates. Syntax problems raise ParseError with the line
/// number; geometric problems raise ValidationError.
inline LatticePolytope parse_polytope(std::istream& in) {
  std::string line;
  std::size_t lineno = 0, dim = 0, count = 0;
  std::vector<LatticeVector> vertices;
  int stage = 0;  // 0: dim, 1: vertices, 2: coordinates, 3: done
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::is_blank_or_comment(line)) continue;
    if (stage == 0) {
      dim = detail::parse_header(line, "dim", lineno);
      stage = 1;
    } else if (stage == 1) {
      count = detail::parse_header(line, "vertices", lineno);
      stage = 2;
    } else if (stage == 2) {
      std::istringstream row(line);
      std::string tok;
      std::vector<Integer> coords;
      while (row >> tok) coords.push_back(detail::parse_integer(tok, lineno));
      if (coords.size() != dim)
        throw detail::parse_error(lineno, "expected " + std::to_string(dim) + " coordinates, got " +
                                              std::to_string(coords.size()));
      vertices.emplace_back(std::move(coords));
      if (vertices.size() == count) stage = 3;
    } else {
      throw detail::parse_error(lineno, "unexpected content after the last vertex");
    }
  }
  if (stage == 0) throw detail::parse_error(lineno, "missing 'dim' line");
  if (stage == 1) throw detail::parse_error(lineno, "missing 'vertices' line");
  if (stage == 2)
    throw detail::parse_error(lineno, "expected " + std::to_string(count) + " vertices, got " +
                                          std::to_string(vertices.size()));
  return LatticePolytope::from_vertices(std::move(vertices));
}

inline LatticePolytope parse_polytope(const std::string& text) {
  std::istringstream in(text);
  return parse_polytope(in);
}

inline LatticePolytope parse_polytope_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  return parse_polytope(in);
}

inline void emit_polytope(const LatticePolytope& p, std::ostream& out, const std::string& comment = {}) {
  if (!comment.empty()) out << "# " << comment << '\n';
  out << "dim " << p.dim() << '\n' << "vertices " << p.vertices().size() << '\n';
  for (const auto& v : p.vertices()) {
    for (std::size_t i = 0; i < v.dim(); ++i) out << (i ? " " : "") << v[i];
    out << '\n';
  }
}

inline std::string emit_polytope(const LatticePolytope& p) {
  std::ostringstream out;
  emit_polytope(p, out);
  return out.str();
}

}  // namespace cayleyjet

#endif  // CAYLEYJET_IO_HPP
