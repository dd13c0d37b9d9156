#pragma once

#include "hrg/branching.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace hrg {

// Syntax error with a 1-based position.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string file, std::size_t line, std::size_t column, const std::string& message);
  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::string file_, message_;
  std::size_t line_, column_;
};

// Graph files:
//   RANK 2            (optional, defaults to the largest color)
//   VERTICES
//   v
//   EDGES
//   f1 1 v v          id color source range
//   SQUARES
//   f1 e = e f1       e f = f' e'
// '#' starts a comment.
GraphSpec parse_graph_text(const std::string& text, const std::string& file = "<input>");
KGraph parse_graph_file(const std::filesystem::path& path);
std::string write_graph(const KGraph& g);

// Branching-system files:
//   GRAPH lambda2.kg  (relative to this file)
//   DIM 1
//   DOMAIN
//   v: [0,1] U [2,3]
//   MAPS
//   f1: [0,1] -> (1/2*x)
//   e: [0,1/2] -> (x + 1/2)        one line per piece
//   EXHAUSTIVE
//   v: e1 g3
// Coordinates are x, y. A coordinate expression is p*x + q or c*x^r, with
// coefficients built from rationals, sqrt(p/q) and p^(a/b).
IntervalBranchingSystem parse_bs_text(const std::string& text, const KGraph& g, const std::string& file = "<input>");
IntervalBranchingSystem parse_bs_file(const std::filesystem::path& path);
// The GRAPH line refers to graph_file.
std::string write_bs(const IntervalBranchingSystem& bs, const std::string& graph_file);

// One coordinate expression in variable var, e.g. "1/2*y + 1/2".
Map1D parse_map1d(const std::string& text, const std::string& var = "x");
// "[0,1]x[-1,1]"
Box parse_box(const std::string& text);

// Reads a list of exhaustive sets ("v: e1 g3" per line) for --exhaustive.
std::vector<ExhaustiveSet> parse_exhaustive_text(const std::string& text, const KGraph& g,
                                                 const std::string& file = "<input>");

std::string read_file(const std::filesystem::path& path);

}  // namespace hrg
