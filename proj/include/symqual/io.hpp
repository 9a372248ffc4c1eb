#pragma once

#include <string>
#include <string_view>

#include "symqual/graph.hpp"

namespace symqual {

// JSON readers. Syntax and schema problems raise ParseError naming the line
// or field; semantic problems raise the graph-core validation errors.
Graph load_graph(std::string_view text);
Drawing load_drawing(std::string_view text);
AutomorphismGroup load_group(std::string_view text, const Graph& g);
// A single element object: {"kind", "k"?, "mapping", "graph"?}.
Automorphism load_automorphism(std::string_view text, const Graph& g);

std::string dump_graph(const Graph& g);
std::string dump_drawing(const Drawing& d, int significant_digits = 17);
std::string dump_group(const AutomorphismGroup& group);
std::string dump_automorphism(const Automorphism& phi, const std::string& graph_name);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

// Rounds to the given number of significant digits (0 or non-finite passes through).
double round_significant(double value, int digits);

}  // namespace symqual
