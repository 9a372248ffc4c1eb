#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "symqual/graph.hpp"

namespace symqual {

struct GeneratedGraph {
    Graph graph;
    AutomorphismGroup group;
};

// m rings of k vertices, vertex (i, j) = i*k + j. Consecutive rings are
// joined radially, and per ring a seeded coin adds the diagonal pattern.
GeneratedGraph gen_rotational(int k, int m, std::uint64_t seed);

// Mirror pairs (2i, 2i+1) followed by fixed vertices. Random edges between
// different orbits are drawn and mirrored; the graph is then made connected
// with further mirrored edges.
GeneratedGraph gen_axial(int orbit_count, int fixed_count, double edge_density, std::uint64_t seed);

// Every automorphism (identity included) by backtracking; n <= max_n.
std::vector<std::vector<int>> brute_force_automorphisms(const Graph& g, int max_n = 32);

Graph generalized_petersen(int n, int k, std::string name);
Graph petersen_graph();
Graph dodecahedral_graph();
Graph cuboctahedral_graph();
Graph tesseract_graph();
Graph coxeter_graph();
Graph heawood_graph();
Graph cycle_graph(int n);

struct NamedGroup {
    std::string label;  // e.g. "D10", "C7", "axial"
    AutomorphismGroup group;
};

struct CatalogEntry {
    Graph graph;
    std::vector<NamedGroup> groups;  // largest first
    std::vector<int> tutte_outer_face;
    std::string provenance;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(std::string_view name);

// Dihedral subgroup <rho^(k/d), tau> of a dihedral group, or the cyclic
// subgroup <rho^(k/d)> of a cyclic one. d must divide k.
AutomorphismGroup subgroup_of_order(const Graph& g, const AutomorphismGroup& group, int d);

}  // namespace symqual
