#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "symqual/error.hpp"
#include "symqual/vec2.hpp"

namespace symqual {

struct Edge {
    int u = 0;
    int v = 0;
    friend bool operator==(const Edge&, const Edge&) = default;
};

// Finite simple undirected graph on vertices 0..n-1. Edges keep the
// orientation and order they were given in, so files round-trip exactly.
class Graph {
public:
    Graph(int n, const std::vector<std::pair<int, int>>& edges, std::string name = {});

    int vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::string& name() const noexcept { return name_; }

    std::span<const int> neighbors(int v) const;
    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
    bool has_edge(int u, int v) const;
    bool is_connected() const;

private:
    static unsigned long long key(int u, int v);

    int n_;
    std::string name_;
    std::vector<Edge> edges_;
    std::vector<int> adj_offsets_;
    std::vector<int> adj_;
    std::unordered_set<unsigned long long> edge_set_;
};

class Drawing {
public:
    Drawing(std::string graph_name, std::vector<Vec2> positions);
    Drawing(const Graph& g, std::vector<Vec2> positions);

    const std::string& graph_name() const noexcept { return graph_name_; }
    const std::vector<Vec2>& positions() const noexcept { return positions_; }
    std::size_t size() const noexcept { return positions_.size(); }
    Vec2 operator[](int v) const { return positions_[static_cast<std::size_t>(v)]; }

    // Throws GraphMismatch when the drawing does not belong to g.
    void check_against(const Graph& g) const;

private:
    std::string graph_name_;
    std::vector<Vec2> positions_;
};

enum class SymmetryKind { Rotational, Axial };

// A validated nontrivial automorphism together with its orbit decomposition.
class Automorphism {
public:
    const std::vector<int>& mapping() const noexcept { return mapping_; }
    SymmetryKind kind() const noexcept { return kind_; }
    bool is_rotational() const noexcept { return kind_ == SymmetryKind::Rotational; }
    int order() const noexcept { return order_; }
    // Cycles of the permutation in cyclic order, fixed points included.
    const std::vector<std::vector<int>>& orbits() const noexcept { return orbits_; }
    // Rotation order for rotational elements, 2 for axial ones.
    int weight() const noexcept { return kind_ == SymmetryKind::Rotational ? order_ : 2; }
    int size() const noexcept { return static_cast<int>(mapping_.size()); }
    int operator()(int v) const { return mapping_[static_cast<std::size_t>(v)]; }

    friend bool operator==(const Automorphism& a, const Automorphism& b) {
        return a.mapping_ == b.mapping_ && a.kind_ == b.kind_;
    }

private:
    friend Automorphism validate_automorphism(const Graph&, std::vector<int>,
                                              std::optional<SymmetryKind>);
    Automorphism(std::vector<int> mapping, SymmetryKind kind, int order,
                 std::vector<std::vector<int>> orbits)
        : mapping_(std::move(mapping)), kind_(kind), order_(order), orbits_(std::move(orbits)) {}

    std::vector<int> mapping_;
    SymmetryKind kind_;
    int order_;
    std::vector<std::vector<int>> orbits_;
};

// Order 2 permutations are ambiguous between a half-turn and a mirror; the
// hint decides, and without one they are taken as axial.
Automorphism validate_automorphism(const Graph& g, std::vector<int> mapping,
                                   std::optional<SymmetryKind> kind_hint = std::nullopt);

int permutation_order(std::span<const int> mapping);
std::vector<std::vector<int>> permutation_cycles(std::span<const int> mapping);

// (phi o psi)(v) = phi(psi(v)). Throws KindUndetermined for the identity.
Automorphism compose(const Graph& g, const Automorphism& phi, const Automorphism& psi);
Automorphism inverse(const Graph& g, const Automorphism& phi);
Automorphism power(const Graph& g, const Automorphism& phi, int exponent);

enum class GroupKind { Axial2, Cyclic, Dihedral };

std::string_view to_string(GroupKind kind);

// Non-identity elements of a cyclic or dihedral automorphism group. The
// order is the group size including the identity.
class AutomorphismGroup {
public:
    AutomorphismGroup(const Graph& g, GroupKind kind, int order, std::vector<Automorphism> elements);

    GroupKind kind() const noexcept { return kind_; }
    int order() const noexcept { return order_; }
    int rotation_order() const noexcept;
    const std::string& graph_name() const noexcept { return graph_name_; }
    const std::vector<Automorphism>& elements() const noexcept { return elements_; }
    int total_weight() const noexcept;

    // Rotational element of maximal order, or nullptr.
    const Automorphism* rotation_generator() const noexcept;
    // First axial element, or nullptr.
    const Automorphism* reflection() const noexcept;

private:
    GroupKind kind_;
    int order_;
    std::string graph_name_;
    std::vector<Automorphism> elements_;
};

AutomorphismGroup make_axial_group(const Graph& g, const Automorphism& tau);
AutomorphismGroup make_cyclic_group(const Graph& g, const Automorphism& rho);
AutomorphismGroup make_dihedral_group(const Graph& g, const Automorphism& rho, const Automorphism& tau);

}  // namespace symqual
