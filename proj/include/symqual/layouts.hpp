#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "symqual/graph.hpp"

namespace symqual {

enum class LayoutAlgorithm { ConcentricCircles, Tutte, Spectral, FR, StressMajorization, PivotMDS };

std::string_view to_string(LayoutAlgorithm a);
LayoutAlgorithm parse_layout_algorithm(std::string_view name);

struct LayoutConfig {
    LayoutAlgorithm algorithm = LayoutAlgorithm::ConcentricCircles;
    std::uint64_t seed = 1;
    int iterations = 500;
    double tolerance = 1e-6;
    std::vector<int> outer_face;       // Tutte
    int pivot_count = 50;              // PivotMDS
    double orbit_radius_step = 1.0;    // ConcentricCircles
    std::vector<double> phase_offsets; // ConcentricCircles, cyclic groups only

    void validate() const;
};

struct LayoutResult {
    Drawing drawing;
    bool converged = true;
    int iterations = 0;
    std::vector<double> stress_history;  // StressMajorization only
};

// Orbits of the largest rotation on concentric circles (fixed points at the
// center). Dihedral phases are aligned so a reflection axis is the y-axis;
// an axial2 group puts all mirror pairs on one circle about the y-axis.
Drawing concentric_circles(const Graph& g, const AutomorphismGroup& group, double radius_step = 1.0,
                           std::span<const double> phase_offsets = {});

// Outer face on the unit circle, every other vertex at the barycenter of its neighbors.
Drawing tutte(const Graph& g, std::span<const int> outer_face);

// Laplacian eigenvectors of the 2nd and 3rd smallest eigenvalues.
Drawing spectral(const Graph& g);

LayoutResult fr(const Graph& g, std::uint64_t seed, int iterations = 500);
LayoutResult stress_majorization(const Graph& g, std::uint64_t seed, int max_iterations = 500,
                                 double tolerance = 1e-6);
LayoutResult pivot_mds(const Graph& g, int pivot_count, std::uint64_t seed);

LayoutResult run_layout(const Graph& g, const LayoutConfig& config, const AutomorphismGroup* group = nullptr);

// All-pairs BFS hop distances, row-major; -1 for unreachable pairs.
std::vector<int> bfs_distances(const Graph& g);

}  // namespace symqual
