#pragma once

#include <span>
#include <vector>

#include "symqual/graph.hpp"

// Data-parallel inner loops of the layouts. Each OpenMP kernel has a serial
// twin with identical per-element arithmetic, so both give bit-equal results.
namespace symqual::kernels {

// Fruchterman-Reingold displacement per vertex for ideal edge length k.
void fr_displacement(const Graph& g, std::span<const Vec2> pos, double k, std::span<Vec2> disp);

// Row i of B(X)X for the weighted Guttman transform: sum_j w_ij d_ij (x_i - x_j) / |x_i - x_j|.
// dist and weight are dense n*n row-major matrices.
void smacof_rhs(std::span<const Vec2> pos, std::span<const double> dist, std::span<const double> weight,
                std::span<Vec2> out);

// sum_{i<j} w_ij (|x_i - x_j| - d_ij)^2
double stress(std::span<const Vec2> pos, std::span<const double> dist, std::span<const double> weight);

namespace serial {
void fr_displacement(const Graph& g, std::span<const Vec2> pos, double k, std::span<Vec2> disp);
void smacof_rhs(std::span<const Vec2> pos, std::span<const double> dist, std::span<const double> weight,
                std::span<Vec2> out);
double stress(std::span<const Vec2> pos, std::span<const double> dist, std::span<const double> weight);
}  // namespace serial

}  // namespace symqual::kernels
