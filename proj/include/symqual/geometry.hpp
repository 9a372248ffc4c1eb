#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "symqual/vec2.hpp"

namespace symqual {

class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::vector<Vec2> points);

    const std::vector<Vec2>& points() const noexcept { return points_; }
    Vec2 centroid() const noexcept { return centroid_; }
    std::size_t size() const noexcept { return points_.size(); }
    Vec2 operator[](std::size_t i) const { return points_[i]; }

private:
    std::vector<Vec2> points_;
    Vec2 centroid_{};
};

// p' = (p + translation) * scale.
struct Normalization {
    PointSet points;
    double scale = 1.0;
    Vec2 translation{};

    Vec2 apply(Vec2 p) const { return (p + translation) * scale; }
    Vec2 invert(Vec2 q) const { return q / scale - translation; }
};

Normalization normalize_to_unit_circle(const PointSet& ps);

struct SignatureEntry {
    double angle = 0.0;   // [0, 2pi)
    double radius = 0.0;
    int vertex = 0;
};

struct AngularSignature {
    Vec2 center{};
    std::vector<SignatureEntry> entries;  // sorted by (angle, radius, vertex)
};

// Points within center_tolerance of the center get angle 0 and radius 0.
AngularSignature angular_signature(const PointSet& ps, Vec2 center, double center_tolerance = 0.0);

struct Line {
    Vec2 point{};
    Vec2 direction{1.0, 0.0};  // unit length
};

Vec2 reflect(const Line& line, Vec2 p);
Vec2 project(const Line& line, Vec2 p);
// Unit direction with x > 0, or y > 0 when x == 0.
Vec2 canonical_direction(Vec2 d);
Line line_through(Vec2 point, double angle);

// Index of the centroid minimizing summed L1 distance to the others. Ties
// (relative 1e-9) go to the orbit with the largest sd, then the lowest index;
// orbit_sd is only queried for tied candidates.
std::size_t rotation_center_index(std::span<const Vec2> centroids,
                                  const std::function<double(std::size_t)>& orbit_sd);
Vec2 rotation_center(std::span<const Vec2> centroids, const std::function<double(std::size_t)>& orbit_sd);

// Major axis of the 2x2 covariance through the centroid. Equal eigenvalues
// fall back to (1,0). Throws DegeneratePointSet when all points coincide.
Line principal_axis(const PointSet& ps);
Line minor_axis(const PointSet& ps);

// Mirror line through the centroid that best maps each point onto its
// partner's position in the least-squares sense. Empty when undetermined.
std::optional<Line> mirror_fit(std::span<const Vec2> points, std::span<const int> partner);

}  // namespace symqual
