#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "symqual/geometry.hpp"
#include "symqual/graph.hpp"

namespace symqual {

inline constexpr double kDefaultEpsilon = 1e-4;
inline constexpr double kExactTolerance = 1e-9;

// Default epsilon, overridden by the SYMQUAL_EPS environment variable.
double default_epsilon();

struct DetectedSymmetry {
    enum class Type { Rotation, Reflection };
    Type type = Type::Rotation;
    int order = 2;  // rotation order; 2 for reflections
    Vec2 center{};
    Line axis{};
    std::vector<int> permutation;
    std::vector<std::vector<int>> induced_orbits;
};

struct ExactDetection {
    bool symmetric = false;
    std::optional<DetectedSymmetry> rotation;      // maximal order that preserves adjacency
    std::vector<DetectedSymmetry> reflections;     // every axis that preserves adjacency
    std::vector<DetectedSymmetry> rejected;        // point symmetries that broke an edge
    int geometric_rotation_order = 1;              // of the point set alone
};

// Exact symmetry of the drawing about its centroid. Values are compared
// after unit-circle normalization with the given tolerance.
ExactDetection detect_exact(const Graph& g, const Drawing& d, double tolerance = kExactTolerance);

// Exhaustive isometry search used as an oracle: every rotation order 2..n and
// every axis through the centroid and a point or a pair bisector.
struct BruteForceDetection {
    bool symmetric = false;
    int max_rotation_order = 0;
    int axis_count = 0;
};
BruteForceDetection detect_brute_force(const Graph& g, const Drawing& d, double tolerance = 1e-7);
namespace serial {
BruteForceDetection detect_brute_force(const Graph& g, const Drawing& d, double tolerance = 1e-7);
}

struct FoldingResult {
    std::vector<int> orbit;
    std::vector<Vec2> symmetric_image;
    double mean_distance = 0.0;  // mean point-to-image distance
    double distance = 0.0;       // mean_distance / 2
    double sd = 1.0;             // 1 - distance
};

// Rotation by 2*pi*step/k about center.
struct RotationFrame {
    Vec2 center{};
    int step = 1;
};

struct AxisFrame {
    Line axis{};
};

using Frame = std::variant<RotationFrame, AxisFrame>;

// Points are index-aligned with the orbit and must lie in the unit disc.
FoldingResult fold_orbit(std::span<const int> orbit, std::span<const Vec2> points, int k, const RotationFrame& frame);
FoldingResult fold_orbit(std::span<const int> orbit, std::span<const Vec2> points, const AxisFrame& frame);

// Folds every orbit of phi against normalized positions.
std::vector<FoldingResult> fold_all(std::span<const Vec2> normalized, const Automorphism& phi, const Frame& frame);
namespace serial {
std::vector<FoldingResult> fold_all(std::span<const Vec2> normalized, const Automorphism& phi, const Frame& frame);
}

// Centers or axes worth trying for phi, in normalized coordinates.
std::vector<Frame> candidate_frames(std::span<const Vec2> normalized, const Automorphism& phi);

Frame to_normalized(const Frame& frame, const Normalization& norm);
Frame to_drawing(const Frame& frame, const Normalization& norm);

struct ApproxSymResult {
    Normalization normalization;
    Frame frame;  // normalized coordinates
    std::vector<FoldingResult> folds;
};

// Without a frame, every candidate is folded and the one with the most
// symmetric orbits (then the largest sd sum) is kept. A supplied frame is in
// drawing coordinates.
ApproxSymResult approx_sym(const Graph& g, const Drawing& d, const Automorphism& phi,
                           std::optional<Frame> frame = std::nullopt, double eps = default_epsilon());

// Same as approx_sym but on an existing normalization.
ApproxSymResult approx_sym_normalized(const Normalization& norm, const Automorphism& phi,
                                      std::optional<Frame> normalized_frame, double eps);

}  // namespace symqual
