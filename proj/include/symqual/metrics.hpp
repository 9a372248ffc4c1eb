#pragma once

#include <optional>
#include <span>
#include <vector>

#include "symqual/graph.hpp"
#include "symqual/symmetry.hpp"

namespace symqual {

enum class Formula { SQ1, SQ2, Both };

struct OrbitAssessment {
    std::vector<int> orbit;
    double sd = 1.0;
    double distance = 0.0;
    bool symmetric = true;
};

struct ScoreValues {
    double sq1 = 1.0;
    double sq2 = 1.0;
    double sq2_unclamped = 1.0;
    int symmetric_count = 0;
    int orbit_count = 0;
    double mean_sd = 1.0;       // over all orbits
    double mean_asym_sd = 1.0;  // over asymmetric orbits (1 when none)
};

// SQ1 = (|Osym|/|O| + mean asym sd) / 2; SQ2 = (1+|Osym|)/|O| - (1 - mean asym sd),
// clamped to [0,1]; both are 1 when every orbit is symmetric.
ScoreValues score_orbits(std::span<const OrbitAssessment> orbits);

struct ScoreReport {
    double sq1 = 1.0;
    double sq2 = 1.0;
    double sq2_unclamped = 1.0;
    int symmetric_count = 0;
    double mean_sd = 1.0;
    std::vector<OrbitAssessment> per_orbit;
    Frame frame;  // drawing coordinates
    double eps = kDefaultEpsilon;

    bool all_symmetric() const noexcept { return symmetric_count == static_cast<int>(per_orbit.size()); }
    double value(Formula f) const noexcept { return f == Formula::SQ2 ? sq2 : sq1; }
};

ScoreReport sq(const Graph& g, const Drawing& d, const Automorphism& phi, double eps = default_epsilon(),
               std::optional<Frame> frame = std::nullopt);

struct ElementScore {
    int weight = 0;
    ScoreReport report;
};

struct GroupScoreReport {
    double sqg1 = 1.0;
    double sqg2 = 1.0;
    double s1 = 1.0;  // weighted mean SQ1
    double s2 = 1.0;
    int weight = 0;
    int exact_count = 0;
    std::vector<ElementScore> per_automorphism;

    double value(Formula f) const noexcept { return f == Formula::SQ2 ? sqg2 : sqg1; }
};

GroupScoreReport sqg(const Graph& g, const Drawing& d, const AutomorphismGroup& group, double eps = default_epsilon());
namespace serial {
GroupScoreReport sqg(const Graph& g, const Drawing& d, const AutomorphismGroup& group, double eps = default_epsilon());
}

// S/2 without exact elements, (1+S)/2 with at least one.
double separate(double weighted_mean, int exact_count);

}  // namespace symqual
