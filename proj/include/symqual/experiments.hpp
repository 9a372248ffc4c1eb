#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "symqual/generators.hpp"
#include "symqual/graph.hpp"
#include "symqual/layouts.hpp"
#include "symqual/symmetry.hpp"

namespace symqual {

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

struct ResultRow {
    std::string label;
    double sd = kMissing;
    double sq1 = kMissing;
    double sq2 = kMissing;
    double sqg1 = kMissing;
    double sqg2 = kMissing;
    bool failed = false;
    std::string note;  // error text for failed cells
};

struct ExperimentResult {
    std::string experiment;
    std::string graph;
    std::string group;
    std::uint64_t seed = 0;
    std::string config;
    std::vector<ResultRow> rows;
    std::vector<int> destroyed;  // exp1: destroyed orbits per row
};

// ---- Experiment 1: perturbation series for one automorphism -------------

enum class VertexChoice { Spread, Seeded };

struct PlanStep {
    int orbit_index = 0;       // into phi.orbits()
    VertexChoice choice = VertexChoice::Spread;
    int vertex_count = 1;
    double magnitude = 0.0;    // multiple of the initial layout radius
    std::uint64_t seed = 0;
};

struct PerturbationPlan {
    int steps = 0;
    std::vector<PlanStep> per_step;  // one entry per step
    double max_deviation_deg = 25.0;  // seeded angle between a move and the centroid direction

    // PlanInvalid on bad indices or a magnitude that decreases for a vertex.
    void validate(const Automorphism& phi) const;
};

struct PlanOptions {
    int steps = 10;
    int destroy = 4;                 // orbits destroyed by the last step
    int vertices_per_orbit = 2;
    double first_magnitude = 1.2;
    double last_magnitude = 1.6;
    double max_deviation_deg = 25.0;
    std::uint64_t seed = 1;
};

// Destroys orbits largest radius first at evenly spread steps; the steps in
// between push the most recently destroyed orbit further.
PerturbationPlan make_plan(const Automorphism& phi, const Drawing& initial, const PlanOptions& options);

// Drawings after steps 0..through (inclusive).
std::vector<Drawing> apply_plan(const Graph& g, const Automorphism& phi, const Drawing& initial,
                                const PerturbationPlan& plan, int through = -1);

ExperimentResult exp1_perturb(const Graph& g, const Automorphism& phi, const Drawing& initial,
                              const PerturbationPlan& plan, double eps = default_epsilon());

struct Exp1Fixture {
    std::string name;
    Graph graph;
    Automorphism phi;
    Drawing initial;
    PerturbationPlan plan;
    int final_destroyed = 0;
};

std::vector<Exp1Fixture> exp1_fixtures(std::uint64_t seed);

// ---- Experiment 2: group scores over drawing series ---------------------

struct SeriesDrawing {
    std::string label;
    Drawing drawing;
};

ExperimentResult exp2_group(const Graph& g, const AutomorphismGroup& group, const std::vector<SeriesDrawing>& series,
                            double eps = default_epsilon());

// Concentric-circles drawing plus a displacement field averaged over the
// subgroup of rotation order d, so exactly that subgroup stays displayed.
Drawing subgroup_display_drawing(const Graph& g, const AutomorphismGroup& group, int d, double amplitude,
                                 std::uint64_t seed);

// Each step moves one vertex of a further orbit of the largest rotation.
std::vector<SeriesDrawing> perturbed_series(const Graph& g, const AutomorphismGroup& group, const Drawing& start,
                                            const std::string& prefix, int steps, double magnitude,
                                            std::uint64_t seed);

struct Exp2Fixture {
    Graph graph;
    AutomorphismGroup group;
    std::vector<int> orders;  // displayed rotation orders, decreasing
    std::vector<SeriesDrawing> series;
};

struct Exp2PerturbedFixture {
    std::string name;
    Graph graph;
    AutomorphismGroup group;
    std::vector<SeriesDrawing> series;  // exact start followed by perturbation steps
};

std::vector<Exp2Fixture> exp2_fixtures(std::uint64_t seed);
std::vector<Exp2PerturbedFixture> exp2_perturbed_fixtures(std::uint64_t seed);

// ---- Experiment 3: layout comparison ------------------------------------

// One row per (layout, group); FR rows average fr_runs seeds. Layout errors
// mark the cell failed instead of aborting.
ExperimentResult exp3_layout_comparison(const CatalogEntry& entry, const std::vector<LayoutConfig>& layouts,
                                        int fr_runs = 5, double eps = default_epsilon());
std::vector<LayoutConfig> default_layouts(std::uint64_t seed);
// Mean over graphs of each layout's score for the largest group.
ExperimentResult exp3_average(const std::vector<ExperimentResult>& per_graph);

// ---- output --------------------------------------------------------------

std::string emit_csv(const ExperimentResult& r);
std::string emit_svg_chart(const ExperimentResult& r);
std::string summary_table(const std::vector<ExperimentResult>& results);

std::vector<ExperimentResult> run_exp1_suite(std::uint64_t seed);
std::vector<ExperimentResult> run_exp2_suite(std::uint64_t seed);
std::vector<ExperimentResult> run_exp3_suite(std::uint64_t seed);

// Writes <out_dir>/<experiment>/<graph>.csv and .svg for every result.
void write_results(const std::vector<ExperimentResult>& results, const std::string& out_dir);

}  // namespace symqual
