#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "helpers.hpp"
#include "symqual/experiments.hpp"
#include "symqual/layouts.hpp"

using namespace symqual;
using namespace symqual::test;

namespace {

Exp1Fixture fixture(const std::string& name) {
    for (auto& f : exp1_fixtures(1)) {
        if (f.name == name) return f;
    }
    FAIL("missing fixture " << name);
    throw 0;
}

}  // namespace

TEST_SUITE("experiments") {
TEST_CASE("zero displacement keeps every row exact") {
    auto f = fixture("coxeter");
    PerturbationPlan plan;
    plan.steps = 3;
    for (int i = 0; i < 3; ++i) plan.per_step.push_back({0, VertexChoice::Spread, 2, 0.0, 1});
    auto r = exp1_perturb(f.graph, f.phi, f.initial, plan);
    REQUIRE(r.rows.size() == 4);
    for (const auto& row : r.rows) {
        CHECK(row.sq1 == doctest::Approx(1.0));
        CHECK(row.sq2 == doctest::Approx(1.0));
        CHECK(row.sd == doctest::Approx(1.0));
    }
    CHECK(r.rows[0].label == "step 0");
}

TEST_CASE("plan validation") {
    auto f = fixture("coxeter");
    PerturbationPlan plan;
    plan.steps = 2;
    plan.per_step = {{0, VertexChoice::Spread, 1, 0.5, 1}, {0, VertexChoice::Spread, 1, 0.2, 1}};
    CHECK(error_code_of([&] { plan.validate(f.phi); }) == ErrorCode::PlanInvalid);
    plan.per_step[1].magnitude = 0.7;
    CHECK_NOTHROW(plan.validate(f.phi));
    plan.per_step[1].orbit_index = 99;
    CHECK(error_code_of([&] { plan.validate(f.phi); }) == ErrorCode::PlanInvalid);
    plan.per_step.pop_back();
    CHECK(error_code_of([&] { plan.validate(f.phi); }) == ErrorCode::PlanInvalid);
    plan.per_step.push_back({0, VertexChoice::Spread, 1, 0.7, 1});
    plan.max_deviation_deg = 90.0;
    CHECK(error_code_of([&] { plan.validate(f.phi); }) == ErrorCode::PlanInvalid);
}

TEST_CASE("make_plan and apply_plan") {
    auto f = fixture("coxeter");
    CHECK(f.plan.steps == 10);
    CHECK(f.plan.per_step.size() == 10);
    auto drawings = apply_plan(f.graph, f.phi, f.initial, f.plan);
    CHECK(drawings.size() == 11);
    CHECK(drawings.front().positions() == f.initial.positions());
    auto partial = apply_plan(f.graph, f.phi, f.initial, f.plan, 3);
    REQUIRE(partial.size() == 4);
    CHECK(partial.back().positions() == drawings[3].positions());
}

TEST_CASE("exp1 fixtures: scores fall and orbits get destroyed") {
    for (const auto& f : exp1_fixtures(1)) {
        CAPTURE(f.name);
        auto r = exp1_perturb(f.graph, f.phi, f.initial, f.plan);
        REQUIRE(r.rows.size() == static_cast<std::size_t>(f.plan.steps + 1));
        CHECK(r.rows[0].sq1 == doctest::Approx(1.0));
        CHECK(r.rows[0].sq2 == doctest::Approx(1.0));
        for (std::size_t i = 1; i < r.rows.size(); ++i) {
            CHECK(r.rows[i].sq1 <= r.rows[i - 1].sq1 + 1e-12);
            CHECK(r.rows[i].sq2 <= r.rows[i - 1].sq2 + 1e-12);
        }
        for (const auto& row : r.rows) {
            CHECK(row.sq2 <= row.sq1 + 1e-12);
            CHECK(row.sq1 <= row.sd + 1e-12);
        }
        CHECK(r.destroyed.back() == f.final_destroyed);
    }
}

TEST_CASE("exp1 is deterministic given the seed") {
    auto a = run_exp1_suite(3);
    auto b = run_exp1_suite(3);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(emit_csv(a[i]) == emit_csv(b[i]));
}

TEST_CASE("exp2: SQG decreases with the displayed subgroup") {
    for (const auto& f : exp2_fixtures(1)) {
        CAPTURE(f.graph.name());
        auto r = exp2_group(f.graph, f.group, f.series);
        REQUIRE(r.rows.size() == f.orders.size());
        CHECK(r.rows[0].sqg1 == doctest::Approx(1.0));
        for (std::size_t i = 1; i < r.rows.size(); ++i) CHECK(r.rows[i].sqg1 < r.rows[i - 1].sqg1 - 1e-6);
    }
    for (const auto& f : exp2_perturbed_fixtures(1)) {
        CAPTURE(f.name);
        auto r = exp2_group(f.graph, f.group, f.series);
        for (std::size_t i = 1; i < r.rows.size(); ++i) CHECK(r.rows[i].sqg1 <= r.rows[i - 1].sqg1 + 1e-12);
    }
}

TEST_CASE("exp3: failed cells are marked, others are scored") {
    const auto& entry = catalog_entry("petersen");
    LayoutConfig bad;
    bad.algorithm = LayoutAlgorithm::Tutte;
    bad.outer_face = {0, 5};
    LayoutConfig cc;
    auto r = exp3_layout_comparison(entry, {cc, bad}, 1);
    bool saw_failed = false, saw_exact = false;
    for (const auto& row : r.rows) {
        if (row.failed) {
            saw_failed = true;
            CHECK_FALSE(row.note.empty());
            CHECK(std::isnan(row.sqg1));
        } else if (row.sqg1 == doctest::Approx(1.0)) {
            saw_exact = true;
        }
    }
    CHECK(saw_failed);
    CHECK(saw_exact);
}

TEST_CASE("csv output") {
    ExperimentResult r;
    r.experiment = "exp1";
    r.graph = "g";
    r.rows.push_back({"step 0", 1.0, 0.5, 0.25});
    auto csv = emit_csv(r);
    CHECK(csv == "label,sd,sq1,sq2,sqg1,sqg2\nstep 0,1,0.5,0.25,,\n");
    r.rows[0].label = "a,b";
    CHECK(emit_csv(r).find("\"a,b\"") != std::string::npos);
}

TEST_CASE("svg output is byte-stable") {
    auto f = fixture("coxeter");
    auto r = exp1_perturb(f.graph, f.phi, f.initial, f.plan);
    auto a = emit_svg_chart(r);
    auto b = emit_svg_chart(exp1_perturb(f.graph, f.phi, f.initial, f.plan));
    CHECK(std::hash<std::string>{}(a) == std::hash<std::string>{}(b));
    CHECK(a.rfind("<svg", 0) == 0);
    CHECK(a.find("</svg>") != std::string::npos);
}

TEST_CASE("write_results creates csv and svg files") {
    auto dir = std::filesystem::temp_directory_path() / "symqual_exp_test";
    std::filesystem::remove_all(dir);
    ExperimentResult r;
    r.experiment = "exp9";
    r.graph = "g";
    r.rows.push_back({"x", 1.0, 1.0, 1.0});
    write_results({r}, dir.string());
    CHECK(std::filesystem::exists(dir / "exp9" / "g.csv"));
    CHECK(std::filesystem::exists(dir / "exp9" / "g.svg"));
    CHECK(summary_table({r}).find("exp9") != std::string::npos);
    std::filesystem::remove_all(dir);
}
}
