#include <algorithm>

#include "helpers.hpp"
#include "symqual/generators.hpp"
#include "symqual/layouts.hpp"
#include "symqual/metrics.hpp"
#include "symqual/symmetry.hpp"

using namespace symqual;
using namespace symqual::test;

namespace {

bool all_finite(const Drawing& d) {
    return std::all_of(d.positions().begin(), d.positions().end(), [](Vec2 p) { return is_finite(p); });
}

double hexagon_spread(const Drawing& d) {
    // Max relative deviation of radii and of consecutive gaps around the centroid.
    Vec2 c{};
    for (auto p : d.positions()) c += p;
    c = c / static_cast<double>(d.size());
    double rmin = 1e300, rmax = 0;
    for (auto p : d.positions()) {
        rmin = std::min(rmin, distance(p, c));
        rmax = std::max(rmax, distance(p, c));
    }
    double gmin = 1e300, gmax = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        double g = distance(d.positions()[i], d.positions()[(i + 1) % d.size()]);
        gmin = std::min(gmin, g);
        gmax = std::max(gmax, g);
    }
    return std::max((rmax - rmin) / rmax, (gmax - gmin) / gmax);
}

}  // namespace

TEST_SUITE("layouts") {
TEST_CASE("coxeter concentric drawing puts four orbits of seven on circles") {
    const auto& entry = catalog_entry("coxeter");
    const auto& group = entry.groups.front().group;
    Drawing d = concentric_circles(entry.graph, group);
    std::vector<double> radii;
    for (auto p : d.positions()) radii.push_back(std::round(norm(p) * 1e9) / 1e9);
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    CHECK(radii.size() == 4);
    auto det = detect_exact(entry.graph, d);
    REQUIRE(det.rotation.has_value());
    CHECK(det.rotation->order == 7);
}

TEST_CASE("petersen concentric drawing shows rotation 5 and five axes") {
    const auto& entry = catalog_entry("petersen");
    Drawing d = concentric_circles(entry.graph, entry.groups.front().group);
    auto det = detect_exact(entry.graph, d);
    REQUIRE(det.rotation.has_value());
    CHECK(det.rotation->order == 5);
    CHECK(det.reflections.size() == 5);
}

TEST_CASE("cycle concentric drawing is a regular hexagon") {
    Graph c6 = cycle_graph(6);
    auto rho = validate_automorphism(c6, {1, 2, 3, 4, 5, 0});
    Drawing d = concentric_circles(c6, make_cyclic_group(c6, rho));
    CHECK(hexagon_spread(d) < 1e-12);
}

TEST_CASE("concentric drawing needs a rotation for cyclic groups") {
    Graph c6 = cycle_graph(6);
    auto rho = validate_automorphism(c6, {1, 2, 3, 4, 5, 0});
    auto group = make_cyclic_group(c6, rho);
    CHECK(error_code_of([&] { concentric_circles(cycle_graph(5), group); }) == ErrorCode::GraphMismatch);
}

TEST_CASE("tutte on K4 puts the fourth vertex at the centroid") {
    Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, "k4");
    std::vector<int> face{0, 1, 2};
    Drawing d = tutte(k4, face);
    Vec2 c = (d[0] + d[1] + d[2]) / 3.0;
    CHECK(distance(d[3], c) < 1e-12);
    for (int v = 0; v < 3; ++v) CHECK(norm(d[v]) == doctest::Approx(1.0));
}

TEST_CASE("tutte on the dodecahedral graph displays the order-5 dihedral subgroup") {
    const auto& entry = catalog_entry("dodecahedral");
    Drawing d = tutte(entry.graph, entry.tutte_outer_face);
    const auto* d5 = &entry.groups[1];
    REQUIRE(d5->label == "D5");
    for (const auto& phi : d5->group.elements()) CHECK(sq(entry.graph, d, phi).all_symmetric());
}

TEST_CASE("tutte on petersen scores 1 for the dihedral input group") {
    const auto& entry = catalog_entry("petersen");
    Drawing d = tutte(entry.graph, entry.tutte_outer_face);
    CHECK(sqg(entry.graph, d, entry.groups.front().group).sqg1 == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("tutte is independent of vertex order") {
    const auto& entry = catalog_entry("dodecahedral");
    const int n = entry.graph.vertex_count();
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) perm[v] = (v * 7 + 3) % n;
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : entry.graph.edges()) edges.emplace_back(perm[e.u], perm[e.v]);
    Graph h(n, edges, "relabelled");
    std::vector<int> face;
    for (int v : entry.tutte_outer_face) face.push_back(perm[v]);
    Drawing a = tutte(entry.graph, entry.tutte_outer_face);
    Drawing b = tutte(h, face);
    for (int v = 0; v < n; ++v) CHECK(distance(a[v], b[perm[v]]) < 1e-9);
}

TEST_CASE("tutte errors") {
    const auto& entry = catalog_entry("petersen");
    CHECK(error_code_of([&] { tutte(entry.graph, std::vector<int>{0, 1}); }) == ErrorCode::InvalidOuterFace);
    CHECK(error_code_of([&] { tutte(entry.graph, std::vector<int>{0, 2, 4}); }) == ErrorCode::InvalidOuterFace);
    Graph split(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}}, "two");
    CHECK(error_code_of([&] { tutte(split, std::vector<int>{0, 1, 2}); }) == ErrorCode::DisconnectedGraph);
}

TEST_CASE("spectral drawing of a cycle is a regular polygon") {
    Drawing d = spectral(cycle_graph(6));
    CHECK(hexagon_spread(d) < 1e-9);
    Graph split(4, {{0, 1}, {2, 3}}, "two");
    CHECK(error_code_of([&] { spectral(split); }) == ErrorCode::DisconnectedGraph);
}

TEST_CASE("fr is deterministic per seed") {
    const auto& g = catalog_entry("petersen").graph;
    auto a = fr(g, 1), b = fr(g, 1), c = fr(g, 2);
    CHECK(a.drawing.positions() == b.drawing.positions());
    CHECK(a.drawing.positions() != c.drawing.positions());
    CHECK(all_finite(a.drawing));
}

TEST_CASE("stress majorization never increases stress") {
    for (const auto& entry : catalog()) {
        auto r = stress_majorization(entry.graph, 4);
        REQUIRE(r.stress_history.size() >= 2);
        for (std::size_t i = 1; i < r.stress_history.size(); ++i) {
            CHECK(r.stress_history[i] <= r.stress_history[i - 1] * (1 + 1e-12));
        }
        CHECK(all_finite(r.drawing));
    }
}

TEST_CASE("pivot mds is finite and deterministic") {
    const auto& g = catalog_entry("tesseract").graph;
    auto a = pivot_mds(g, 50, 3), b = pivot_mds(g, 50, 3);
    CHECK(a.drawing.positions() == b.drawing.positions());
    CHECK(all_finite(a.drawing));
}

TEST_CASE("layout dispatch and config validation") {
    const auto& entry = catalog_entry("petersen");
    for (auto name : {"concentric", "tutte", "spectral", "fr", "stress", "pivotmds"}) {
        LayoutConfig cfg;
        cfg.algorithm = parse_layout_algorithm(name);
        CHECK(to_string(cfg.algorithm) == name);
        cfg.outer_face = entry.tutte_outer_face;
        auto r = run_layout(entry.graph, cfg, &entry.groups.front().group);
        CHECK(all_finite(r.drawing));
        CHECK(r.drawing.size() == 10);
    }
    CHECK(error_code_of([] { parse_layout_algorithm("circle"); }) == ErrorCode::InvalidArgument);
    LayoutConfig bad;
    bad.iterations = 0;
    CHECK(error_code_of([&] { bad.validate(); }) == ErrorCode::InvalidArgument);
    bad.iterations = 1;
    bad.tolerance = 0;
    CHECK(error_code_of([&] { bad.validate(); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("bfs distances") {
    auto d = bfs_distances(path_graph(4));
    CHECK(d[0 * 4 + 3] == 3);
    CHECK(d[1 * 4 + 2] == 1);
    auto e = bfs_distances(Graph(3, {{0, 1}}, "x"));
    CHECK(e[0 * 3 + 2] == -1);
}
}
