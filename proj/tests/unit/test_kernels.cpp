#include <random>

#include "helpers.hpp"
#include "symqual/generators.hpp"
#include "symqual/kernels.hpp"
#include "symqual/layouts.hpp"

using namespace symqual;
using namespace symqual::test;

namespace {

struct Instance {
    Graph g;
    std::vector<Vec2> pos;
    std::vector<double> dist, weight;
};

Instance make_instance(int k, int m) {
    auto gen = gen_rotational(k, m, 5);
    const int n = gen.graph.vertex_count();
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-1, 1);
    Instance in{gen.graph, std::vector<Vec2>(static_cast<std::size_t>(n)), {}, {}};
    for (auto& p : in.pos) p = {u(rng), u(rng)};
    auto hops = bfs_distances(gen.graph);
    for (int h : hops) {
        in.dist.push_back(h);
        in.weight.push_back(h > 0 ? 1.0 / (double(h) * h) : 0.0);
    }
    return in;
}

}  // namespace

TEST_SUITE("kernels") {
TEST_CASE("parallel kernels equal their serial twins bit for bit") {
    auto in = make_instance(10, 30);
    const std::size_t n = in.pos.size();
    std::vector<Vec2> a(n), b(n);
    kernels::fr_displacement(in.g, in.pos, 0.1, a);
    kernels::serial::fr_displacement(in.g, in.pos, 0.1, b);
    CHECK(a == b);
    kernels::smacof_rhs(in.pos, in.dist, in.weight, a);
    kernels::serial::smacof_rhs(in.pos, in.dist, in.weight, b);
    CHECK(a == b);
    CHECK(kernels::stress(in.pos, in.dist, in.weight) == kernels::serial::stress(in.pos, in.dist, in.weight));
}

TEST_CASE("fr displacement on two vertices") {
    Graph g(2, {{0, 1}}, "k2");
    std::vector<Vec2> pos{{0, 0}, {2, 0}}, disp(2);
    kernels::fr_displacement(g, pos, 1.0, disp);
    // Repulsion k^2/d = 0.5 pushes apart, attraction d^2/k = 4 pulls together.
    CHECK(disp[0].x == doctest::Approx(4.0 - 0.5));
    CHECK(disp[1].x == doctest::Approx(-(4.0 - 0.5)));
    CHECK(disp[0].y == 0.0);
}

TEST_CASE("stress of an exact embedding is zero") {
    std::vector<Vec2> pos{{0, 0}, {3, 4}};
    std::vector<double> dist{0, 5, 5, 0}, w{0, 1, 1, 0};
    CHECK(kernels::stress(pos, dist, w) == doctest::Approx(0.0));
    std::vector<double> dist2{0, 4, 4, 0};
    CHECK(kernels::stress(pos, dist2, w) == doctest::Approx(1.0));
}
}
