#include "symqual/generators.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <random>

#include "symqual/error.hpp"

namespace symqual {

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

std::vector<int> mapping_of(int n, const std::function<int(int)>& f) {
    std::vector<int> m(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) m[v] = f(v);
    return m;
}

int mod(int a, int m) { return ((a % m) + m) % m; }

// First involution (in brute-force order) that inverts rho by conjugation.
Automorphism find_reflection(const Graph& g, const Automorphism& rho) {
    const auto& r = rho.mapping();
    const std::size_t n = r.size();
    std::vector<int> rinv(n);
    for (std::size_t v = 0; v < n; ++v) rinv[r[v]] = static_cast<int>(v);
    for (const auto& t : brute_force_automorphisms(g)) {
        bool involution = true;
        bool identity = true;
        for (std::size_t v = 0; v < n; ++v) {
            if (t[t[v]] != static_cast<int>(v)) involution = false;
            if (t[v] != static_cast<int>(v)) identity = false;
        }
        if (!involution || identity) continue;
        bool inverts = true;
        for (std::size_t v = 0; v < n && inverts; ++v) inverts = t[r[t[v]]] == rinv[v];
        if (inverts) return validate_automorphism(g, t, SymmetryKind::Axial);
    }
    throw Error(ErrorCode::InvalidGroup, "no reflection inverts the rotation");
}

std::vector<NamedGroup> dihedral_family(const Graph& g, const Automorphism& rho, const Automorphism& tau,
                                        std::initializer_list<int> orders) {
    auto full = make_dihedral_group(g, rho, tau);
    std::vector<NamedGroup> out;
    for (int d : orders) out.push_back({"D" + std::to_string(d), subgroup_of_order(g, full, d)});
    return out;
}

}  // namespace

GeneratedGraph gen_rotational(int k, int m, std::uint64_t seed) {
    if (k < 2 || m < 1 || k * m < 3) throw Error(ErrorCode::InvalidArgument, "gen_rotational needs k >= 2, m >= 1, k*m >= 3");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    EdgeList edges;
    auto id = [k](int ring, int j) { return ring * k + mod(j, k); };
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < k; ++j) {
            if (k == 2 && j == 1) break;  // a 2-ring is a single edge
            edges.emplace_back(id(i, j), id(i, j + 1));
        }
        if (i == 0) continue;
        bool diagonal = coin(rng);
        for (int j = 0; j < k; ++j) edges.emplace_back(id(i, j), id(i - 1, j));
        if (diagonal) {
            for (int j = 0; j < k; ++j) edges.emplace_back(id(i, j), id(i - 1, j + 1));
        }
    }
    Graph g(k * m, edges, "c" + std::to_string(k) + "x" + std::to_string(m));
    auto rho = validate_automorphism(g, mapping_of(k * m, [&](int v) { return id(v / k, v % k + 1); }),
                                     SymmetryKind::Rotational);
    auto group = make_cyclic_group(g, rho);
    return {std::move(g), std::move(group)};
}

GeneratedGraph gen_axial(int orbit_count, int fixed_count, double edge_density, std::uint64_t seed) {
    if (orbit_count < 1) throw Error(ErrorCode::InvalidArgument, "gen_axial needs at least one mirror pair");
    if (fixed_count < 0) throw Error(ErrorCode::InvalidArgument, "fixed count must be non-negative");
    if (!(edge_density >= 0.0 && edge_density <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "edge density must lie in [0,1]");
    }
    const int n = 2 * orbit_count + fixed_count;
    auto mirror = [orbit_count](int v) { return v < 2 * orbit_count ? (v ^ 1) : v; };
    auto orbit = [orbit_count](int v) { return v < 2 * orbit_count ? v / 2 : orbit_count + (v - 2 * orbit_count); };
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(edge_density);

    EdgeList edges;
    std::vector<char> present(static_cast<std::size_t>(n) * n, 0);
    UnionFind uf(n);
    auto add = [&](int u, int v) {
        for (auto [a, b] : {std::pair{u, v}, std::pair{mirror(u), mirror(v)}}) {
            if (present[static_cast<std::size_t>(a) * n + b]) continue;
            present[static_cast<std::size_t>(a) * n + b] = present[static_cast<std::size_t>(b) * n + a] = 1;
            edges.emplace_back(std::min(a, b), std::max(a, b));
            uf.unite(a, b);
        }
    };
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (orbit(u) == orbit(v)) continue;
            if (present[static_cast<std::size_t>(u) * n + v]) continue;
            if (coin(rng)) add(u, v);
        }
    }
    // Join stray components to vertex 0's; mirrored edges keep the involution.
    for (int v = 1; v < n; ++v) {
        if (uf.find(v) == uf.find(0)) continue;
        int u = 0;
        for (int w = 0; w < n; ++w) {
            if (uf.find(w) == uf.find(0) && orbit(w) != orbit(v)) {
                u = w;
                break;
            }
        }
        add(u, v);
    }
    Graph g(n, edges, "axial" + std::to_string(orbit_count) + "f" + std::to_string(fixed_count));
    auto tau = validate_automorphism(g, mapping_of(n, mirror), SymmetryKind::Axial);
    auto group = make_axial_group(g, tau);
    return {std::move(g), std::move(group)};
}

std::vector<std::vector<int>> brute_force_automorphisms(const Graph& g, int max_n) {
    const int n = g.vertex_count();
    if (n > max_n) throw Error(ErrorCode::TooLarge, "brute-force search limited to " + std::to_string(max_n) + " vertices");

    // BFS order so most vertices have an already-mapped neighbor.
    std::vector<int> order;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        seen[s] = 1;
        std::size_t head = order.size();
        order.push_back(s);
        while (head < order.size()) {
            int v = order[head++];
            for (int w : g.neighbors(v)) {
                if (!seen[w]) {
                    seen[w] = 1;
                    order.push_back(w);
                }
            }
        }
    }
    std::vector<std::vector<int>> sorted_degrees(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        for (int w : g.neighbors(v)) sorted_degrees[v].push_back(g.degree(w));
        std::sort(sorted_degrees[v].begin(), sorted_degrees[v].end());
    }

    std::vector<std::vector<int>> out;
    std::vector<int> image(static_cast<std::size_t>(n), -1);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    std::function<void(std::size_t)> extend = [&](std::size_t depth) {
        if (depth == order.size()) {
            out.push_back(image);
            return;
        }
        const int v = order[depth];
        for (int w = 0; w < n; ++w) {
            if (used[w] || sorted_degrees[w] != sorted_degrees[v]) continue;
            bool ok = true;
            for (std::size_t i = 0; i < depth && ok; ++i) {
                int u = order[i];
                ok = g.has_edge(u, v) == g.has_edge(image[u], w);
            }
            if (!ok) continue;
            image[v] = w;
            used[w] = 1;
            extend(depth + 1);
            used[w] = 0;
            image[v] = -1;
        }
    };
    extend(0);
    std::sort(out.begin(), out.end());
    return out;
}

Graph generalized_petersen(int n, int k, std::string name) {
    EdgeList e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, mod(i + 1, n));
    for (int i = 0; i < n; ++i) e.emplace_back(i, n + i);
    std::vector<char> done(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        int j = mod(i + k, n);
        if (2 * k == n && done[j]) continue;
        done[i] = 1;
        e.emplace_back(n + i, n + j);
    }
    return Graph(2 * n, e, std::move(name));
}

Graph petersen_graph() { return generalized_petersen(5, 2, "petersen"); }
Graph dodecahedral_graph() { return generalized_petersen(10, 2, "dodecahedral"); }

namespace {

std::vector<std::array<int, 3>> cuboctahedron_vertices() {
    std::vector<std::array<int, 3>> pts;
    for (int z = 0; z < 3; ++z) {
        for (int s1 : {1, -1}) {
            for (int s2 : {1, -1}) {
                std::array<int, 3> p{};
                p[(z + 1) % 3] = s1;
                p[(z + 2) % 3] = s2;
                pts.push_back(p);
            }
        }
    }
    return pts;
}

int index_of(const std::vector<std::array<int, 3>>& pts, std::array<int, 3> p) {
    return static_cast<int>(std::find(pts.begin(), pts.end(), p) - pts.begin());
}

}  // namespace

Graph cuboctahedral_graph() {
    auto pts = cuboctahedron_vertices();
    EdgeList e;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            int d2 = 0;
            for (int c = 0; c < 3; ++c) d2 += (pts[i][c] - pts[j][c]) * (pts[i][c] - pts[j][c]);
            if (d2 == 2) e.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    }
    return Graph(12, e, "cuboctahedral");
}

Graph tesseract_graph() {
    EdgeList e;
    for (int v = 0; v < 16; ++v) {
        for (int b = 0; b < 4; ++b) {
            int w = v ^ (1 << b);
            if (v < w) e.emplace_back(v, w);
        }
    }
    return Graph(16, e, "tesseract");
}

Graph coxeter_graph() {
    EdgeList e;
    for (int i = 0; i < 7; ++i) {
        e.emplace_back(i, mod(i + 1, 7));
        e.emplace_back(7 + i, 7 + mod(i + 2, 7));
        e.emplace_back(14 + i, 14 + mod(i + 3, 7));
        for (int ring = 0; ring < 3; ++ring) e.emplace_back(21 + i, 7 * ring + i);
    }
    return Graph(28, e, "coxeter");
}

Graph heawood_graph() {
    EdgeList e;
    for (int i = 0; i < 7; ++i) {
        for (int j = 0; j < 7; ++j) {
            int d = mod(i - j, 7);
            if (d == 0 || d == 1 || d == 3) e.emplace_back(i, 7 + j);
        }
    }
    return Graph(14, e, "heawood");
}

Graph cycle_graph(int n) {
    EdgeList e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, mod(i + 1, n));
    return Graph(n, e, "C" + std::to_string(n));
}

AutomorphismGroup subgroup_of_order(const Graph& g, const AutomorphismGroup& group, int d) {
    const int k = group.rotation_order();
    if (d < 1 || k % d != 0) {
        throw Error(ErrorCode::InvalidArgument, "order " + std::to_string(d) + " does not divide " + std::to_string(k));
    }
    const Automorphism* rho = group.rotation_generator();
    const Automorphism* tau = group.reflection();
    if (group.kind() == GroupKind::Dihedral) {
        if (d == 1) return make_axial_group(g, *tau);
        return make_dihedral_group(g, power(g, *rho, k / d), *tau);
    }
    if (group.kind() == GroupKind::Cyclic && d > 1) return make_cyclic_group(g, power(g, *rho, k / d));
    if (group.kind() == GroupKind::Axial2 && d == 1) return group;
    throw Error(ErrorCode::InvalidArgument, "no subgroup of order " + std::to_string(d));
}

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = [] {
        std::vector<CatalogEntry> out;

        {
            Graph g = petersen_graph();
            auto rho = validate_automorphism(g, mapping_of(10, [](int v) { return v < 5 ? mod(v + 1, 5) : 5 + mod(v - 4, 5); }));
            auto tau = validate_automorphism(g, mapping_of(10, [](int v) { return v < 5 ? mod(-v, 5) : 5 + mod(-(v - 5), 5); }),
                                             SymmetryKind::Axial);
            auto groups = dihedral_family(g, rho, tau, {5});
            out.push_back({g, std::move(groups), {0, 1, 2, 3, 4}, "generalized Petersen graph GP(5,2)"});
        }
        {
            Graph g = dodecahedral_graph();
            auto rho = validate_automorphism(g, mapping_of(20, [](int v) { return v < 10 ? mod(v + 1, 10) : 10 + mod(v - 9, 10); }));
            auto tau = validate_automorphism(g, mapping_of(20, [](int v) { return v < 10 ? mod(-v, 10) : 10 + mod(-(v - 10), 10); }),
                                             SymmetryKind::Axial);
            out.push_back({g, dihedral_family(g, rho, tau, {10, 5, 2}), {10, 12, 14, 16, 18},
                           "generalized Petersen graph GP(10,2)"});
        }
        {
            Graph g = cuboctahedral_graph();
            auto pts = cuboctahedron_vertices();
            auto rho = validate_automorphism(g, mapping_of(12, [&](int v) {
                auto p = pts[v];
                return index_of(pts, {-p[2], -p[0], -p[1]});
            }));
            auto tau = validate_automorphism(g, mapping_of(12, [&](int v) {
                auto p = pts[v];
                return index_of(pts, {p[1], p[0], p[2]});
            }), SymmetryKind::Axial);
            std::vector<int> face = {index_of(pts, {1, 1, 0}), index_of(pts, {0, 1, 1}), index_of(pts, {1, 0, 1})};
            out.push_back({g, dihedral_family(g, rho, tau, {6, 3, 2}), face,
                           "cuboctahedron skeleton: permutations of (+-1,+-1,0), edges at distance sqrt 2"});
        }
        {
            Graph g = tesseract_graph();
            auto rho = validate_automorphism(g, mapping_of(16, [](int v) { return ((v << 1) & 0xE) | (((v >> 3) & 1) ^ 1); }));
            auto tau = find_reflection(g, rho);
            out.push_back({g, dihedral_family(g, rho, tau, {8, 4, 2}), {0, 1, 3, 2}, "4-cube Q4"});
        }
        {
            Graph g = coxeter_graph();
            auto rho = validate_automorphism(g, mapping_of(28, [](int v) { return 7 * (v / 7) + mod(v % 7 + 1, 7); }));
            std::vector<NamedGroup> groups;
            groups.push_back({"C7", make_cyclic_group(g, rho)});
            out.push_back({g, std::move(groups), {0, 1, 2, 3, 4, 5, 6},
                           "Coxeter graph: 7-cycle, {7/2} and {7/3} star polygons joined through 7 centers"});
        }
        {
            Graph g = heawood_graph();
            auto rho = validate_automorphism(g, mapping_of(14, [](int v) { return 7 * (v / 7) + mod(v % 7 + 1, 7); }));
            auto tau = validate_automorphism(g, mapping_of(14, [](int v) { return v < 7 ? 7 + mod(-v, 7) : mod(-(v - 7), 7); }),
                                             SymmetryKind::Axial);
            std::vector<NamedGroup> groups;
            groups.push_back({"D7", make_dihedral_group(g, rho, tau)});
            groups.push_back({"C7", make_cyclic_group(g, rho)});
            groups.push_back({"axial", make_axial_group(g, tau)});
            out.push_back({g, std::move(groups), {0, 7, 1, 8, 2, 13},
                           "Heawood graph: incidence graph of the Fano plane, point i on line j iff i-j in {0,1,3} mod 7"});
        }
        return out;
    }();
    return entries;
}

const CatalogEntry& catalog_entry(std::string_view name) {
    for (const auto& e : catalog()) {
        if (e.graph.name() == name) return e;
    }
    throw Error(ErrorCode::InvalidArgument, "no catalog entry named '" + std::string(name) + "'");
}

}  // namespace symqual
