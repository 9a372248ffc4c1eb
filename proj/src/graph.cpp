#include "symqual/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <unordered_map>

namespace symqual {

namespace {

std::string vertex_msg(int v) { return "vertex " + std::to_string(v); }

struct VectorHash {
    std::size_t operator()(const std::vector<int>& v) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

bool is_identity(const std::vector<int>& m) {
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] != static_cast<int>(i)) return false;
    }
    return true;
}

std::vector<int> compose_mappings(const std::vector<int>& phi, const std::vector<int>& psi) {
    std::vector<int> out(psi.size());
    for (std::size_t v = 0; v < psi.size(); ++v) out[v] = phi[static_cast<std::size_t>(psi[v])];
    return out;
}

SymmetryKind parity_kind(int axial_factors) {
    return axial_factors % 2 == 1 ? SymmetryKind::Axial : SymmetryKind::Rotational;
}

}  // namespace

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges, std::string name)
    : n_(n), name_(std::move(name)) {
    if (n < 1) throw Error(ErrorCode::InvalidGraph, "graph needs at least one vertex");
    edges_.reserve(edges.size());
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n) {
            throw Error(ErrorCode::InvalidGraph, "edge (" + std::to_string(u) + "," + std::to_string(v) +
                                                     ") has an endpoint outside 0.." + std::to_string(n - 1));
        }
        if (u == v) throw Error(ErrorCode::InvalidGraph, "self-loop at " + vertex_msg(u));
        if (!edge_set_.insert(key(u, v)).second) {
            throw Error(ErrorCode::InvalidGraph,
                        "duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
        }
        edges_.push_back({u, v});
        ++deg[static_cast<std::size_t>(u)];
        ++deg[static_cast<std::size_t>(v)];
    }
    adj_offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int v = 0; v < n; ++v) adj_offsets_[v + 1] = adj_offsets_[v] + deg[v];
    adj_.assign(static_cast<std::size_t>(adj_offsets_.back()), 0);
    std::vector<int> fill(adj_offsets_.begin(), adj_offsets_.end() - 1);
    for (const Edge& e : edges_) {
        adj_[fill[e.u]++] = e.v;
        adj_[fill[e.v]++] = e.u;
    }
    for (int v = 0; v < n; ++v) std::sort(adj_.begin() + adj_offsets_[v], adj_.begin() + adj_offsets_[v + 1]);
}

unsigned long long Graph::key(int u, int v) {
    if (u > v) std::swap(u, v);
    return (static_cast<unsigned long long>(static_cast<unsigned>(u)) << 32) | static_cast<unsigned>(v);
}

std::span<const int> Graph::neighbors(int v) const {
    if (v < 0 || v >= n_) throw Error(ErrorCode::InvalidArgument, vertex_msg(v) + " out of range");
    return {adj_.data() + adj_offsets_[v], static_cast<std::size_t>(adj_offsets_[v + 1] - adj_offsets_[v])};
}

bool Graph::has_edge(int u, int v) const {
    if (u == v) return false;
    return edge_set_.count(key(u, v)) != 0;
}

bool Graph::is_connected() const {
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : neighbors(v)) {
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                q.push(w);
            }
        }
    }
    return count == n_;
}

Drawing::Drawing(std::string graph_name, std::vector<Vec2> positions)
    : graph_name_(std::move(graph_name)), positions_(std::move(positions)) {
    for (std::size_t i = 0; i < positions_.size(); ++i) {
        if (!is_finite(positions_[i])) {
            throw Error(ErrorCode::NonFinite, "position of vertex " + std::to_string(i) + " is not finite");
        }
    }
}

Drawing::Drawing(const Graph& g, std::vector<Vec2> positions) : Drawing(g.name(), std::move(positions)) {
    check_against(g);
}

void Drawing::check_against(const Graph& g) const {
    if (graph_name_ != g.name()) {
        throw Error(ErrorCode::GraphMismatch,
                    "drawing belongs to graph '" + graph_name_ + "' but graph is '" + g.name() + "'");
    }
    if (positions_.size() != static_cast<std::size_t>(g.vertex_count())) {
        throw Error(ErrorCode::GraphMismatch, "drawing has " + std::to_string(positions_.size()) +
                                                   " positions but graph '" + g.name() + "' has " +
                                                   std::to_string(g.vertex_count()) + " vertices");
    }
}

std::vector<std::vector<int>> permutation_cycles(std::span<const int> mapping) {
    std::vector<std::vector<int>> cycles;
    std::vector<char> seen(mapping.size(), 0);
    for (std::size_t s = 0; s < mapping.size(); ++s) {
        if (seen[s]) continue;
        std::vector<int> cyc;
        int v = static_cast<int>(s);
        while (!seen[static_cast<std::size_t>(v)]) {
            seen[static_cast<std::size_t>(v)] = 1;
            cyc.push_back(v);
            v = mapping[static_cast<std::size_t>(v)];
        }
        cycles.push_back(std::move(cyc));
    }
    return cycles;
}

int permutation_order(std::span<const int> mapping) {
    long long order = 1;
    for (const auto& c : permutation_cycles(mapping)) {
        order = std::lcm(order, static_cast<long long>(c.size()));
        if (order > std::numeric_limits<int>::max()) {
            throw Error(ErrorCode::TooLarge, "permutation order exceeds int range");
        }
    }
    return static_cast<int>(order);
}

Automorphism validate_automorphism(const Graph& g, std::vector<int> mapping,
                                   std::optional<SymmetryKind> kind_hint) {
    const int n = g.vertex_count();
    if (mapping.size() != static_cast<std::size_t>(n)) {
        throw Error(ErrorCode::NotBijective, "mapping has " + std::to_string(mapping.size()) +
                                                 " entries, graph has " + std::to_string(n) + " vertices");
    }
    std::vector<char> hit(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
        int w = mapping[v];
        if (w < 0 || w >= n) {
            throw Error(ErrorCode::NotBijective, vertex_msg(v) + " maps outside the vertex set");
        }
        if (hit[w]) throw Error(ErrorCode::NotBijective, "vertex " + std::to_string(w) + " is hit twice");
        hit[w] = 1;
    }
    for (const Edge& e : g.edges()) {
        if (!g.has_edge(mapping[e.u], mapping[e.v])) {
            throw Error(ErrorCode::AdjacencyViolated,
                        "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") maps to non-edge (" +
                            std::to_string(mapping[e.u]) + "," + std::to_string(mapping[e.v]) + ")");
        }
    }
    auto orbits = permutation_cycles(mapping);
    const int order = permutation_order(mapping);
    if (order == 1) throw Error(ErrorCode::KindUndetermined, "identity permutation has no symmetry kind");

    SymmetryKind kind = SymmetryKind::Rotational;
    if (order == 2) {
        kind = kind_hint.value_or(SymmetryKind::Axial);
    } else if (kind_hint == SymmetryKind::Axial) {
        throw Error(ErrorCode::KindMismatch,
                    "axial automorphism must be an involution, got order " + std::to_string(order));
    }
    return Automorphism(std::move(mapping), kind, order, std::move(orbits));
}

Automorphism compose(const Graph& g, const Automorphism& phi, const Automorphism& psi) {
    auto m = compose_mappings(phi.mapping(), psi.mapping());
    int axial = (phi.kind() == SymmetryKind::Axial) + (psi.kind() == SymmetryKind::Axial);
    if (is_identity(m)) throw Error(ErrorCode::KindUndetermined, "composition is the identity");
    std::optional<SymmetryKind> hint;
    if (permutation_order(m) == 2) hint = parity_kind(axial);
    return validate_automorphism(g, std::move(m), hint);
}

Automorphism inverse(const Graph& g, const Automorphism& phi) {
    std::vector<int> inv(phi.mapping().size());
    for (std::size_t v = 0; v < inv.size(); ++v) inv[static_cast<std::size_t>(phi.mapping()[v])] = static_cast<int>(v);
    return validate_automorphism(g, std::move(inv), phi.kind());
}

Automorphism power(const Graph& g, const Automorphism& phi, int exponent) {
    int e = ((exponent % phi.order()) + phi.order()) % phi.order();
    if (e == 0) throw Error(ErrorCode::KindUndetermined, "power is the identity");
    const auto& m = phi.mapping();
    std::vector<int> out(m.size());
    for (std::size_t v = 0; v < m.size(); ++v) {
        int w = static_cast<int>(v);
        for (int i = 0; i < e; ++i) w = m[static_cast<std::size_t>(w)];
        out[v] = w;
    }
    return validate_automorphism(g, std::move(out), parity_kind(phi.kind() == SymmetryKind::Axial ? e : 0));
}

std::string_view to_string(GroupKind kind) {
    switch (kind) {
    case GroupKind::Axial2: return "axial2";
    case GroupKind::Cyclic: return "cyclic";
    case GroupKind::Dihedral: return "dihedral";
    }
    return "unknown";
}

AutomorphismGroup::AutomorphismGroup(const Graph& g, GroupKind kind, int order,
                                     std::vector<Automorphism> elements)
    : kind_(kind), order_(order), graph_name_(g.name()), elements_(std::move(elements)) {
    auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidGroup, msg); };
    if (order < 2) fail("group order must be at least 2");
    if (elements_.size() != static_cast<std::size_t>(order - 1)) {
        fail("group of order " + std::to_string(order) + " needs " + std::to_string(order - 1) +
             " non-identity elements, got " + std::to_string(elements_.size()));
    }
    int rotational = 0;
    int axial = 0;
    int max_rot = 0;
    for (const auto& e : elements_) {
        if (e.size() != g.vertex_count()) fail("element size differs from graph size");
        if (e.is_rotational()) {
            ++rotational;
            max_rot = std::max(max_rot, e.order());
        } else {
            ++axial;
        }
    }
    switch (kind) {
    case GroupKind::Axial2:
        if (order != 2 || axial != 1) fail("axial2 group must hold exactly one axial element");
        break;
    case GroupKind::Cyclic:
        if (axial != 0) fail("cyclic group cannot contain axial elements");
        if (max_rot != order) fail("cyclic group of order " + std::to_string(order) + " lacks a generator");
        break;
    case GroupKind::Dihedral: {
        if (order % 2 != 0 || order < 4) fail("dihedral group order must be even and at least 4");
        const int k = order / 2;
        if (axial != k || rotational != k - 1) fail("dihedral group needs k axial and k-1 rotational elements");
        if (max_rot != k) fail("dihedral group lacks a rotation of order " + std::to_string(k));
        break;
    }
    }

    std::unordered_map<std::vector<int>, std::size_t, VectorHash> index;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (!index.emplace(elements_[i].mapping(), i).second) fail("duplicate group element");
    }
    if (elements_.size() > 512) return;  // closure check is quadratic; skipped for very large groups
    for (const auto& a : elements_) {
        for (const auto& b : elements_) {
            auto m = compose_mappings(a.mapping(), b.mapping());
            if (is_identity(m)) continue;
            auto it = index.find(m);
            if (it == index.end()) fail("element set is not closed under composition");
            int ax = (a.kind() == SymmetryKind::Axial) + (b.kind() == SymmetryKind::Axial);
            if (elements_[it->second].kind() != parity_kind(ax)) {
                fail("element kinds are inconsistent with composition");
            }
        }
    }
}

int AutomorphismGroup::rotation_order() const noexcept {
    switch (kind_) {
    case GroupKind::Axial2: return 1;
    case GroupKind::Cyclic: return order_;
    case GroupKind::Dihedral: return order_ / 2;
    }
    return 1;
}

int AutomorphismGroup::total_weight() const noexcept {
    int w = 0;
    for (const auto& e : elements_) w += e.weight();
    return w;
}

const Automorphism* AutomorphismGroup::rotation_generator() const noexcept {
    const Automorphism* best = nullptr;
    for (const auto& e : elements_) {
        if (e.is_rotational() && (!best || e.order() > best->order())) best = &e;
    }
    return best;
}

const Automorphism* AutomorphismGroup::reflection() const noexcept {
    for (const auto& e : elements_) {
        if (!e.is_rotational()) return &e;
    }
    return nullptr;
}

AutomorphismGroup make_axial_group(const Graph& g, const Automorphism& tau) {
    if (tau.kind() != SymmetryKind::Axial) throw Error(ErrorCode::KindMismatch, "axial group needs an axial element");
    return AutomorphismGroup(g, GroupKind::Axial2, 2, {tau});
}

AutomorphismGroup make_cyclic_group(const Graph& g, const Automorphism& rho) {
    if (!rho.is_rotational()) throw Error(ErrorCode::KindMismatch, "cyclic group needs a rotational generator");
    std::vector<Automorphism> els;
    for (int i = 1; i < rho.order(); ++i) els.push_back(power(g, rho, i));
    return AutomorphismGroup(g, GroupKind::Cyclic, rho.order(), std::move(els));
}

AutomorphismGroup make_dihedral_group(const Graph& g, const Automorphism& rho, const Automorphism& tau) {
    if (!rho.is_rotational()) throw Error(ErrorCode::KindMismatch, "dihedral group needs a rotational generator");
    if (tau.kind() != SymmetryKind::Axial) throw Error(ErrorCode::KindMismatch, "dihedral group needs an axial generator");
    const int k = rho.order();
    std::vector<Automorphism> els;
    for (int i = 1; i < k; ++i) els.push_back(power(g, rho, i));
    els.push_back(tau);
    for (int i = 1; i < k; ++i) {
        auto m = compose_mappings(tau.mapping(), els[static_cast<std::size_t>(i - 1)].mapping());
        if (is_identity(m) || permutation_order(m) != 2) {
            throw Error(ErrorCode::InvalidGroup, "generators do not satisfy the dihedral relation");
        }
        els.push_back(validate_automorphism(g, std::move(m), SymmetryKind::Axial));
    }
    return AutomorphismGroup(g, GroupKind::Dihedral, 2 * k, std::move(els));
}

}  // namespace symqual
