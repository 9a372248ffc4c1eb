#include "symqual/layouts.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <random>
#include <string>

#include "symqual/error.hpp"
#include "symqual/kernels.hpp"

namespace symqual {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAxisAngle = kPi / 2.0;

void require_connected(const Graph& g, const char* who) {
    if (!g.is_connected()) throw Error(ErrorCode::DisconnectedGraph, std::string(who) + " needs a connected graph");
}

std::vector<Vec2> random_positions(int n, std::uint64_t seed, double half_width) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-half_width, half_width);
    std::vector<Vec2> pos(static_cast<std::size_t>(n));
    for (auto& p : pos) {
        p.x = u(rng);
        p.y = u(rng);
    }
    return pos;
}

Vec2 polar(double r, double angle) { return {r * std::cos(angle), r * std::sin(angle)}; }

}  // namespace

std::string_view to_string(LayoutAlgorithm a) {
    switch (a) {
    case LayoutAlgorithm::ConcentricCircles: return "concentric";
    case LayoutAlgorithm::Tutte: return "tutte";
    case LayoutAlgorithm::Spectral: return "spectral";
    case LayoutAlgorithm::FR: return "fr";
    case LayoutAlgorithm::StressMajorization: return "stress";
    case LayoutAlgorithm::PivotMDS: return "pivotmds";
    }
    return "unknown";
}

LayoutAlgorithm parse_layout_algorithm(std::string_view name) {
    for (auto a : {LayoutAlgorithm::ConcentricCircles, LayoutAlgorithm::Tutte, LayoutAlgorithm::Spectral,
                   LayoutAlgorithm::FR, LayoutAlgorithm::StressMajorization, LayoutAlgorithm::PivotMDS}) {
        if (to_string(a) == name) return a;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown layout algorithm '" + std::string(name) + "'");
}

void LayoutConfig::validate() const {
    if (iterations < 1) throw Error(ErrorCode::InvalidArgument, "iterations must be at least 1");
    if (!(tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
    if (pivot_count < 1) throw Error(ErrorCode::InvalidArgument, "pivot count must be at least 1");
    if (!(orbit_radius_step > 0.0)) throw Error(ErrorCode::InvalidArgument, "orbit radius step must be positive");
}

std::vector<int> bfs_distances(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> dist(static_cast<std::size_t>(n) * n, -1);
    std::vector<int> queue(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) {
        int* row = dist.data() + static_cast<std::size_t>(s) * n;
        std::size_t head = 0;
        std::size_t tail = 0;
        row[s] = 0;
        queue[tail++] = s;
        while (head < tail) {
            int v = queue[head++];
            for (int w : g.neighbors(v)) {
                if (row[w] < 0) {
                    row[w] = row[v] + 1;
                    queue[tail++] = w;
                }
            }
        }
    }
    return dist;
}

Drawing concentric_circles(const Graph& g, const AutomorphismGroup& group, double radius_step,
                           std::span<const double> phase_offsets) {
    if (group.graph_name() != g.name()) {
        throw Error(ErrorCode::GraphMismatch, "group belongs to graph '" + group.graph_name() + "'");
    }
    const int n = g.vertex_count();
    std::vector<Vec2> pos(static_cast<std::size_t>(n));

    if (group.kind() == GroupKind::Axial2) {
        const Automorphism& tau = *group.reflection();
        std::vector<const std::vector<int>*> pairs;
        std::vector<int> fixed;
        for (const auto& o : tau.orbits()) {
            if (o.size() == 2) pairs.push_back(&o);
            else fixed.push_back(o[0]);
        }
        const double r = radius_step;
        const double np = static_cast<double>(pairs.size());
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            double beta = kPi * (static_cast<double>(i) + 1.0) / (np + 1.0);
            pos[(*pairs[i])[0]] = {-r * std::sin(beta), r * std::cos(beta)};
            pos[(*pairs[i])[1]] = {r * std::sin(beta), r * std::cos(beta)};
        }
        const double nf = static_cast<double>(fixed.size());
        for (std::size_t j = 0; j < fixed.size(); ++j) {
            double y = 0.8 * r * (2.0 * (static_cast<double>(j) + 1.0) / (nf + 1.0) - 1.0);
            pos[fixed[j]] = {0.0, y};
        }
        return Drawing(g, std::move(pos));
    }

    const Automorphism* rho = group.rotation_generator();
    if (!rho || rho->order() != group.rotation_order()) {
        throw Error(ErrorCode::NoRotationalGenerator,
                    "group has no rotation of order " + std::to_string(group.rotation_order()));
    }
    const Automorphism* tau = group.kind() == GroupKind::Dihedral ? group.reflection() : nullptr;
    const auto& orbits = rho->orbits();
    std::vector<int> orbit_of(static_cast<std::size_t>(n), -1);
    std::vector<int> slot(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < orbits.size(); ++i) {
        for (std::size_t j = 0; j < orbits[i].size(); ++j) {
            orbit_of[orbits[i][j]] = static_cast<int>(i);
            slot[orbits[i][j]] = static_cast<int>(j);
        }
    }

    // Places rho^j(start) at angle theta + 2*pi*j/s on radius r.
    auto place = [&](const std::vector<int>& orbit, int start_slot, double r, double theta) {
        const int s = static_cast<int>(orbit.size());
        for (int j = 0; j < s; ++j) {
            int v = orbit[static_cast<std::size_t>((start_slot + j) % s)];
            pos[v] = polar(r, theta + 2.0 * kPi * j / s);
        }
    };

    std::vector<char> done(orbits.size(), 0);
    int circle = 0;
    for (std::size_t a = 0; a < orbits.size(); ++a) {
        if (done[a]) continue;
        const auto& orbit = orbits[a];
        const double s = static_cast<double>(orbit.size());
        done[a] = 1;
        if (orbit.size() == 1) {
            pos[orbit[0]] = {0.0, 0.0};
            continue;
        }
        const double r = radius_step * (circle + 1);
        if (!tau) {
            double offset = static_cast<std::size_t>(circle) < phase_offsets.size() ? phase_offsets[circle] : 0.0;
            place(orbit, 0, r, kAxisAngle + offset);
        } else {
            int image = (*tau)(orbit[0]);
            std::size_t b = static_cast<std::size_t>(orbit_of[image]);
            if (b == a) {
                double t = slot[image];
                place(orbit, 0, r, kAxisAngle - kPi * t / s);
            } else {
                double theta = kAxisAngle - kPi / (2.0 * s);
                place(orbit, 0, r, theta);
                place(orbits[b], slot[image], r, 2.0 * kAxisAngle - theta);
                done[b] = 1;
            }
        }
        ++circle;
    }
    return Drawing(g, std::move(pos));
}

Drawing tutte(const Graph& g, std::span<const int> outer_face) {
    require_connected(g, "Tutte layout");
    const int n = g.vertex_count();
    const int f = static_cast<int>(outer_face.size());
    if (f < 3) throw Error(ErrorCode::InvalidOuterFace, "outer face needs at least 3 vertices");
    std::vector<int> boundary_index(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < f; ++i) {
        int v = outer_face[i];
        if (v < 0 || v >= n) throw Error(ErrorCode::InvalidOuterFace, "outer face vertex out of range");
        if (boundary_index[v] >= 0) throw Error(ErrorCode::InvalidOuterFace, "outer face repeats a vertex");
        boundary_index[v] = i;
    }
    for (int i = 0; i < f; ++i) {
        if (!g.has_edge(outer_face[i], outer_face[(i + 1) % f])) {
            throw Error(ErrorCode::InvalidOuterFace, "outer face is not a cycle of the graph");
        }
    }
    std::vector<Vec2> pos(static_cast<std::size_t>(n));
    for (int i = 0; i < f; ++i) pos[outer_face[i]] = polar(1.0, kAxisAngle + 2.0 * kPi * i / f);

    std::vector<int> interior_index(static_cast<std::size_t>(n), -1);
    int m = 0;
    for (int v = 0; v < n; ++v) {
        if (boundary_index[v] < 0) interior_index[v] = m++;
    }
    if (m == 0) return Drawing(g, std::move(pos));

    std::vector<Eigen::Triplet<double>> trips;
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(m, 2);
    for (int v = 0; v < n; ++v) {
        int row = interior_index[v];
        if (row < 0) continue;
        trips.emplace_back(row, row, static_cast<double>(g.degree(v)));
        for (int w : g.neighbors(v)) {
            if (interior_index[w] >= 0) {
                trips.emplace_back(row, interior_index[w], -1.0);
            } else {
                rhs(row, 0) += pos[w].x;
                rhs(row, 1) += pos[w].y;
            }
        }
    }
    Eigen::SparseMatrix<double> A(m, m);
    A.setFromTriplets(trips.begin(), trips.end());
    A.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success) throw Error(ErrorCode::SingularSystem, "barycentric system is singular");
    Eigen::MatrixXd x = lu.solve(rhs);
    if (lu.info() != Eigen::Success || !x.allFinite()) {
        throw Error(ErrorCode::SingularSystem, "barycentric system could not be solved");
    }
    double residual = (A * x - rhs).norm();
    if (residual > 1e-8 * (1.0 + rhs.norm())) {
        throw Error(ErrorCode::SingularSystem, "barycentric residual " + std::to_string(residual));
    }
    for (int v = 0; v < n; ++v) {
        if (interior_index[v] >= 0) pos[v] = {x(interior_index[v], 0), x(interior_index[v], 1)};
    }
    return Drawing(g, std::move(pos));
}

Drawing spectral(const Graph& g) {
    require_connected(g, "spectral layout");
    const int n = g.vertex_count();
    std::vector<Vec2> pos(static_cast<std::size_t>(n));
    if (n == 1) return Drawing(g, std::move(pos));
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (const Edge& e : g.edges()) {
        L(e.u, e.v) -= 1.0;
        L(e.v, e.u) -= 1.0;
        L(e.u, e.u) += 1.0;
        L(e.v, e.v) += 1.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
    if (es.info() != Eigen::Success) throw Error(ErrorCode::ConvergenceFailure, "Laplacian eigensolve failed");
    auto column = [&](int c) {
        Eigen::VectorXd v = es.eigenvectors().col(c);
        for (int i = 0; i < n; ++i) {
            if (std::abs(v(i)) > 1e-9) {
                if (v(i) < 0) v = -v;
                break;
            }
        }
        return v;
    };
    Eigen::VectorXd xs = column(1);
    Eigen::VectorXd ys = n > 2 ? column(2) : Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) pos[i] = {xs(i), ys(i)};
    return Drawing(g, std::move(pos));
}

LayoutResult fr(const Graph& g, std::uint64_t seed, int iterations) {
    if (iterations < 1) throw Error(ErrorCode::InvalidArgument, "iterations must be at least 1");
    const int n = g.vertex_count();
    const double k = std::sqrt(1.0 / n);
    const double t0 = 0.1;
    auto pos = random_positions(n, seed, 0.5);
    std::vector<Vec2> disp(static_cast<std::size_t>(n));
    for (int it = 0; it < iterations; ++it) {
        const double t = t0 * (1.0 - static_cast<double>(it) / iterations);
        kernels::fr_displacement(g, pos, k, disp);
        for (int i = 0; i < n; ++i) {
            double len = norm(disp[i]);
            if (len > 0.0) pos[i] += disp[i] * (std::min(len, t) / len);
        }
    }
    return {Drawing(g, std::move(pos)), true, iterations, {}};
}

LayoutResult stress_majorization(const Graph& g, std::uint64_t seed, int max_iterations, double tolerance) {
    require_connected(g, "stress majorization");
    if (max_iterations < 1) throw Error(ErrorCode::InvalidArgument, "iterations must be at least 1");
    const int n = g.vertex_count();
    auto hops = bfs_distances(g);
    std::vector<double> dist(hops.size());
    std::vector<double> weight(hops.size(), 0.0);
    int diameter = 1;
    for (std::size_t i = 0; i < hops.size(); ++i) {
        dist[i] = hops[i];
        if (hops[i] > 0) weight[i] = 1.0 / (dist[i] * dist[i]);
        diameter = std::max(diameter, hops[i]);
    }
    auto pos = random_positions(n, seed, 0.5 * diameter);
    LayoutResult out{Drawing(g, pos), false, 0, {}};
    if (n == 1) {
        out.converged = true;
        return out;
    }

    // V + 11^T/n is positive definite and maps onto V^+ for centered right-hand sides.
    Eigen::MatrixXd V = Eigen::MatrixXd::Constant(n, n, 1.0 / n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            double w = weight[static_cast<std::size_t>(i) * n + j];
            V(i, j) -= w;
            V(i, i) += w;
        }
    }
    Eigen::LLT<Eigen::MatrixXd> llt(V);
    if (llt.info() != Eigen::Success) throw Error(ErrorCode::SingularSystem, "stress weight matrix is not definite");

    std::vector<Vec2> rhs(static_cast<std::size_t>(n));
    Eigen::MatrixXd b(n, 2);
    double prev = kernels::stress(pos, dist, weight);
    out.stress_history.push_back(prev);
    for (int it = 0; it < max_iterations; ++it) {
        kernels::smacof_rhs(pos, dist, weight, rhs);
        for (int i = 0; i < n; ++i) {
            b(i, 0) = rhs[i].x;
            b(i, 1) = rhs[i].y;
        }
        Eigen::MatrixXd x = llt.solve(b);
        for (int i = 0; i < n; ++i) pos[i] = {x(i, 0), x(i, 1)};
        double cur = kernels::stress(pos, dist, weight);
        out.stress_history.push_back(cur);
        out.iterations = it + 1;
        if (prev <= 0.0 || (prev - cur) / prev < tolerance) {
            out.converged = true;
            break;
        }
        prev = cur;
    }
    out.drawing = Drawing(g, std::move(pos));
    return out;
}

LayoutResult pivot_mds(const Graph& g, int pivot_count, std::uint64_t seed) {
    require_connected(g, "pivot MDS");
    if (pivot_count < 1) throw Error(ErrorCode::InvalidArgument, "pivot count must be at least 1");
    const int n = g.vertex_count();
    const int p = std::min(pivot_count, n);
    auto hops = bfs_distances(g);
    std::mt19937_64 rng(seed);

    std::vector<int> pivots;
    pivots.push_back(static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng)));
    std::vector<int> nearest(static_cast<std::size_t>(n), n + 1);
    while (static_cast<int>(pivots.size()) < p) {
        int last = pivots.back();
        for (int v = 0; v < n; ++v) nearest[v] = std::min(nearest[v], hops[static_cast<std::size_t>(last) * n + v]);
        int far = static_cast<int>(std::max_element(nearest.begin(), nearest.end()) - nearest.begin());
        pivots.push_back(far);
    }

    Eigen::MatrixXd C(n, p);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < p; ++j) {
            double d = hops[static_cast<std::size_t>(pivots[j]) * n + i];
            C(i, j) = d * d;
        }
    }
    Eigen::VectorXd row_mean = C.rowwise().mean();
    Eigen::RowVectorXd col_mean = C.colwise().mean();
    const double grand = C.mean();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < p; ++j) C(i, j) = -0.5 * (C(i, j) - row_mean(i) - col_mean(j) + grand);
    }
    Eigen::MatrixXd M = C.transpose() * C;

    const int cap = 10 * n;
    const double tol = 1e-10;
    bool converged = true;
    int iterations = 0;
    std::normal_distribution<double> gauss;
    auto power = [&](const Eigen::MatrixXd& A, const Eigen::VectorXd* orth) {
        Eigen::VectorXd v(p);
        for (int i = 0; i < p; ++i) v(i) = gauss(rng);
        if (orth) v -= orth->dot(v) * *orth;
        v.normalize();
        for (int it = 0; it < cap; ++it) {
            Eigen::VectorXd w = A * v;
            if (orth) w -= orth->dot(w) * *orth;
            double len = w.norm();
            if (len == 0.0) return v;
            w /= len;
            ++iterations;
            if ((w - v).norm() < tol) return w;
            v = w;
        }
        converged = false;
        return v;
    };
    Eigen::VectorXd v1 = power(M, nullptr);
    Eigen::VectorXd v2 = p > 1 ? power(M, &v1) : Eigen::VectorXd::Zero(p);
    Eigen::VectorXd xs = C * v1;
    Eigen::VectorXd ys = C * v2;
    std::vector<Vec2> pos(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pos[i] = {xs(i), ys(i)};
    return {Drawing(g, std::move(pos)), converged, iterations, {}};
}

LayoutResult run_layout(const Graph& g, const LayoutConfig& config, const AutomorphismGroup* group) {
    config.validate();
    switch (config.algorithm) {
    case LayoutAlgorithm::ConcentricCircles:
        if (!group) throw Error(ErrorCode::InvalidArgument, "concentric circles layout needs a group");
        return {concentric_circles(g, *group, config.orbit_radius_step, config.phase_offsets), true, 0, {}};
    case LayoutAlgorithm::Tutte:
        return {tutte(g, config.outer_face), true, 0, {}};
    case LayoutAlgorithm::Spectral:
        return {spectral(g), true, 0, {}};
    case LayoutAlgorithm::FR:
        return fr(g, config.seed, config.iterations);
    case LayoutAlgorithm::StressMajorization:
        return stress_majorization(g, config.seed, config.iterations, config.tolerance);
    case LayoutAlgorithm::PivotMDS:
        return pivot_mds(g, config.pivot_count, config.seed);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown layout algorithm");
}

}  // namespace symqual
