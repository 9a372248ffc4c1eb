#include "symqual/kernels.hpp"

#include <cmath>

namespace symqual::kernels {

namespace {

constexpr double kMinSeparation = 1e-9;

Vec2 separation(std::span<const Vec2> pos, int i, int j) {
    Vec2 d = pos[static_cast<std::size_t>(i)] - pos[static_cast<std::size_t>(j)];
    if (norm(d) < kMinSeparation) d = {i < j ? -kMinSeparation : kMinSeparation, 0.0};
    return d;
}

Vec2 fr_row(const Graph& g, std::span<const Vec2> pos, double k, int i) {
    const int n = static_cast<int>(pos.size());
    const double k2 = k * k;
    Vec2 acc{};
    for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        Vec2 d = separation(pos, i, j);
        double len = norm(d);
        acc += d * (k2 / (len * len));
    }
    for (int j : g.neighbors(i)) {
        Vec2 d = separation(pos, i, j);
        acc -= d * (norm(d) / k);
    }
    return acc;
}

Vec2 smacof_row(std::span<const Vec2> pos, std::span<const double> dist, std::span<const double> weight, int i) {
    const std::size_t n = pos.size();
    Vec2 acc{};
    for (std::size_t j = 0; j < n; ++j) {
        if (j == static_cast<std::size_t>(i)) continue;
        Vec2 d = pos[static_cast<std::size_t>(i)] - pos[j];
        double len = norm(d);
        if (len <= 0.0) continue;
        std::size_t ij = static_cast<std::size_t>(i) * n + j;
        acc += d * (weight[ij] * dist[ij] / len);
    }
    return acc;
}

double stress_row(std::span<const Vec2> pos, std::span<const double> dist, std::span<const double> weight, int i) {
    const std::size_t n = pos.size();
    double s = 0.0;
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < n; ++j) {
        std::size_t ij = static_cast<std::size_t>(i) * n + j;
        double r = distance(pos[static_cast<std::size_t>(i)], pos[j]) - dist[ij];
        s += weight[ij] * r * r;
    }
    return s;
}

}  // namespace

void fr_displacement(const Graph& g, std::span<const Vec2> pos, double k, std::span<Vec2> disp) {
    const int n = static_cast<int>(pos.size());
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) disp[static_cast<std::size_t>(i)] = fr_row(g, pos, k, i);
}

void smacof_rhs(std::span<const Vec2> pos, std::span<const double> dist, std::span<const double> weight,
                std::span<Vec2> out) {
    const int n = static_cast<int>(pos.size());
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = smacof_row(pos, dist, weight, i);
}

double stress(std::span<const Vec2> pos, std::span<const double> dist, std::span<const double> weight) {
    const int n = static_cast<int>(pos.size());
    std::vector<double> rows(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 16)
    for (int i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = stress_row(pos, dist, weight, i);
    double s = 0.0;
    for (double r : rows) s += r;
    return s;
}

namespace serial {

void fr_displacement(const Graph& g, std::span<const Vec2> pos, double k, std::span<Vec2> disp) {
    for (int i = 0; i < static_cast<int>(pos.size()); ++i) disp[static_cast<std::size_t>(i)] = fr_row(g, pos, k, i);
}

void smacof_rhs(std::span<const Vec2> pos, std::span<const double> dist, std::span<const double> weight,
                std::span<Vec2> out) {
    for (int i = 0; i < static_cast<int>(pos.size()); ++i) {
        out[static_cast<std::size_t>(i)] = smacof_row(pos, dist, weight, i);
    }
}

double stress(std::span<const Vec2> pos, std::span<const double> dist, std::span<const double> weight) {
    double s = 0.0;
    for (int i = 0; i < static_cast<int>(pos.size()); ++i) s += stress_row(pos, dist, weight, i);
    return s;
}

}  // namespace serial

}  // namespace symqual::kernels
