#include "symqual/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "symqual/error.hpp"

namespace symqual {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Covariance {
    double a = 0.0;  // xx
    double b = 0.0;  // xy
    double c = 0.0;  // yy
};

Covariance covariance(const PointSet& ps) {
    Covariance cov;
    const Vec2 m = ps.centroid();
    for (Vec2 p : ps.points()) {
        Vec2 d = p - m;
        cov.a += d.x * d.x;
        cov.b += d.x * d.y;
        cov.c += d.y * d.y;
    }
    return cov;
}

// Returns the major-axis direction, or nullopt for isotropic input.
std::optional<Vec2> major_direction(const PointSet& ps) {
    Covariance cov = covariance(ps);
    const double trace = cov.a + cov.c;
    if (!(trace > 0.0)) throw Error(ErrorCode::DegeneratePointSet, "all points coincide");
    const double half_diff = 0.5 * (cov.a - cov.c);
    const double disc = std::hypot(half_diff, cov.b);
    if (disc <= 1e-12 * trace) return std::nullopt;
    const double lambda = 0.5 * trace + disc;
    Vec2 d;
    if (std::abs(cov.b) > 1e-15 * trace) {
        d = {lambda - cov.c, cov.b};
    } else {
        d = cov.a >= cov.c ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};
    }
    return canonical_direction(d);
}

}  // namespace

PointSet::PointSet(std::vector<Vec2> points) : points_(std::move(points)) {
    if (points_.empty()) return;
    Vec2 sum{};
    for (Vec2 p : points_) sum += p;
    centroid_ = sum / static_cast<double>(points_.size());
}

Normalization normalize_to_unit_circle(const PointSet& ps) {
    if (ps.size() == 0) throw Error(ErrorCode::InvalidArgument, "normalization needs at least one point");
    for (Vec2 p : ps.points()) {
        if (!is_finite(p)) throw Error(ErrorCode::NonFinite, "point set contains a non-finite coordinate");
    }
    Normalization out;
    out.translation = -ps.centroid();
    double rmax = 0.0;
    for (Vec2 p : ps.points()) rmax = std::max(rmax, norm(p - ps.centroid()));
    out.scale = rmax > 0.0 ? 1.0 / rmax : 1.0;
    std::vector<Vec2> pts;
    pts.reserve(ps.size());
    for (Vec2 p : ps.points()) pts.push_back(rmax > 0.0 ? out.apply(p) : Vec2{});
    out.points = PointSet(std::move(pts));
    return out;
}

AngularSignature angular_signature(const PointSet& ps, Vec2 center, double center_tolerance) {
    AngularSignature sig;
    sig.center = center;
    sig.entries.reserve(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
        Vec2 d = ps[i] - center;
        double r = norm(d);
        SignatureEntry e{0.0, 0.0, static_cast<int>(i)};
        if (r > center_tolerance) {
            double a = std::atan2(d.y, d.x);
            if (a < 0.0) a += kTwoPi;
            if (a >= kTwoPi) a = 0.0;
            e.angle = a;
            e.radius = r;
        }
        sig.entries.push_back(e);
    }
    std::sort(sig.entries.begin(), sig.entries.end(), [](const SignatureEntry& x, const SignatureEntry& y) {
        bool xc = x.radius == 0.0;
        bool yc = y.radius == 0.0;
        if (xc != yc) return xc;
        if (x.angle != y.angle) return x.angle < y.angle;
        if (x.radius != y.radius) return x.radius < y.radius;
        return x.vertex < y.vertex;
    });
    return sig;
}

Vec2 reflect(const Line& line, Vec2 p) {
    Vec2 d = p - line.point;
    Vec2 along = line.direction * dot(d, line.direction);
    return line.point + along * 2.0 - d;
}

Vec2 project(const Line& line, Vec2 p) {
    return line.point + line.direction * dot(p - line.point, line.direction);
}

Vec2 canonical_direction(Vec2 d) {
    double n = norm(d);
    if (n == 0.0) return {1.0, 0.0};
    d /= n;
    if (d.x < 0.0 || (d.x == 0.0 && d.y < 0.0)) d = -d;
    return d;
}

Line line_through(Vec2 point, double angle) {
    return {point, canonical_direction({std::cos(angle), std::sin(angle)})};
}

std::size_t rotation_center_index(std::span<const Vec2> centroids,
                                  const std::function<double(std::size_t)>& orbit_sd) {
    const std::size_t m = centroids.size();
    if (m == 0) throw Error(ErrorCode::InvalidArgument, "rotation center needs at least one centroid");
    if (m == 1) return 0;

    // Sum of |c_i - c_j| along one axis for every i, via sorting and prefix sums.
    auto axis_sums = [&](auto coord) {
        std::vector<std::size_t> idx(m);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return coord(centroids[a]) < coord(centroids[b]);
        });
        double total = 0.0;
        for (Vec2 c : centroids) total += coord(c);
        std::vector<double> sums(m);
        double prefix = 0.0;
        for (std::size_t r = 0; r < m; ++r) {
            double v = coord(centroids[idx[r]]);
            double below = v * static_cast<double>(r) - prefix;
            double above = (total - prefix - v) - v * static_cast<double>(m - r - 1);
            sums[idx[r]] = below + above;
            prefix += v;
        }
        return sums;
    };
    auto sx = axis_sums([](Vec2 p) { return p.x; });
    auto sy = axis_sums([](Vec2 p) { return p.y; });

    double best = sx[0] + sy[0];
    for (std::size_t i = 1; i < m; ++i) best = std::min(best, sx[i] + sy[i]);
    const double tol = 1e-9 * (1.0 + std::abs(best));

    std::size_t chosen = m;
    double chosen_sd = -1.0;
    std::size_t tied = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (sx[i] + sy[i] <= best + tol) ++tied;
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (sx[i] + sy[i] > best + tol) continue;
        if (tied == 1) return i;
        double sd = orbit_sd ? orbit_sd(i) : 0.0;
        if (chosen == m || sd > chosen_sd) {
            chosen = i;
            chosen_sd = sd;
        }
    }
    return chosen;
}

Vec2 rotation_center(std::span<const Vec2> centroids, const std::function<double(std::size_t)>& orbit_sd) {
    return centroids[rotation_center_index(centroids, orbit_sd)];
}

Line principal_axis(const PointSet& ps) {
    auto d = major_direction(ps);
    return {ps.centroid(), d.value_or(Vec2{1.0, 0.0})};
}

Line minor_axis(const PointSet& ps) {
    auto d = major_direction(ps);
    Vec2 major = d.value_or(Vec2{1.0, 0.0});
    return {ps.centroid(), canonical_direction({-major.y, major.x})};
}

std::optional<Line> mirror_fit(std::span<const Vec2> points, std::span<const int> partner) {
    if (points.empty() || points.size() != partner.size()) return std::nullopt;
    Vec2 c{};
    for (Vec2 p : points) c += p;
    c /= static_cast<double>(points.size());
    // Reflection about angle t maps (x,y) to R(2t)(x,-y); maximize
    // sum <y_v, R(2t) conj(x_v)> = Re(e^{-2it} sum y_v * x_v) over t.
    double re = 0.0;
    double im = 0.0;
    for (std::size_t v = 0; v < points.size(); ++v) {
        Vec2 x = points[v] - c;
        Vec2 y = points[static_cast<std::size_t>(partner[v])] - c;
        re += y.x * x.x - y.y * x.y;
        im += y.x * x.y + y.y * x.x;
    }
    double mag = std::hypot(re, im);
    double scale = 0.0;
    for (Vec2 p : points) scale += dot(p - c, p - c);
    if (!(mag > 1e-14 * scale)) return std::nullopt;
    return line_through(c, 0.5 * std::atan2(im, re));
}

}  // namespace symqual
