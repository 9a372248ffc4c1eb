#include "symqual/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <numeric>
#include <string>

#include "symqual/error.hpp"

namespace symqual {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kUnitSlack = 1e-12;

bool preserves_adjacency(const Graph& g, const std::vector<int>& perm) {
    for (const Edge& e : g.edges()) {
        if (!g.has_edge(perm[e.u], perm[e.v])) return false;
    }
    return true;
}

bool is_identity(const std::vector<int>& perm) {
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (perm[i] != static_cast<int>(i)) return false;
    }
    return true;
}

std::vector<Vec2> normalized_positions(const Drawing& d) {
    return normalize_to_unit_circle(PointSet(d.positions())).points.points();
}

// ---- exact detection --------------------------------------------------

struct Ray {
    double angle = 0.0;
    std::vector<double> radii;
    std::vector<int> vertices;
};

struct Token {
    const Ray* ray = nullptr;  // null for gap tokens
    double gap = 0.0;
};

struct TokenEq {
    double tol;
    bool operator()(const Token& a, const Token& b) const {
        if ((a.ray == nullptr) != (b.ray == nullptr)) return false;
        if (!a.ray) return std::abs(a.gap - b.gap) <= tol;
        if (a.ray->radii.size() != b.ray->radii.size()) return false;
        for (std::size_t i = 0; i < a.ray->radii.size(); ++i) {
            if (std::abs(a.ray->radii[i] - b.ray->radii[i]) > tol) return false;
        }
        return true;
    }
};

std::vector<std::size_t> kmp_occurrences(const std::vector<Token>& text, const std::vector<Token>& pat,
                                         const TokenEq& eq) {
    const std::size_t m = pat.size();
    std::vector<std::size_t> fail(m, 0);
    for (std::size_t i = 1, k = 0; i < m; ++i) {
        while (k > 0 && !eq(pat[i], pat[k])) k = fail[k - 1];
        if (eq(pat[i], pat[k])) ++k;
        fail[i] = k;
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0, k = 0; i < text.size(); ++i) {
        while (k > 0 && !eq(text[i], pat[k])) k = fail[k - 1];
        if (eq(text[i], pat[k])) ++k;
        if (k == m) {
            out.push_back(i + 1 - m);
            k = fail[k - 1];
        }
    }
    return out;
}

std::vector<int> divisors(int n) {
    std::vector<int> d;
    for (int i = 1; i <= n; ++i) {
        if (n % i == 0) d.push_back(i);
    }
    return d;
}

}  // namespace

double default_epsilon() {
    if (const char* env = std::getenv("SYMQUAL_EPS")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && *end == '\0' && std::isfinite(v) && v >= 0.0) return v;
    }
    return kDefaultEpsilon;
}

ExactDetection detect_exact(const Graph& g, const Drawing& d, double tol) {
    d.check_against(g);
    ExactDetection out;
    const int n = g.vertex_count();
    auto norm = normalize_to_unit_circle(PointSet(d.positions()));
    auto sig = angular_signature(norm.points, Vec2{}, tol);

    std::vector<int> center_pts;
    std::vector<Ray> rays;
    for (const auto& e : sig.entries) {
        if (e.radius == 0.0) {
            center_pts.push_back(e.vertex);
            continue;
        }
        if (rays.empty() || e.angle - rays.back().angle > tol) rays.push_back({e.angle, {}, {}});
        rays.back().radii.push_back(e.radius);
        rays.back().vertices.push_back(e.vertex);
    }
    if (rays.size() > 1 && rays.front().angle + kTwoPi - rays.back().angle <= tol) {
        Ray& first = rays.front();
        Ray& last = rays.back();
        first.radii.insert(first.radii.end(), last.radii.begin(), last.radii.end());
        first.vertices.insert(first.vertices.end(), last.vertices.begin(), last.vertices.end());
        rays.pop_back();
    }
    // Members of a ray are matched by radius, so order them by (radius, vertex).
    for (Ray& ray : rays) {
        std::vector<std::pair<double, int>> members;
        for (std::size_t i = 0; i < ray.radii.size(); ++i) members.emplace_back(ray.radii[i], ray.vertices[i]);
        std::sort(members.begin(), members.end());
        for (std::size_t i = 0; i < members.size(); ++i) {
            ray.radii[i] = members[i].first;
            ray.vertices[i] = members[i].second;
        }
    }
    const int N = static_cast<int>(rays.size());
    if (N == 0 || n < 2) return out;

    std::vector<Token> a;
    a.reserve(2 * static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
        double next = i + 1 < N ? rays[i + 1].angle : rays[0].angle + kTwoPi;
        a.push_back({&rays[i], 0.0});
        a.push_back({nullptr, next - rays[i].angle});
    }
    const TokenEq eq{tol};
    auto token = [&](long t) -> const Token& {
        long len = 2L * N;
        return a[static_cast<std::size_t>(((t % len) + len) % len)];
    };

    auto make = [&](DetectedSymmetry::Type type, auto ray_map) {
        DetectedSymmetry s;
        s.type = type;
        s.permutation.assign(static_cast<std::size_t>(n), -1);
        for (int v : center_pts) s.permutation[v] = v;
        for (int i = 0; i < N; ++i) {
            const Ray& src = rays[i];
            const Ray& dst = rays[ray_map(i)];
            for (std::size_t j = 0; j < src.vertices.size(); ++j) s.permutation[src.vertices[j]] = dst.vertices[j];
        }
        s.induced_orbits = permutation_cycles(s.permutation);
        return s;
    };

    // Rotations: a occurs in aa at even shifts; the smallest gives the
    // minimal rotation, every rotation symmetry is a power of it.
    auto rotation_ok = [&](int h) {
        for (long t = 0; t < 2L * N; ++t) {
            if (!eq(token(t), token(t + 2L * h))) return false;
        }
        return true;
    };
    std::vector<Token> text(a);
    text.insert(text.end(), a.begin(), a.end() - 1);
    int h0 = N;
    for (std::size_t s : kmp_occurrences(text, a, eq)) {
        if (s > 0 && s % 2 == 0 && N % static_cast<int>(s / 2) == 0 && rotation_ok(static_cast<int>(s / 2))) {
            h0 = static_cast<int>(s / 2);
            break;
        }
    }
    if (h0 == N) {
        for (int h : divisors(N)) {
            if (h < N && rotation_ok(h)) {
                h0 = h;
                break;
            }
        }
    }
    const int k_geo = N / h0;
    out.geometric_rotation_order = k_geo;
    for (int e : divisors(k_geo)) {
        if (e == k_geo) break;
        const int h = e * h0;
        auto s = make(DetectedSymmetry::Type::Rotation, [&](int i) { return (i + h) % N; });
        s.order = k_geo / e;
        s.center = norm.invert(Vec2{});
        if (preserves_adjacency(g, s.permutation)) {
            out.rotation = std::move(s);
            break;
        }
        out.rejected.push_back(std::move(s));
    }

    // Reflections: reverse(a) occurs in aa at shift 2j when ray i -> ray j - i.
    std::vector<Token> rev(a.size());
    for (long t = 0; t < 2L * N; ++t) rev[static_cast<std::size_t>(t)] = token(-t);
    for (std::size_t s : kmp_occurrences(text, rev, eq)) {
        if (s % 2 != 0) continue;
        const int j = static_cast<int>(s / 2);
        bool ok = true;
        for (long t = 0; t < 2L * N && ok; ++t) ok = eq(token(2L * j + t), rev[static_cast<std::size_t>(t)]);
        if (!ok) continue;
        auto sym = make(DetectedSymmetry::Type::Reflection, [&](int i) { return ((j - i) % N + N) % N; });
        double theta_j = rays[j].angle;
        sym.axis = line_through(norm.invert(Vec2{}), 0.5 * (rays[0].angle + theta_j));
        sym.center = sym.axis.point;
        if (is_identity(sym.permutation)) continue;
        if (preserves_adjacency(g, sym.permutation)) {
            out.reflections.push_back(std::move(sym));
        } else {
            out.rejected.push_back(std::move(sym));
        }
    }
    out.symmetric = out.rotation.has_value() || !out.reflections.empty();
    return out;
}

// ---- brute-force oracle -------------------------------------------------

namespace {

// Image permutation of the point set under f, or empty when f does not map
// the set onto itself.
template <class F>
std::vector<int> induced(const std::vector<Vec2>& pts, double tol, F&& f) {
    const std::size_t n = pts.size();
    std::vector<int> perm(n, -1);
    std::vector<char> used(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 q = f(pts[i]);
        for (std::size_t j = 0; j < n; ++j) {
            if (!used[j] && distance(q, pts[j]) <= tol) {
                perm[i] = static_cast<int>(j);
                used[j] = 1;
                break;
            }
        }
        if (perm[i] < 0) return {};
    }
    return perm;
}

std::vector<double> candidate_axis_angles(const std::vector<Vec2>& pts, double tol) {
    std::vector<double> angles;
    auto add = [&](Vec2 dir) {
        double a = std::atan2(dir.y, dir.x);
        if (a < 0) a += kPi;
        if (a >= kPi) a -= kPi;
        angles.push_back(a);
    };
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (norm(pts[i]) > tol) add(pts[i]);
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (distance(pts[i], pts[j]) <= tol) continue;
            if (std::abs(norm(pts[i]) - norm(pts[j])) > tol) continue;
            Vec2 s = pts[i] + pts[j];
            if (norm(s) > tol) add(s);
            else add(Vec2{-pts[i].y, pts[i].x});
        }
    }
    std::sort(angles.begin(), angles.end());
    std::vector<double> uniq;
    for (double a : angles) {
        if (uniq.empty() || a - uniq.back() > 1e-7) uniq.push_back(a);
    }
    if (uniq.size() > 1 && uniq.front() + kPi - uniq.back() <= 1e-7) uniq.pop_back();
    return uniq;
}

template <bool Parallel>
BruteForceDetection brute_force_impl(const Graph& g, const Drawing& d, double tol) {
    d.check_against(g);
    BruteForceDetection out;
    const int n = g.vertex_count();
    if (n < 2) return out;
    auto pts = normalized_positions(d);

    std::vector<char> rot_ok(static_cast<std::size_t>(n) + 1, 0);
#pragma omp parallel for schedule(dynamic) if (Parallel)
    for (int k = 2; k <= n; ++k) {
        const double ang = kTwoPi / k;
        auto perm = induced(pts, tol, [&](Vec2 p) { return rotated(p, ang); });
        rot_ok[k] = !perm.empty() && !is_identity(perm) && preserves_adjacency(g, perm);
    }
    for (int k = n; k >= 2; --k) {
        if (rot_ok[k]) {
            out.max_rotation_order = k;
            break;
        }
    }

    auto angles = candidate_axis_angles(pts, tol);
    std::vector<char> axis_ok(angles.size(), 0);
#pragma omp parallel for schedule(dynamic) if (Parallel)
    for (std::size_t i = 0; i < angles.size(); ++i) {
        Line axis = line_through(Vec2{}, angles[i]);
        auto perm = induced(pts, tol, [&](Vec2 p) { return reflect(axis, p); });
        axis_ok[i] = !perm.empty() && !is_identity(perm) && preserves_adjacency(g, perm);
    }
    out.axis_count = static_cast<int>(std::count(axis_ok.begin(), axis_ok.end(), 1));
    out.symmetric = out.max_rotation_order > 0 || out.axis_count > 0;
    return out;
}

}  // namespace

BruteForceDetection detect_brute_force(const Graph& g, const Drawing& d, double tol) {
    return brute_force_impl<true>(g, d, tol);
}

namespace serial {
BruteForceDetection detect_brute_force(const Graph& g, const Drawing& d, double tol) {
    return brute_force_impl<false>(g, d, tol);
}
}  // namespace serial

// ---- folding ------------------------------------------------------------

namespace {

void check_normalized(std::span<const Vec2> points) {
    for (Vec2 p : points) {
        if (!is_finite(p)) throw Error(ErrorCode::NonFinite, "orbit point is not finite");
        if (norm(p) > 1.0 + kUnitSlack) {
            throw Error(ErrorCode::NotNormalized, "orbit point lies outside the unit circle");
        }
    }
}

FoldingResult finish(std::span<const int> orbit, std::span<const Vec2> points, std::vector<Vec2> image) {
    FoldingResult r;
    r.orbit.assign(orbit.begin(), orbit.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) sum += distance(points[i], image[i]);
    r.mean_distance = sum / static_cast<double>(points.size());
    r.distance = 0.5 * r.mean_distance;
    r.sd = 1.0 - r.distance;
    r.symmetric_image = std::move(image);
    return r;
}

}  // namespace

FoldingResult fold_orbit(std::span<const int> orbit, std::span<const Vec2> points, int k, const RotationFrame& frame) {
    const std::size_t s = orbit.size();
    if (s == 0 || s != points.size()) throw Error(ErrorCode::OrbitSizeMismatch, "orbit and point counts differ");
    if (k < 2 || k % static_cast<int>(s) != 0) {
        throw Error(ErrorCode::OrbitSizeMismatch,
                    "orbit of size " + std::to_string(s) + " does not divide rotation order " + std::to_string(k));
    }
    check_normalized(points);
    std::vector<Vec2> image(s);
    if (s == 1) {
        image[0] = frame.center;
        return finish(orbit, points, std::move(image));
    }
    const double step = kTwoPi * frame.step / static_cast<double>(s);
    Vec2 avg{};
    for (std::size_t i = 0; i < s; ++i) avg += rotated(points[i] - frame.center, -step * static_cast<double>(i));
    avg /= static_cast<double>(s);
    for (std::size_t i = 0; i < s; ++i) image[i] = frame.center + rotated(avg, step * static_cast<double>(i));
    return finish(orbit, points, std::move(image));
}

FoldingResult fold_orbit(std::span<const int> orbit, std::span<const Vec2> points, const AxisFrame& frame) {
    const std::size_t s = orbit.size();
    if (s == 0 || s != points.size()) throw Error(ErrorCode::OrbitSizeMismatch, "orbit and point counts differ");
    if (s > 2) throw Error(ErrorCode::OrbitSizeMismatch, "axial orbit has " + std::to_string(s) + " members");
    check_normalized(points);
    std::vector<Vec2> image(s);
    if (s == 1) {
        image[0] = project(frame.axis, points[0]);
    } else {
        Vec2 avg = (points[0] + reflect(frame.axis, points[1])) * 0.5;
        image[0] = avg;
        image[1] = reflect(frame.axis, avg);
    }
    return finish(orbit, points, std::move(image));
}

namespace {

FoldingResult fold_one(std::span<const Vec2> normalized, const Automorphism& phi, const Frame& frame,
                       const std::vector<int>& orbit) {
    std::vector<Vec2> pts(orbit.size());
    for (std::size_t i = 0; i < orbit.size(); ++i) pts[i] = normalized[static_cast<std::size_t>(orbit[i])];
    if (const auto* rf = std::get_if<RotationFrame>(&frame)) {
        const int k = phi.is_rotational() ? phi.order() : 2;
        return fold_orbit(orbit, pts, k, *rf);
    }
    return fold_orbit(orbit, pts, std::get<AxisFrame>(frame));
}

}  // namespace

std::vector<FoldingResult> fold_all(std::span<const Vec2> normalized, const Automorphism& phi, const Frame& frame) {
    const auto& orbits = phi.orbits();
    std::vector<FoldingResult> out(orbits.size());
    const long count = static_cast<long>(orbits.size());
    bool failed = false;
    std::string message;
    ErrorCode code = ErrorCode::InvalidArgument;
#pragma omp parallel for schedule(static) if (count > 64)
    for (long i = 0; i < count; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = fold_one(normalized, phi, frame, orbits[static_cast<std::size_t>(i)]);
        } catch (const Error& e) {
#pragma omp critical(symqual_fold_error)
            {
                if (!failed) {
                    failed = true;
                    message = e.what();
                    code = e.code();
                }
            }
        }
    }
    if (failed) throw Error(code, message);
    return out;
}

namespace serial {
std::vector<FoldingResult> fold_all(std::span<const Vec2> normalized, const Automorphism& phi, const Frame& frame) {
    std::vector<FoldingResult> out;
    out.reserve(phi.orbits().size());
    for (const auto& orbit : phi.orbits()) out.push_back(fold_one(normalized, phi, frame, orbit));
    return out;
}
}  // namespace serial

// ---- frame selection ----------------------------------------------------

namespace {

constexpr std::size_t kMaxBisectorAxes = 8;

std::vector<Frame> rotation_candidates(std::span<const Vec2> pts, const Automorphism& phi) {
    const auto& orbits = phi.orbits();
    std::vector<Vec2> centroids(orbits.size());
    for (std::size_t i = 0; i < orbits.size(); ++i) {
        Vec2 c{};
        for (int v : orbits[i]) c += pts[static_cast<std::size_t>(v)];
        centroids[i] = c / static_cast<double>(orbits[i].size());
    }
    auto own_sd = [&](std::size_t i) {
        std::vector<Vec2> op;
        for (int v : orbits[i]) op.push_back(pts[static_cast<std::size_t>(v)]);
        // Folding about its own centroid; points stay inside a radius-2 disc.
        std::vector<Vec2> shifted(op.size());
        for (std::size_t j = 0; j < op.size(); ++j) shifted[j] = (op[j] - centroids[i]) * 0.5;
        auto r = fold_orbit(orbits[i], shifted, phi.order(), RotationFrame{Vec2{}, 1});
        return 1.0 - 2.0 * r.distance;
    };
    Vec2 center = rotation_center(centroids, own_sd);
    std::vector<Frame> out;
    for (int q = 1; q < phi.order(); ++q) {
        if (std::gcd(q, phi.order()) == 1) out.push_back(RotationFrame{center, q});
    }
    return out;
}

std::vector<Frame> axis_candidates(std::span<const Vec2> pts, const Automorphism& phi) {
    std::vector<Line> lines;
    if (auto fit = mirror_fit(pts, phi.mapping())) lines.push_back(*fit);
    PointSet ps(std::vector<Vec2>(pts.begin(), pts.end()));
    try {
        lines.push_back(principal_axis(ps));
        lines.push_back(minor_axis(ps));
    } catch (const Error&) {
        lines.push_back(Line{ps.centroid(), {1.0, 0.0}});
    }

    // Perpendicular bisectors of the mirror pairs, grouped by the line they define.
    struct Support {
        Line line;
        int count = 0;
        std::size_t first = 0;
    };
    std::map<std::pair<long long, long long>, Support> groups;
    std::size_t seen = 0;
    for (const auto& orbit : phi.orbits()) {
        if (orbit.size() != 2) continue;
        Vec2 p = pts[static_cast<std::size_t>(orbit[0])];
        Vec2 q = pts[static_cast<std::size_t>(orbit[1])];
        Vec2 pq = q - p;
        if (norm(pq) < 1e-12) continue;
        Line l{(p + q) * 0.5, canonical_direction({-pq.y, pq.x})};
        double ang = std::atan2(l.direction.y, l.direction.x);
        double off = cross(l.direction, l.point);
        auto key = std::make_pair(std::llround(ang * 1e6), std::llround(off * 1e6));
        auto [it, inserted] = groups.try_emplace(key, Support{l, 0, seen++});
        ++it->second.count;
    }
    std::vector<Support> ranked;
    for (auto& [key, s] : groups) ranked.push_back(s);
    std::sort(ranked.begin(), ranked.end(), [](const Support& a, const Support& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.first < b.first;
    });
    for (std::size_t i = 0; i < ranked.size() && i < kMaxBisectorAxes; ++i) lines.push_back(ranked[i].line);

    std::vector<Frame> out;
    for (const Line& l : lines) out.push_back(AxisFrame{l});
    return out;
}

struct FrameScore {
    int symmetric = 0;
    double sd_sum = 0.0;
};

FrameScore score(const std::vector<FoldingResult>& folds, double eps) {
    FrameScore s;
    for (const auto& f : folds) {
        if (f.distance <= eps) ++s.symmetric;
        s.sd_sum += f.sd;
    }
    return s;
}

}  // namespace

std::vector<Frame> candidate_frames(std::span<const Vec2> normalized, const Automorphism& phi) {
    return phi.is_rotational() ? rotation_candidates(normalized, phi) : axis_candidates(normalized, phi);
}

Frame to_normalized(const Frame& frame, const Normalization& norm) {
    if (const auto* rf = std::get_if<RotationFrame>(&frame)) return RotationFrame{norm.apply(rf->center), rf->step};
    const auto& af = std::get<AxisFrame>(frame);
    return AxisFrame{Line{norm.apply(af.axis.point), canonical_direction(af.axis.direction)}};
}

Frame to_drawing(const Frame& frame, const Normalization& norm) {
    if (const auto* rf = std::get_if<RotationFrame>(&frame)) return RotationFrame{norm.invert(rf->center), rf->step};
    const auto& af = std::get<AxisFrame>(frame);
    return AxisFrame{Line{norm.invert(af.axis.point), af.axis.direction}};
}

ApproxSymResult approx_sym_normalized(const Normalization& norm, const Automorphism& phi,
                                      std::optional<Frame> normalized_frame, double eps) {
    const auto& pts = norm.points.points();
    if (pts.size() != static_cast<std::size_t>(phi.size())) {
        throw Error(ErrorCode::GraphMismatch, "automorphism size differs from drawing size");
    }
    ApproxSymResult out{norm, Frame{RotationFrame{}}, {}};
    std::vector<Frame> frames;
    if (normalized_frame) {
        if (phi.is_rotational() != std::holds_alternative<RotationFrame>(*normalized_frame)) {
            throw Error(ErrorCode::KindMismatch, "frame kind does not match the automorphism kind");
        }
        frames.push_back(*normalized_frame);
    } else {
        frames = candidate_frames(pts, phi);
    }
    bool have = false;
    FrameScore best;
    for (const Frame& f : frames) {
        auto folds = fold_all(pts, phi, f);
        FrameScore s = score(folds, eps);
        if (!have || s.symmetric > best.symmetric ||
            (s.symmetric == best.symmetric && s.sd_sum > best.sd_sum + 1e-12)) {
            have = true;
            best = s;
            out.frame = f;
            out.folds = std::move(folds);
        }
    }
    return out;
}

ApproxSymResult approx_sym(const Graph& g, const Drawing& d, const Automorphism& phi, std::optional<Frame> frame,
                           double eps) {
    d.check_against(g);
    if (phi.size() != g.vertex_count()) throw Error(ErrorCode::GraphMismatch, "automorphism size differs from graph");
    auto norm = normalize_to_unit_circle(PointSet(d.positions()));
    std::optional<Frame> nf;
    if (frame) nf = to_normalized(*frame, norm);
    return approx_sym_normalized(norm, phi, nf, eps);
}

}  // namespace symqual
