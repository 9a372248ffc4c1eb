#include "symqual/metrics.hpp"

#include <algorithm>
#include <string>

#include "symqual/error.hpp"

namespace symqual {

ScoreValues score_orbits(std::span<const OrbitAssessment> orbits) {
    ScoreValues v;
    v.orbit_count = static_cast<int>(orbits.size());
    if (orbits.empty()) return v;
    double sd_all = 0.0;
    double sd_asym = 0.0;
    int asym = 0;
    for (const auto& o : orbits) {
        sd_all += o.sd;
        if (o.symmetric) {
            ++v.symmetric_count;
        } else {
            sd_asym += o.sd;
            ++asym;
        }
    }
    v.mean_sd = sd_all / static_cast<double>(orbits.size());
    if (asym == 0) return v;
    const double n = static_cast<double>(orbits.size());
    v.mean_asym_sd = sd_asym / static_cast<double>(asym);
    v.sq1 = 0.5 * (static_cast<double>(v.symmetric_count) / n + v.mean_asym_sd);
    v.sq2_unclamped = (1.0 + static_cast<double>(v.symmetric_count)) / n - (1.0 - v.mean_asym_sd);
    v.sq2 = std::clamp(v.sq2_unclamped, 0.0, 1.0);
    return v;
}

namespace {

ScoreReport report_from(const ApproxSymResult& r, double eps) {
    ScoreReport rep;
    rep.eps = eps;
    rep.per_orbit.reserve(r.folds.size());
    for (const auto& f : r.folds) rep.per_orbit.push_back({f.orbit, f.sd, f.distance, f.distance <= eps});
    ScoreValues v = score_orbits(rep.per_orbit);
    rep.sq1 = v.sq1;
    rep.sq2 = v.sq2;
    rep.sq2_unclamped = v.sq2_unclamped;
    rep.symmetric_count = v.symmetric_count;
    rep.mean_sd = v.mean_sd;
    rep.frame = to_drawing(r.frame, r.normalization);
    return rep;
}

void check_eps(double eps) {
    if (!(eps >= 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be non-negative");
}

void check_group(const Graph& g, const Drawing& d, const AutomorphismGroup& group) {
    d.check_against(g);
    if (group.graph_name() != g.name()) {
        throw Error(ErrorCode::GraphMismatch,
                    "group belongs to graph '" + group.graph_name() + "' but graph is '" + g.name() + "'");
    }
}

GroupScoreReport aggregate(std::vector<ElementScore> scores) {
    GroupScoreReport out;
    double s1 = 0.0;
    double s2 = 0.0;
    for (const auto& e : scores) {
        out.weight += e.weight;
        s1 += e.weight * e.report.sq1;
        s2 += e.weight * e.report.sq2;
        if (e.report.all_symmetric()) ++out.exact_count;
    }
    out.s1 = s1 / out.weight;
    out.s2 = s2 / out.weight;
    out.sqg1 = separate(out.s1, out.exact_count);
    out.sqg2 = separate(out.s2, out.exact_count);
    out.per_automorphism = std::move(scores);
    return out;
}

}  // namespace

double separate(double weighted_mean, int exact_count) {
    return exact_count > 0 ? 0.5 * (1.0 + weighted_mean) : 0.5 * weighted_mean;
}

ScoreReport sq(const Graph& g, const Drawing& d, const Automorphism& phi, double eps, std::optional<Frame> frame) {
    check_eps(eps);
    return report_from(approx_sym(g, d, phi, frame, eps), eps);
}

GroupScoreReport sqg(const Graph& g, const Drawing& d, const AutomorphismGroup& group, double eps) {
    check_eps(eps);
    check_group(g, d, group);
    auto norm = normalize_to_unit_circle(PointSet(d.positions()));
    const auto& els = group.elements();
    std::vector<ElementScore> scores(els.size());
    const long count = static_cast<long>(els.size());
    bool failed = false;
    std::string message;
    ErrorCode code = ErrorCode::InvalidArgument;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
        const auto& phi = els[static_cast<std::size_t>(i)];
        try {
            scores[static_cast<std::size_t>(i)] = {phi.weight(),
                                                   report_from(approx_sym_normalized(norm, phi, std::nullopt, eps), eps)};
        } catch (const Error& e) {
#pragma omp critical(symqual_sqg_error)
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
    return aggregate(std::move(scores));
}

namespace serial {
GroupScoreReport sqg(const Graph& g, const Drawing& d, const AutomorphismGroup& group, double eps) {
    check_eps(eps);
    check_group(g, d, group);
    auto norm = normalize_to_unit_circle(PointSet(d.positions()));
    std::vector<ElementScore> scores;
    for (const auto& phi : group.elements()) {
        scores.push_back({phi.weight(), report_from(approx_sym_normalized(norm, phi, std::nullopt, eps), eps)});
    }
    return aggregate(std::move(scores));
}
}  // namespace serial

}  // namespace symqual
