#include "symqual/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "symqual/error.hpp"
#include "symqual/io.hpp"
#include "symqual/metrics.hpp"

namespace symqual {

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Vec2 centroid_of(const std::vector<Vec2>& pts) {
    Vec2 c{0.0, 0.0};
    for (const auto& p : pts) c = c + p;
    return pts.empty() ? c : c * (1.0 / static_cast<double>(pts.size()));
}

// Members of an orbit picked by a plan step, deterministic in the step seed.
std::vector<int> chosen_vertices(const std::vector<int>& orbit, const PlanStep& step) {
    const int s = static_cast<int>(orbit.size());
    const int c = std::min(step.vertex_count, s);
    std::vector<int> out;
    if (step.choice == VertexChoice::Spread) {
        for (int j = 0; j < c; ++j) out.push_back(orbit[static_cast<std::size_t>(j * s / c)]);
    } else {
        std::vector<int> members = orbit;
        std::mt19937_64 rng(step.seed);
        std::shuffle(members.begin(), members.end(), rng);
        out.assign(members.begin(), members.begin() + c);
    }
    return out;
}

std::string format_g(double v, int digits = 9) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::string format_f(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

ResultRow group_row(const std::string& label, const Graph& g, const Drawing& d, const AutomorphismGroup& group,
                    double eps) {
    ResultRow row;
    row.label = label;
    auto rep = sqg(g, d, group, eps);
    row.sqg1 = rep.sqg1;
    row.sqg2 = rep.sqg2;
    return row;
}

}  // namespace

// ---- Experiment 1 ----------------------------------------------------------

void PerturbationPlan::validate(const Automorphism& phi) const {
    if (steps < 0) throw Error(ErrorCode::PlanInvalid, "negative step count");
    if (!(max_deviation_deg >= 0.0 && max_deviation_deg < 90.0)) {
        throw Error(ErrorCode::PlanInvalid, "deviation must lie in [0, 90) degrees");
    }
    if (static_cast<int>(per_step.size()) != steps) {
        throw Error(ErrorCode::PlanInvalid, "plan has " + std::to_string(per_step.size()) + " entries for " +
                                                std::to_string(steps) + " steps");
    }
    const auto& orbits = phi.orbits();
    std::map<int, double> last;
    for (int t = 0; t < steps; ++t) {
        const PlanStep& st = per_step[static_cast<std::size_t>(t)];
        const std::string where = "step " + std::to_string(t + 1) + ": ";
        if (st.orbit_index < 0 || st.orbit_index >= static_cast<int>(orbits.size())) {
            throw Error(ErrorCode::PlanInvalid, where + "orbit index out of range");
        }
        if (st.vertex_count < 0) throw Error(ErrorCode::PlanInvalid, where + "negative vertex count");
        if (!std::isfinite(st.magnitude) || st.magnitude < 0.0) {
            throw Error(ErrorCode::PlanInvalid, where + "magnitude must be finite and non-negative");
        }
        for (int v : chosen_vertices(orbits[static_cast<std::size_t>(st.orbit_index)], st)) {
            auto it = last.find(v);
            if (it != last.end() && st.magnitude < it->second) {
                throw Error(ErrorCode::PlanInvalid,
                            where + "magnitude of vertex " + std::to_string(v) + " decreases from " +
                                format_g(it->second) + " to " + format_g(st.magnitude));
            }
            last[v] = st.magnitude;
        }
    }
}

PerturbationPlan make_plan(const Automorphism& phi, const Drawing& initial, const PlanOptions& options) {
    if (options.steps < 0 || options.destroy < 0 || options.vertices_per_orbit < 1) {
        throw Error(ErrorCode::PlanInvalid, "plan options out of range");
    }
    if (options.last_magnitude < options.first_magnitude) {
        throw Error(ErrorCode::PlanInvalid, "last magnitude below first magnitude");
    }
    const auto& orbits = phi.orbits();
    const Vec2 c0 = centroid_of(initial.positions());
    std::vector<std::pair<double, int>> ranked;
    for (int i = 0; i < static_cast<int>(orbits.size()); ++i) {
        const auto& o = orbits[static_cast<std::size_t>(i)];
        if (o.size() < 2) continue;
        double r = 0.0;
        for (int v : o) r += distance(initial[v], c0);
        ranked.emplace_back(r / static_cast<double>(o.size()), i);
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first > b.first + 1e-9; });

    PerturbationPlan plan;
    plan.steps = options.steps;
    plan.max_deviation_deg = options.max_deviation_deg;
    const int T = options.steps;
    const int D = std::min({options.destroy, static_cast<int>(ranked.size()), T});
    std::vector<int> destroy_at;  // step (1-based) of each destruction
    for (int i = 0; i < D; ++i) destroy_at.push_back(1 + i * T / D);
    auto magnitude = [&](int t) {
        if (T <= 1) return options.first_magnitude;
        return options.first_magnitude +
               (options.last_magnitude - options.first_magnitude) * static_cast<double>(t - 1) / (T - 1);
    };
    const int per_orbit = phi.is_rotational() ? options.vertices_per_orbit : 1;
    int current = -1;
    int next = 0;
    for (int t = 1; t <= T; ++t) {
        if (next < D && destroy_at[static_cast<std::size_t>(next)] == t) current = ranked[static_cast<std::size_t>(next++)].second;
        PlanStep st;
        st.orbit_index = current < 0 ? ranked.empty() ? 0 : ranked.front().second : current;
        st.choice = VertexChoice::Spread;
        st.vertex_count = ranked.empty() ? 0 : per_orbit;
        st.magnitude = current < 0 ? 0.0 : magnitude(t);
        st.seed = mix(options.seed, static_cast<std::uint64_t>(t));
        plan.per_step.push_back(st);
    }
    return plan;
}

std::vector<Drawing> apply_plan(const Graph& g, const Automorphism& phi, const Drawing& initial,
                                const PerturbationPlan& plan, int through) {
    initial.check_against(g);
    if (phi.size() != g.vertex_count()) throw Error(ErrorCode::GraphMismatch, "automorphism size differs from graph");
    plan.validate(phi);
    if (through < 0 || through > plan.steps) through = plan.steps;

    const std::vector<Vec2>& p0 = initial.positions();
    const Vec2 c0 = centroid_of(p0);
    double R = 0.0;
    for (const auto& p : p0) R = std::max(R, distance(p, c0));
    if (R <= 0.0) R = 1.0;

    const std::size_t n = p0.size();
    std::vector<double> mag(n, 0.0);
    std::vector<double> dev(n, 0.0);
    std::vector<bool> touched(n, false);
    std::vector<Drawing> out;
    out.push_back(initial);
    std::vector<Vec2> cur = p0;
    const double max_dev = plan.max_deviation_deg * std::numbers::pi / 180.0;
    for (int t = 0; t < through; ++t) {
        const PlanStep& st = plan.per_step[static_cast<std::size_t>(t)];
        const auto& orbit = phi.orbits()[static_cast<std::size_t>(st.orbit_index)];
        for (int v : chosen_vertices(orbit, st)) {
            const auto vi = static_cast<std::size_t>(v);
            if (!touched[vi]) {
                std::mt19937_64 rng(mix(st.seed, vi));
                dev[vi] = std::uniform_real_distribution<double>(-max_dev, max_dev)(rng);
                touched[vi] = true;
            }
            mag[vi] = std::max(mag[vi], st.magnitude);
            const Vec2 to_center = c0 - p0[vi];
            const double r = norm(to_center);
            Vec2 dir = r > 1e-12 ? to_center * (1.0 / r) : Vec2{1.0, 0.0};
            dir = rotated(dir, dev[vi]);
            const double s = std::sin(dev[vi]);
            const double reach = r * std::cos(dev[vi]) + std::sqrt(std::max(0.0, R * R - r * r * s * s));
            const double delta = std::min(mag[vi] * R, 0.98 * reach);
            cur[vi] = p0[vi] + dir * delta;
        }
        out.emplace_back(initial.graph_name(), cur);
    }
    return out;
}

ExperimentResult exp1_perturb(const Graph& g, const Automorphism& phi, const Drawing& initial,
                              const PerturbationPlan& plan, double eps) {
    auto drawings = apply_plan(g, phi, initial, plan);
    ExperimentResult res;
    res.experiment = "exp1";
    res.graph = g.name();
    res.group = phi.is_rotational() ? "C" + std::to_string(phi.order()) : "axial";
    res.rows.resize(drawings.size());
    res.destroyed.resize(drawings.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < drawings.size(); ++i) {
        auto rep = sq(g, drawings[i], phi, eps);
        ResultRow& row = res.rows[i];
        row.label = "step " + std::to_string(i);
        row.sd = rep.mean_sd;
        row.sq1 = rep.sq1;
        row.sq2 = rep.sq2;
        res.destroyed[i] = static_cast<int>(rep.per_orbit.size()) - rep.symmetric_count;
    }
    return res;
}

std::vector<Exp1Fixture> exp1_fixtures(std::uint64_t seed) {
    std::vector<Exp1Fixture> out;
    auto add = [&](std::string name, const Graph& g, const AutomorphismGroup& group, const Automorphism& phi,
                   PlanOptions opt) {
        Drawing initial = concentric_circles(g, group);
        opt.seed = mix(seed, out.size());
        PerturbationPlan plan = make_plan(phi, initial, opt);
        int orbits = 0;
        for (const auto& o : phi.orbits()) orbits += o.size() >= 2 ? 1 : 0;
        const int destroyed = std::min({opt.destroy, orbits, opt.steps});
        out.push_back({std::move(name), g, phi, std::move(initial), std::move(plan), destroyed});
    };

    PlanOptions rot;
    rot.steps = 10;
    rot.vertices_per_orbit = 3;
    rot.first_magnitude = 1.4;
    rot.last_magnitude = 1.7;
    rot.max_deviation_deg = 10.0;

    const CatalogEntry& cox = catalog_entry("coxeter");
    {
        PlanOptions o = rot;
        o.destroy = 4;
        add("coxeter", cox.graph, cox.groups.front().group, *cox.groups.front().group.rotation_generator(), o);
    }
    const std::vector<std::pair<int, int>> rotational = {{8, 4}, {6, 5}, {5, 6}, {12, 4}, {10, 4}};
    for (std::size_t i = 0; i < rotational.size(); ++i) {
        auto [k, m] = rotational[i];
        auto gen = gen_rotational(k, m, mix(seed, 100 + i));
        PlanOptions o = rot;
        o.destroy = m;
        add(gen.graph.name(), gen.graph, gen.group, *gen.group.rotation_generator(), o);
    }

    PlanOptions ax;
    ax.steps = 10;
    ax.vertices_per_orbit = 1;
    ax.first_magnitude = 1.8;
    ax.last_magnitude = 1.96;
    ax.max_deviation_deg = 10.0;

    const CatalogEntry& hea = catalog_entry("heawood");
    for (const auto& ng : hea.groups) {
        if (ng.group.kind() != GroupKind::Axial2) continue;
        PlanOptions o = ax;
        o.destroy = 5;
        add("heawood_axial", hea.graph, ng.group, *ng.group.reflection(), o);
    }
    struct AxialSpec {
        int pairs, fixed, destroy;
    };
    const std::vector<AxialSpec> axial = {{7, 0, 5}, {6, 1, 5}, {5, 2, 4}, {8, 0, 5}, {7, 1, 5}};
    for (std::size_t i = 0; i < axial.size(); ++i) {
        const auto& a = axial[i];
        auto gen = gen_axial(a.pairs, a.fixed, 0.3, mix(seed, 200 + i));
        PlanOptions o = ax;
        o.destroy = a.destroy;
        add(gen.graph.name(), gen.graph, gen.group, *gen.group.reflection(), o);
    }
    return out;
}

// ---- Experiment 2 ----------------------------------------------------------

ExperimentResult exp2_group(const Graph& g, const AutomorphismGroup& group, const std::vector<SeriesDrawing>& series,
                            double eps) {
    ExperimentResult res;
    res.experiment = "exp2";
    res.graph = g.name();
    res.group = std::string(to_string(group.kind())) + std::to_string(group.rotation_order());
    res.rows.resize(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        series[i].drawing.check_against(g);
        res.rows[i] = group_row(series[i].label, g, series[i].drawing, group, eps);
    }
    return res;
}

Drawing subgroup_display_drawing(const Graph& g, const AutomorphismGroup& group, int d, double amplitude,
                                 std::uint64_t seed) {
    const Drawing base = concentric_circles(g, group);
    const AutomorphismGroup sub = subgroup_of_order(g, group, d);
    const auto& p = base.positions();
    const std::size_t n = p.size();

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<Vec2> e(n);
    for (auto& v : e) {
        do {
            v = {unit(rng), unit(rng)};
        } while (norm(v) > 1.0);
        v = v * amplitude;
    }

    // Linear part of each element, fitted to the base drawing.
    struct Mat {
        double a, b, c, d;
    };
    auto fit = [&](const std::vector<int>& map) {
        double sxx = 0, sxy = 0, syy = 0;
        double mxx = 0, mxy = 0, myx = 0, myy = 0;
        for (std::size_t v = 0; v < n; ++v) {
            const Vec2 x = p[v];
            const Vec2 y = p[static_cast<std::size_t>(map[v])];
            sxx += x.x * x.x;
            sxy += x.x * x.y;
            syy += x.y * x.y;
            mxx += y.x * x.x;
            mxy += y.x * x.y;
            myx += y.y * x.x;
            myy += y.y * x.y;
        }
        const double det = sxx * syy - sxy * sxy;
        if (std::abs(det) < 1e-12) throw Error(ErrorCode::SingularSystem, "drawing too degenerate to fit element");
        const double ia = syy / det, ib = -sxy / det, id = sxx / det;
        return Mat{mxx * ia + mxy * ib, mxx * ib + mxy * id, myx * ia + myy * ib, myx * ib + myy * id};
    };

    std::vector<std::vector<int>> maps;
    std::vector<int> identity(n);
    std::iota(identity.begin(), identity.end(), 0);
    maps.push_back(identity);
    for (const auto& el : sub.elements()) maps.push_back(el.mapping());

    std::vector<Vec2> avg(n, Vec2{0.0, 0.0});
    for (const auto& map : maps) {
        const Mat m = fit(map);
        for (std::size_t v = 0; v < n; ++v) {
            const Vec2 ev = e[static_cast<std::size_t>(map[v])];
            avg[v] = avg[v] + Vec2{m.a * ev.x + m.c * ev.y, m.b * ev.x + m.d * ev.y};
        }
    }
    std::vector<Vec2> out(n);
    const double inv = 1.0 / static_cast<double>(maps.size());
    for (std::size_t v = 0; v < n; ++v) out[v] = p[v] + avg[v] * inv;
    return Drawing(g, std::move(out));
}

std::vector<SeriesDrawing> perturbed_series(const Graph& g, const AutomorphismGroup& group, const Drawing& start,
                                            const std::string& prefix, int steps, double magnitude,
                                            std::uint64_t seed) {
    start.check_against(g);
    const Automorphism* rho = group.rotation_generator();
    const Automorphism* axis = group.reflection();
    const Automorphism& phi = rho ? *rho : *axis;
    std::vector<const std::vector<int>*> orbits;
    for (const auto& o : phi.orbits()) {
        if (o.size() >= 2) orbits.push_back(&o);
    }
    std::vector<SeriesDrawing> out;
    std::vector<Vec2> cur = start.positions();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (int s = 1; s <= steps && s <= static_cast<int>(orbits.size()); ++s) {
        const auto& o = *orbits[static_cast<std::size_t>(s - 1)];
        const int v = o[std::uniform_int_distribution<std::size_t>(0, o.size() - 1)(rng)];
        const double a = angle(rng);
        cur[static_cast<std::size_t>(v)] = cur[static_cast<std::size_t>(v)] + Vec2{std::cos(a), std::sin(a)} * magnitude;
        out.push_back({prefix + std::to_string(s), Drawing(g, cur)});
    }
    return out;
}

namespace {

std::string order_label(const AutomorphismGroup& group, int d) {
    return (group.kind() == GroupKind::Dihedral ? "D" : "C") + std::to_string(d);
}

constexpr double kDisplayAmplitude = 0.05;

}  // namespace

std::vector<Exp2Fixture> exp2_fixtures(std::uint64_t seed) {
    std::vector<Exp2Fixture> out;
    auto add = [&](const Graph& g, const AutomorphismGroup& group, std::vector<int> orders) {
        Exp2Fixture f{g, group, orders, {}};
        for (std::size_t i = 0; i < orders.size(); ++i) {
            const int d = orders[i];
            f.series.push_back({order_label(group, d),
                                subgroup_display_drawing(g, group, d, kDisplayAmplitude, mix(seed, 300 + out.size() * 16 + i))});
        }
        out.push_back(std::move(f));
    };
    auto c12 = gen_rotational(12, 3, mix(seed, 400));
    add(c12.graph, c12.group, {12, 6, 4, 3, 2});
    const CatalogEntry& dod = catalog_entry("dodecahedral");
    add(dod.graph, dod.groups.front().group, {10, 5, 2});
    const CatalogEntry& cub = catalog_entry("cuboctahedral");
    add(cub.graph, cub.groups.front().group, {6, 3, 2});
    return out;
}

std::vector<Exp2PerturbedFixture> exp2_perturbed_fixtures(std::uint64_t seed) {
    std::vector<Exp2PerturbedFixture> out;
    constexpr double kMagnitude = 0.3;
    auto add = [&](const std::string& base, const Graph& g, const AutomorphismGroup& group, int d) {
        const std::string label = order_label(group, d);
        Drawing start = d == group.rotation_order()
                            ? concentric_circles(g, group)
                            : subgroup_display_drawing(g, group, d, kDisplayAmplitude, mix(seed, 500 + out.size()));
        Exp2PerturbedFixture f{base + "_" + label + "D", g, group, {}};
        f.series.push_back({label, start});
        for (auto& s : perturbed_series(g, group, start, label + "D", 3, kMagnitude, mix(seed, 600 + out.size()))) {
            f.series.push_back(std::move(s));
        }
        out.push_back(std::move(f));
    };
    auto c12 = gen_rotational(12, 3, mix(seed, 400));
    add(c12.graph.name(), c12.graph, c12.group, 12);
    add(c12.graph.name(), c12.graph, c12.group, 6);
    const CatalogEntry& dod = catalog_entry("dodecahedral");
    add("dodecahedral", dod.graph, dod.groups.front().group, 10);
    const CatalogEntry& cub = catalog_entry("cuboctahedral");
    add("cuboctahedral", cub.graph, cub.groups.front().group, 6);
    return out;
}

// ---- Experiment 3 ----------------------------------------------------------

std::vector<LayoutConfig> default_layouts(std::uint64_t seed) {
    std::vector<LayoutConfig> out;
    for (auto a : {LayoutAlgorithm::ConcentricCircles, LayoutAlgorithm::Tutte, LayoutAlgorithm::Spectral,
                   LayoutAlgorithm::FR, LayoutAlgorithm::StressMajorization, LayoutAlgorithm::PivotMDS}) {
        LayoutConfig c;
        c.algorithm = a;
        c.seed = seed;
        out.push_back(c);
    }
    return out;
}

ExperimentResult exp3_layout_comparison(const CatalogEntry& entry, const std::vector<LayoutConfig>& layouts,
                                        int fr_runs, double eps) {
    const Graph& g = entry.graph;
    const std::size_t L = layouts.size();
    const std::size_t G = entry.groups.size();
    const int runs = std::max(1, fr_runs);

    // One job per (layout, group, run); concentric circles depends on the group.
    struct Job {
        std::size_t layout, group;
        int run;
    };
    std::vector<Job> jobs;
    for (std::size_t l = 0; l < L; ++l) {
        const int r = layouts[l].algorithm == LayoutAlgorithm::FR ? runs : 1;
        for (std::size_t k = 0; k < G; ++k) {
            for (int i = 0; i < r; ++i) jobs.push_back({l, k, i});
        }
    }
    struct Cell {
        double s1 = kMissing, s2 = kMissing;
        std::string error;
    };
    std::vector<Cell> cells(jobs.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        const Job& job = jobs[j];
        try {
            LayoutConfig cfg = layouts[job.layout];
            if (cfg.algorithm == LayoutAlgorithm::Tutte && cfg.outer_face.empty()) cfg.outer_face = entry.tutte_outer_face;
            cfg.seed = mix(cfg.seed, static_cast<std::uint64_t>(job.run));
            const AutomorphismGroup& group = entry.groups[job.group].group;
            auto lr = run_layout(g, cfg, &group);
            auto rep = sqg(g, lr.drawing, group, eps);
            cells[j].s1 = rep.sqg1;
            cells[j].s2 = rep.sqg2;
        } catch (const std::exception& ex) {
            cells[j].error = ex.what();
        }
    }

    ExperimentResult res;
    res.experiment = "exp3";
    res.graph = g.name();
    for (std::size_t k = 0; k < G; ++k) res.group += (k ? "," : "") + entry.groups[k].label;
    res.config = "fr_runs=" + std::to_string(runs);
    if (!layouts.empty()) res.seed = layouts.front().seed;
    for (std::size_t l = 0; l < L; ++l) {
        for (std::size_t k = 0; k < G; ++k) {
            ResultRow row;
            row.label = std::string(to_string(layouts[l].algorithm)) + "/" + entry.groups[k].label;
            double s1 = 0, s2 = 0;
            int ok = 0;
            for (std::size_t j = 0; j < jobs.size(); ++j) {
                if (jobs[j].layout != l || jobs[j].group != k) continue;
                if (!cells[j].error.empty()) {
                    if (row.note.empty()) row.note = cells[j].error;
                    continue;
                }
                s1 += cells[j].s1;
                s2 += cells[j].s2;
                ++ok;
            }
            if (ok == 0) {
                row.failed = true;
            } else {
                row.sqg1 = s1 / ok;
                row.sqg2 = s2 / ok;
            }
            res.rows.push_back(std::move(row));
        }
    }
    return res;
}

ExperimentResult exp3_average(const std::vector<ExperimentResult>& per_graph) {
    ExperimentResult res;
    res.experiment = "exp3";
    res.graph = "average";
    res.group = "largest";
    std::vector<std::string> order;
    std::map<std::string, std::tuple<double, double, int>> acc;
    for (const auto& r : per_graph) {
        std::set<std::string> seen;
        for (const auto& row : r.rows) {
            const std::string layout = row.label.substr(0, row.label.find('/'));
            if (!seen.insert(layout).second) continue;  // first row per layout is the largest group
            if (!acc.count(layout)) {
                order.push_back(layout);
                acc[layout] = {0.0, 0.0, 0};
            }
            if (row.failed) continue;
            auto& [s1, s2, c] = acc[layout];
            s1 += row.sqg1;
            s2 += row.sqg2;
            ++c;
        }
    }
    for (const auto& layout : order) {
        auto [s1, s2, c] = acc[layout];
        ResultRow row;
        row.label = layout;
        if (c == 0) {
            row.failed = true;
        } else {
            row.sqg1 = s1 / c;
            row.sqg2 = s2 / c;
        }
        res.rows.push_back(std::move(row));
    }
    return res;
}

// ---- output ----------------------------------------------------------------

std::string emit_csv(const ExperimentResult& r) {
    std::string out = "label,sd,sq1,sq2,sqg1,sqg2\n";
    for (const auto& row : r.rows) {
        std::string label = row.label;
        if (label.find_first_of(",\"\n") != std::string::npos) {
            std::string q = "\"";
            for (char ch : label) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            label = q + "\"";
        }
        out += label;
        for (double v : {row.sd, row.sq1, row.sq2, row.sqg1, row.sqg2}) {
            out += ',';
            if (std::isfinite(v)) out += format_g(v);
        }
        out += '\n';
    }
    return out;
}

std::string emit_svg_chart(const ExperimentResult& r) {
    constexpr double W = 640, H = 400, left = 60, right = 130, top = 40, bottom = 70;
    const double pw = W - left - right, ph = H - top - bottom;
    const std::size_t n = r.rows.size();
    auto x_at = [&](std::size_t i) { return left + (n <= 1 ? pw / 2 : pw * static_cast<double>(i) / (n - 1)); };
    auto y_at = [&](double v) { return top + ph * (1.0 - std::clamp(v, 0.0, 1.0)); };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" viewBox=\"0 0 640 400\">\n";
    s << "<rect width=\"640\" height=\"400\" fill=\"#ffffff\"/>\n";
    s << "<text x=\"" << format_f(W / 2) << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
      << xml_escape(r.experiment + " " + r.graph + " " + r.group) << "</text>\n";
    for (int t = 0; t <= 4; ++t) {
        const double v = t / 4.0;
        s << "<line x1=\"" << format_f(left) << "\" y1=\"" << format_f(y_at(v)) << "\" x2=\"" << format_f(left + pw)
          << "\" y2=\"" << format_f(y_at(v)) << "\" stroke=\"#dddddd\"/>\n";
        s << "<text x=\"" << format_f(left - 6) << "\" y=\"" << format_f(y_at(v) + 4)
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << format_f(v) << "</text>\n";
    }
    s << "<line x1=\"" << format_f(left) << "\" y1=\"" << format_f(top + ph) << "\" x2=\"" << format_f(left + pw)
      << "\" y2=\"" << format_f(top + ph) << "\" stroke=\"#000000\"/>\n";
    s << "<line x1=\"" << format_f(left) << "\" y1=\"" << format_f(top) << "\" x2=\"" << format_f(left)
      << "\" y2=\"" << format_f(top + ph) << "\" stroke=\"#000000\"/>\n";
    for (std::size_t i = 0; i < n; ++i) {
        s << "<text transform=\"translate(" << format_f(x_at(i)) << "," << format_f(top + ph + 14)
          << ") rotate(30)\" font-family=\"sans-serif\" font-size=\"10\">" << xml_escape(r.rows[i].label) << "</text>\n";
    }

    struct Series {
        const char* name;
        const char* color;
        double ResultRow::*field;
    };
    const Series series[] = {{"sd", "#7f7f7f", &ResultRow::sd},       {"sq1", "#1f77b4", &ResultRow::sq1},
                             {"sq2", "#d62728", &ResultRow::sq2},     {"sqg1", "#2ca02c", &ResultRow::sqg1},
                             {"sqg2", "#9467bd", &ResultRow::sqg2}};
    int legend = 0;
    for (const auto& ser : series) {
        std::string pts;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = r.rows[i].*ser.field;
            if (!std::isfinite(v)) continue;
            if (!pts.empty()) pts += ' ';
            pts += format_f(x_at(i)) + "," + format_f(y_at(v));
        }
        if (pts.empty()) continue;
        s << "<polyline fill=\"none\" stroke=\"" << ser.color << "\" stroke-width=\"2\" points=\"" << pts << "\"/>\n";
        const double ly = top + 10 + 18 * legend++;
        s << "<line x1=\"" << format_f(W - right + 15) << "\" y1=\"" << format_f(ly) << "\" x2=\""
          << format_f(W - right + 35) << "\" y2=\"" << format_f(ly) << "\" stroke=\"" << ser.color
          << "\" stroke-width=\"2\"/>\n";
        s << "<text x=\"" << format_f(W - right + 40) << "\" y=\"" << format_f(ly + 4)
          << "\" font-family=\"sans-serif\" font-size=\"11\">" << ser.name << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

std::string summary_table(const std::vector<ExperimentResult>& results) {
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-6s %-22s %-14s %-22s %10s %10s %10s %10s %10s\n", "exp", "graph", "group", "label",
                  "sd", "sq1", "sq2", "sqg1", "sqg2");
    out += buf;
    auto cell = [](double v) { return std::isfinite(v) ? format_g(v, 6) : std::string("-"); };
    for (const auto& r : results) {
        for (const auto& row : r.rows) {
            std::snprintf(buf, sizeof buf, "%-6s %-22s %-14s %-22s %10s %10s %10s %10s %10s%s\n", r.experiment.c_str(),
                          r.graph.c_str(), r.group.c_str(), row.label.c_str(), cell(row.sd).c_str(),
                          cell(row.sq1).c_str(), cell(row.sq2).c_str(), cell(row.sqg1).c_str(),
                          cell(row.sqg2).c_str(), row.failed ? "  FAILED" : "");
            out += buf;
        }
    }
    return out;
}

std::vector<ExperimentResult> run_exp1_suite(std::uint64_t seed) {
    std::vector<ExperimentResult> out;
    for (const auto& f : exp1_fixtures(seed)) {
        auto r = exp1_perturb(f.graph, f.phi, f.initial, f.plan);
        r.graph = f.name;
        r.seed = seed;
        r.config = "steps=" + std::to_string(f.plan.steps) + " destroyed=" + std::to_string(f.final_destroyed);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<ExperimentResult> run_exp2_suite(std::uint64_t seed) {
    std::vector<ExperimentResult> out;
    for (const auto& f : exp2_fixtures(seed)) {
        auto r = exp2_group(f.graph, f.group, f.series);
        r.seed = seed;
        r.config = "display_amplitude=" + format_g(kDisplayAmplitude);
        out.push_back(std::move(r));
    }
    for (const auto& f : exp2_perturbed_fixtures(seed)) {
        auto r = exp2_group(f.graph, f.group, f.series);
        r.graph = f.name;
        r.seed = seed;
        r.config = "perturbed";
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<ExperimentResult> run_exp3_suite(std::uint64_t seed) {
    std::vector<ExperimentResult> out;
    const auto layouts = default_layouts(seed);
    for (const auto& entry : catalog()) out.push_back(exp3_layout_comparison(entry, layouts));
    out.push_back(exp3_average(out));
    return out;
}

void write_results(const std::vector<ExperimentResult>& results, const std::string& out_dir) {
    for (const auto& r : results) {
        const std::string base = out_dir + "/" + r.experiment + "/" + r.graph;
        write_file(base + ".csv", emit_csv(r));
        write_file(base + ".svg", emit_svg_chart(r));
    }
}

}  // namespace symqual
