#include "symqual/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <optional>

#include "symqual/error.hpp"
#include "symqual/experiments.hpp"
#include "symqual/generators.hpp"
#include "symqual/io.hpp"
#include "symqual/layouts.hpp"
#include "symqual/metrics.hpp"
#include "symqual/symmetry.hpp"

namespace symqual::cli {

namespace {

using json = nlohmann::json;

constexpr int kDigits = 9;

double r9(double v) { return round_significant(v, kDigits); }

json point(Vec2 p) { return json::array({r9(p.x), r9(p.y)}); }

json frame_json(const Frame& f) {
    if (const auto* rf = std::get_if<RotationFrame>(&f)) {
        return {{"type", "rotation"}, {"center", point(rf->center)}, {"step", rf->step}};
    }
    const auto& af = std::get<AxisFrame>(f);
    return {{"type", "axis"}, {"point", point(af.axis.point)}, {"direction", point(af.axis.direction)}};
}

Formula parse_formula(const std::string& s) {
    if (s == "sq1") return Formula::SQ1;
    if (s == "sq2") return Formula::SQ2;
    return Formula::Both;
}

json score_json(const ScoreReport& r, Formula f) {
    json j;
    if (f != Formula::SQ2) j["sq1"] = r9(r.sq1);
    if (f != Formula::SQ1) {
        j["sq2"] = r9(r.sq2);
        j["sq2_unclamped"] = r9(r.sq2_unclamped);
    }
    j["symmetric_orbits"] = r.symmetric_count;
    j["orbit_count"] = r.per_orbit.size();
    j["mean_sd"] = r9(r.mean_sd);
    j["eps"] = r9(r.eps);
    j["frame"] = frame_json(r.frame);
    json orbits = json::array();
    for (const auto& o : r.per_orbit) {
        orbits.push_back({{"vertices", o.orbit}, {"sd", r9(o.sd)}, {"distance", r9(o.distance)}, {"symmetric", o.symmetric}});
    }
    j["orbits"] = std::move(orbits);
    return j;
}

json symmetry_json(const DetectedSymmetry& s) {
    json j;
    if (s.type == DetectedSymmetry::Type::Rotation) {
        j["type"] = "rotation";
        j["order"] = s.order;
        j["center"] = point(s.center);
    } else {
        j["type"] = "reflection";
        j["axis"] = {{"point", point(s.axis.point)}, {"direction", point(s.axis.direction)}};
    }
    j["permutation"] = s.permutation;
    return j;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::string cur;
    for (char ch : s + ",") {
        if (ch == ',' || ch == ' ') {
            if (cur.empty()) continue;
            try {
                std::size_t used = 0;
                out.push_back(std::stoi(cur, &used));
                if (used != cur.size()) throw std::invalid_argument(cur);
            } catch (const std::exception&) {
                throw Error(ErrorCode::InvalidArgument, "not an integer list: '" + s + "'");
            }
            cur.clear();
        } else {
            cur += ch;
        }
    }
    return out;
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
    if (path.empty()) {
        out << text;
    } else {
        write_file(path, text);
    }
}

PerturbationPlan load_plan(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, std::string("plan: ") + e.what());
    }
    try {
        PerturbationPlan plan;
        plan.steps = j.at("steps").get<int>();
        plan.max_deviation_deg = j.value("max_deviation_deg", 25.0);
        for (const auto& s : j.at("per_step")) {
            PlanStep st;
            st.orbit_index = s.at("orbit").get<int>();
            const std::string choice = s.value("choice", std::string("spread"));
            if (choice != "spread" && choice != "seeded") throw Error(ErrorCode::ParseError, "plan: unknown choice '" + choice + "'");
            st.choice = choice == "seeded" ? VertexChoice::Seeded : VertexChoice::Spread;
            st.vertex_count = s.value("count", 1);
            st.magnitude = s.at("magnitude").get<double>();
            st.seed = s.value("seed", std::uint64_t{0});
            plan.per_step.push_back(st);
        }
        return plan;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("plan: ") + e.what());
    }
}

struct Inputs {
    std::string graph, drawing, automorphism, group;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Symmetry quality metrics for graph drawings", "symqual"};
    app.require_subcommand(1);
    app.fallthrough(false);

    Inputs in;
    std::optional<double> eps;
    std::string formula = "both";
    std::string output;
    std::uint64_t seed = 1;

    auto add_eps = [&](CLI::App* sub) {
        sub->add_option("--eps", eps, "Symmetric-orbit threshold on the folded distance")->check(CLI::PositiveNumber);
    };
    auto add_formula = [&](CLI::App* sub) {
        sub->add_option("--formula", formula, "Score formula to report")
            ->check(CLI::IsMember({"sq1", "sq2", "both"}))
            ->capture_default_str();
    };

    auto* sq_cmd = app.add_subcommand("sq", "Score one automorphism on a drawing");
    sq_cmd->add_option("--graph", in.graph, "Graph JSON file")->required();
    sq_cmd->add_option("--drawing", in.drawing, "Drawing JSON file")->required();
    sq_cmd->add_option("--automorphism", in.automorphism, "Automorphism JSON file")->required();
    add_eps(sq_cmd);
    add_formula(sq_cmd);

    auto* sqg_cmd = app.add_subcommand("sqg", "Score an automorphism group on a drawing");
    sqg_cmd->add_option("--graph", in.graph, "Graph JSON file")->required();
    sqg_cmd->add_option("--drawing", in.drawing, "Drawing JSON file")->required();
    sqg_cmd->add_option("--group", in.group, "Group JSON file")->required();
    add_eps(sqg_cmd);
    add_formula(sqg_cmd);

    // Files carry 9 significant digits, so exact comparison needs headroom.
    double tolerance = 1e-7;
    auto* detect_cmd = app.add_subcommand("detect", "Find exact rotations and reflections of a drawing");
    detect_cmd->add_option("--graph", in.graph, "Graph JSON file")->required();
    detect_cmd->add_option("--drawing", in.drawing, "Drawing JSON file")->required();
    detect_cmd->add_option("--tolerance", tolerance, "Comparison tolerance after normalization")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    std::string algo = "concentric";
    std::string outer_face;
    LayoutConfig cfg;
    auto* layout_cmd = app.add_subcommand("layout", "Compute a drawing with a layout algorithm");
    layout_cmd->add_option("--graph", in.graph, "Graph JSON file")->required();
    layout_cmd->add_option("--algo", algo, "Layout algorithm")
        ->check(CLI::IsMember({"concentric", "tutte", "spectral", "fr", "stress", "pivotmds"}))
        ->capture_default_str();
    layout_cmd->add_option("--group", in.group, "Group JSON file (concentric)");
    layout_cmd->add_option("--outer-face", outer_face, "Comma-separated outer face cycle (tutte)");
    layout_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
    layout_cmd->add_option("--iterations", cfg.iterations, "Iteration cap (fr, stress)")->capture_default_str();
    layout_cmd->add_option("--tolerance", cfg.tolerance, "Relative stress change for convergence (stress)")
        ->capture_default_str();
    layout_cmd->add_option("--pivots", cfg.pivot_count, "Pivot count (pivotmds)")->capture_default_str();
    layout_cmd->add_option("--radius-step", cfg.orbit_radius_step, "Radius gap between circles (concentric)")
        ->capture_default_str();
    layout_cmd->add_option("--out", output, "Write the drawing here instead of standard output");

    std::string family = "c";
    int k = 12, m = 3, pairs = 7, fixed = 0;
    double density = 0.3;
    std::string name, group_label, out_graph, out_group;
    auto* gen_cmd = app.add_subcommand("generate", "Generate a graph and its automorphism group");
    gen_cmd->add_option("--family", family, "c (rotational rings), axial (mirror pairs) or catalog")
        ->check(CLI::IsMember({"c", "axial", "catalog"}))
        ->capture_default_str();
    gen_cmd->add_option("--k", k, "Rotation order (c)")->capture_default_str();
    gen_cmd->add_option("--m", m, "Ring count (c)")->capture_default_str();
    gen_cmd->add_option("--pairs", pairs, "Mirror pair count (axial)")->capture_default_str();
    gen_cmd->add_option("--fixed", fixed, "Fixed vertex count (axial)")->capture_default_str();
    gen_cmd->add_option("--density", density, "Edge density between orbits (axial)")->capture_default_str();
    gen_cmd->add_option("--name", name, "Catalog graph name (catalog)");
    gen_cmd->add_option("--group-label", group_label, "Catalog group label, largest group if omitted (catalog)");
    gen_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
    gen_cmd->add_option("--out-graph", out_graph, "Write the graph JSON here");
    gen_cmd->add_option("--out-group", out_group, "Write the group JSON here");

    std::string plan_path;
    int through = -1;
    int orbit = 0, count = 1;
    double magnitude = 0.5;
    auto* perturb_cmd = app.add_subcommand("perturb", "Move orbit vertices of a drawing");
    perturb_cmd->add_option("--graph", in.graph, "Graph JSON file")->required();
    perturb_cmd->add_option("--drawing", in.drawing, "Drawing JSON file")->required();
    perturb_cmd->add_option("--automorphism", in.automorphism, "Automorphism JSON file")->required();
    auto* plan_opt = perturb_cmd->add_option("--plan", plan_path, "Perturbation plan JSON file, not combined with --orbit, --count or --magnitude");
    perturb_cmd->add_option("--through", through, "Apply plan steps 1..N (all when omitted)")->needs(plan_opt);
    auto* orbit_opt = perturb_cmd->add_option("--orbit", orbit, "Orbit index for a single step")->capture_default_str();
    auto* count_opt = perturb_cmd->add_option("--count", count, "Vertices moved in the orbit")->capture_default_str();
    auto* mag_opt =
        perturb_cmd->add_option("--magnitude", magnitude, "Displacement as a multiple of the layout radius")
            ->capture_default_str();
    perturb_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
    perturb_cmd->add_option("--out", output, "Write the drawing here instead of standard output");
    // Checked here rather than with excludes() so the help text has a stable order.
    perturb_cmd->parse_complete_callback([plan_opt, orbit_opt, count_opt, mag_opt] {
        for (auto* o : {orbit_opt, count_opt, mag_opt}) {
            if (plan_opt->count() > 0 && o->count() > 0) throw CLI::ExcludesError("--plan", o->get_name());
        }
    });

    std::string experiment;
    std::string out_dir = "results";
    auto* exp_cmd = app.add_subcommand("experiment", "Run an experiment suite and write CSV and SVG results");
    exp_cmd->add_option("name", experiment, "Suite to run")->required()->check(CLI::IsMember({"exp1", "exp2", "exp3"}));
    exp_cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();
    exp_cmd->add_option("--seed", seed, "Top-level random seed")->capture_default_str();

    std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rest.begin(), rest.end());
    try {
        app.parse(rest);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        const double e = eps.value_or(default_epsilon());
        if (*sq_cmd) {
            Graph g = load_graph(read_file(in.graph));
            Drawing d = load_drawing(read_file(in.drawing));
            d.check_against(g);
            Automorphism phi = load_automorphism(read_file(in.automorphism), g);
            out << score_json(sq(g, d, phi, e), parse_formula(formula)).dump(2) << "\n";
        } else if (*sqg_cmd) {
            Graph g = load_graph(read_file(in.graph));
            Drawing d = load_drawing(read_file(in.drawing));
            d.check_against(g);
            AutomorphismGroup group = load_group(read_file(in.group), g);
            const Formula f = parse_formula(formula);
            auto rep = sqg(g, d, group, e);
            json j;
            if (f != Formula::SQ2) j["sqg1"] = r9(rep.sqg1);
            if (f != Formula::SQ1) j["sqg2"] = r9(rep.sqg2);
            j["weight"] = rep.weight;
            j["exact_count"] = rep.exact_count;
            json els = json::array();
            for (std::size_t i = 0; i < rep.per_automorphism.size(); ++i) {
                const auto& el = group.elements()[i];
                const auto& s = rep.per_automorphism[i];
                json x{{"kind", el.is_rotational() ? "rotational" : "axial"}, {"weight", s.weight},
                       {"exact", s.report.all_symmetric()}};
                if (f != Formula::SQ2) x["sq1"] = r9(s.report.sq1);
                if (f != Formula::SQ1) x["sq2"] = r9(s.report.sq2);
                els.push_back(std::move(x));
            }
            j["elements"] = std::move(els);
            out << j.dump(2) << "\n";
        } else if (*detect_cmd) {
            Graph g = load_graph(read_file(in.graph));
            Drawing d = load_drawing(read_file(in.drawing));
            d.check_against(g);
            auto det = detect_exact(g, d, tolerance);
            if (!det.symmetric) {
                out << "none\n";
            } else {
                json j;
                j["rotation"] = det.rotation ? symmetry_json(*det.rotation) : json(nullptr);
                json refl = json::array();
                for (const auto& s : det.reflections) refl.push_back(symmetry_json(s));
                j["reflections"] = std::move(refl);
                out << j.dump(2) << "\n";
            }
        } else if (*layout_cmd) {
            Graph g = load_graph(read_file(in.graph));
            cfg.algorithm = parse_layout_algorithm(algo);
            cfg.seed = seed;
            if (!outer_face.empty()) cfg.outer_face = parse_int_list(outer_face);
            std::optional<AutomorphismGroup> group;
            if (!in.group.empty()) group = load_group(read_file(in.group), g);
            if (cfg.algorithm == LayoutAlgorithm::ConcentricCircles && !group) {
                throw Error(ErrorCode::InvalidArgument, "concentric layout needs --group");
            }
            auto res = run_layout(g, cfg, group ? &*group : nullptr);
            emit(out, output, dump_drawing(res.drawing, kDigits));
        } else if (*gen_cmd) {
            std::optional<GeneratedGraph> gen;
            if (family == "c") {
                gen = gen_rotational(k, m, seed);
            } else if (family == "axial") {
                gen = gen_axial(pairs, fixed, density, seed);
            } else {
                if (name.empty()) throw Error(ErrorCode::InvalidArgument, "catalog family needs --name");
                const CatalogEntry& entry = catalog_entry(name);
                const NamedGroup* chosen = &entry.groups.front();
                if (!group_label.empty()) {
                    auto it = std::find_if(entry.groups.begin(), entry.groups.end(),
                                           [&](const NamedGroup& ng) { return ng.label == group_label; });
                    if (it == entry.groups.end()) {
                        throw Error(ErrorCode::InvalidArgument, "no group '" + group_label + "' for " + name);
                    }
                    chosen = &*it;
                }
                gen = GeneratedGraph{entry.graph, chosen->group};
            }
            const std::string gj = dump_graph(gen->graph);
            const std::string aj = dump_group(gen->group);
            if (!out_graph.empty()) write_file(out_graph, gj);
            if (!out_group.empty()) write_file(out_group, aj);
            if (out_graph.empty() || out_group.empty()) {
                json j{{"graph", json::parse(gj)}, {"group", json::parse(aj)}};
                out << j.dump() << "\n";
            }
        } else if (*perturb_cmd) {
            Graph g = load_graph(read_file(in.graph));
            Drawing d = load_drawing(read_file(in.drawing));
            d.check_against(g);
            Automorphism phi = load_automorphism(read_file(in.automorphism), g);
            PerturbationPlan plan;
            if (!plan_path.empty()) {
                plan = load_plan(read_file(plan_path));
            } else {
                plan.steps = 1;
                plan.per_step.push_back({orbit, VertexChoice::Seeded, count, magnitude, seed});
            }
            if (through > plan.steps) {
                throw Error(ErrorCode::InvalidArgument, "--through exceeds the plan's " + std::to_string(plan.steps) + " steps");
            }
            auto drawings = apply_plan(g, phi, d, plan, through);
            emit(out, output, dump_drawing(drawings.back(), kDigits));
        } else if (*exp_cmd) {
            std::vector<ExperimentResult> results;
            if (experiment == "exp1") results = run_exp1_suite(seed);
            if (experiment == "exp2") results = run_exp2_suite(seed);
            if (experiment == "exp3") results = run_exp3_suite(seed);
            write_results(results, out_dir);
            out << summary_table(results);
        }
    } catch (const Error& ex) {
        err << "error: " << ex.what() << "\n";
        return 1;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace symqual::cli
