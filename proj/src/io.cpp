#include "symqual/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace symqual {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& field, const std::string& what) {
    throw Error(ErrorCode::ParseError, "field '" + field + "': " + what);
}

json parse(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < upto; ++i) {
            if (text[i] == '\n') ++line;
        }
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + e.what());
    }
}

const json& field(const json& obj, const char* name, const std::string& path = {}) {
    std::string full = path.empty() ? name : path + "." + name;
    if (!obj.is_object()) schema_error(path.empty() ? "<root>" : path, "expected an object");
    auto it = obj.find(name);
    if (it == obj.end()) schema_error(full, "missing");
    return *it;
}

int as_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) schema_error(path, "expected an integer");
    return j.get<int>();
}

double as_double(const json& j, const std::string& path) {
    if (!j.is_number()) schema_error(path, "expected a number");
    return j.get<double>();
}

std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) schema_error(path, "expected a string");
    return j.get<std::string>();
}

std::vector<int> as_int_array(const json& j, const std::string& path) {
    if (!j.is_array()) schema_error(path, "expected an array");
    std::vector<int> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

Automorphism element_from_json(const json& e, const Graph& g, const std::string& path) {
    std::string kind = as_string(field(e, "kind", path), path + ".kind");
    auto mapping = as_int_array(field(e, "mapping", path), path + ".mapping");
    if (kind == "axial") {
        return validate_automorphism(g, std::move(mapping), SymmetryKind::Axial);
    }
    if (kind != "rotational") schema_error(path + ".kind", "expected 'rotational' or 'axial'");
    auto phi = validate_automorphism(g, std::move(mapping), SymmetryKind::Rotational);
    if (e.contains("k")) {
        int k = as_int(e["k"], path + ".k");
        if (k != phi.order()) {
            throw Error(ErrorCode::KindMismatch, path + ": declared k=" + std::to_string(k) +
                                                     " but permutation order is " + std::to_string(phi.order()));
        }
    }
    return phi;
}

json element_to_json(const Automorphism& phi) {
    json e = json::object();
    if (phi.is_rotational()) {
        e["kind"] = "rotational";
        e["k"] = phi.order();
    } else {
        e["kind"] = "axial";
    }
    e["mapping"] = phi.mapping();
    return e;
}

}  // namespace

double round_significant(double value, int digits) {
    if (value == 0.0 || !std::isfinite(value)) return value;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    return std::strtod(buf, nullptr);
}

Graph load_graph(std::string_view text) {
    json j = parse(text);
    std::string name = j.is_object() && j.contains("name") ? as_string(j["name"], "name") : std::string{};
    int n = as_int(field(j, "n"), "n");
    const json& edges = field(j, "edges");
    if (!edges.is_array()) schema_error("edges", "expected an array");
    std::vector<std::pair<int, int>> list;
    list.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        std::string p = "edges[" + std::to_string(i) + "]";
        if (!edges[i].is_array() || edges[i].size() != 2) schema_error(p, "expected a pair [u, v]");
        list.emplace_back(as_int(edges[i][0], p + "[0]"), as_int(edges[i][1], p + "[1]"));
    }
    try {
        return Graph(n, list, std::move(name));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidGraph) throw Error(ErrorCode::ParseError, e.what());
        throw;
    }
}

Drawing load_drawing(std::string_view text) {
    json j = parse(text);
    std::string graph = as_string(field(j, "graph"), "graph");
    const json& pos = field(j, "positions");
    if (!pos.is_array()) schema_error("positions", "expected an array");
    std::vector<Vec2> pts;
    pts.reserve(pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i) {
        std::string p = "positions[" + std::to_string(i) + "]";
        if (!pos[i].is_array() || pos[i].size() != 2) schema_error(p, "expected a pair [x, y]");
        pts.push_back({as_double(pos[i][0], p + "[0]"), as_double(pos[i][1], p + "[1]")});
    }
    return Drawing(std::move(graph), std::move(pts));
}

AutomorphismGroup load_group(std::string_view text, const Graph& g) {
    json j = parse(text);
    std::string graph = as_string(field(j, "graph"), "graph");
    if (graph != g.name()) {
        throw Error(ErrorCode::GraphMismatch, "group belongs to graph '" + graph + "' but graph is '" + g.name() + "'");
    }
    std::string kind_s = as_string(field(j, "kind"), "kind");
    GroupKind kind;
    if (kind_s == "axial2") kind = GroupKind::Axial2;
    else if (kind_s == "cyclic") kind = GroupKind::Cyclic;
    else if (kind_s == "dihedral") kind = GroupKind::Dihedral;
    else schema_error("kind", "expected 'axial2', 'cyclic' or 'dihedral'");
    int order = as_int(field(j, "order"), "order");
    const json& els = field(j, "elements");
    if (!els.is_array()) schema_error("elements", "expected an array");
    std::vector<Automorphism> elements;
    for (std::size_t i = 0; i < els.size(); ++i) {
        elements.push_back(element_from_json(els[i], g, "elements[" + std::to_string(i) + "]"));
    }
    return AutomorphismGroup(g, kind, order, std::move(elements));
}

Automorphism load_automorphism(std::string_view text, const Graph& g) {
    json j = parse(text);
    if (j.is_object() && j.contains("graph")) {
        std::string graph = as_string(j["graph"], "graph");
        if (graph != g.name()) {
            throw Error(ErrorCode::GraphMismatch,
                        "automorphism belongs to graph '" + graph + "' but graph is '" + g.name() + "'");
        }
    }
    return element_from_json(j, g, "");
}

std::string dump_graph(const Graph& g) {
    json j = json::object();
    j["name"] = g.name();
    j["n"] = g.vertex_count();
    json edges = json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
    j["edges"] = std::move(edges);
    return j.dump() + "\n";
}

std::string dump_drawing(const Drawing& d, int significant_digits) {
    json j = json::object();
    j["graph"] = d.graph_name();
    json pos = json::array();
    for (Vec2 p : d.positions()) {
        pos.push_back({round_significant(p.x, significant_digits), round_significant(p.y, significant_digits)});
    }
    j["positions"] = std::move(pos);
    return j.dump() + "\n";
}

std::string dump_group(const AutomorphismGroup& group) {
    json j = json::object();
    j["graph"] = group.graph_name();
    j["kind"] = std::string(to_string(group.kind()));
    j["order"] = group.order();
    json els = json::array();
    for (const auto& e : group.elements()) els.push_back(element_to_json(e));
    j["elements"] = std::move(els);
    return j.dump() + "\n";
}

std::string dump_automorphism(const Automorphism& phi, const std::string& graph_name) {
    json j = element_to_json(phi);
    j["graph"] = graph_name;
    return j.dump() + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

}  // namespace symqual
