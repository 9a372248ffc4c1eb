#include <filesystem>
#include <json.hpp>

#include "helpers.hpp"
#include "symqual/generators.hpp"
#include "symqual/io.hpp"

using namespace symqual;
using namespace symqual::test;

TEST_SUITE("io") {
TEST_CASE("well-formed petersen file") {
    Graph g = load_graph(dump_graph(petersen_graph()));
    CHECK(g.vertex_count() == 10);
    CHECK(g.edge_count() == 15);
    CHECK(g.name() == "petersen");
}

TEST_CASE("single vertex without edges") {
    Graph g = load_graph(R"({"name": "k1", "n": 1, "edges": []})");
    CHECK(g.vertex_count() == 1);
    CHECK(g.edge_count() == 0);
}

TEST_CASE("duplicate edge is a parse error") {
    CHECK(error_code_of([] { load_graph(R"({"n": 3, "edges": [[0,1],[1,0]]})"); }) == ErrorCode::ParseError);
}

TEST_CASE("syntax errors report the line") {
    try {
        load_graph("{\n\"n\": 3,\n\"edges\": [[0,1],\n]}");
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }
}

TEST_CASE("schema errors name the field") {
    try {
        load_graph(R"({"n": 3, "edges": [[0,1],[1,"x"]]})");
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(std::string(e.what()).find("edges[1][1]") != std::string::npos);
    }
    CHECK(error_code_of([] { load_graph(R"({"edges": []})"); }) == ErrorCode::ParseError);
    CHECK(error_code_of([] { load_drawing(R"({"graph": "g", "positions": [[0]]})"); }) == ErrorCode::ParseError);
}

TEST_CASE("round trips are structurally identical") {
    for (const auto& entry : catalog()) {
        const std::string gtext = dump_graph(entry.graph);
        Graph g = load_graph(gtext);
        CHECK(dump_graph(g) == gtext);
        for (const auto& ng : entry.groups) {
            const std::string text = dump_group(ng.group);
            auto group = load_group(text, g);
            CHECK(dump_group(group) == text);
            CHECK(group.kind() == ng.group.kind());
            CHECK(group.order() == ng.group.order());
        }
    }
    Drawing d("g", {{0.1, -2.5}, {1e-300, 3.0}});
    CHECK(dump_drawing(load_drawing(dump_drawing(d))) == dump_drawing(d));
    CHECK(load_drawing(dump_drawing(d)).positions() == d.positions());
}

TEST_CASE("group loading validates graph, kinds and closure") {
    Graph g = cycle_graph(4);
    CHECK(error_code_of([&] {
              load_group(R"({"graph":"other","kind":"axial2","order":2,"elements":[{"kind":"axial","mapping":[0,3,2,1]}]})", g);
          }) == ErrorCode::GraphMismatch);
    CHECK(error_code_of([&] {
              load_group(R"({"graph":"C4","kind":"cyclic","order":4,"elements":[{"kind":"rotational","k":4,"mapping":[1,2,3,0]}]})", g);
          }) == ErrorCode::InvalidGroup);
    CHECK(error_code_of([&] {
              load_automorphism(R"({"kind":"rotational","k":3,"mapping":[1,2,3,0]})", g);
          }) == ErrorCode::KindMismatch);
    CHECK(error_code_of([&] { load_automorphism(R"({"kind":"axial","mapping":[1,2,3,0]})", g); }) ==
          ErrorCode::KindMismatch);
    auto group = load_group(
        R"({"graph":"C4","kind":"cyclic","order":4,"elements":[
            {"kind":"rotational","k":4,"mapping":[1,2,3,0]},
            {"kind":"rotational","k":2,"mapping":[2,3,0,1]},
            {"kind":"rotational","k":4,"mapping":[3,0,1,2]}]})",
        g);
    CHECK(group.total_weight() == 10);
}

TEST_CASE("significant-digit rounding") {
    CHECK(round_significant(0.123456789123, 9) == 0.123456789);
    CHECK(round_significant(0.0, 9) == 0.0);
    CHECK(round_significant(123456789.9, 9) == 123456790.0);
}

TEST_CASE("file helpers") {
    auto dir = std::filesystem::temp_directory_path() / "symqual_io_test";
    std::filesystem::remove_all(dir);
    const std::string path = (dir / "a" / "b.txt").string();
    write_file(path, "hello");
    CHECK(read_file(path) == "hello");
    CHECK(error_code_of([&] { read_file((dir / "missing").string()); }) == ErrorCode::IoError);
    std::filesystem::remove_all(dir);
}
}
