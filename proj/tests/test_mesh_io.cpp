#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "xfem2d/mesh.hpp"

using namespace xfem2d;

namespace {

std::string write_temp(const std::string& text) {
    static int counter = 0;
    const std::string path = "meshio_test_" + std::to_string(counter++) + ".txt";
    std::ofstream out(path);
    out << text;
    return path;
}

const char* kMinimalMesh = R"(# one bilinear element
NODES
0 0.0 0.0
1 1.0 0.0
2 1.0 1.0
3 0.0 1.0
ELEMENTS
0 4 0 1 2 3
EDGES
0 0 body
0 1 matching
0 2 free_surface
0 3 symmetry
TWINS
)";

}  // namespace

TEST_CASE("minimal mesh file round-trips") {
    const std::string path = write_temp(kMinimalMesh);
    const Mesh m = read_mesh_file(path);
    CHECK(m.n_nodes() == 4);
    CHECK(m.n_elements() == 1);
    CHECK(m.boundary_edges.size() == 4);
    CHECK(m.order == ElemOrder::linear);

    const std::string copy = path + ".copy";
    write_mesh_file(m, copy);
    const Mesh m2 = read_mesh_file(copy);
    CHECK(m2.n_nodes() == m.n_nodes());
    CHECK(m2.boundary_edges.size() == m.boundary_edges.size());
    for (Index n = 0; n < m.n_nodes(); ++n) {
        CHECK(m2.nodes[n].x == m.nodes[n].x);
        CHECK(m2.nodes[n].y == m.nodes[n].y);
    }
    std::remove(path.c_str());
    std::remove(copy.c_str());
}

TEST_CASE("generated meshes survive a file round-trip") {
    const Mesh m = build_plate_domain(1.0, 2.0, 0.5, ElemOrder::quadratic);
    const std::string path = write_temp("");
    write_mesh_file(m, path);
    const Mesh m2 = read_mesh_file(path);
    CHECK(m2.n_nodes() == m.n_nodes());
    CHECK(m2.n_elements() == m.n_elements());
    int twins = 0;
    for (const Node& n : m2.nodes)
        if (n.twin != kInvalidIndex) twins++;
    CHECK(twins == 14);
    std::remove(path.c_str());
}

TEST_CASE("parser reports line numbers for malformed input") {
    const std::string path = write_temp(
        "NODES\n0 0.0 0.0\n1 1.0 0.0\n2 1.0 1.0\n3 0.0 1.0\n"
        "ELEMENTS\n0 5 0 1 2 3\n");  // node count 5 is not a known type
    try {
        read_mesh_file(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 7);
        CHECK(std::string(e.what()).find("unknown element type") != std::string::npos);
    }
    std::remove(path.c_str());
}

TEST_CASE("parser rejects a flipped element") {
    const std::string path = write_temp(
        "NODES\n0 0.0 0.0\n1 1.0 0.0\n2 1.0 1.0\n3 0.0 1.0\n"
        "ELEMENTS\n0 4 0 3 2 1\n"
        "EDGES\n0 0 dirichlet\n0 1 dirichlet\n0 2 dirichlet\n0 3 dirichlet\n");
    CHECK_THROWS_AS(read_mesh_file(path), ParseError);
    std::remove(path.c_str());
}

TEST_CASE("parser rejects unknown tags and missing edge groups") {
    const std::string bad_tag = write_temp(
        "NODES\n0 0.0 0.0\n1 1.0 0.0\n2 1.0 1.0\n3 0.0 1.0\n"
        "ELEMENTS\n0 4 0 1 2 3\n"
        "EDGES\n0 0 wall\n");
    CHECK_THROWS_AS(read_mesh_file(bad_tag), ParseError);
    std::remove(bad_tag.c_str());

    const std::string unclosed = write_temp(
        "NODES\n0 0.0 0.0\n1 1.0 0.0\n2 1.0 1.0\n3 0.0 1.0\n"
        "ELEMENTS\n0 4 0 1 2 3\n"
        "EDGES\n0 0 body\n0 1 body\n0 2 body\n");
    CHECK_THROWS_AS(read_mesh_file(unclosed), ParseError);
    std::remove(unclosed.c_str());
}
