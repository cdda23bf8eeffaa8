#include <doctest.h>

#include <cmath>
#include <random>

#include "xfem2d/elements.hpp"

using namespace xfem2d;

TEST_CASE("linear shape functions at the element center") {
    const RefShape s = shape_values(ElemOrder::linear, 0.0, 0.0);
    for (int i = 0; i < 4; ++i) CHECK(s.value[i] == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("Kronecker-delta property at the nodes") {
    for (ElemOrder order : {ElemOrder::linear, ElemOrder::quadratic}) {
        const int nn = nodes_per_element(order);
        for (int j = 0; j < nn; ++j) {
            const auto rc = reference_node(order, j);
            const RefShape s = shape_values(order, rc[0], rc[1]);
            for (int i = 0; i < nn; ++i)
                CHECK(s.value[i] == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-14));
        }
    }
}

TEST_CASE("partition of unity and zero gradient sum at random points") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (ElemOrder order : {ElemOrder::linear, ElemOrder::quadratic}) {
        const int nn = nodes_per_element(order);
        for (int trial = 0; trial < 10000; ++trial) {
            const double xi = u(rng), eta = u(rng);
            const RefShape s = shape_values(order, xi, eta);
            double sum = 0.0, sx = 0.0, sy = 0.0;
            for (int i = 0; i < nn; ++i) {
                sum += s.value[i];
                sx += s.dxi[i];
                sy += s.deta[i];
            }
            REQUIRE(sum == doctest::Approx(1.0).epsilon(1e-13));
            REQUIRE(std::abs(sx) < 1e-13);
            REQUIRE(std::abs(sy) < 1e-13);
        }
    }
}

TEST_CASE("out-of-range reference coordinates are rejected") {
    CHECK_THROWS_AS(shape_values(ElemOrder::linear, 1.5, 0.0), DomainError);
    CHECK_THROWS_AS(edge_trace(ElemOrder::linear, 0, -1.2), DomainError);
    CHECK_THROWS_AS(edge_trace(ElemOrder::linear, 5, 0.0), DomainError);
}

namespace {
std::array<std::array<double, 2>, 8> unit_square(ElemOrder order) {
    std::array<std::array<double, 2>, 8> xy{};
    xy[0] = {0.0, 0.0};
    xy[1] = {1.0, 0.0};
    xy[2] = {1.0, 1.0};
    xy[3] = {0.0, 1.0};
    if (order == ElemOrder::quadratic) {
        xy[4] = {0.5, 0.0};
        xy[5] = {1.0, 0.5};
        xy[6] = {0.5, 1.0};
        xy[7] = {0.0, 0.5};
    }
    return xy;
}
}  // namespace

TEST_CASE("isoparametric map of the unit square") {
    for (ElemOrder order : {ElemOrder::linear, ElemOrder::quadratic}) {
        const auto xy = unit_square(order);
        const ShapeEval e = map_to_physical(order, xy.data(), 0.3, -0.7);
        CHECK(e.jacobian_det == doctest::Approx(0.25).epsilon(1e-14));
        CHECK(e.x == doctest::Approx(0.65).epsilon(1e-14));
        CHECK(e.y == doctest::Approx(0.15).epsilon(1e-14));
    }
}

TEST_CASE("linear fields are differentiated exactly (stretched rectangle)") {
    for (ElemOrder order : {ElemOrder::linear, ElemOrder::quadratic}) {
        auto xy = unit_square(order);
        const int nn = nodes_per_element(order);
        for (int i = 0; i < nn; ++i) xy[i][0] *= 2.0;  // 2 x 1 rectangle
        const ShapeEval e = map_to_physical(order, xy.data(), 0.1, 0.4);
        CHECK(e.jacobian_det == doctest::Approx(0.5).epsilon(1e-14));
        double fx = 0.0, fy = 0.0;
        for (int i = 0; i < nn; ++i) {
            const double f = 2.0 * xy[i][0] + 3.0 * xy[i][1];
            fx += e.dx[i] * f;
            fy += e.dy[i] * f;
        }
        CHECK(fx == doctest::Approx(2.0).epsilon(1e-13));
        CHECK(fy == doctest::Approx(3.0).epsilon(1e-13));
    }
}

TEST_CASE("degenerate element raises a mapping error") {
    auto xy = unit_square(ElemOrder::linear);
    xy[2] = {0.0, 0.0};  // collapse a corner onto another
    CHECK_THROWS_AS(map_to_physical(ElemOrder::linear, xy.data(), 0.9, 0.9), MappingError);
}

TEST_CASE("edge traces match the 2D basis restricted to the edge") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (ElemOrder order : {ElemOrder::linear, ElemOrder::quadratic}) {
        for (int edge = 0; edge < 4; ++edge) {
            for (int trial = 0; trial < 50; ++trial) {
                const double t = u(rng);
                const EdgeTrace tr = edge_trace(order, edge, t);
                // reference point on the edge
                double xi = 0.0, eta = 0.0;
                switch (edge) {
                    case 0: xi = t; eta = -1.0; break;
                    case 1: xi = 1.0; eta = t; break;
                    case 2: xi = -t; eta = 1.0; break;
                    case 3: xi = -1.0; eta = -t; break;
                }
                const RefShape s = shape_values(order, xi, eta);
                double sum = 0.0;
                for (int i = 0; i < tr.n; ++i) {
                    CHECK(tr.value[i] == doctest::Approx(s.value[tr.local[i]]).epsilon(1e-13));
                    sum += tr.value[i];
                }
                CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("quadratic edge midpoint picks out the mid node") {
    const EdgeTrace tr = edge_trace(ElemOrder::quadratic, 0, 0.0);
    CHECK(tr.value[2] == doctest::Approx(1.0));
    CHECK(tr.value[0] == doctest::Approx(0.0));
    CHECK(tr.value[1] == doctest::Approx(0.0));
}
