#include "xfem2d/elements.hpp"

#include <cmath>

namespace xfem2d {

namespace {
constexpr double kRefSlack = 1e-12;

constexpr std::array<std::array<double, 2>, 8> kRefNodes = {{
    {-1.0, -1.0}, {1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0},  // corners, CCW
    {0.0, -1.0},  {1.0, 0.0},  {0.0, 1.0}, {-1.0, 0.0},  // mid-side
}};
}  // namespace

std::array<double, 2> reference_node(ElemOrder order, int i) {
    if (i < 0 || i >= nodes_per_element(order)) throw DomainError("reference_node: bad index");
    return kRefNodes[static_cast<std::size_t>(i)];
}

RefShape shape_values(ElemOrder order, double xi, double eta) {
    if (std::abs(xi) > 1.0 + kRefSlack || std::abs(eta) > 1.0 + kRefSlack)
        throw DomainError("shape_values: reference point outside [-1,1]^2");

    RefShape s;
    if (order == ElemOrder::linear) {
        s.n = 4;
        for (int i = 0; i < 4; ++i) {
            const double xi_i = kRefNodes[i][0], eta_i = kRefNodes[i][1];
            s.value[i] = 0.25 * (1.0 + xi_i * xi) * (1.0 + eta_i * eta);
            s.dxi[i] = 0.25 * xi_i * (1.0 + eta_i * eta);
            s.deta[i] = 0.25 * eta_i * (1.0 + xi_i * xi);
        }
        return s;
    }

    // 8-node serendipity quadrilateral
    s.n = 8;
    for (int i = 0; i < 4; ++i) {
        const double xi_i = kRefNodes[i][0], eta_i = kRefNodes[i][1];
        const double a = 1.0 + xi_i * xi, b = 1.0 + eta_i * eta;
        const double c = xi_i * xi + eta_i * eta - 1.0;
        s.value[i] = 0.25 * a * b * c;
        s.dxi[i] = 0.25 * xi_i * b * (c + a);
        s.deta[i] = 0.25 * eta_i * a * (c + b);
    }
    for (int i : {4, 6}) {  // mid nodes on eta = -1, +1
        const double eta_i = kRefNodes[i][1];
        s.value[i] = 0.5 * (1.0 - xi * xi) * (1.0 + eta_i * eta);
        s.dxi[i] = -xi * (1.0 + eta_i * eta);
        s.deta[i] = 0.5 * eta_i * (1.0 - xi * xi);
    }
    for (int i : {5, 7}) {  // mid nodes on xi = +1, -1
        const double xi_i = kRefNodes[i][0];
        s.value[i] = 0.5 * (1.0 + xi_i * xi) * (1.0 - eta * eta);
        s.dxi[i] = 0.5 * xi_i * (1.0 - eta * eta);
        s.deta[i] = -eta * (1.0 + xi_i * xi);
    }
    return s;
}

ShapeEval map_to_physical(ElemOrder order, const std::array<double, 2>* xy,
                          double xi, double eta) {
    const RefShape ref = shape_values(order, xi, eta);
    ShapeEval e;
    e.n = ref.n;
    e.value = ref.value;
    e.dxi = ref.dxi;
    e.deta = ref.deta;

    double j11 = 0.0, j12 = 0.0, j21 = 0.0, j22 = 0.0;  // dx/dxi dx/deta; dy/dxi dy/deta
    for (int i = 0; i < ref.n; ++i) {
        e.x += ref.value[i] * xy[i][0];
        e.y += ref.value[i] * xy[i][1];
        j11 += ref.dxi[i] * xy[i][0];
        j12 += ref.deta[i] * xy[i][0];
        j21 += ref.dxi[i] * xy[i][1];
        j22 += ref.deta[i] * xy[i][1];
    }
    const double det = j11 * j22 - j12 * j21;
    if (!(det > 0.0) || !std::isfinite(det))
        throw MappingError("map_to_physical: singular or inverted Jacobian");
    e.jacobian_det = det;

    const double inv = 1.0 / det;
    for (int i = 0; i < ref.n; ++i) {
        // grad_x N = J^{-T} grad_ref N
        e.dx[i] = (j22 * ref.dxi[i] - j21 * ref.deta[i]) * inv;
        e.dy[i] = (-j12 * ref.dxi[i] + j11 * ref.deta[i]) * inv;
    }
    return e;
}

std::array<int, 3> edge_nodes(ElemOrder order, int edge) {
    if (edge < 0 || edge > 3) throw DomainError("edge_nodes: edge index out of range");
    const int a = edge, b = (edge + 1) % 4;
    if (order == ElemOrder::linear) return {a, b, -1};
    return {a, b, 4 + edge};
}

EdgeTrace edge_trace(ElemOrder order, int edge, double t) {
    if (std::abs(t) > 1.0 + kRefSlack) throw DomainError("edge_trace: t outside [-1,1]");
    const auto ln = edge_nodes(order, edge);
    EdgeTrace tr;
    tr.local = ln;
    if (order == ElemOrder::linear) {
        tr.n = 2;
        tr.value = {0.5 * (1.0 - t), 0.5 * (1.0 + t), 0.0};
        tr.dt = {-0.5, 0.5, 0.0};
    } else {
        tr.n = 3;
        tr.value = {0.5 * t * (t - 1.0), 0.5 * t * (t + 1.0), 1.0 - t * t};
        tr.dt = {t - 0.5, t + 0.5, -2.0 * t};
    }
    return tr;
}

}  // namespace xfem2d
