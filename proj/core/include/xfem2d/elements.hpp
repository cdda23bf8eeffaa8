#pragma once

#include <array>
#include <cstddef>

#include "xfem2d/types.hpp"

namespace xfem2d {

enum class ElemOrder { linear, quadratic };

inline int nodes_per_element(ElemOrder o) { return o == ElemOrder::linear ? 4 : 8; }
inline int nodes_per_edge(ElemOrder o) { return o == ElemOrder::linear ? 2 : 3; }

/// Reference coordinates of local node i. Corners 1-4 counterclockwise at
/// (-1,-1),(1,-1),(1,1),(-1,1); mid-side nodes 5-8 on the edges 1-2, 2-3,
/// 3-4, 4-1 (zero-based indices here).
std::array<double, 2> reference_node(ElemOrder order, int i);

/// Shape-function values and reference gradients at a point of [-1,1]^2.
/// Evaluation of values/gradients for all nodes of the element.
struct RefShape {
    int n = 0;
    std::array<double, 8> value{};
    std::array<double, 8> dxi{};
    std::array<double, 8> deta{};
};

/// Throws DomainError when (xi,eta) is outside [-1,1]^2 (small slack for roundoff).
RefShape shape_values(ElemOrder order, double xi, double eta);

/// Shape data pushed through the isoparametric map of one element.
struct ShapeEval {
    int n = 0;
    double x = 0.0, y = 0.0;      ///< physical point
    double jacobian_det = 0.0;    ///< area scale dOmega = jacobian_det * dxi deta
    std::array<double, 8> value{};
    std::array<double, 8> dxi{}, deta{};   ///< reference gradients
    std::array<double, 8> dx{}, dy{};      ///< physical gradients
};

/// Maps a reference point to physical space for an element whose node
/// coordinates are given in local order. Throws MappingError on a singular
/// or inverted Jacobian.
ShapeEval map_to_physical(ElemOrder order, const std::array<double, 2>* node_xy,
                          double xi, double eta);

/// 1D trace of the 2D basis on local edge `edge` (0..3), parametrised by
/// t in [-1,1] running from the edge's first corner to its second.
struct EdgeTrace {
    int n = 0;                   ///< 2 (linear) or 3 (quadratic)
    std::array<int, 3> local{};  ///< local node indices on the edge (corner, corner, mid)
    std::array<double, 3> value{};
    std::array<double, 3> dt{};  ///< derivative of trace shape functions wrt t
};

EdgeTrace edge_trace(ElemOrder order, int edge, double t);

/// Local node indices of an edge: two corners, then the mid node for quadratics.
std::array<int, 3> edge_nodes(ElemOrder order, int edge);

}  // namespace xfem2d
