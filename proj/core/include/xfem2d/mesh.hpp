#pragma once

#include <array>
#include <string>
#include <vector>

#include "xfem2d/elements.hpp"
#include "xfem2d/enrichment.hpp"
#include "xfem2d/types.hpp"

namespace xfem2d {

struct Node {
    double x = 0.0, y = 0.0;
    Index twin = kInvalidIndex;  ///< duplicated node on the other face, if any
};

struct Element {
    std::array<Index, 8> conn{};  ///< first 4 or 8 entries used
};

enum class BoundaryTag { body, free_surface, bottom, matching, dirichlet, symmetry };

const char* to_string(BoundaryTag t);
BoundaryTag boundary_tag_from_string(const std::string& s);

struct BoundaryEdge {
    Index element = kInvalidIndex;
    int local_edge = 0;
    BoundaryTag tag = BoundaryTag::body;
};

/// Conforming all-quad mesh, single element order, immutable once built.
struct Mesh {
    ElemOrder order = ElemOrder::linear;
    std::vector<Node> nodes;
    std::vector<Element> elements;
    std::vector<BoundaryEdge> boundary_edges;
    std::vector<Corner> corners;

    Index n_nodes() const { return static_cast<Index>(nodes.size()); }
    Index n_elements() const { return static_cast<Index>(elements.size()); }

    std::array<double, 2> node_xy(Index n) const { return {nodes[n].x, nodes[n].y}; }

    /// Node coordinates of element e in local order.
    void element_coords(Index e, std::array<double, 2>* xy) const;

    /// Centroid of element e (average of corner nodes).
    Vec2 element_centroid(Index e) const;

    /// Elements adjacent to each node (built lazily by finalize()).
    const std::vector<std::vector<Index>>& node_elements() const { return node_elems_; }

    /// Nodes lying on edges with the given tag.
    std::vector<Index> nodes_on_tag(BoundaryTag tag) const;

    /// Fills adjacency and validates: conformity of shared edges, positive
    /// Jacobians, tagged boundary closure, symmetric twins.
    void finalize();

private:
    std::vector<std::vector<Index>> node_elems_;
};

/// Uniform square-cell mesh on [-L,L]^2 with a zero-thickness plate on
/// y = 0, |x| <= a. Interior plate nodes are duplicated (upper/lower face);
/// the two tips stay single-valued and are registered as corners with
/// gamma = 0. Outer boundary is tagged dirichlet, the plate faces body.
Mesh build_plate_domain(double a, double L, double delta_h, ElemOrder order);

/// Half-domain mesh (x >= 0) for a surface-piercing rectangle of beam B and
/// draft D heaving on y = 0, water depth h, matching boundary at
/// x = B/2 + L_x. Five matched blocks: a body-fitted fan of two trapezoid
/// blocks around the submerged corner (inner box x <= B, y >= -2D), an outer
/// free-surface block, and two bottom blocks stretched geometrically (ratio
/// 1.1) toward the sea bed. N is the element count on the half bottom of the
/// body (= side wall = inner-block edges), N_ox/N_oy the outer counts.
Mesh build_rectangle_domain(double B, double D, double h, double L_x, int N, int N_ox,
                            int N_oy, ElemOrder order);

/// Reads the ASCII mesh format (sections NODES, ELEMENTS, EDGES, TWINS);
/// see the README for the exact grammar. Runs finalize().
Mesh read_mesh_file(const std::string& path);

/// Writes the same format.
void write_mesh_file(const Mesh& mesh, const std::string& path);

}  // namespace xfem2d
