#pragma once

#include <memory>
#include <vector>

#include "xfem2d/analytic.hpp"
#include "xfem2d/types.hpp"

namespace xfem2d {

struct Mesh;  // mesh.hpp includes this header for Corner

/// A singular point of the domain boundary: a sharp corner of interior
/// angle gamma (gamma = 0 for the tip of a zero-thickness plate). The local
/// polar angle theta is measured from the wedge face with direction
/// `wall_direction`, sweeping through the fluid with `sweep` orientation
/// (+1 counterclockwise), so theta in [0, 2*pi - gamma].
struct Corner {
    double x = 0.0, y = 0.0;
    double gamma = 0.0;           ///< interior wedge angle, 0 <= gamma < pi
    double wall_direction = 0.0;  ///< polar angle of the theta = 0 face direction
    int sweep = +1;
    Index node = kInvalidIndex;   ///< mesh node at the corner
};

/// Exponent m_j = j*pi / (2*pi - gamma) of the corner-flow family.
double corner_exponent(double gamma, int j);

/// Local polar coordinates of (x,y) in a corner frame. `side_hint` resolves
/// the wrap-around ambiguity for points on a wedge face (pass a point known
/// to lie strictly inside the fluid, e.g. the element centroid).
struct CornerPolar {
    double r = 0.0;
    double theta = 0.0;
};
CornerPolar corner_polar(const Corner& c, double x, double y,
                         const Vec2* side_hint = nullptr);

/// psi^l = r^{m_l} cos(m_l theta). Throws GeometryError for points inside
/// the solid wedge (beyond roundoff).
double corner_basis(const Corner& c, int l, double x, double y,
                    const Vec2* side_hint = nullptr);

/// Cartesian gradient of psi^l; r = 0 raises SingularEvalError.
Vec2 corner_basis_gradient(const Corner& c, int l, double x, double y,
                           const Vec2* side_hint = nullptr);

/// Enrichment function family: corner-flow singular terms attached to each
/// corner, or a known analytic field (one term, shared by all corners).
class EnrichmentBasis {
public:
    enum class Kind { corner_flow, analytic_field };

    static EnrichmentBasis corner_flow(std::vector<Corner> corners, int n_terms);
    static EnrichmentBasis analytic_field(std::vector<Corner> corners, PlateField field);

    Kind kind() const { return kind_; }
    int n_terms() const { return n_terms_; }
    const std::vector<Corner>& corners() const { return corners_; }

    /// Value of term l (1-based) of corner ci's family at (x,y).
    double value(int ci, int l, double x, double y, const Vec2* side_hint = nullptr) const;
    Vec2 gradient(int ci, int l, double x, double y, const Vec2* side_hint = nullptr) const;

    /// Leading radial exponent m_1 of corner ci (1/2 for the analytic plate field).
    double leading_exponent(int ci) const;

private:
    Kind kind_ = Kind::corner_flow;
    int n_terms_ = 1;
    std::vector<Corner> corners_;
    std::shared_ptr<PlateField> field_;
};

enum class Strategy { point, patch, radius };

/// Which nodes carry extra DOFs, their shift values and DOF layout.
/// Extra DOFs are appended after the standard ones, term-major:
/// dof(node rank, l) = n_std + (l-1)*n_enriched + rank.
struct EnrichmentPlan {
    Strategy strategy = Strategy::radius;
    double r_enri = 0.0;
    int n_terms = 0;

    Index n_std = 0;
    std::vector<Index> enriched_nodes;          ///< ascending node ids
    std::vector<int> node_corner;               ///< owning corner per enriched node
    std::vector<std::vector<double>> shifts;    ///< shifts[l-1][rank] = psi^l(x_j, y_j)
    std::vector<Index> rank_of_node;            ///< n_std entries, -1 when not enriched

    Index extra_dofs() const {
        return static_cast<Index>(enriched_nodes.size()) * n_terms;
    }
    Index total_dofs() const { return n_std + extra_dofs(); }
    Index dof(Index rank, int l) const {
        return n_std + static_cast<Index>(l - 1) * static_cast<Index>(enriched_nodes.size()) +
               rank;
    }
    bool empty() const { return enriched_nodes.empty(); }
};

/// Builds the enrichment plan for a mesh + basis with one of the three
/// node-selection strategies:
///  - point:  the corner nodes themselves;
///  - patch:  every node of every element that owns a corner node;
///  - radius: every node within r_enri of a corner (ties included).
/// Nodes on the Dirichlet boundary are never enriched.
EnrichmentPlan select_enriched_nodes(const Mesh& mesh, const EnrichmentBasis& basis,
                                     Strategy strategy, double r_enri, int n_terms);

/// Makes an empty plan (plain FEM) for a mesh with n_std nodes.
EnrichmentPlan no_enrichment(Index n_std);

}  // namespace xfem2d
