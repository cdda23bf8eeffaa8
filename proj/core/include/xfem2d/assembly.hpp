#pragma once

#include <Eigen/Sparse>
#include <complex>
#include <functional>

#include "xfem2d/enrichment.hpp"
#include "xfem2d/mesh.hpp"
#include "xfem2d/quadrature.hpp"

namespace xfem2d {

using Complex = std::complex<double>;

struct QuadratureOptions {
    int gauss_linear = 2;    ///< plain linear elements
    int gauss_quadratic = 3; ///< plain quadratic elements
    int gauss_blending = 5;  ///< partially enriched elements without a singular
                             ///< vertex; lower rules under-integrate the
                             ///< enriched products and leave the multi-term
                             ///< stiffness numerically rank-deficient
    int gauss_edge = 4;
    AdaptiveConfig adaptive; ///< singular elements / edges
};

enum class ElementClass { plain, blending, singular };

/// DOF bookkeeping of one element: standard node ids followed by the global
/// indices of the enrichment DOFs supported on it.
struct ElementDofs {
    int n_std = 0;
    int n_enr = 0;
    std::vector<Index> dofs;
    struct Enr {
        int local;     ///< local node index
        Index rank;    ///< rank in plan.enriched_nodes
        int corner;
        int term;      ///< 1-based
        double shift;
    };
    std::vector<Enr> enr;
    ElementClass cls = ElementClass::plain;
    int corner_local = -1;  ///< local index of the singular vertex, if any
    int corner_id = -1;
    Vec2 centroid;
};

ElementDofs element_dofs(const Mesh& mesh, Index e, const EnrichmentPlan& plan);

/// Shape data extended with the shifted enrichment entries
/// N_j (psi^l - psi^l_j) and their physical gradients.
struct ExtendedEval {
    ShapeEval se;
    int n_enr = 0;
    std::array<double, 40> val{}, dx{}, dy{};
};

ExtendedEval extended_eval(const Mesh& mesh, Index e, const ElementDofs& ed,
                           const EnrichmentBasis* basis, double xi, double eta);

/// Local stiffness block integral(grad v . grad w) over the element, with
/// adaptive singular cubature when the element owns an enriched corner vertex.
struct LocalMatrix {
    ElementDofs dofs;
    Eigen::MatrixXd K;
};

LocalMatrix element_matrix(const Mesh& mesh, Index e, const EnrichmentPlan& plan,
                           const EnrichmentBasis* basis, const QuadratureOptions& opts);

template <class Scalar>
struct AssembledSystem {
    Eigen::SparseMatrix<Scalar> matrix;  ///< free x free, Dirichlet eliminated
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> rhs;
    Index n_total = 0;                   ///< standard + enrichment DOFs
    std::vector<Index> free_of_global;   ///< size n_total, -1 when eliminated
    std::vector<Index> global_of_free;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> fixed_values;  ///< size n_total
};

using RealSystem = AssembledSystem<double>;
using ComplexSystem = AssembledSystem<Complex>;

/// Mixed Dirichlet-Neumann Laplace problem. `dirichlet_tags` name the edges
/// whose nodes are pinned to `dirichlet_value`; `flux_tags` edges receive the
/// natural boundary term with flux `flux` (n is the outward fluid normal;
/// side = +-1 identifies the face when evaluating on a double-node cut).
struct LaplaceBC {
    std::vector<BoundaryTag> dirichlet_tags{BoundaryTag::dirichlet};
    std::vector<BoundaryTag> flux_tags{BoundaryTag::body};
    std::function<double(double x, double y, int side)> dirichlet_value;
    std::function<double(double x, double y, double nx, double ny, int side)> flux;
};

RealSystem assemble_plate_system(const Mesh& mesh, const EnrichmentPlan& plan,
                                 const EnrichmentBasis* basis, const LaplaceBC& bc,
                                 const QuadratureOptions& opts);

/// Frequency-domain radiation problem of a heaving body: Laplace stiffness
/// plus i*k mass term on the matching boundary and -k*tanh(k*h) on the free
/// surface; body flux i*omega*eta_a*n3.
struct RadiationParams {
    double omega = 0.0;
    double h = 0.0;
    double g = 9.81;
    double eta_a = 1.0;
    double k = 0.0;  ///< wavenumber from the dispersion relation
};

ComplexSystem assemble_radiation_system(const Mesh& mesh, const EnrichmentPlan& plan,
                                        const EnrichmentBasis* basis,
                                        const RadiationParams& p,
                                        const QuadratureOptions& opts);

/// Geometry of a boundary edge at one trace point.
struct EdgePoint {
    double x, y;
    double nx, ny;   ///< outward fluid normal
    double jac;      ///< ds = jac * dt
};

EdgePoint edge_point(const Mesh& mesh, Index e, int local_edge, double t);

}  // namespace xfem2d
