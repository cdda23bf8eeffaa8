#pragma once

#include <span>

#include "xfem2d/assembly.hpp"

namespace xfem2d {

/// Solved field: mesh + enrichment plan + DOF vector. Nodal evaluation
/// returns the nodal DOF exactly (shifted enrichment preserves the
/// Kronecker-delta property); interior evaluation expands the enriched basis.
template <class Scalar>
struct SolutionField {
    const Mesh* mesh = nullptr;
    const EnrichmentPlan* plan = nullptr;
    const EnrichmentBasis* basis = nullptr;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> dofs;

    Scalar node_value(Index n) const { return dofs[n]; }
    Scalar value(Index e, double xi, double eta) const;
    std::array<Scalar, 2> gradient(Index e, double xi, double eta) const;
};

using RealField = SolutionField<double>;
using ComplexField = SolutionField<Complex>;

/// Normalized root-sum-square nodal error sqrt(sum (num-ana)^2 / sum ana^2).
double l2_error(std::span<const double> numerical, std::span<const double> analytic);

/// Nodal velocities, averaged over the elements sharing each node. At a
/// singular corner node only the standard (finite) part is reported.
std::vector<Vec2> recover_velocity(const RealField& field);

/// Heave added mass of a body held fixed in a uniform vertical stream of
/// speed U (signed far-field v): converts to the moving-body potential
/// phi2 = (U y - phi)/U and integrates rho * phi2 * n2 over the body faces.
double added_mass_uniform_flow(const RealField& field, double U, double rho,
                               const QuadratureOptions& opts);

struct RadiationCoeffs {
    double A33 = 0.0;  ///< added mass (2D, per unit length)
    double B33 = 0.0;  ///< radiation damping
    Complex force;     ///< complex heave force amplitude
};

/// Linear radiation force by pressure integration over the full (mirrored)
/// body; decomposition F = (omega^2 A33 - i omega B33) eta_a.
RadiationCoeffs radiation_coefficients(const ComplexField& field, double omega, double rho,
                                       double eta_a, const QuadratureOptions& opts);

/// Time-averaged 2nd-order vertical force by direct pressure integration
/// over the mean wetted surface (both mirrored halves):
///  Fbar = -rho * surface integral of [ 1/2 Re{eta_a conj(i omega dphi/dy)}
///          + 1/4 |grad phi|^2 ] n3 dS.
/// Velocity-squared terms on singular edges use the endpoint-adaptive rule.
/// Both pressure terms are evaluated from the numerical field trace; the
/// correlated errors of the linear and quadratic terms then partially cancel
/// on coarse meshes. Passing exact_body_flux = true substitutes the imposed
/// heave condition Im(dphi/dy) = omega eta_a into the linear term instead.
double mean_vertical_force(const ComplexField& field, double omega, double rho,
                           double eta_a, const QuadratureOptions& opts,
                           bool exact_body_flux = false);

/// Independent damping estimate from the radiated-wave energy flux through
/// the matching boundary: B33 = 4 P / (omega eta_a)^2, with P the mean
/// outgoing energy flux (equal to group velocity x energy density of the
/// outgoing wave mode in the exact solution).
double damping_from_energy_flux(const ComplexField& field, double omega, double rho,
                                double eta_a);

}  // namespace xfem2d
