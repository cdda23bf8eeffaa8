#include "xfem2d/hydro.hpp"

#include <cmath>

namespace xfem2d {

template <class Scalar>
Scalar SolutionField<Scalar>::value(Index e, double xi, double eta) const {
    const ElementDofs ed = element_dofs(*mesh, e, plan ? *plan : EnrichmentPlan{});
    const ExtendedEval ev = extended_eval(*mesh, e, ed, basis, xi, eta);
    Scalar v = Scalar(0);
    for (int i = 0; i < ed.n_std; ++i)
        v += dofs[ed.dofs[static_cast<std::size_t>(i)]] * ev.se.value[i];
    for (int a = 0; a < ed.n_enr; ++a)
        v += dofs[ed.dofs[static_cast<std::size_t>(ed.n_std + a)]] * ev.val[a];
    return v;
}

template <class Scalar>
std::array<Scalar, 2> SolutionField<Scalar>::gradient(Index e, double xi, double eta) const {
    const ElementDofs ed = element_dofs(*mesh, e, plan ? *plan : EnrichmentPlan{});
    const ExtendedEval ev = extended_eval(*mesh, e, ed, basis, xi, eta);
    std::array<Scalar, 2> g{Scalar(0), Scalar(0)};
    for (int i = 0; i < ed.n_std; ++i) {
        const Scalar d = dofs[ed.dofs[static_cast<std::size_t>(i)]];
        g[0] += d * ev.se.dx[i];
        g[1] += d * ev.se.dy[i];
    }
    for (int a = 0; a < ed.n_enr; ++a) {
        const Scalar d = dofs[ed.dofs[static_cast<std::size_t>(ed.n_std + a)]];
        g[0] += d * ev.dx[a];
        g[1] += d * ev.dy[a];
    }
    return g;
}

template struct SolutionField<double>;
template struct SolutionField<Complex>;

double l2_error(std::span<const double> numerical, std::span<const double> analytic) {
    if (numerical.size() != analytic.size())
        throw DomainError("l2_error: size mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < numerical.size(); ++i) {
        const double d = numerical[i] - analytic[i];
        num += d * d;
        den += analytic[i] * analytic[i];
    }
    if (den == 0.0) throw DomainError("l2_error: analytic norm is zero");
    return std::sqrt(num / den);
}

std::vector<Vec2> recover_velocity(const RealField& field) {
    const Mesh& mesh = *field.mesh;
    std::vector<Vec2> vel(mesh.nodes.size());
    std::vector<int> count(mesh.nodes.size(), 0);
    const EnrichmentPlan empty = no_enrichment(mesh.n_nodes());
    const int nn = nodes_per_element(mesh.order);
    for (Index e = 0; e < mesh.n_elements(); ++e) {
        const ElementDofs ed = element_dofs(mesh, e, field.plan ? *field.plan : empty);
        for (int i = 0; i < nn; ++i) {
            const auto rc = reference_node(mesh.order, i);
            const Index node = mesh.elements[e].conn[i];
            std::array<double, 2> g;
            try {
                const auto gr = field.gradient(e, rc[0], rc[1]);
                g = {gr[0], gr[1]};
            } catch (const SingularEvalError&) {
                // Corner node of a singular element: report the finite standard part.
                const ElementDofs plain = element_dofs(mesh, e, empty);
                const ExtendedEval ev = extended_eval(mesh, e, plain, nullptr, rc[0], rc[1]);
                g = {0.0, 0.0};
                for (int j = 0; j < plain.n_std; ++j) {
                    g[0] += field.dofs[plain.dofs[static_cast<std::size_t>(j)]] * ev.se.dx[j];
                    g[1] += field.dofs[plain.dofs[static_cast<std::size_t>(j)]] * ev.se.dy[j];
                }
            }
            vel[node].x += g[0];
            vel[node].y += g[1];
            count[node]++;
        }
    }
    for (std::size_t n = 0; n < vel.size(); ++n)
        if (count[n] > 0) {
            vel[n].x /= count[n];
            vel[n].y /= count[n];
        }
    return vel;
}

namespace {

/// Integrates f(trace point, element, edge) over all body edges; f sees the
/// EdgePoint and the parametric location, accumulating into a vector of
/// doubles via the common adaptive/Gauss switch.
template <class F>
double integrate_body_edges(const Mesh& mesh, const EnrichmentPlan& plan,
                            const QuadratureOptions& opts, const F& f) {
    double total = 0.0;
    for (const BoundaryEdge& be : mesh.boundary_edges) {
        if (be.tag != BoundaryTag::body) continue;
        const ElementDofs ed = element_dofs(mesh, be.element, plan);
        bool sing_a = false, sing_b = false;
        if (ed.cls == ElementClass::singular) {
            const auto en = edge_nodes(mesh.order, be.local_edge);
            if (en[0] == ed.corner_local) sing_a = true;
            if (en[1] == ed.corner_local) sing_b = true;
        }
        auto integrand = [&](double t, double* out) {
            const EdgePoint p = edge_point(mesh, be.element, be.local_edge, t);
            out[0] = f(be.element, be.local_edge, t, p) * p.jac;
        };
        double v = 0.0;
        if (sing_a || sing_b) {
            AdaptiveConfig acfg = opts.adaptive;
            acfg.min_width = std::max(acfg.min_width, 2e-10);
            adaptive_line_quadrature_v(integrand, 1, -1.0, 1.0, sing_a, acfg, &v);
        } else {
            const QuadratureRule1D rule = gauss_rule_1d(opts.gauss_edge);
            double buf;
            for (std::size_t q = 0; q < rule.points.size(); ++q) {
                integrand(rule.points[q], &buf);
                v += rule.weights[q] * buf;
            }
        }
        total += v;
    }
    return total;
}

double ref_t_to_xi_eta(int local_edge, double t, double* xi, double* eta) {
    switch (local_edge) {
        case 0: *xi = t; *eta = -1.0; break;
        case 1: *xi = 1.0; *eta = t; break;
        case 2: *xi = -t; *eta = 1.0; break;
        default: *xi = -1.0; *eta = -t; break;
    }
    return t;
}

}  // namespace

double added_mass_uniform_flow(const RealField& field, double U, double rho,
                               const QuadratureOptions& opts) {
    if (U == 0.0) throw DomainError("added_mass_uniform_flow: U must be nonzero");
    const EnrichmentPlan empty = no_enrichment(field.mesh->n_nodes());
    const EnrichmentPlan& plan = field.plan ? *field.plan : empty;
    const double a = integrate_body_edges(
        *field.mesh, plan, opts, [&](Index e, int le, double t, const EdgePoint& p) {
            double xi, eta;
            ref_t_to_xi_eta(le, t, &xi, &eta);
            const double phi2 = (U * p.y - field.value(e, xi, eta)) / U;
            return phi2 * p.ny;
        });
    return rho * a;
}

RadiationCoeffs radiation_coefficients(const ComplexField& field, double omega, double rho,
                                       double eta_a, const QuadratureOptions& opts) {
    if (eta_a == 0.0) return {};  // no motion, no radiation force
    const EnrichmentPlan empty = no_enrichment(field.mesh->n_nodes());
    const EnrichmentPlan& plan = field.plan ? *field.plan : empty;
    Complex integral(0.0, 0.0);
    // Complex surface integral phi * n3, assembled from two real passes.
    for (int part = 0; part < 2; ++part) {
        const double v = integrate_body_edges(
            *field.mesh, plan, opts, [&](Index e, int le, double t, const EdgePoint& p) {
                double xi, eta;
                ref_t_to_xi_eta(le, t, &xi, &eta);
                const Complex phi = field.value(e, xi, eta);
                return (part == 0 ? phi.real() : phi.imag()) * p.ny;
            });
        integral += (part == 0) ? Complex(v, 0.0) : Complex(0.0, v);
    }
    // Mirror half-domain and pressure p = -i omega rho phi; force on the body
    // F = surface integral of p n (n out of the fluid).
    const Complex force = -Complex(0.0, omega) * rho * 2.0 * integral;
    RadiationCoeffs rc;
    rc.force = force;
    rc.A33 = force.real() / (omega * omega * eta_a);
    rc.B33 = -force.imag() / (omega * eta_a);
    return rc;
}

double mean_vertical_force(const ComplexField& field, double omega, double rho,
                           double eta_a, const QuadratureOptions& opts,
                           bool exact_body_flux) {
    const EnrichmentPlan empty = no_enrichment(field.mesh->n_nodes());
    const EnrichmentPlan& plan = field.plan ? *field.plan : empty;
    const double integral = integrate_body_edges(
        *field.mesh, plan, opts, [&](Index e, int le, double t, const EdgePoint& p) {
            double xi, eta;
            ref_t_to_xi_eta(le, t, &xi, &eta);
            const auto g = field.gradient(e, xi, eta);
            // Time average of eta3 * d2phi/(dy dt) is
            // 1/2 Re{eta_a conj(i omega phi_y)} = -1/2 eta_a omega Im(phi_y).
            // On the wetted surface phi_y n_y = i omega eta_a n3 - phi_x n_x;
            // where n3 = 0 the term drops, elsewhere the heave condition
            // pins Im(phi_y) = omega eta_a.
            const double im_phi_y = exact_body_flux ? omega * eta_a : std::imag(g[1]);
            const double lin = -0.5 * eta_a * omega * im_phi_y;
            // Time average of 1/2 |grad phi(t)|^2 is 1/4 |grad phi|^2.
            const double quad = 0.25 * (std::norm(g[0]) + std::norm(g[1]));
            return (lin + quad) * p.ny;
        });
    return -rho * 2.0 * integral;
}

double damping_from_energy_flux(const ComplexField& field, double omega, double rho,
                                double eta_a) {
    const Mesh& mesh = *field.mesh;
    // Mean energy flux through the matching boundary, integrated directly:
    // P = 1/2 integral Re{ p conj(u_n) } ds with p = -i omega rho phi. In the
    // exact solution this equals the group velocity times the energy density
    // of the outgoing cosh k(y+h) mode; evaluating the flux itself keeps the
    // evanescent near-field (zero mean flux) from biasing the estimate.
    const QuadratureRule1D rule = gauss_rule_1d(4);
    double P = 0.0;
    bool found = false;
    for (const BoundaryEdge& be : mesh.boundary_edges) {
        if (be.tag != BoundaryTag::matching) continue;
        found = true;
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const double t = rule.points[q];
            const EdgePoint p = edge_point(mesh, be.element, be.local_edge, t);
            double xi, eta;
            ref_t_to_xi_eta(be.local_edge, t, &xi, &eta);
            const Complex phi = field.value(be.element, xi, eta);
            const auto g = field.gradient(be.element, xi, eta);
            const Complex un = g[0] * p.nx + g[1] * p.ny;
            const Complex pres = Complex(0.0, -omega * rho) * phi;
            P += 0.5 * rule.weights[q] * p.jac * (pres * std::conj(un)).real();
        }
    }
    if (!found) throw DomainError("damping_from_energy_flux: no matching boundary");
    // Power balance: 1/2 B33 (omega eta_a)^2 = 2 P (two radiating sides).
    return 4.0 * P / (omega * omega * eta_a * eta_a);
}

}  // namespace xfem2d
