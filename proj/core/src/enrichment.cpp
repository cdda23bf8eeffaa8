#include "xfem2d/enrichment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "xfem2d/mesh.hpp"

namespace xfem2d {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double corner_exponent(double gamma, int j) {
    if (j < 1) throw DomainError("corner_exponent: j must be >= 1");
    if (!(gamma >= 0.0) || gamma >= kTwoPi - 1e-12)
        throw GeometryError("corner_exponent: degenerate wedge angle");
    return j * std::numbers::pi / (kTwoPi - gamma);
}

CornerPolar corner_polar(const Corner& c, double x, double y, const Vec2* side_hint) {
    const double dx = x - c.x, dy = y - c.y;
    const double r = std::hypot(dx, dy);
    const double span = kTwoPi - c.gamma;
    if (r == 0.0) return {0.0, 0.0};

    double theta = c.sweep * (std::atan2(dy, dx) - c.wall_direction);
    theta -= kTwoPi * std::floor(theta / kTwoPi);  // into [0, 2pi)

    // Roundoff in the coordinates (absolute, ~eps * corner scale) turns into
    // angular noise ~eps/r, so the face clamp must widen as r -> 0. Below the
    // coordinate resolution the angle carries no information at all; snap it
    // into the fluid sweep (the basis value vanishes there anyway, m_l > 0).
    const double scale = std::max({1.0, std::abs(c.x), std::abs(c.y)});
    if (r < 1e-13 * scale) {
        if (theta > span) theta = (theta - span < kTwoPi - theta) ? span : 0.0;
        return {r, theta};
    }
    const double tol = std::min(0.1, 1e-9 + 64.0 * 1e-16 * scale / r);
    if (theta <= span + tol) {
        // On-face points of a full-sweep corner (gamma = 0) are ambiguous:
        // theta = 0 and theta = 2pi describe the two faces of the cut.
        if (c.gamma == 0.0 && side_hint && (theta < tol || theta > span - tol)) {
            double th_hint =
                c.sweep * (std::atan2(side_hint->y - c.y, side_hint->x - c.x) - c.wall_direction);
            th_hint -= kTwoPi * std::floor(th_hint / kTwoPi);
            theta = (th_hint < 0.5 * span) ? 0.0 : span;
        }
        return {r, std::min(theta, span)};
    }
    // Inside the solid wedge: tolerate roundoff next to either face.
    if (theta > kTwoPi - tol) return {r, 0.0};
    if (theta < span + 2.0 * tol) return {r, span};
    throw GeometryError("corner_polar: point inside the solid wedge");
}

double corner_basis(const Corner& c, int l, double x, double y, const Vec2* side_hint) {
    const double m = corner_exponent(c.gamma, l);
    const CornerPolar p = corner_polar(c, x, y, side_hint);
    if (p.r == 0.0) return 0.0;
    return std::pow(p.r, m) * std::cos(m * p.theta);
}

Vec2 corner_basis_gradient(const Corner& c, int l, double x, double y,
                           const Vec2* side_hint) {
    const double m = corner_exponent(c.gamma, l);
    const CornerPolar p = corner_polar(c, x, y, side_hint);
    if (p.r == 0.0)
        throw SingularEvalError("corner_basis_gradient: r = 0");
    // d/dr = m r^{m-1} cos(m theta); (1/r) d/dtheta = -m r^{m-1} sin(m theta)
    const double rm1 = m * std::pow(p.r, m - 1.0);
    const double ct = std::cos(m * p.theta), st = std::sin(m * p.theta);
    // Unit vectors of the local frame expressed in global axes.
    const double phi = c.wall_direction + c.sweep * p.theta;  // global polar angle
    const double cphi = std::cos(phi), sphi = std::sin(phi);
    const double dr = rm1 * ct;
    const double dth = -rm1 * st * c.sweep;  // includes dtheta/d(global angle)
    return {dr * cphi - dth * sphi, dr * sphi + dth * cphi};
}

EnrichmentBasis EnrichmentBasis::corner_flow(std::vector<Corner> corners, int n_terms) {
    if (n_terms < 1 || n_terms > 5)
        throw ConfigError("EnrichmentBasis: n_terms must be in 1..5");
    EnrichmentBasis b;
    b.kind_ = Kind::corner_flow;
    b.n_terms_ = n_terms;
    b.corners_ = std::move(corners);
    return b;
}

EnrichmentBasis EnrichmentBasis::analytic_field(std::vector<Corner> corners,
                                                PlateField field) {
    EnrichmentBasis b;
    b.kind_ = Kind::analytic_field;
    b.n_terms_ = 1;
    b.corners_ = std::move(corners);
    b.field_ = std::make_shared<PlateField>(field);
    return b;
}

namespace {
int side_of_hint(const Vec2* hint) {
    if (!hint) return 0;
    if (hint->y > 0.0) return +1;
    if (hint->y < 0.0) return -1;
    return 0;
}
}  // namespace

double EnrichmentBasis::value(int ci, int l, double x, double y,
                              const Vec2* side_hint) const {
    if (kind_ == Kind::analytic_field)
        return field_->potential(x, y, side_of_hint(side_hint));
    return corner_basis(corners_.at(ci), l, x, y, side_hint);
}

Vec2 EnrichmentBasis::gradient(int ci, int l, double x, double y,
                               const Vec2* side_hint) const {
    if (kind_ == Kind::analytic_field)
        return field_->velocity(x, y, side_of_hint(side_hint));
    return corner_basis_gradient(corners_.at(ci), l, x, y, side_hint);
}

double EnrichmentBasis::leading_exponent(int ci) const {
    if (kind_ == Kind::analytic_field) return 0.5;
    return corner_exponent(corners_.at(ci).gamma, 1);
}

EnrichmentPlan no_enrichment(Index n_std) {
    EnrichmentPlan p;
    p.n_std = n_std;
    p.n_terms = 0;
    p.rank_of_node.assign(static_cast<std::size_t>(n_std), kInvalidIndex);
    return p;
}

EnrichmentPlan select_enriched_nodes(const Mesh& mesh, const EnrichmentBasis& basis,
                                     Strategy strategy, double r_enri, int n_terms) {
    if (strategy == Strategy::radius && !(r_enri > 0.0))
        throw ConfigError("select_enriched_nodes: radius strategy needs r_enri > 0");
    const auto& corners = basis.corners();
    for (const Corner& c : corners) {
        if (c.node == kInvalidIndex || c.node >= mesh.n_nodes())
            throw GeometryError("select_enriched_nodes: corner does not sit on a mesh node");
        const Node& n = mesh.nodes[c.node];
        if (std::hypot(n.x - c.x, n.y - c.y) > 1e-10)
            throw GeometryError("select_enriched_nodes: corner/node coordinate mismatch");
    }

    std::vector<bool> on_dirichlet(mesh.nodes.size(), false);
    for (Index n : mesh.nodes_on_tag(BoundaryTag::dirichlet)) on_dirichlet[n] = true;

    // candidate -> owning corner (nearest wins if several select the node)
    std::vector<int> owner(mesh.nodes.size(), -1);
    std::vector<double> owner_dist(mesh.nodes.size(), 0.0);
    auto claim = [&](Index node, int ci, double d) {
        if (on_dirichlet[node]) return;  // enrichment is never placed on S_D
        if (owner[node] < 0 || d < owner_dist[node]) {
            owner[node] = ci;
            owner_dist[node] = d;
        }
    };

    for (int ci = 0; ci < static_cast<int>(corners.size()); ++ci) {
        const Corner& c = corners[ci];
        switch (strategy) {
            case Strategy::point:
                claim(c.node, ci, 0.0);
                break;
            case Strategy::patch:
                for (Index e : mesh.node_elements()[c.node]) {
                    const int nn = nodes_per_element(mesh.order);
                    for (int i = 0; i < nn; ++i) {
                        const Index n = mesh.elements[e].conn[i];
                        claim(n, ci, std::hypot(mesh.nodes[n].x - c.x, mesh.nodes[n].y - c.y));
                    }
                }
                break;
            case Strategy::radius: {
                const double rlim = r_enri * (1.0 + 1e-9);  // nodes at exactly r_enri count
                for (Index n = 0; n < mesh.n_nodes(); ++n) {
                    const double d = std::hypot(mesh.nodes[n].x - c.x, mesh.nodes[n].y - c.y);
                    if (d <= rlim) claim(n, ci, d);
                }
                break;
            }
        }
    }

    EnrichmentPlan plan;
    plan.strategy = strategy;
    plan.r_enri = r_enri;
    plan.n_terms = n_terms;
    plan.n_std = mesh.n_nodes();
    plan.rank_of_node.assign(mesh.nodes.size(), kInvalidIndex);
    for (Index n = 0; n < mesh.n_nodes(); ++n)
        if (owner[n] >= 0) {
            plan.rank_of_node[n] = static_cast<Index>(plan.enriched_nodes.size());
            plan.enriched_nodes.push_back(n);
            plan.node_corner.push_back(owner[n]);
        }

    // Shift values psi^l(x_j, y_j); the face of an on-cut node is taken from
    // one of its elements (twins only appear in elements of their own side).
    plan.shifts.assign(static_cast<std::size_t>(n_terms), {});
    for (auto& s : plan.shifts) s.resize(plan.enriched_nodes.size());
    for (std::size_t rank = 0; rank < plan.enriched_nodes.size(); ++rank) {
        const Index n = plan.enriched_nodes[rank];
        const Node& nd = mesh.nodes[n];
        Vec2 hint{nd.x, nd.y};
        if (!mesh.node_elements()[n].empty())
            hint = mesh.element_centroid(mesh.node_elements()[n].front());
        for (int l = 1; l <= n_terms; ++l)
            plan.shifts[l - 1][rank] =
                basis.value(plan.node_corner[rank], l, nd.x, nd.y, &hint);
    }
    return plan;
}

}  // namespace xfem2d
