#include "xfem2d/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace xfem2d {

ElementDofs element_dofs(const Mesh& mesh, Index e, const EnrichmentPlan& plan) {
    ElementDofs ed;
    const int nn = nodes_per_element(mesh.order);
    ed.n_std = nn;
    ed.dofs.reserve(static_cast<std::size_t>(nn));
    for (int i = 0; i < nn; ++i) ed.dofs.push_back(mesh.elements[e].conn[i]);
    ed.centroid = mesh.element_centroid(e);

    if (!plan.empty()) {
        for (int i = 0; i < nn; ++i) {
            const Index node = mesh.elements[e].conn[i];
            const Index rank = plan.rank_of_node[node];
            if (rank == kInvalidIndex) continue;
            for (int l = 1; l <= plan.n_terms; ++l) {
                ed.enr.push_back({i, rank, plan.node_corner[rank], l,
                                  plan.shifts[static_cast<std::size_t>(l - 1)][rank]});
                ed.dofs.push_back(plan.dof(rank, l));
            }
        }
        ed.n_enr = static_cast<int>(ed.enr.size());
    }

    // A singular vertex makes the element class 'singular' only when the
    // element actually carries enrichment; otherwise the integrand stays
    // polynomial and plain Gauss applies.
    for (std::size_t ci = 0; ci < mesh.corners.size(); ++ci) {
        for (int i = 0; i < 4; ++i) {
            if (mesh.elements[e].conn[i] == mesh.corners[ci].node) {
                ed.corner_local = i;
                ed.corner_id = static_cast<int>(ci);
            }
        }
    }
    if (ed.n_enr == 0)
        ed.cls = ElementClass::plain;
    else
        ed.cls = (ed.corner_local >= 0) ? ElementClass::singular : ElementClass::blending;
    return ed;
}

ExtendedEval extended_eval(const Mesh& mesh, Index e, const ElementDofs& ed,
                           const EnrichmentBasis* basis, double xi, double eta) {
    std::array<double, 2> xy[8];
    mesh.element_coords(e, xy);
    ExtendedEval ev;
    ev.se = map_to_physical(mesh.order, xy, xi, eta);
    ev.n_enr = ed.n_enr;
    if (ed.n_enr == 0) return ev;

    for (int a = 0; a < ed.n_enr; ++a) {
        const auto& en = ed.enr[static_cast<std::size_t>(a)];
        const double psi = basis->value(en.corner, en.term, ev.se.x, ev.se.y, &ed.centroid);
        const Vec2 dpsi = basis->gradient(en.corner, en.term, ev.se.x, ev.se.y, &ed.centroid);
        const double shifted = psi - en.shift;
        const double N = ev.se.value[en.local];
        ev.val[a] = N * shifted;
        ev.dx[a] = ev.se.dx[en.local] * shifted + N * dpsi.x;
        ev.dy[a] = ev.se.dy[en.local] * shifted + N * dpsi.y;
    }
    return ev;
}

namespace {

void accumulate_stiffness(const ExtendedEval& ev, int n, double w, Eigen::MatrixXd& K,
                          const ElementDofs& ed) {
    // Gradient rows: standard then enrichment entries.
    std::array<double, 48> gx{}, gy{};
    const int ns = ed.n_std;
    for (int i = 0; i < ns; ++i) {
        gx[i] = ev.se.dx[i];
        gy[i] = ev.se.dy[i];
    }
    for (int a = 0; a < ed.n_enr; ++a) {
        gx[ns + a] = ev.dx[a];
        gy[ns + a] = ev.dy[a];
    }
    const double s = w * ev.se.jacobian_det;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) K(i, j) += s * (gx[i] * gx[j] + gy[i] * gy[j]);
}

}  // namespace

LocalMatrix element_matrix(const Mesh& mesh, Index e, const EnrichmentPlan& plan,
                           const EnrichmentBasis* basis, const QuadratureOptions& opts) {
    LocalMatrix lm;
    lm.dofs = element_dofs(mesh, e, plan);
    const int n = lm.dofs.n_std + lm.dofs.n_enr;
    lm.K = Eigen::MatrixXd::Zero(n, n);

    if (lm.dofs.cls == ElementClass::singular) {
        // Integrand components: packed upper triangle of the local block.
        const int ncomp = n * (n + 1) / 2;
        std::vector<double> packed(static_cast<std::size_t>(ncomp));
        auto f = [&](double xi, double eta, double* out) {
            const ExtendedEval ev = extended_eval(mesh, e, lm.dofs, basis, xi, eta);
            std::array<double, 48> gx{}, gy{};
            const int ns = lm.dofs.n_std;
            for (int i = 0; i < ns; ++i) {
                gx[i] = ev.se.dx[i];
                gy[i] = ev.se.dy[i];
            }
            for (int a = 0; a < lm.dofs.n_enr; ++a) {
                gx[ns + a] = ev.dx[a];
                gy[ns + a] = ev.dy[a];
            }
            int c = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j)
                    out[c++] = ev.se.jacobian_det * (gx[i] * gx[j] + gy[i] * gy[j]);
        };
        const double m1 = basis->leading_exponent(lm.dofs.corner_id);
        try {
            adaptive_singular_cubature_v(f, ncomp, lm.dofs.corner_local, opts.adaptive,
                                         2.0 * m1 - 2.0, packed.data());
        } catch (const AccuracyError& err) {
            throw AccuracyError("element " + std::to_string(e) + ": " + err.what(),
                                err.best_estimate(), err.error_bound());
        }
        int c = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) lm.K(i, j) = packed[static_cast<std::size_t>(c++)];
    } else {
        int ng = (mesh.order == ElemOrder::linear) ? opts.gauss_linear : opts.gauss_quadratic;
        if (lm.dofs.cls == ElementClass::blending) ng = std::max(ng, opts.gauss_blending);
        const QuadratureRule2D rule = gauss_rule_2d(ng);
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const ExtendedEval ev =
                extended_eval(mesh, e, lm.dofs, basis, rule.points[q][0], rule.points[q][1]);
            accumulate_stiffness(ev, n, rule.weights[q], lm.K, lm.dofs);
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) lm.K(i, j) = lm.K(j, i);
    return lm;
}

EdgePoint edge_point(const Mesh& mesh, Index e, int local_edge, double t) {
    std::array<double, 2> xy[8];
    mesh.element_coords(e, xy);
    const EdgeTrace tr = edge_trace(mesh.order, local_edge, t);
    EdgePoint p{0.0, 0.0, 0.0, 0.0, 0.0};
    double tx = 0.0, ty = 0.0;
    for (int i = 0; i < tr.n; ++i) {
        const auto& c = xy[tr.local[i]];
        p.x += tr.value[i] * c[0];
        p.y += tr.value[i] * c[1];
        tx += tr.dt[i] * c[0];
        ty += tr.dt[i] * c[1];
    }
    p.jac = std::hypot(tx, ty);
    // CCW element: rotating the tangent clockwise points out of the element.
    p.nx = ty / p.jac;
    p.ny = -tx / p.jac;
    return p;
}

namespace {

template <class Scalar>
using Triplets = std::vector<Eigen::Triplet<Scalar>>;

bool value_less(double a, double b) {
    std::uint64_t ua, ub;
    std::memcpy(&ua, &a, 8);
    std::memcpy(&ub, &b, 8);
    return ua < ub;
}
bool value_less(const Complex& a, const Complex& b) {
    if (value_less(a.real(), b.real())) return true;
    if (value_less(b.real(), a.real())) return false;
    return value_less(a.imag(), b.imag());
}

/// Canonical accumulation: sorting by (row, col, value bits) makes the sum
/// independent of element visit order.
template <class Scalar>
void reduce_triplets(Triplets<Scalar>& trip, Eigen::SparseMatrix<Scalar>& out, Index n) {
    std::sort(trip.begin(), trip.end(), [](const auto& a, const auto& b) {
        if (a.row() != b.row()) return a.row() < b.row();
        if (a.col() != b.col()) return a.col() < b.col();
        return value_less(a.value(), b.value());
    });
    out.resize(n, n);
    out.setFromTriplets(trip.begin(), trip.end());
    out.makeCompressed();
}

struct EdgeDofSet {
    std::vector<int> std_local;          // local node ids on the edge
    std::vector<std::size_t> enr_index;  // entries of ElementDofs::enr on the edge
};

EdgeDofSet edge_dofs(const Mesh& mesh, const ElementDofs& ed, int local_edge) {
    EdgeDofSet s;
    for (int k : edge_nodes(mesh.order, local_edge))
        if (k >= 0) s.std_local.push_back(k);
    for (std::size_t a = 0; a < ed.enr.size(); ++a)
        for (int k : s.std_local)
            if (ed.enr[a].local == k) s.enr_index.push_back(a);
    return s;
}

/// integral over the edge of (trace shape functions) * flux, pushed into rhs.
template <class Scalar>
void edge_flux_integral(const Mesh& mesh, Index e, int local_edge, const ElementDofs& ed,
                        const EnrichmentBasis* basis,
                        const std::function<Scalar(const EdgePoint&, int side)>& flux,
                        const QuadratureOptions& opts,
                        Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& rhs) {
    const EdgeDofSet eds = edge_dofs(mesh, ed, local_edge);
    const int side = (ed.centroid.y > 0.0) ? +1 : -1;
    const int nfun = static_cast<int>(eds.std_local.size() + eds.enr_index.size());

    auto eval_integrand = [&](double t, double* out) {
        const EdgeTrace tr = edge_trace(mesh.order, local_edge, t);
        const EdgePoint p = edge_point(mesh, e, local_edge, t);
        const Scalar f = flux(p, side);
        int c = 0;
        // doubles interleaved re/im for complex Scalar
        auto push = [&](Scalar v) {
            if constexpr (std::is_same_v<Scalar, double>) {
                out[c++] = v;
            } else {
                out[c++] = v.real();
                out[c++] = v.imag();
            }
        };
        for (std::size_t i = 0; i < eds.std_local.size(); ++i)
            push(Scalar(tr.value[i]) * f * Scalar(p.jac));
        for (std::size_t a : eds.enr_index) {
            const auto& en = ed.enr[a];
            int ti = 0;
            while (eds.std_local[static_cast<std::size_t>(ti)] != en.local) ++ti;
            const double psi =
                basis->value(en.corner, en.term, p.x, p.y, &ed.centroid) - en.shift;
            push(Scalar(tr.value[ti] * psi) * f * Scalar(p.jac));
        }
    };

    const int ncomp = std::is_same_v<Scalar, double> ? nfun : 2 * nfun;
    std::vector<double> vals(static_cast<std::size_t>(ncomp), 0.0);

    // Edges ending at an enriched singular vertex get the endpoint-adaptive rule.
    bool singular_end_a = false, singular_end_b = false;
    if (ed.cls == ElementClass::singular) {
        const auto en = edge_nodes(mesh.order, local_edge);
        if (en[0] == ed.corner_local) singular_end_a = true;
        if (en[1] == ed.corner_local) singular_end_b = true;
    }
    if (singular_end_a || singular_end_b) {
        AdaptiveConfig acfg = opts.adaptive;
        // edge points within coordinate roundoff of the corner are meaningless
        acfg.min_width = std::max(acfg.min_width, 2e-10);
        adaptive_line_quadrature_v([&](double t, double* out) { eval_integrand(t, out); },
                                   ncomp, -1.0, 1.0, singular_end_a, acfg, vals.data());
    } else {
        const QuadratureRule1D rule = gauss_rule_1d(opts.gauss_edge);
        std::vector<double> buf(static_cast<std::size_t>(ncomp));
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            eval_integrand(rule.points[q], buf.data());
            for (int k = 0; k < ncomp; ++k) vals[static_cast<std::size_t>(k)] += rule.weights[q] * buf[static_cast<std::size_t>(k)];
        }
    }

    int c = 0;
    auto pop = [&]() -> Scalar {
        if constexpr (std::is_same_v<Scalar, double>) {
            return vals[static_cast<std::size_t>(c++)];
        } else {
            const double re = vals[static_cast<std::size_t>(c++)];
            const double im = vals[static_cast<std::size_t>(c++)];
            return Scalar(re, im);
        }
    };
    for (std::size_t i = 0; i < eds.std_local.size(); ++i)
        rhs[ed.dofs[static_cast<std::size_t>(eds.std_local[i])]] += pop();
    for (std::size_t a : eds.enr_index)
        rhs[ed.dofs[static_cast<std::size_t>(ed.n_std) + a]] += pop();
}

template <class Scalar>
void stiffness_triplets(const Mesh& mesh, const EnrichmentPlan& plan,
                        const EnrichmentBasis* basis, const QuadratureOptions& opts,
                        Triplets<Scalar>& trip) {
    for (Index e = 0; e < mesh.n_elements(); ++e) {
        const LocalMatrix lm = element_matrix(mesh, e, plan, basis, opts);
        const int n = lm.dofs.n_std + lm.dofs.n_enr;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                trip.emplace_back(lm.dofs.dofs[static_cast<std::size_t>(i)],
                                  lm.dofs.dofs[static_cast<std::size_t>(j)],
                                  Scalar(lm.K(i, j)));
    }
}

template <class Scalar>
void finalize_system(AssembledSystem<Scalar>& sys, Triplets<Scalar>& trip,
                     Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& full_rhs,
                     const std::vector<char>& fixed) {
    const Index n = sys.n_total;
    sys.free_of_global.assign(static_cast<std::size_t>(n), kInvalidIndex);
    for (Index g = 0; g < n; ++g) {
        if (!fixed[static_cast<std::size_t>(g)]) {
            sys.free_of_global[static_cast<std::size_t>(g)] =
                static_cast<Index>(sys.global_of_free.size());
            sys.global_of_free.push_back(g);
        }
    }
    const Index nf = static_cast<Index>(sys.global_of_free.size());
    if (nf == 0) throw AssemblyError("all DOFs are constrained");

    Triplets<Scalar> keep;
    keep.reserve(trip.size());
    for (const auto& t : trip) {
        const bool fr = !fixed[static_cast<std::size_t>(t.row())];
        const bool fc = !fixed[static_cast<std::size_t>(t.col())];
        if (fr && fc) {
            keep.emplace_back(sys.free_of_global[static_cast<std::size_t>(t.row())],
                              sys.free_of_global[static_cast<std::size_t>(t.col())],
                              t.value());
        } else if (fr && !fc) {
            // Known column moved to the right-hand side.
            full_rhs[t.row()] -= t.value() * sys.fixed_values[t.col()];
        }
    }
    reduce_triplets(keep, sys.matrix, nf);
    sys.rhs.resize(nf);
    for (Index f = 0; f < nf; ++f) sys.rhs[f] = full_rhs[sys.global_of_free[static_cast<std::size_t>(f)]];
}

}  // namespace

RealSystem assemble_plate_system(const Mesh& mesh, const EnrichmentPlan& plan,
                                 const EnrichmentBasis* basis, const LaplaceBC& bc,
                                 const QuadratureOptions& opts) {
    RealSystem sys;
    sys.n_total = plan.empty() ? mesh.n_nodes() : plan.total_dofs();
    sys.fixed_values = Eigen::VectorXd::Zero(sys.n_total);
    Eigen::VectorXd full_rhs = Eigen::VectorXd::Zero(sys.n_total);

    std::vector<char> fixed(static_cast<std::size_t>(sys.n_total), 0);
    auto tag_in = [](BoundaryTag t, const std::vector<BoundaryTag>& v) {
        return std::find(v.begin(), v.end(), t) != v.end();
    };
    for (const BoundaryEdge& be : mesh.boundary_edges) {
        if (!tag_in(be.tag, bc.dirichlet_tags)) continue;
        for (int k : edge_nodes(mesh.order, be.local_edge)) {
            if (k < 0) continue;
            const Index node = mesh.elements[be.element].conn[k];
            if (!fixed[static_cast<std::size_t>(node)]) {
                fixed[static_cast<std::size_t>(node)] = 1;
                const Node& nd = mesh.nodes[node];
                sys.fixed_values[node] = bc.dirichlet_value ? bc.dirichlet_value(nd.x, nd.y, 0) : 0.0;
            }
            if (!plan.empty() && plan.rank_of_node[node] != kInvalidIndex)
                throw AssemblyError("enriched node on the Dirichlet boundary");
        }
    }

    Triplets<double> trip;
    stiffness_triplets<double>(mesh, plan, basis, opts, trip);

    if (bc.flux) {
        for (const BoundaryEdge& be : mesh.boundary_edges) {
            if (!tag_in(be.tag, bc.flux_tags)) continue;
            const ElementDofs ed = element_dofs(mesh, be.element, plan);
            edge_flux_integral<double>(
                mesh, be.element, be.local_edge, ed, basis,
                [&](const EdgePoint& p, int side) { return bc.flux(p.x, p.y, p.nx, p.ny, side); },
                opts, full_rhs);
        }
    }

    finalize_system(sys, trip, full_rhs, fixed);
    return sys;
}

ComplexSystem assemble_radiation_system(const Mesh& mesh, const EnrichmentPlan& plan,
                                        const EnrichmentBasis* basis,
                                        const RadiationParams& p,
                                        const QuadratureOptions& opts) {
    if (!(p.omega > 0.0) || !(p.h > 0.0))
        throw ConfigError("assemble_radiation_system: omega and h must be positive");
    ComplexSystem sys;
    sys.n_total = plan.empty() ? mesh.n_nodes() : plan.total_dofs();
    sys.fixed_values = Eigen::VectorXcd::Zero(sys.n_total);
    Eigen::VectorXcd full_rhs = Eigen::VectorXcd::Zero(sys.n_total);

    Triplets<Complex> trip;
    stiffness_triplets<Complex>(mesh, plan, basis, opts, trip);

    // Robin terms: +i k on the matching boundary, -k tanh(kh) on the free
    // surface, standard shape functions only. Enriched supports must not
    // touch those boundaries.
    const Complex ik(0.0, p.k);
    const double kf = p.k * std::tanh(p.k * p.h);
    const QuadratureRule1D rule = gauss_rule_1d(opts.gauss_edge);
    for (const BoundaryEdge& be : mesh.boundary_edges) {
        if (be.tag != BoundaryTag::matching && be.tag != BoundaryTag::free_surface) continue;
        const ElementDofs ed = element_dofs(mesh, be.element, plan);
        if (ed.n_enr > 0)
            throw AssemblyError("enriched element touches a Robin boundary (free surface "
                                "or matching); shrink the enrichment radius");
        const Complex coef = (be.tag == BoundaryTag::matching) ? ik : Complex(-kf, 0.0);
        const EdgeDofSet eds = edge_dofs(mesh, ed, be.local_edge);
        const std::size_t ne = eds.std_local.size();
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(ne),
                                                  static_cast<Eigen::Index>(ne));
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const EdgeTrace tr = edge_trace(mesh.order, be.local_edge, rule.points[q]);
            const EdgePoint ep = edge_point(mesh, be.element, be.local_edge, rule.points[q]);
            for (std::size_t i = 0; i < ne; ++i)
                for (std::size_t j = 0; j < ne; ++j)
                    M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
                        rule.weights[q] * ep.jac * tr.value[i] * tr.value[j];
        }
        for (std::size_t i = 0; i < ne; ++i)
            for (std::size_t j = 0; j < ne; ++j)
                trip.emplace_back(
                    ed.dofs[static_cast<std::size_t>(eds.std_local[i])],
                    ed.dofs[static_cast<std::size_t>(eds.std_local[j])],
                    coef * M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    }

    // Body flux i omega eta_a n3 (heave).
    const Complex iw(0.0, p.omega);
    for (const BoundaryEdge& be : mesh.boundary_edges) {
        if (be.tag != BoundaryTag::body) continue;
        const ElementDofs ed = element_dofs(mesh, be.element, plan);
        edge_flux_integral<Complex>(
            mesh, be.element, be.local_edge, ed, basis,
            [&](const EdgePoint& ep, int) { return iw * p.eta_a * ep.ny; }, opts, full_rhs);
    }

    std::vector<char> fixed(static_cast<std::size_t>(sys.n_total), 0);  // no Dirichlet here
    finalize_system(sys, trip, full_rhs, fixed);
    return sys;
}

}  // namespace xfem2d
