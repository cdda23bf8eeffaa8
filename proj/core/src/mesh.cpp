#include "xfem2d/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "xfem2d/quadrature.hpp"

namespace xfem2d {

const char* to_string(BoundaryTag t) {
    switch (t) {
        case BoundaryTag::body: return "body";
        case BoundaryTag::free_surface: return "free_surface";
        case BoundaryTag::bottom: return "bottom";
        case BoundaryTag::matching: return "matching";
        case BoundaryTag::dirichlet: return "dirichlet";
        case BoundaryTag::symmetry: return "symmetry";
    }
    return "?";
}

BoundaryTag boundary_tag_from_string(const std::string& s) {
    if (s == "body") return BoundaryTag::body;
    if (s == "free_surface") return BoundaryTag::free_surface;
    if (s == "bottom") return BoundaryTag::bottom;
    if (s == "matching") return BoundaryTag::matching;
    if (s == "dirichlet") return BoundaryTag::dirichlet;
    if (s == "symmetry") return BoundaryTag::symmetry;
    throw ParseError("unknown boundary tag '" + s + "'");
}

void Mesh::element_coords(Index e, std::array<double, 2>* xy) const {
    const int nn = nodes_per_element(order);
    for (int i = 0; i < nn; ++i) {
        const Node& n = nodes[elements[e].conn[i]];
        xy[i] = {n.x, n.y};
    }
}

Vec2 Mesh::element_centroid(Index e) const {
    Vec2 c;
    for (int i = 0; i < 4; ++i) {
        const Node& n = nodes[elements[e].conn[i]];
        c.x += 0.25 * n.x;
        c.y += 0.25 * n.y;
    }
    return c;
}

std::vector<Index> Mesh::nodes_on_tag(BoundaryTag tag) const {
    std::vector<Index> out;
    for (const BoundaryEdge& be : boundary_edges) {
        if (be.tag != tag) continue;
        for (int k : edge_nodes(order, be.local_edge)) {
            if (k >= 0) out.push_back(elements[be.element].conn[k]);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void Mesh::finalize() {
    const int nn = nodes_per_element(order);
    node_elems_.assign(nodes.size(), {});
    for (Index e = 0; e < n_elements(); ++e)
        for (int i = 0; i < nn; ++i) {
            const Index n = elements[e].conn[i];
            if (n < 0 || n >= n_nodes())
                throw ParseError("element " + std::to_string(e) + " references missing node");
            node_elems_[n].push_back(e);
        }

    // Twins: symmetric links, identical coordinates.
    for (Index n = 0; n < n_nodes(); ++n) {
        const Index t = nodes[n].twin;
        if (t == kInvalidIndex) continue;
        if (t < 0 || t >= n_nodes() || nodes[t].twin != n)
            throw ParseError("twin link of node " + std::to_string(n) + " is not symmetric");
        if (nodes[n].x != nodes[t].x || nodes[n].y != nodes[t].y)
            throw ParseError("twin nodes " + std::to_string(n) + "/" + std::to_string(t) +
                             " have different coordinates");
    }

    // Positive Jacobian at the corners and interior points of every element.
    const QuadratureRule2D probe = gauss_rule_2d(order == ElemOrder::linear ? 2 : 3);
    std::array<double, 2> xy[8];
    for (Index e = 0; e < n_elements(); ++e) {
        element_coords(e, xy);
        try {
            for (const auto& p : probe.points) map_to_physical(order, xy, p[0], p[1]);
            for (int c = 0; c < 4; ++c) {
                const auto rc = reference_node(order, c);
                map_to_physical(order, xy, 0.999999 * rc[0], 0.999999 * rc[1]);
            }
        } catch (const MappingError&) {
            throw ParseError("element " + std::to_string(e) +
                             " has a non-positive Jacobian (flipped or degenerate)");
        }
    }

    // Edge incidence: interior edges are shared by exactly two elements with
    // identical node sets; every free edge must carry exactly one tag.
    std::map<std::pair<Index, Index>, int> edge_count;
    for (Index e = 0; e < n_elements(); ++e)
        for (int le = 0; le < 4; ++le) {
            const auto en = edge_nodes(order, le);
            Index a = elements[e].conn[en[0]], b = elements[e].conn[en[1]];
            if (a > b) std::swap(a, b);
            edge_count[{a, b}]++;
        }
    std::map<std::pair<Index, Index>, int> tag_count;
    for (const BoundaryEdge& be : boundary_edges) {
        if (be.element < 0 || be.element >= n_elements() || be.local_edge < 0 ||
            be.local_edge > 3)
            throw ParseError("boundary edge references a missing element/edge");
        const auto en = edge_nodes(order, be.local_edge);
        Index a = elements[be.element].conn[en[0]], b = elements[be.element].conn[en[1]];
        if (a > b) std::swap(a, b);
        tag_count[{a, b}]++;
    }
    for (const auto& [key, cnt] : edge_count) {
        if (cnt > 2)
            throw ParseError("edge shared by more than two elements (non-conforming mesh)");
        const int tags = tag_count.count(key) ? tag_count.at(key) : 0;
        if (cnt == 1 && tags != 1)
            throw ParseError(tags == 0 ? "boundary edge without a tag (unclosed boundary)"
                                       : "boundary edge tagged more than once");
        if (cnt == 2 && tags != 0) throw ParseError("interior edge carries a boundary tag");
    }
}

// ---------------------------------------------------------------------------
// Flat-plate domain
// ---------------------------------------------------------------------------

namespace {

int checked_ratio(double num, double den, const char* what) {
    const double q = num / den;
    const int r = static_cast<int>(std::lround(q));
    if (r < 1 || std::abs(q - r) > 1e-9 * std::max(1.0, q))
        throw GeometryError(std::string(what) + ": spacing does not divide the length evenly");
    return r;
}

}  // namespace

Mesh build_plate_domain(double a, double L, double delta_h, ElemOrder order) {
    if (!(a > 0.0) || !(delta_h > 0.0)) throw GeometryError("build_plate_domain: a, delta_h > 0");
    if (!(L > a)) throw DomainError("build_plate_domain: requires L > a");
    const int na = checked_ratio(a, delta_h, "plate half-width");
    const int nl = checked_ratio(L, delta_h, "domain half-size");
    const int n = 2 * nl;            // cells per side
    const int j0 = nl;               // plate row
    const int ia = nl - na, ib = nl + na;  // plate column range [ia, ib]

    Mesh m;
    m.order = order;

    // Kx, ky address half-step grid positions: even = corner, odd = edge mid.
    // layer: 0 single node, +1 upper-face copy, -1 lower-face copy.
    std::map<std::array<int, 3>, Index> ids;
    auto coord = [&](int k) { return (0.5 * k - nl) * delta_h; };
    auto on_plate_interior = [&](int kx, int ky) {
        return ky == 2 * j0 && kx > 2 * ia && kx < 2 * ib;
    };
    auto node_id = [&](int kx, int ky, int side) {
        const int layer = on_plate_interior(kx, ky) ? side : 0;
        const auto key = std::array<int, 3>{kx, ky, layer};
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        const Index id = static_cast<Index>(m.nodes.size());
        m.nodes.push_back({coord(kx), coord(ky), kInvalidIndex});
        ids.emplace(key, id);
        return id;
    };

    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const int side = (j >= j0) ? +1 : -1;  // which plate face this cell touches
            Element el{};
            el.conn[0] = node_id(2 * i, 2 * j, side);
            el.conn[1] = node_id(2 * i + 2, 2 * j, side);
            el.conn[2] = node_id(2 * i + 2, 2 * j + 2, side);
            el.conn[3] = node_id(2 * i, 2 * j + 2, side);
            if (order == ElemOrder::quadratic) {
                el.conn[4] = node_id(2 * i + 1, 2 * j, side);
                el.conn[5] = node_id(2 * i + 2, 2 * j + 1, side);
                el.conn[6] = node_id(2 * i + 1, 2 * j + 2, side);
                el.conn[7] = node_id(2 * i, 2 * j + 1, side);
            }
            const Index e = static_cast<Index>(m.elements.size());
            m.elements.push_back(el);

            if (j == 0) m.boundary_edges.push_back({e, 0, BoundaryTag::dirichlet});
            if (j == n - 1) m.boundary_edges.push_back({e, 2, BoundaryTag::dirichlet});
            if (i == 0) m.boundary_edges.push_back({e, 3, BoundaryTag::dirichlet});
            if (i == n - 1) m.boundary_edges.push_back({e, 1, BoundaryTag::dirichlet});
            if (i >= ia && i < ib) {
                if (j == j0) m.boundary_edges.push_back({e, 0, BoundaryTag::body});
                if (j == j0 - 1) m.boundary_edges.push_back({e, 2, BoundaryTag::body});
            }
        }

    // Link the duplicated plate nodes.
    for (const auto& [key, id] : ids) {
        if (key[2] == +1) {
            const Index lo = ids.at({key[0], key[1], -1});
            m.nodes[id].twin = lo;
            m.nodes[lo].twin = id;
        }
    }

    const double pi = std::numbers::pi;
    m.corners.push_back({-a, 0.0, 0.0, 0.0, +1, ids.at({2 * ia, 2 * j0, 0})});
    m.corners.push_back({+a, 0.0, 0.0, pi, +1, ids.at({2 * ib, 2 * j0, 0})});

    m.finalize();
    return m;
}

// ---------------------------------------------------------------------------
// Heaving-rectangle half domain
// ---------------------------------------------------------------------------

namespace {

double lerp(double a, double b, double t) { return a + (b - a) * t; }

/// Node-merging pool keyed on quantized coordinates.
class NodePool {
public:
    NodePool(Mesh& mesh, double scale) : mesh_(mesh), inv_eps_(1.0 / (1e-12 * scale)) {}

    Index get(double x, double y) {
        const auto key = std::pair<long long, long long>{
            std::llround(x * inv_eps_), std::llround(y * inv_eps_)};
        auto it = ids_.find(key);
        if (it != ids_.end()) return it->second;
        const Index id = static_cast<Index>(mesh_.nodes.size());
        mesh_.nodes.push_back({x, y, kInvalidIndex});
        ids_.emplace(key, id);
        return id;
    }

private:
    Mesh& mesh_;
    double inv_eps_;
    std::map<std::pair<long long, long long>, Index> ids_;
};

/// Structured block on an (nx+1) x (ny+1) grid of precomputed vertex
/// coordinates (x,y increasing with i,j). Emits CCW elements; quadratic
/// mid nodes at geometric edge midpoints.
struct BlockGrid {
    int nx = 0, ny = 0;
    std::vector<Vec2> v;  // (nx+1)*(ny+1), i-major

    Vec2& at(int i, int j) { return v[static_cast<std::size_t>(j) * (nx + 1) + i]; }
    const Vec2& at(int i, int j) const {
        return v[static_cast<std::size_t>(j) * (nx + 1) + i];
    }
};

void emit_block(Mesh& m, NodePool& pool, const BlockGrid& g,
                const std::function<void(Index, int, int, int)>& tag_cb) {
    const bool quad = m.order == ElemOrder::quadratic;
    auto nid = [&](const Vec2& p) { return pool.get(p.x, p.y); };
    auto mid = [&](const Vec2& p, const Vec2& q) {
        return pool.get(0.5 * (p.x + q.x), 0.5 * (p.y + q.y));
    };
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const Vec2 &p00 = g.at(i, j), &p10 = g.at(i + 1, j), &p11 = g.at(i + 1, j + 1),
                       &p01 = g.at(i, j + 1);
            Element el{};
            el.conn[0] = nid(p00);
            el.conn[1] = nid(p10);
            el.conn[2] = nid(p11);
            el.conn[3] = nid(p01);
            if (quad) {
                el.conn[4] = mid(p00, p10);
                el.conn[5] = mid(p10, p11);
                el.conn[6] = mid(p11, p01);
                el.conn[7] = mid(p01, p00);
            }
            const Index e = static_cast<Index>(m.elements.size());
            m.elements.push_back(el);
            tag_cb(e, i, j, 0);
        }
}

}  // namespace

Mesh build_rectangle_domain(double B, double D, double h, double L_x, int N, int N_ox,
                            int N_oy, ElemOrder order) {
    if (!(B > 0.0) || !(D > 0.0)) throw GeometryError("build_rectangle_domain: B, D > 0");
    if (N < 1 || N_ox < 1 || N_oy < 1)
        throw ConfigError("build_rectangle_domain: element counts must be >= 1");
    const double xb = 0.5 * B;      // body half-beam
    const double Xi = 2.0 * xb;     // inner box width
    const double Yi = 2.0 * D;      // inner box depth
    const double Xm = xb + L_x;     // matching boundary
    if (!(Xm > Xi)) throw DomainError("build_rectangle_domain: L_x too small for the inner box");
    if (!(h > Yi)) throw DomainError("build_rectangle_domain: water depth must exceed 2D");

    Mesh m;
    m.order = order;
    NodePool pool(m, std::max(Xm, h));

    // Shared coordinate arrays so that block interfaces coincide bit-exactly.
    std::vector<Vec2> diag(N + 1);  // body corner -> inner-box corner
    for (int t = 0; t <= N; ++t)
        diag[t] = {lerp(xb, Xi, double(t) / N), lerp(-D, -Yi, double(t) / N)};
    std::vector<double> body_x(N + 1), inner_x(N + 1);
    for (int i = 0; i <= N; ++i) {
        body_x[i] = lerp(0.0, xb, double(i) / N);
        inner_x[i] = lerp(0.0, Xi, double(i) / N);
    }
    std::vector<double> outer_x(N_ox + 1);
    for (int i = 0; i <= N_ox; ++i) outer_x[i] = lerp(Xi, Xm, double(i) / N_ox);
    std::vector<double> surf_y(N + 1);
    for (int j = 0; j <= N; ++j) surf_y[j] = lerp(-Yi, 0.0, double(j) / N);
    // Bottom rows: geometric growth (ratio 1.1) toward the sea bed.
    std::vector<double> deep_y(N_oy + 1);
    {
        const double r = 1.1;
        const double d0 = (h - Yi) * (r - 1.0) / (std::pow(r, N_oy) - 1.0);
        deep_y[N_oy] = -Yi;
        double acc = 0.0, step = d0;
        for (int j = N_oy - 1; j >= 0; --j) {
            acc += step;
            step *= r;
            deep_y[j] = -Yi - acc;
        }
        deep_y[0] = -h;
    }

    // Block I: fan under the body, rows j = 0 (inner-box floor) .. N (body bottom).
    BlockGrid bI{N, N, {}};
    bI.v.resize(static_cast<std::size_t>(N + 1) * (N + 1));
    for (int j = 0; j <= N; ++j) {
        const int t = N - j;  // distance from the body in layers
        for (int i = 0; i <= N; ++i)
            bI.at(i, j) = {lerp(body_x[i], inner_x[i], double(t) / N), diag[t].y};
    }
    // Block II: fan beside the body, columns k = 0 (body side) .. N (inner-box wall).
    BlockGrid bII{N, N, {}};
    bII.v.resize(static_cast<std::size_t>(N + 1) * (N + 1));
    for (int k = 0; k <= N; ++k)
        for (int j = 0; j <= N; ++j)
            bII.at(k, j) = {diag[k].x, lerp(diag[k].y, 0.0, double(j) / N)};
    // Block III: outer free-surface block.
    BlockGrid bIII{N_ox, N, {}};
    bIII.v.resize(static_cast<std::size_t>(N_ox + 1) * (N + 1));
    for (int i = 0; i <= N_ox; ++i)
        for (int j = 0; j <= N; ++j) bIII.at(i, j) = {outer_x[i], surf_y[j]};
    // Blocks IV and V: stretched bottom region.
    BlockGrid bIV{N, N_oy, {}};
    bIV.v.resize(static_cast<std::size_t>(N + 1) * (N_oy + 1));
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N_oy; ++j) bIV.at(i, j) = {inner_x[i], deep_y[j]};
    BlockGrid bV{N_ox, N_oy, {}};
    bV.v.resize(static_cast<std::size_t>(N_ox + 1) * (N_oy + 1));
    for (int i = 0; i <= N_ox; ++i)
        for (int j = 0; j <= N_oy; ++j) bV.at(i, j) = {outer_x[i], deep_y[j]};

    using BT = BoundaryTag;
    emit_block(m, pool, bI, [&](Index e, int i, int j, int) {
        if (j == N - 1) m.boundary_edges.push_back({e, 2, BT::body});
        if (i == 0) m.boundary_edges.push_back({e, 3, BT::symmetry});
        (void)i;
    });
    emit_block(m, pool, bII, [&](Index e, int k, int j, int) {
        if (k == 0) m.boundary_edges.push_back({e, 3, BT::body});
        if (j == N - 1) m.boundary_edges.push_back({e, 2, BT::free_surface});
    });
    emit_block(m, pool, bIII, [&](Index e, int i, int j, int) {
        if (j == N - 1) m.boundary_edges.push_back({e, 2, BT::free_surface});
        if (i == N_ox - 1) m.boundary_edges.push_back({e, 1, BT::matching});
    });
    emit_block(m, pool, bIV, [&](Index e, int i, int j, int) {
        if (j == 0) m.boundary_edges.push_back({e, 0, BT::bottom});
        if (i == 0) m.boundary_edges.push_back({e, 3, BT::symmetry});
    });
    emit_block(m, pool, bV, [&](Index e, int i, int j, int) {
        if (j == 0) m.boundary_edges.push_back({e, 0, BT::bottom});
        if (i == N_ox - 1) m.boundary_edges.push_back({e, 1, BT::matching});
    });

    const double pi = std::numbers::pi;
    m.corners.push_back({xb, -D, 0.5 * pi, pi, +1, pool.get(xb, -D)});

    m.finalize();
    return m;
}

}  // namespace xfem2d
