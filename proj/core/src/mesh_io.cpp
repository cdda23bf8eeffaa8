#include <fstream>
#include <sstream>

#include "xfem2d/mesh.hpp"

namespace xfem2d {

namespace {

bool is_section(const std::string& tok) {
    return tok == "NODES" || tok == "ELEMENTS" || tok == "EDGES" || tok == "TWINS";
}

}  // namespace

Mesh read_mesh_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open mesh file '" + path + "'");

    Mesh m;
    bool order_set = false;
    std::string section;
    std::string line;
    long lineno = 0;

    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;  // blank

        if (is_section(tok)) {
            section = tok;
            continue;
        }
        if (section.empty()) throw ParseError("data before any section header", lineno);

        if (section == "NODES") {
            std::istringstream es(line);
            long id;
            double x, y;
            if (!(es >> id >> x >> y)) throw ParseError("malformed node line", lineno);
            if (id != static_cast<long>(m.nodes.size()))
                throw ParseError("node ids must be consecutive from 0", lineno);
            m.nodes.push_back({x, y, kInvalidIndex});
        } else if (section == "ELEMENTS") {
            std::istringstream es(line);
            long id;
            int nn;
            if (!(es >> id >> nn)) throw ParseError("malformed element line", lineno);
            if (nn != 4 && nn != 8)
                throw ParseError("unknown element type (node count must be 4 or 8)", lineno);
            const ElemOrder ord = (nn == 4) ? ElemOrder::linear : ElemOrder::quadratic;
            if (!order_set) {
                m.order = ord;
                order_set = true;
            } else if (ord != m.order) {
                throw ParseError("mixed element orders are not supported", lineno);
            }
            if (id != static_cast<long>(m.elements.size()))
                throw ParseError("element ids must be consecutive from 0", lineno);
            Element el{};
            for (int i = 0; i < nn; ++i) {
                long n;
                if (!(es >> n)) throw ParseError("element line has too few nodes", lineno);
                el.conn[i] = static_cast<Index>(n);
            }
            m.elements.push_back(el);
        } else if (section == "EDGES") {
            std::istringstream es(line);
            long e;
            int le;
            std::string tag;
            if (!(es >> e >> le >> tag)) throw ParseError("malformed edge line", lineno);
            BoundaryTag t;
            try {
                t = boundary_tag_from_string(tag);
            } catch (const ParseError& err) {
                throw ParseError(err.what(), lineno);
            }
            m.boundary_edges.push_back({static_cast<Index>(e), le, t});
        } else {  // TWINS
            std::istringstream es(line);
            long a, b;
            if (!(es >> a >> b)) throw ParseError("malformed twin line", lineno);
            if (a < 0 || b < 0 || a >= static_cast<long>(m.nodes.size()) ||
                b >= static_cast<long>(m.nodes.size()) || a == b)
                throw ParseError("twin pair references missing nodes", lineno);
            m.nodes[a].twin = static_cast<Index>(b);
            m.nodes[b].twin = static_cast<Index>(a);
        }
    }
    if (m.elements.empty()) throw ParseError("mesh file contains no elements");
    m.finalize();
    return m;
}

void write_mesh_file(const Mesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write mesh file '" + path + "'");
    out.precision(17);
    out << "NODES\n";
    for (Index n = 0; n < mesh.n_nodes(); ++n)
        out << n << ' ' << mesh.nodes[n].x << ' ' << mesh.nodes[n].y << '\n';
    const int nn = nodes_per_element(mesh.order);
    out << "ELEMENTS\n";
    for (Index e = 0; e < mesh.n_elements(); ++e) {
        out << e << ' ' << nn;
        for (int i = 0; i < nn; ++i) out << ' ' << mesh.elements[e].conn[i];
        out << '\n';
    }
    out << "EDGES\n";
    for (const BoundaryEdge& be : mesh.boundary_edges)
        out << be.element << ' ' << be.local_edge << ' ' << to_string(be.tag) << '\n';
    out << "TWINS\n";
    for (Index n = 0; n < mesh.n_nodes(); ++n)
        if (mesh.nodes[n].twin != kInvalidIndex && n < mesh.nodes[n].twin)
            out << n << ' ' << mesh.nodes[n].twin << '\n';
}

}  // namespace xfem2d
