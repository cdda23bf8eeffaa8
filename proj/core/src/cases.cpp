#include "xfem2d/cases.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <numbers>
#include <semaphore>
#include <sstream>

#include <nlohmann/json.hpp>

#include "xfem2d/analytic.hpp"

namespace xfem2d {

namespace {

using json = nlohmann::json;

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string opt_cell(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::point: return "point";
        case Strategy::patch: return "patch";
        case Strategy::radius: return "radius";
    }
    return "?";
}

}  // namespace

std::string result_csv_header() {
    return "case,method,order,strategy,n_terms,r_enri,delta_h,n_p,omega2B_2g,l2_error,"
           "a33_nd,b33_nd,fbar_nd,residual,seconds";
}

std::string to_csv(const ResultRow& r) {
    std::ostringstream os;
    os << r.case_name << ',' << r.method << ',' << r.order << ',' << r.strategy << ','
       << r.n_terms << ',' << fmt(r.r_enri) << ',' << opt_cell(r.delta_h) << ',' << r.n_p
       << ',' << opt_cell(r.omega2B_2g) << ',' << opt_cell(r.l2_error) << ','
       << opt_cell(r.a33_nd) << ',' << opt_cell(r.b33_nd) << ',' << opt_cell(r.fbar_nd)
       << ',' << fmt(r.residual) << ',' << fmt(r.seconds);
    return os.str();
}

std::string to_json(const ResultRow& r) {
    json j;
    j["case"] = r.case_name;
    j["method"] = r.method;
    j["order"] = r.order;
    j["strategy"] = r.strategy;
    j["n_terms"] = r.n_terms;
    j["r_enri"] = r.r_enri;
    j["n_p"] = r.n_p;
    j["residual"] = r.residual;
    j["seconds"] = r.seconds;
    auto put = [&](const char* key, const std::optional<double>& v) {
        if (v) j[key] = *v;
    };
    put("delta_h", r.delta_h);
    put("omega2B_2g", r.omega2B_2g);
    put("l2_error", r.l2_error);
    put("a33_nd", r.a33_nd);
    put("b33_nd", r.b33_nd);
    put("fbar_nd", r.fbar_nd);
    put("added_mass", r.added_mass);
    put("a33", r.a33);
    put("b33", r.b33);
    put("fbar", r.fbar);
    put("b33_energy_nd", r.b33_energy_nd);
    put("k", r.wavenumber);
    put("lambda", r.wavelength);
    return j.dump();
}

// ---------------------------------------------------------------------------
// Runners
// ---------------------------------------------------------------------------

PlateRun run_plate(const CaseConfig& config) {
    PlateRun run;
    const double a = config.plate.a;
    run.mesh = build_plate_domain(a, config.plate.domain_half_size * a,
                                  config.plate.delta_h * a, config.order);
    const PlateField exact(a);

    if (config.method == Method::xfem) {
        if (config.enrichment.basis == EnrichmentConfig::Basis::analytic)
            run.basis = EnrichmentBasis::analytic_field(run.mesh.corners, exact);
        else
            run.basis = EnrichmentBasis::corner_flow(run.mesh.corners, config.terms());
        run.plan = select_enriched_nodes(run.mesh, *run.basis, config.enrichment.strategy,
                                         config.plate_radius(), run.basis->n_terms());
    } else {
        run.plan = no_enrichment(run.mesh.n_nodes());
    }
    run.n_p = run.plan.total_dofs();

    LaplaceBC bc;
    bc.dirichlet_value = [&exact](double x, double y, int side) {
        return exact.potential(x, y, side);
    };
    bc.flux = [](double, double, double, double, int) { return 0.0; };  // fixed plate

    const EnrichmentBasis* basis = run.basis ? &*run.basis : nullptr;
    const RealSystem sys =
        assemble_plate_system(run.mesh, run.plan, basis, bc, config.quadrature);
    const SolveReport<double> rep = solve(sys, config.solver);
    run.residual = rep.residual;
    run.dofs = rep.solution;

    // Nodal errors against the exact field (faces resolved through an
    // adjacent element's centroid).
    std::vector<double> num(run.mesh.nodes.size()), ana(run.mesh.nodes.size());
    for (Index n = 0; n < run.mesh.n_nodes(); ++n) {
        num[n] = rep.solution[n];
        const Node& nd = run.mesh.nodes[n];
        int side = 0;
        if (!run.mesh.node_elements()[n].empty())
            side = run.mesh.element_centroid(run.mesh.node_elements()[n].front()).y > 0.0
                       ? +1 : -1;
        ana[n] = exact.potential(nd.x, nd.y, side);
    }
    run.l2 = l2_error(num, ana);
    run.added_mass = added_mass_uniform_flow(run.field(), -1.0, config.physics.rho_plate,
                                             config.quadrature);
    return run;
}

std::pair<Mesh, EnrichmentPlan> build_rectangle_discretization(const CaseConfig& config,
                                                               double L_x) {
    const auto& ph = config.physics;
    Mesh mesh;
    if (!config.rect.file.empty()) {
        mesh = read_mesh_file(config.rect.file);
        // Attach the submerged-corner descriptor expected by the enrichment.
        const double xc = 0.5 * ph.B, yc = -ph.D;
        Index node = kInvalidIndex;
        for (Index n = 0; n < mesh.n_nodes(); ++n)
            if (std::hypot(mesh.nodes[n].x - xc, mesh.nodes[n].y - yc) < 1e-9 * ph.B)
                node = n;
        if (node == kInvalidIndex)
            throw GeometryError("mesh file has no node at the body corner");
        mesh.corners.push_back({xc, yc, 0.5 * std::numbers::pi, std::numbers::pi, +1, node});
    } else {
        mesh = build_rectangle_domain(ph.B, ph.D, ph.h_over_D * ph.D, L_x, config.rect.n_rx,
                                      config.rect.n_ox, config.rect.n_oy, config.order);
    }

    EnrichmentPlan plan;
    if (config.method == Method::xfem) {
        const EnrichmentBasis basis = EnrichmentBasis::corner_flow(mesh.corners, config.terms());
        plan = select_enriched_nodes(mesh, basis, config.enrichment.strategy,
                                     config.rect_radius(), config.terms());
    } else {
        plan = no_enrichment(mesh.n_nodes());
    }
    return {std::move(mesh), std::move(plan)};
}

RectangleRun run_rectangle(const CaseConfig& config, double omega2B_2g) {
    const auto& ph = config.physics;
    RectangleRun run;
    run.omega = std::sqrt(2.0 * ph.g * omega2B_2g / ph.B);
    const double h = ph.h_over_D * ph.D;
    run.k = solve_dispersion(run.omega, h, ph.g);
    run.lambda = 2.0 * std::numbers::pi / run.k;
    const double L_x = ph.L_x > 0.0 ? ph.L_x : ph.L_x_over_lambda * run.lambda;

    auto [mesh, plan] = build_rectangle_discretization(config, L_x);
    run.n_p = plan.total_dofs();
    std::optional<EnrichmentBasis> basis;
    if (config.method == Method::xfem)
        basis = EnrichmentBasis::corner_flow(mesh.corners, config.terms());

    RadiationParams rp;
    rp.omega = run.omega;
    rp.h = h;
    rp.g = ph.g;
    rp.eta_a = ph.eta_3a;
    rp.k = run.k;
    const ComplexSystem sys = assemble_radiation_system(
        mesh, plan, basis ? &*basis : nullptr, rp, config.quadrature);
    const SolveReport<Complex> rep = solve(sys, config.solver);
    run.residual = rep.residual;

    const ComplexField field{&mesh, &plan, basis ? &*basis : nullptr, rep.solution};
    const RadiationCoeffs rc =
        radiation_coefficients(field, run.omega, ph.rho, ph.eta_3a, config.quadrature);
    run.A33 = rc.A33;
    run.B33 = rc.B33;
    run.Fbar = mean_vertical_force(field, run.omega, ph.rho, ph.eta_3a, config.quadrature);
    run.B33_energy =
        damping_from_energy_flux(field, run.omega, ph.rho, ph.eta_3a);
    return run;
}

namespace {

ResultRow base_row(const CaseConfig& c) {
    ResultRow r;
    r.case_name = c.kind == CaseKind::flat_plate ? "flat_plate" : "heaving_rectangle";
    r.method = c.method == Method::fem ? "fem" : "xfem";
    r.order = c.order == ElemOrder::linear ? "linear" : "quadratic";
    r.strategy = c.method == Method::fem ? "" : strategy_name(c.enrichment.strategy);
    r.n_terms = c.method == Method::fem ? 0 : c.terms();
    r.r_enri = c.method == Method::fem
                   ? 0.0
                   : (c.kind == CaseKind::flat_plate ? c.plate_radius() : c.rect_radius());
    return r;
}

}  // namespace

std::vector<ResultRow> run_case(const CaseConfig& config) {
    std::vector<ResultRow> rows;
    if (config.kind == CaseKind::flat_plate) {
        const double t0 = now_seconds();
        const PlateRun run = run_plate(config);
        ResultRow r = base_row(config);
        r.delta_h = config.plate.delta_h;
        r.n_p = run.n_p;
        r.l2_error = run.l2;
        const double exact = config.physics.rho_plate * std::numbers::pi *
                             config.plate.a * config.plate.a;
        r.a33_nd = run.added_mass / exact;
        r.added_mass = run.added_mass;
        r.residual = run.residual;
        r.seconds = now_seconds() - t0;
        rows.push_back(std::move(r));
        return rows;
    }
    for (const double w2 : config.physics.omega2B_2g) {
        const double t0 = now_seconds();
        const RectangleRun run = run_rectangle(config, w2);
        ResultRow r = base_row(config);
        r.n_p = run.n_p;
        r.omega2B_2g = w2;
        const double S = config.physics.B * config.physics.D;  // submerged area
        const double rho = config.physics.rho;
        r.a33_nd = run.A33 / (rho * S);
        r.b33_nd = run.B33 / (rho * S * run.omega);
        r.fbar_nd = run.Fbar / (rho * run.omega * run.omega * config.physics.eta_3a *
                                config.physics.eta_3a * config.physics.B);
        r.a33 = run.A33;
        r.b33 = run.B33;
        r.fbar = run.Fbar;
        r.b33_energy_nd = run.B33_energy / (rho * S * run.omega);
        r.wavenumber = run.k;
        r.wavelength = run.lambda;
        r.residual = run.residual;
        r.seconds = now_seconds() - t0;
        rows.push_back(std::move(r));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

SweepAxis sweep_axis_from_string(const std::string& s) {
    if (s == "delta_h") return SweepAxis::delta_h;
    if (s == "r_enri") return SweepAxis::r_enri;
    if (s == "n_terms") return SweepAxis::n_terms;
    if (s == "L_x") return SweepAxis::L_x;
    if (s == "omega") return SweepAxis::omega;
    throw ConfigError("unknown sweep axis '" + s + "'");
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& err) {
    if (x.size() != err.size() || x.size() < 2)
        throw DomainError("fit_loglog_slope: need at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(err[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SweepResult run_convergence_sweep(const CaseConfig& base, SweepAxis axis,
                                  const std::vector<double>& values, int workers) {
    SweepResult res;
    auto apply = [&](double v) {
        CaseConfig c = base;
        switch (axis) {
            case SweepAxis::delta_h: c.plate.delta_h = v; break;
            case SweepAxis::r_enri: c.enrichment.r_enri = v; break;
            case SweepAxis::n_terms: c.enrichment.n_terms = static_cast<int>(v); break;
            case SweepAxis::L_x: c.physics.L_x_over_lambda = v; c.physics.L_x = 0.0; break;
            case SweepAxis::omega: c.physics.omega2B_2g = {v}; break;
        }
        return c;
    };

    workers = std::max(1, workers);
    std::counting_semaphore<64> slots(std::min(workers, 64));
    std::vector<std::future<std::vector<ResultRow>>> futs;
    futs.reserve(values.size());
    for (const double v : values) {
        futs.push_back(std::async(std::launch::async, [&, v] {
            slots.acquire();
            try {
                auto rows = run_case(apply(v));
                slots.release();
                return rows;
            } catch (...) {
                slots.release();
                throw;
            }
        }));
    }
    for (auto& f : futs)
        for (auto& row : f.get()) res.rows.push_back(std::move(row));

    if (axis == SweepAxis::delta_h && values.size() >= 3 &&
        base.kind == CaseKind::flat_plate) {
        std::vector<double> h, e, am;
        for (const auto& r : res.rows) {
            if (!r.delta_h || !r.l2_error) continue;
            h.push_back(*r.delta_h);
            e.push_back(*r.l2_error);
            if (r.a33_nd) am.push_back(std::abs(*r.a33_nd - 1.0));
        }
        if (h.size() >= 3) {
            res.l2_slope = fit_loglog_slope(h, e);
            if (am.size() == h.size()) res.added_mass_slope = fit_loglog_slope(h, am);
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Config files
// ---------------------------------------------------------------------------

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> keys,
                    const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* k : keys)
            if (key == k) ok = true;
        if (!ok) throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

}  // namespace

CaseConfig parse_case_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(j, {"case", "method", "order", "enrichment", "mesh", "physics",
                       "quadrature", "solver", "output", "sweep"},
                   "config");
    CaseConfig c;

    const std::string kind = j.value("case", "flat_plate");
    if (kind == "flat_plate") c.kind = CaseKind::flat_plate;
    else if (kind == "heaving_rectangle") c.kind = CaseKind::heaving_rectangle;
    else throw ConfigError("unknown case '" + kind + "'");

    const std::string method = j.value("method", "xfem");
    if (method == "fem") c.method = Method::fem;
    else if (method == "xfem") c.method = Method::xfem;
    else throw ConfigError("unknown method '" + method + "'");

    const std::string order = j.value("order", "linear");
    if (order == "linear") c.order = ElemOrder::linear;
    else if (order == "quadratic") c.order = ElemOrder::quadratic;
    else throw ConfigError("unknown order '" + order + "'");

    if (j.contains("enrichment")) {
        const json& e = j["enrichment"];
        reject_unknown(e, {"strategy", "r_enri", "two_r_enri_over_B", "n_terms", "basis"},
                       "enrichment");
        const std::string s = e.value("strategy", "radius");
        if (s == "point") c.enrichment.strategy = Strategy::point;
        else if (s == "patch") c.enrichment.strategy = Strategy::patch;
        else if (s == "radius") c.enrichment.strategy = Strategy::radius;
        else throw ConfigError("unknown enrichment strategy '" + s + "'");
        c.enrichment.r_enri = e.value("r_enri", 0.0);
        c.enrichment.n_terms = e.value("n_terms", 0);
        if (c.enrichment.n_terms < 0 || c.enrichment.n_terms > 5)
            throw ConfigError("n_terms must be in 1..5");
        const std::string b = e.value("basis", "analytic");
        if (b == "analytic") c.enrichment.basis = EnrichmentConfig::Basis::analytic;
        else if (b == "corner_flow") c.enrichment.basis = EnrichmentConfig::Basis::corner_flow;
        else throw ConfigError("unknown enrichment basis '" + b + "'");
        if (e.contains("two_r_enri_over_B")) {
            if (c.enrichment.r_enri > 0.0)
                throw ConfigError("give either r_enri or two_r_enri_over_B, not both");
            // resolved after physics is read
            c.enrichment.r_enri = -e["two_r_enri_over_B"].get<double>();
        }
    }

    if (j.contains("mesh")) {
        const json& m = j["mesh"];
        reject_unknown(m, {"a", "domain_half_size", "delta_h", "n_rx", "n_ox", "n_oy", "file"},
                       "mesh");
        c.plate.a = m.value("a", 1.0);
        c.plate.domain_half_size = m.value("domain_half_size", 2.0);
        c.plate.delta_h = m.value("delta_h", 0.25);
        c.rect.n_rx = m.value("n_rx", 15);
        c.rect.n_ox = m.value("n_ox", 120);
        c.rect.n_oy = m.value("n_oy", 20);
        c.rect.file = m.value("file", std::string());
    }

    if (j.contains("physics")) {
        const json& p = j["physics"];
        reject_unknown(p, {"omega2B_2g", "B", "D", "h_over_D", "g", "rho", "eta_3a",
                           "L_x_over_lambda", "L_x", "rho_plate"},
                       "physics");
        if (p.contains("omega2B_2g")) {
            c.physics.omega2B_2g.clear();
            if (p["omega2B_2g"].is_array())
                for (const auto& v : p["omega2B_2g"]) c.physics.omega2B_2g.push_back(v.get<double>());
            else
                c.physics.omega2B_2g.push_back(p["omega2B_2g"].get<double>());
        }
        c.physics.B = p.value("B", 2.0);
        c.physics.D = p.value("D", 1.0);
        c.physics.h_over_D = p.value("h_over_D", 40.0);
        c.physics.g = p.value("g", 9.81);
        c.physics.rho = p.value("rho", 1000.0);
        c.physics.eta_3a = p.value("eta_3a", 1.0);
        c.physics.L_x_over_lambda = p.value("L_x_over_lambda", 2.0);
        c.physics.L_x = p.value("L_x", 0.0);
        c.physics.rho_plate = p.value("rho_plate", 1.0);
    }
    if (c.enrichment.r_enri < 0.0)  // two_r_enri_over_B form
        c.enrichment.r_enri = -c.enrichment.r_enri * 0.5 * c.physics.B;

    if (j.contains("quadrature")) {
        const json& q = j["quadrature"];
        reject_unknown(q, {"tolerance", "max_levels", "base_rule", "gauss_linear",
                           "gauss_quadratic", "gauss_blending", "gauss_edge"},
                       "quadrature");
        c.quadrature.adaptive.tolerance = q.value("tolerance", 1e-10);
        c.quadrature.adaptive.max_levels = q.value("max_levels", 200);
        c.quadrature.adaptive.base_rule = q.value("base_rule", 6);
        c.quadrature.gauss_linear = q.value("gauss_linear", 2);
        c.quadrature.gauss_quadratic = q.value("gauss_quadratic", 3);
        c.quadrature.gauss_blending = q.value("gauss_blending", 5);
        c.quadrature.gauss_edge = q.value("gauss_edge", 4);
    }
    if (j.contains("solver")) {
        const json& s = j["solver"];
        reject_unknown(s, {"residual_tol", "iterative", "max_iterations"}, "solver");
        c.solver.residual_tol = s.value("residual_tol", 1e-10);
        c.solver.iterative = s.value("iterative", false);
        c.solver.max_iterations = s.value("max_iterations", 4000);
    }
    if (j.contains("sweep")) {
        const json& s = j["sweep"];
        reject_unknown(s, {"delta_h", "r_enri", "n_terms", "L_x", "omega"}, "sweep");
        for (const auto& [axis, arr] : s.items()) {
            std::vector<double> vals;
            for (const auto& v : arr) vals.push_back(v.get<double>());
            c.sweep_values[axis] = std::move(vals);
        }
    }
    c.output = j.value("output", "results");
    return c;
}

CaseConfig parse_case_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_case_config_text(ss.str());
}

}  // namespace xfem2d
