#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xfem2d/hydro.hpp"
#include "xfem2d/solver.hpp"

namespace xfem2d {

enum class CaseKind { flat_plate, heaving_rectangle };
enum class Method { fem, xfem };

struct EnrichmentConfig {
    Strategy strategy = Strategy::radius;
    double r_enri = 0.0;  ///< absolute radius; 0 = case default (0.2a / 0.1B)
    int n_terms = 0;      ///< 0 = case default (3 linear, 1 quadratic)
    enum class Basis { analytic, corner_flow } basis = Basis::analytic;
};

struct PlateMeshConfig {
    double a = 1.0;
    double domain_half_size = 2.0;  ///< in units of a
    double delta_h = 0.25;          ///< in units of a
};

struct RectMeshConfig {
    int n_rx = 15;
    int n_ox = 120;
    int n_oy = 20;
    std::string file;  ///< read an unstructured mesh instead, when nonempty
};

struct PhysicsConfig {
    // rectangle
    std::vector<double> omega2B_2g{1.0};
    double B = 2.0, D = 1.0;
    double h_over_D = 40.0;
    double g = 9.81;
    double rho = 1000.0;
    double eta_3a = 1.0;
    double L_x_over_lambda = 2.0;
    double L_x = 0.0;  ///< absolute truncation distance; 0 = use L_x_over_lambda
    // plate
    double rho_plate = 1.0;
};

struct CaseConfig {
    CaseKind kind = CaseKind::flat_plate;
    Method method = Method::xfem;
    ElemOrder order = ElemOrder::linear;
    EnrichmentConfig enrichment;
    PlateMeshConfig plate;
    RectMeshConfig rect;
    PhysicsConfig physics;
    QuadratureOptions quadrature;
    SolverConfig solver;
    std::string output = "results";
    std::map<std::string, std::vector<double>> sweep_values;  ///< per-axis point lists

    double plate_radius() const { return enrichment.r_enri > 0.0 ? enrichment.r_enri : 0.2 * plate.a; }
    double rect_radius() const { return enrichment.r_enri > 0.0 ? enrichment.r_enri : 0.1 * physics.B; }
    int terms() const {
        if (enrichment.n_terms > 0) return enrichment.n_terms;
        return order == ElemOrder::linear ? 3 : 1;
    }
};

/// One output record; optional fields print as empty CSV cells.
struct ResultRow {
    std::string case_name, method, order, strategy;
    int n_terms = 0;
    double r_enri = 0.0;
    std::optional<double> delta_h;
    long n_p = 0;
    std::optional<double> omega2B_2g;
    std::optional<double> l2_error;
    std::optional<double> a33_nd;  ///< plate: A/(rho pi a^2); rectangle: A33/(rho S)
    std::optional<double> b33_nd;  ///< B33/(rho S omega)
    std::optional<double> fbar_nd; ///< Fbar/(rho omega^2 eta^2 B)
    double residual = 0.0;
    double seconds = 0.0;
    // JSON-only extras
    std::optional<double> added_mass, a33, b33, fbar, b33_energy_nd, wavenumber, wavelength;
};

/// CSV header: case,method,order,strategy,n_terms,r_enri,delta_h,n_p,
/// omega2B_2g,l2_error,a33_nd,b33_nd,fbar_nd,residual,seconds
std::string result_csv_header();
std::string to_csv(const ResultRow& row);
std::string to_json(const ResultRow& row);

std::vector<ResultRow> run_case(const CaseConfig& config);

enum class SweepAxis { delta_h, r_enri, n_terms, L_x, omega };
SweepAxis sweep_axis_from_string(const std::string& s);

struct SweepResult {
    std::vector<ResultRow> rows;
    std::optional<double> l2_slope;          ///< log-log fit vs delta_h
    std::optional<double> added_mass_slope;  ///< plate only
};

/// Runs the case at each axis value (concurrently up to `workers`); rows come
/// back in axis order. Slopes are fitted only for the delta_h axis and when
/// at least three points are present.
SweepResult run_convergence_sweep(const CaseConfig& base, SweepAxis axis,
                                  const std::vector<double>& values, int workers = 1);

/// Least-squares slope of log(err) against log(x), used for mesh-convergence rates.
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& err);

/// JSON config loader; rejects unknown keys. See README for the schema.
CaseConfig parse_case_config_file(const std::string& path);
CaseConfig parse_case_config_text(const std::string& text);

// --- building blocks shared with tests ---

struct PlateRun {
    Mesh mesh;
    EnrichmentPlan plan;
    std::optional<EnrichmentBasis> basis;
    Eigen::VectorXd dofs;
    double l2 = 0.0;
    double added_mass = 0.0;
    double residual = 0.0;
    long n_p = 0;

    /// View of the solved field; valid while this PlateRun is alive.
    RealField field() const { return {&mesh, &plan, basis ? &*basis : nullptr, dofs}; }
};
PlateRun run_plate(const CaseConfig& config);

struct RectangleRun {
    double omega = 0.0, k = 0.0, lambda = 0.0;
    double A33 = 0.0, B33 = 0.0, Fbar = 0.0, B33_energy = 0.0;
    double residual = 0.0;
    long n_p = 0;
};
RectangleRun run_rectangle(const CaseConfig& config, double omega2B_2g);

/// The rectangle mesh + plan for a config (used for DOF-count checks).
std::pair<Mesh, EnrichmentPlan> build_rectangle_discretization(const CaseConfig& config,
                                                               double L_x);

}  // namespace xfem2d
