#include <doctest.h>

#include <cmath>
#include <sstream>

#include "xfem2d/cases.hpp"

using namespace xfem2d;

TEST_CASE("config parsing: defaults, overrides, unknown keys") {
    const CaseConfig c = parse_case_config_text(R"({
        "case": "heaving_rectangle",
        "method": "xfem",
        "order": "quadratic",
        "enrichment": {"strategy": "radius", "two_r_enri_over_B": 0.2, "n_terms": 3},
        "mesh": {"n_rx": 15, "n_ox": 120, "n_oy": 20},
        "physics": {"omega2B_2g": [0.5, 1.0], "B": 2.0, "D": 1.0}
    })");
    CHECK(c.kind == CaseKind::heaving_rectangle);
    CHECK(c.order == ElemOrder::quadratic);
    CHECK(c.rect_radius() == doctest::Approx(0.2));
    CHECK(c.terms() == 3);
    CHECK(c.physics.omega2B_2g.size() == 2);

    CHECK_THROWS_AS(parse_case_config_text("{\"csae\": \"flat_plate\"}"), ConfigError);
    CHECK_THROWS_AS(parse_case_config_text("{\"method\": \"fdm\"}"), ConfigError);
    CHECK_THROWS_AS(
        parse_case_config_text("{\"enrichment\": {\"strategy\": \"rings\"}}"), ConfigError);
    CHECK_THROWS_AS(parse_case_config_text("not json"), ConfigError);
}

TEST_CASE("defaults depend on the order") {
    CaseConfig c;
    c.order = ElemOrder::linear;
    CHECK(c.terms() == 3);
    c.order = ElemOrder::quadratic;
    CHECK(c.terms() == 1);
    CHECK(c.plate_radius() == doctest::Approx(0.2));
}

TEST_CASE("CSV rows have the documented columns") {
    CHECK(result_csv_header() ==
          "case,method,order,strategy,n_terms,r_enri,delta_h,n_p,omega2B_2g,l2_error,"
          "a33_nd,b33_nd,fbar_nd,residual,seconds");
    CaseConfig cfg;
    cfg.kind = CaseKind::flat_plate;
    cfg.method = Method::xfem;
    cfg.order = ElemOrder::linear;
    cfg.plate.delta_h = 0.5;
    const auto rows = run_case(cfg);
    REQUIRE(rows.size() == 1);
    const std::string csv = to_csv(rows.front());
    CHECK(std::count(csv.begin(), csv.end(), ',') == 14);
    CHECK(csv.rfind("flat_plate,xfem,linear,radius,", 0) == 0);
    // JSON mirror carries the same numbers
    const std::string js = to_json(rows.front());
    CHECK(js.find("\"l2_error\"") != std::string::npos);
}

TEST_CASE("re-running a config reproduces identical rows (timings aside)") {
    CaseConfig cfg;
    cfg.kind = CaseKind::flat_plate;
    cfg.method = Method::xfem;
    cfg.order = ElemOrder::quadratic;
    cfg.plate.delta_h = 0.25;
    auto strip_seconds = [](std::string csv) {
        return csv.substr(0, csv.rfind(','));
    };
    const auto r1 = run_case(cfg);
    const auto r2 = run_case(cfg);
    CHECK(strip_seconds(to_csv(r1.front())) == strip_seconds(to_csv(r2.front())));
}

TEST_CASE("run_case reports the table DOF count for the plate row") {
    CaseConfig cfg;
    cfg.kind = CaseKind::flat_plate;
    cfg.method = Method::xfem;
    cfg.order = ElemOrder::quadratic;
    cfg.plate.delta_h = 0.125;
    const auto rows = run_case(cfg);
    CHECK(rows.front().n_p == 3288);
}

TEST_CASE("xfem beats fem on the same plate mesh") {
    CaseConfig cfg;
    cfg.kind = CaseKind::flat_plate;
    cfg.order = ElemOrder::linear;
    cfg.plate.delta_h = 0.125;
    cfg.method = Method::fem;
    const double e_fem = run_plate(cfg).l2;
    cfg.method = Method::xfem;
    const double e_xfem = run_plate(cfg).l2;
    CHECK(e_xfem < e_fem);
}

TEST_CASE("slope fitting on synthetic power-law data") {
    std::vector<double> h{0.5, 0.25, 0.125, 0.0625}, err;
    for (double v : h) err.push_back(3.7 * std::pow(v, 1.83));
    CHECK(fit_loglog_slope(h, err) == doctest::Approx(1.83).epsilon(1e-12));
    CHECK_THROWS_AS(fit_loglog_slope({1.0}, {1.0}), DomainError);
}

TEST_CASE("delta_h sweep returns rows in axis order and a fitted slope") {
    CaseConfig cfg;
    cfg.kind = CaseKind::flat_plate;
    cfg.method = Method::fem;
    cfg.order = ElemOrder::linear;
    const SweepResult res =
        run_convergence_sweep(cfg, SweepAxis::delta_h, {0.5, 0.25, 0.125}, 2);
    REQUIRE(res.rows.size() == 3);
    CHECK(res.rows[0].delta_h == doctest::Approx(0.5));
    CHECK(res.rows[2].delta_h == doctest::Approx(0.125));
    REQUIRE(res.l2_slope.has_value());
    CHECK(*res.l2_slope > 0.4);  // errors decrease under refinement
    // single-point sweep produces no slope
    const SweepResult single =
        run_convergence_sweep(cfg, SweepAxis::delta_h, {0.5}, 1);
    CHECK(!single.l2_slope.has_value());
}
