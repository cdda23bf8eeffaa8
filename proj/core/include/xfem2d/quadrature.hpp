#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "xfem2d/types.hpp"

namespace xfem2d {

/// Points and positive weights on a reference domain ([-1,1] or [-1,1]^2).
struct QuadratureRule1D {
    std::vector<double> points;
    std::vector<double> weights;
};

struct QuadratureRule2D {
    std::vector<std::array<double, 2>> points;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1,1], exact for degree <= 2n-1.
QuadratureRule1D gauss_rule_1d(int n);

/// Tensor-product Gauss rule on [-1,1]^2; n points per direction, 1 <= n <= 10.
QuadratureRule2D gauss_rule_2d(int n);

struct AdaptiveConfig {
    double tolerance = 1e-10;  ///< absolute error target
    int max_levels = 200;      ///< subdivision cap
    int base_rule = 6;         ///< Gauss points per direction on each sub-cell
    double min_width = 0.0;    ///< stop splitting below this interval width;
                               ///< guards integrands whose physical evaluation
                               ///< points degenerate before the parameter does
};

/// Integrates f over [-1,1]^2 when f has an integrable point singularity at
/// the reference corner `corner` (0..3, same numbering as element corners).
/// Geometric subdivision toward the corner; the sequence of estimates is
/// accelerated with a Richardson step. If `decay_exponent` alpha is given
/// (integrand ~ r^alpha near the corner, alpha > -2), the known contraction
/// ratio 2^-(alpha+2) is used; otherwise the ratio is estimated from the
/// running sequence. Throws AccuracyError when max_levels is exhausted.
double adaptive_singular_cubature(const std::function<double(double, double)>& f,
                                  int corner, const AdaptiveConfig& cfg,
                                  std::optional<double> decay_exponent = std::nullopt);

/// Vector-valued variant sharing one subdivision sequence: f(xi, eta, out)
/// fills n_comp values; convergence is required for every component.
void adaptive_singular_cubature_v(
    const std::function<void(double, double, double*)>& f, int n_comp, int corner,
    const AdaptiveConfig& cfg, std::optional<double> decay_exponent, double* result);

/// Adaptive 1D quadrature on [a,b] for integrands singular at one endpoint
/// (`singular_at_a` selects which). Repeated bisection of the singular half:
/// the regular halves are accumulated and the loop stops when the whole-vs-
/// split difference drops below the tolerance.
double adaptive_line_quadrature(const std::function<double(double)>& f, double a,
                                double b, bool singular_at_a, const AdaptiveConfig& cfg);

/// Vector-valued variant of the endpoint-singular line quadrature.
void adaptive_line_quadrature_v(const std::function<void(double, double*)>& f,
                                int n_comp, double a, double b, bool singular_at_a,
                                const AdaptiveConfig& cfg, double* result);

}  // namespace xfem2d
