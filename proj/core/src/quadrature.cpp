#include "xfem2d/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace xfem2d {

QuadratureRule1D gauss_rule_1d(int n) {
    if (n < 1 || n > 64) throw DomainError("gauss_rule_1d: n out of range");
    QuadratureRule1D r;
    r.points.resize(n);
    r.weights.resize(n);
    // Newton iteration on Legendre polynomials, symmetric roots.
    for (int k = 0; k < (n + 1) / 2; ++k) {
        double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.points[k] = -x;
        r.points[n - 1 - k] = x;
        r.weights[k] = w;
        r.weights[n - 1 - k] = w;
    }
    if (n % 2 == 1) r.points[n / 2] = 0.0;
    return r;
}

QuadratureRule2D gauss_rule_2d(int n) {
    if (n < 1 || n > 10) throw DomainError("gauss_rule_2d: n out of range [1,10]");
    const QuadratureRule1D g = gauss_rule_1d(n);
    QuadratureRule2D r;
    r.points.reserve(static_cast<std::size_t>(n) * n);
    r.weights.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            r.points.push_back({g.points[i], g.points[j]});
            r.weights.push_back(g.weights[i] * g.weights[j]);
        }
    return r;
}

namespace {

struct Cell {
    double x0, y0, hx, hy;  // lower-left corner and extents
};

void gauss_on_cell(const std::function<void(double, double, double*)>& f, int n_comp,
                   const QuadratureRule2D& rule, const Cell& c, std::vector<double>& buf,
                   double* acc) {
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
        const double xi = c.x0 + 0.5 * c.hx * (rule.points[q][0] + 1.0);
        const double eta = c.y0 + 0.5 * c.hy * (rule.points[q][1] + 1.0);
        f(xi, eta, buf.data());
        const double w = rule.weights[q] * 0.25 * c.hx * c.hy;
        for (int k = 0; k < n_comp; ++k) acc[k] += w * buf[k];
    }
}

}  // namespace

void adaptive_singular_cubature_v(
    const std::function<void(double, double, double*)>& f, int n_comp, int corner,
    const AdaptiveConfig& cfg, std::optional<double> decay_exponent, double* result) {
    if (corner < 0 || corner > 3) throw DomainError("adaptive cubature: corner index");
    if (decay_exponent && *decay_exponent <= -2.0)
        throw DomainError("adaptive cubature: non-integrable exponent");

    const QuadratureRule2D rule = gauss_rule_2d(std::clamp(cfg.base_rule, 1, 10));
    // Singular corner in reference coordinates.
    const double cx = (corner == 1 || corner == 2) ? 1.0 : -1.0;
    const double cy = (corner >= 2) ? 1.0 : -1.0;

    std::vector<double> buf(static_cast<std::size_t>(n_comp));
    std::vector<double> regular(static_cast<std::size_t>(n_comp), 0.0);  // accumulated
    std::vector<double> prev(static_cast<std::size_t>(n_comp), 0.0);     // I_{l-1}
    std::vector<double> prev_delta(static_cast<std::size_t>(n_comp), 0.0);
    std::vector<double> cur(static_cast<std::size_t>(n_comp));

    // Current singular cell, shrinking toward the corner.
    Cell sing{-1.0, -1.0, 2.0, 2.0};

    // Level-0 estimate: Gauss over the whole cell.
    std::fill(prev.begin(), prev.end(), 0.0);
    gauss_on_cell(f, n_comp, rule, sing, buf, prev.data());

    const double q_known = decay_exponent ? std::pow(2.0, -(*decay_exponent + 2.0)) : 0.0;

    for (int level = 1; level <= cfg.max_levels; ++level) {
        // Split into 4; recurse only into the quarter holding the corner.
        const double hx = 0.5 * sing.hx, hy = 0.5 * sing.hy;
        const double sx = (cx > 0.0) ? sing.x0 + hx : sing.x0;
        const double sy = (cy > 0.0) ? sing.y0 + hy : sing.y0;
        Cell next{sx, sy, hx, hy};
        for (int ix = 0; ix < 2; ++ix)
            for (int iy = 0; iy < 2; ++iy) {
                Cell sub{sing.x0 + ix * hx, sing.y0 + iy * hy, hx, hy};
                if (sub.x0 == next.x0 && sub.y0 == next.y0) continue;
                gauss_on_cell(f, n_comp, rule, sub, buf, regular.data());
            }
        cur = regular;
        gauss_on_cell(f, n_comp, rule, next, buf, cur.data());

        // Richardson step on the level sequence I_l.
        double worst_tail = 0.0;
        for (int k = 0; k < n_comp; ++k) {
            const double delta = cur[k] - prev[k];
            double q = q_known;
            if (!decay_exponent) {
                q = (std::abs(prev_delta[k]) > 0.0) ? std::abs(delta / prev_delta[k]) : 0.5;
                q = std::clamp(q, 0.0, 0.95);
            }
            const double tail = (q > 0.0 && q < 1.0) ? delta * q / (1.0 - q) : 0.0;
            worst_tail = std::max(worst_tail, std::max(std::abs(tail), std::abs(delta) * 0.5));
            prev_delta[k] = delta;
            result[k] = cur[k] + tail;
        }
        prev = cur;
        sing = next;
        if (level >= 2 && worst_tail <= cfg.tolerance) return;
    }
    throw AccuracyError("adaptive_singular_cubature: tolerance not met at max_levels",
                        result[0], std::abs(result[0] - prev[0]));
}

double adaptive_singular_cubature(const std::function<double(double, double)>& f,
                                  int corner, const AdaptiveConfig& cfg,
                                  std::optional<double> decay_exponent) {
    double out = 0.0;
    adaptive_singular_cubature_v(
        [&f](double xi, double eta, double* v) { v[0] = f(xi, eta); }, 1, corner, cfg,
        decay_exponent, &out);
    return out;
}

void adaptive_line_quadrature_v(const std::function<void(double, double*)>& f,
                                int n_comp, double a, double b, bool singular_at_a,
                                const AdaptiveConfig& cfg, double* result) {
    const QuadratureRule1D rule = gauss_rule_1d(std::clamp(cfg.base_rule, 1, 64));
    std::vector<double> buf(static_cast<std::size_t>(n_comp));

    auto gauss_seg = [&](double s0, double s1, double* acc) {
        const double mid = 0.5 * (s0 + s1), half = 0.5 * (s1 - s0);
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            f(mid + half * rule.points[q], buf.data());
            for (int k = 0; k < n_comp; ++k) acc[k] += rule.weights[q] * half * buf[k];
        }
    };

    // Orient so the singularity sits at s = lo.
    double lo = singular_at_a ? a : b;
    double hi = singular_at_a ? b : a;
    const double sign = singular_at_a ? 1.0 : -1.0;  // ds keeps original orientation

    std::vector<double> whole(static_cast<std::size_t>(n_comp), 0.0);  // T1 on current segment
    std::vector<double> acc(static_cast<std::size_t>(n_comp), 0.0);    // T3: regular halves
    std::vector<double> t21(static_cast<std::size_t>(n_comp));
    std::vector<double> t22(static_cast<std::size_t>(n_comp));

    gauss_seg(lo, hi, whole.data());
    double err = 0.0;
    for (int level = 1; level <= cfg.max_levels; ++level) {
        const double mid = lo + 0.5 * (hi - lo);
        // Resolution floor: once the singular half can no longer be resolved
        // (in the parameter, or below the caller's physical limit), the
        // accumulated value is the best attainable answer. The floor must be
        // checked before evaluating, or quadrature points round onto the
        // singular endpoint itself.
        if (mid == lo || mid == hi || std::abs(hi - lo) < cfg.min_width ||
            std::abs(hi - lo) <=
                256.0 * std::numeric_limits<double>::epsilon() * std::abs(lo)) {
            for (int k = 0; k < n_comp; ++k) result[k] = sign * (acc[k] + whole[k]);
            return;
        }
        std::fill(t21.begin(), t21.end(), 0.0);
        std::fill(t22.begin(), t22.end(), 0.0);
        gauss_seg(lo, mid, t21.data());   // singular half
        gauss_seg(mid, hi, t22.data());   // regular half
        err = 0.0;
        for (int k = 0; k < n_comp; ++k)
            err = std::max(err, std::abs(t21[k] + t22[k] - whole[k]));
        for (int k = 0; k < n_comp; ++k) acc[k] += t22[k];
        if (err <= cfg.tolerance) {
            for (int k = 0; k < n_comp; ++k) result[k] = sign * (acc[k] + t21[k]);
            return;
        }
        hi = mid;
        whole = t21;
    }
    throw AccuracyError("adaptive_line_quadrature: tolerance not met at max_levels",
                        sign * (acc[0] + t21[0]), err);
}

double adaptive_line_quadrature(const std::function<double(double)>& f, double a,
                                double b, bool singular_at_a, const AdaptiveConfig& cfg) {
    double out = 0.0;
    adaptive_line_quadrature_v([&f](double s, double* v) { v[0] = f(s); }, 1, a, b,
                               singular_at_a, cfg, &out);
    return out;
}

}  // namespace xfem2d
