#include "xfem2d/analytic.hpp"

#include <cmath>

namespace xfem2d {

std::complex<double> PlateField::sqrt_z2_minus_a2(double x, double y, int side) const {
    // w = z^2 - a^2 has its principal-branch cut where w is real negative,
    // i.e. on the plate and on the x = 0 axis. On the plate the face is
    // selected through the signed zero of Im(w) = 2xy.
    double re = (x - a_) * (x + a_) + (-y) * y;
    double im = 2.0 * x * y;
    if (im == 0.0 && side != 0) im = std::copysign(0.0, side * x);
    return std::sqrt(std::complex<double>(re, im));
}

double PlateField::potential(double x, double y, int side) const {
    const std::complex<double> s = sqrt_z2_minus_a2(x, y, side);
    // phi = Re{-i sqrt(z^2-a^2)}, mirrored on x >= 0 so the field is
    // continuous off the cut and symmetric about x = 0.
    const double phi = s.imag();  // Re{-i s}
    return (x >= 0.0) ? -phi : phi;
}

Vec2 PlateField::velocity(double x, double y, int side) const {
    const std::complex<double> s = sqrt_z2_minus_a2(x, y, side);
    if (std::abs(s) == 0.0)
        throw SingularEvalError("PlateField::velocity: evaluation at a plate tip");
    const std::complex<double> z(x, y);
    const std::complex<double> dw = std::complex<double>(0.0, -1.0) * z / s;  // W'(z)
    double u = dw.real();
    double v = -dw.imag();
    if (x >= 0.0) {
        u = -u;
        v = -v;
    }
    return {u, v};
}

double solve_dispersion(double omega, double h, double g) {
    if (!(omega > 0.0) || !(h > 0.0) || !(g > 0.0))
        throw ConfigError("solve_dispersion: omega, h, g must be positive");
    const double nu = omega * omega / g;  // deep-water wavenumber
    double k = nu;
    if (nu * h < 1e-2) k = omega / std::sqrt(g * h);  // shallow-water seed
    for (int it = 0; it < 100; ++it) {
        const double th = std::tanh(k * h);
        const double f = k * th - nu;
        if (std::abs(f) <= 1e-13 * nu) return k;
        const double sech2 = 1.0 - th * th;
        const double df = th + k * h * sech2;
        k -= f / df;
        if (k <= 0.0) k = 0.5 * nu;  // keep iterate in the positive branch
    }
    const double resid = std::abs(k * std::tanh(k * h) - nu);
    if (resid <= 1e-12 * nu) return k;
    throw Error("solve_dispersion: Newton did not converge");
}

}  // namespace xfem2d
