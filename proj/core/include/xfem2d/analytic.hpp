#pragma once

#include <complex>

#include "xfem2d/types.hpp"

namespace xfem2d {

/// Closed-form potential for a fixed flat plate of half-width `a` on y = 0,
/// |x| <= a, held in a uniform vertical stream (far field u -> 0, v -> -1).
///
/// The field is double-valued across the plate: `side` (+1 above, -1 below)
/// selects the face when evaluating on the cut; it is ignored elsewhere.
class PlateField {
public:
    explicit PlateField(double a) : a_(a) {}

    double half_width() const { return a_; }

    /// phi(x,y); total on the cut once a side is given.
    double potential(double x, double y, int side = 0) const;

    /// (u,v) = grad phi. Throws SingularEvalError exactly at the plate tips.
    Vec2 velocity(double x, double y, int side = 0) const;

private:
    std::complex<double> sqrt_z2_minus_a2(double x, double y, int side) const;
    double a_;
};

/// Positive root k of k*tanh(k*h) = omega^2/g, Newton iteration seeded with
/// the deep-water value. Relative residual <= 1e-12 on return.
double solve_dispersion(double omega, double h, double g);

}  // namespace xfem2d
