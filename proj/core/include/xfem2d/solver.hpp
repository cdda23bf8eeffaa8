#pragma once

#include "xfem2d/assembly.hpp"

namespace xfem2d {

struct SolverConfig {
    double residual_tol = 1e-10;  ///< relative residual contract
    bool iterative = false;       ///< BiCGSTAB+ILUT instead of sparse LU
    int max_iterations = 4000;
};

template <class Scalar>
struct SolveReport {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> solution;  ///< all DOFs, Dirichlet included
    double residual = 0.0;                              ///< ||Ax-b|| / ||b|| (reduced system)
    Index n_free = 0;
    int iterations = 0;  ///< 0 for the direct path
};

SolveReport<double> solve(const RealSystem& sys, const SolverConfig& cfg = {});
SolveReport<Complex> solve(const ComplexSystem& sys, const SolverConfig& cfg = {});

}  // namespace xfem2d
