#include "xfem2d/solver.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>

namespace xfem2d {

namespace {

template <class Scalar>
SolveReport<Scalar> solve_impl(const AssembledSystem<Scalar>& sys, const SolverConfig& cfg) {
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    const auto& A = sys.matrix;
    const Vec& b = sys.rhs;
    const double bnorm = b.norm();

    Vec x;
    int iterations = 0;
    if (!cfg.iterative) {
        Eigen::SparseLU<Eigen::SparseMatrix<Scalar>> lu;
        lu.analyzePattern(A);
        lu.factorize(A);
        if (lu.info() != Eigen::Success)
            throw RankError(
                "solve: sparse LU factorization failed; the matrix is singular "
                "(a pure-Neumann Laplace system without a Dirichlet anchor has a "
                "constant null space)");
        x = lu.solve(b);
        // One step of iterative refinement keeps the residual well under the contract.
        Vec r = b - A * x;
        x += lu.solve(r);
    } else {
        Eigen::BiCGSTAB<Eigen::SparseMatrix<Scalar>, Eigen::IncompleteLUT<Scalar>> it;
        it.setTolerance(cfg.residual_tol * 1e-2);
        it.setMaxIterations(cfg.max_iterations);
        it.compute(A);
        x = it.solve(b);
        iterations = static_cast<int>(it.iterations());
        if (it.info() != Eigen::Success)
            throw RankError("solve: iterative solver did not converge");
    }

    SolveReport<Scalar> rep;
    rep.n_free = static_cast<Index>(A.rows());
    rep.iterations = iterations;
    rep.residual = (bnorm > 0.0) ? (b - A * x).norm() / bnorm : (b - A * x).norm();
    if (!(rep.residual <= cfg.residual_tol))
        throw AccuracyError("solve: relative residual " + std::to_string(rep.residual) +
                                " exceeds the configured tolerance",
                            rep.residual, cfg.residual_tol);

    rep.solution = sys.fixed_values;
    for (Index f = 0; f < rep.n_free; ++f)
        rep.solution[sys.global_of_free[static_cast<std::size_t>(f)]] = x[f];
    return rep;
}

}  // namespace

SolveReport<double> solve(const RealSystem& sys, const SolverConfig& cfg) {
    return solve_impl(sys, cfg);
}

SolveReport<Complex> solve(const ComplexSystem& sys, const SolverConfig& cfg) {
    return solve_impl(sys, cfg);
}

}  // namespace xfem2d
