#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>

namespace tubespec {

struct EigOptions {
    int k = 4;             // eigenpairs wanted
    double tol = 1e-10;    // residual tolerance ||Ax - lambda Mx|| / ||Mx||
    std::uint64_t seed = 1;
    int max_steps = 400;   // Krylov dimension cap (also capped by n)
};

struct EigResult {
    Eigen::VectorXd values;    // ascending
    Eigen::MatrixXd vectors;   // columns, M-orthonormal
    Eigen::VectorXd residuals; // per pair
    bool converged = false;
    int steps = 0;
};

/// k smallest eigenpairs of the generalized symmetric problem
///   A x = lambda M x,  M = diag(mass) positive,
/// by shift-invert Lanczos at shift zero: full-reorthogonalized Lanczos on
/// B^{-1}, B = M^{-1/2} A M^{-1/2}, factored once (sparse LDLT with
/// fill-reducing ordering). Deterministic for a fixed seed.
EigResult smallest_eigenpairs(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& mass,
                              const EigOptions& opts);

/// Standard problem variant (M = I).
EigResult smallest_eigenpairs(const Eigen::SparseMatrix<double>& A, const EigOptions& opts);

/// Lowest Ritz value of M^{-1/2} A M^{-1/2} after a few plain Lanczos steps
/// (matvec only, no factorization). An upper bound on the true minimum;
/// used as a cheap positive-semidefiniteness probe.
double lowest_ritz_value(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& mass,
                         int steps = 30, std::uint64_t seed = 7);

} // namespace tubespec
