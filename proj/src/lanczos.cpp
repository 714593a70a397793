#include "tubespec/lanczos.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "tubespec/errors.hpp"

namespace tubespec {

namespace {

// Lanczos on Op = B^{-1} with full reorthogonalization. Returns the Krylov
// basis and the tridiagonal entries; stops early on happy breakdown.
struct LanczosState {
    Eigen::MatrixXd basis; // n x m
    std::vector<double> alpha, beta;
};

void extend_lanczos(const Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>& solver,
                    LanczosState& st, int target, std::mt19937_64& rng) {
    const int n = static_cast<int>(st.basis.rows());
    target = std::min(target, n);
    int m = static_cast<int>(st.alpha.size());
    if (static_cast<int>(st.basis.cols()) < target + 1)
        st.basis.conservativeResize(Eigen::NoChange, target + 1);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    while (m < target) {
        Eigen::VectorXd w = solver.solve(st.basis.col(m));
        if (m > 0) w -= st.beta[m - 1] * st.basis.col(m - 1);
        const double a = st.basis.col(m).dot(w);
        w -= a * st.basis.col(m);
        // full reorthogonalization, two passes
        for (int pass = 0; pass < 2; ++pass) {
            const Eigen::VectorXd proj = st.basis.leftCols(m + 1).transpose() * w;
            w -= st.basis.leftCols(m + 1) * proj;
        }
        st.alpha.push_back(a);
        double b = w.norm();
        if (b < 1e-13 * std::max(1.0, std::abs(a))) {
            // invariant subspace found; restart with a fresh direction
            if (m + 1 >= n) {
                st.beta.push_back(0.0);
                break;
            }
            Eigen::VectorXd fresh(n);
            for (int i = 0; i < n; ++i) fresh[i] = unif(rng);
            for (int pass = 0; pass < 2; ++pass) {
                const Eigen::VectorXd proj = st.basis.leftCols(m + 1).transpose() * fresh;
                fresh -= st.basis.leftCols(m + 1) * proj;
            }
            w = fresh;
            b = 0.0; // decouple the new block
            if (w.norm() < 1e-12) {
                st.beta.push_back(0.0);
                break;
            }
        }
        st.beta.push_back(b);
        st.basis.col(m + 1) = w / w.norm();
        ++m;
    }
}

} // namespace

EigResult smallest_eigenpairs(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& mass,
                              const EigOptions& opts) {
    const int n = static_cast<int>(A.rows());
    if (n == 0 || A.cols() != n) throw ArityError("smallest_eigenpairs: empty or non-square A");
    if (mass.size() != n) throw ArityError("smallest_eigenpairs: mass size mismatch");
    if ((mass.array() <= 0.0).any())
        throw PreconditionError("smallest_eigenpairs: mass must be positive");
    const int k = std::min(opts.k, n);

    // B = D^{-1/2} A D^{-1/2}
    const Eigen::VectorXd dinv = mass.cwiseSqrt().cwiseInverse();
    Eigen::SparseMatrix<double> B = dinv.asDiagonal() * A * dinv.asDiagonal();

    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
    solver.compute(B);
    if (solver.info() != Eigen::Success) {
        const Eigen::VectorXd d = solver.vectorD();
        throw SolverError("sparse LDLT factorization failed (diag range [" +
                          std::to_string(d.size() ? d.minCoeff() : 0.0) + ", " +
                          std::to_string(d.size() ? d.maxCoeff() : 0.0) + "])");
    }

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    LanczosState st;
    st.basis.resize(n, std::min(n, std::max(2 * k + 12, 32)));
    Eigen::VectorXd v0(n);
    for (int i = 0; i < n; ++i) v0[i] = unif(rng);
    st.basis.col(0) = v0 / v0.norm();

    EigResult result;
    int m_target = std::min({std::max(2 * k + 12, 32), opts.max_steps, n});
    while (true) {
        extend_lanczos(solver, st, m_target, rng);
        const int m = static_cast<int>(st.alpha.size());
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            t(i, i) = st.alpha[i];
            if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = st.beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        // Largest theta of B^{-1} are the smallest eigenvalues of B.
        Eigen::VectorXd theta = es.eigenvalues();
        Eigen::MatrixXd y = es.eigenvectors();

        std::vector<int> order(m);
        for (int i = 0; i < m; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return theta[a] > theta[b]; });

        const int got = std::min(k, m);
        Eigen::VectorXd values(got), residuals(got);
        Eigen::MatrixXd vectors(n, got);
        for (int j = 0; j < got; ++j) {
            const int idx = order[j];
            const Eigen::VectorXd z = st.basis.leftCols(m) * y.col(idx);
            const Eigen::VectorXd x = dinv.asDiagonal() * z;
            const double lambda = 1.0 / theta[idx];
            values[j] = lambda;
            const Eigen::VectorXd mx = mass.asDiagonal() * x;
            residuals[j] = (A * x - lambda * mx).norm() / mx.norm();
            vectors.col(j) = x;
        }
        // sort ascending by eigenvalue
        std::vector<int> asc(got);
        for (int i = 0; i < got; ++i) asc[i] = i;
        std::sort(asc.begin(), asc.end(), [&](int a, int b) { return values[a] < values[b]; });
        result.values.resize(got);
        result.residuals.resize(got);
        result.vectors.resize(n, got);
        for (int i = 0; i < got; ++i) {
            result.values[i] = values[asc[i]];
            result.residuals[i] = residuals[asc[i]];
            result.vectors.col(i) = vectors.col(asc[i]);
        }
        result.steps = m;
        result.converged = got == k && (result.residuals.array() <= opts.tol).all();
        if (result.converged || m >= std::min(opts.max_steps, n)) break;
        m_target = std::min({m + std::max(m / 2, 8), opts.max_steps, n});
    }
    return result;
}

EigResult smallest_eigenpairs(const Eigen::SparseMatrix<double>& A, const EigOptions& opts) {
    return smallest_eigenpairs(A, Eigen::VectorXd::Ones(A.rows()), opts);
}

double lowest_ritz_value(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& mass,
                         int steps, std::uint64_t seed) {
    const int n = static_cast<int>(A.rows());
    const Eigen::VectorXd dinv = mass.cwiseSqrt().cwiseInverse();
    const Eigen::SparseMatrix<double> B = dinv.asDiagonal() * A * dinv.asDiagonal();
    const int m = std::min(steps, n);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Eigen::MatrixXd basis(n, m + 1);
    Eigen::VectorXd v0(n);
    for (int i = 0; i < n; ++i) v0[i] = unif(rng);
    basis.col(0) = v0 / v0.norm();

    std::vector<double> alpha, beta;
    for (int j = 0; j < m; ++j) {
        Eigen::VectorXd w = B * basis.col(j);
        if (j > 0) w -= beta[j - 1] * basis.col(j - 1);
        const double a = basis.col(j).dot(w);
        w -= a * basis.col(j);
        const Eigen::VectorXd proj = basis.leftCols(j + 1).transpose() * w;
        w -= basis.leftCols(j + 1) * proj;
        alpha.push_back(a);
        const double b = w.norm();
        if (b < 1e-14) {
            beta.push_back(0.0);
            break;
        }
        beta.push_back(b);
        basis.col(j + 1) = w / b;
    }
    const int got = static_cast<int>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(got, got);
    for (int i = 0; i < got; ++i) {
        t(i, i) = alpha[i];
        if (i + 1 < got) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    return es.eigenvalues()[0];
}

} // namespace tubespec
