#include "tubespec/spectrum.hpp"

#include <cmath>
#include <sstream>

#include "tubespec/lanczos.hpp"

namespace tubespec {

SpectralReport lowest_eigenpairs(const AssembledOperator& op, const TruncatedGrid& grid, int k,
                                 double tol, std::uint64_t seed) {
    if (k < 1) throw PreconditionError("lowest_eigenpairs: k must be >= 1");
    EigOptions opts;
    opts.k = k;
    opts.tol = tol;
    opts.seed = seed;
    const EigResult eig = smallest_eigenpairs(op.stiffness, op.mass, opts);

    SpectralReport report;
    report.eigenvalues = eig.values;
    report.residuals = eig.residuals;
    report.vectors = eig.vectors;
    report.converged = eig.converged;
    report.threshold_mu1 = op.mu1;
    report.threshold_discrete = transverse_discrete_threshold(grid);
    report.truncation = grid.truncation();
    report.ds = grid.ds();
    report.du = grid.axis_step(0);
    report.dof = grid.dof();

    const double max_residual = eig.residuals.size() ? eig.residuals.maxCoeff() : 0.0;
    report.safety_margin = std::max(10.0 * max_residual, 1e-10);
    const double threshold = std::min(report.threshold_mu1, report.threshold_discrete);
    report.below_threshold_count = 0;
    for (int i = 0; i < report.eigenvalues.size(); ++i)
        if (report.eigenvalues[i] < threshold - report.safety_margin)
            ++report.below_threshold_count;
    return report;
}

ConvergenceDiagnostics richardson(const std::vector<double>& values) {
    ConvergenceDiagnostics diag;
    diag.grid_values = values;
    const size_t n = values.size();
    if (n < 2) {
        diag.extrapolated = n ? values.back() : 0.0;
        diag.error_estimate = std::abs(diag.extrapolated) * 1e-3;
        return diag;
    }
    auto extrap = [](double coarse, double fine) { return fine + (fine - coarse) / 3.0; };
    const double e_last = extrap(values[n - 2], values[n - 1]);
    diag.extrapolated = e_last;
    if (n >= 3) {
        const double num = values[n - 2] - values[n - 3];
        const double den = values[n - 1] - values[n - 2];
        diag.observed_order = den != 0.0 ? std::log2(std::abs(num / den)) : 0.0;
        const double e_prev = extrap(values[n - 3], values[n - 2]);
        diag.error_estimate = std::abs(e_last - e_prev);
    } else {
        diag.observed_order = 0.0;
        diag.error_estimate = std::abs(values[n - 1] - values[n - 2]) / 3.0;
    }
    return diag;
}

double tail_mass_fraction(const TruncatedGrid& grid, const Eigen::VectorXd& mass,
                          const Eigen::VectorXd& x, double fraction) {
    double tail = 0.0, total = 0.0;
    const double cut = fraction * grid.truncation();
    for (int i = 0; i < grid.n_s(); ++i) {
        const bool outside = std::abs(grid.s_node(i)) > cut;
        for (int t = 0; t < grid.n_u(); ++t) {
            const long long p = grid.index(i, t);
            const double m = mass[p] * x[p] * x[p];
            total += m;
            if (outside) tail += m;
        }
    }
    return total > 0 ? tail / total : 0.0;
}

ScanResult threshold_scan(const TubeGeometry& tube, const std::vector<double>& lengths,
                          const ScanPolicy& policy) {
    if (lengths.size() < 2) throw PreconditionError("threshold_scan: need at least two lengths");
    const CurvatureProfile& profile = tube.profile();
    // Decay precondition: the essential-spectrum claim needs kappa_1 -> 0.
    if (!profile.support().finite) {
        const double sup = profile.sup_kappa1();
        if (profile.tail_magnitude() > std::max(1e-8, 1e-3 * sup))
            throw PreconditionError(
                "threshold_scan: curvature does not decay at infinity (tail magnitude " +
                std::to_string(profile.tail_magnitude()) + ")");
    }

    ScanResult result;
    result.lengths = lengths;
    for (double length : lengths) {
        const TruncatedGrid grid = TruncatedGrid::make(tube.section(), length, policy.ds, policy.du);
        const AssembledOperator op = assemble_form(tube, grid);
        result.reports.push_back(lowest_eigenpairs(op, grid, policy.k, policy.tol, policy.seed));
    }

    // Drift of above-threshold eigenvalues toward the (grid-consistent)
    // threshold, and stability of the ones below it.
    bool drift = true, stable = true;
    bool any_above = false, any_below = false;
    for (size_t j = 1; j < result.reports.size(); ++j) {
        const SpectralReport& prev = result.reports[j - 1];
        const SpectralReport& cur = result.reports[j];
        const double thr_prev = std::min(prev.threshold_mu1, prev.threshold_discrete);
        const double thr_cur = std::min(cur.threshold_mu1, cur.threshold_discrete);
        const int k = static_cast<int>(std::min(prev.eigenvalues.size(), cur.eigenvalues.size()));
        for (int i = 0; i < k; ++i) {
            const bool below_prev = prev.eigenvalues[i] < thr_prev - prev.safety_margin;
            const bool below_cur = cur.eigenvalues[i] < thr_cur - cur.safety_margin;
            if (below_prev && below_cur) {
                any_below = true;
                const double rel = std::abs(cur.eigenvalues[i] - prev.eigenvalues[i]) /
                                   std::max(1e-300, std::abs(prev.eigenvalues[i]));
                if (rel > 1e-3) stable = false;
            } else if (!below_prev && !below_cur) {
                any_above = true;
                const double gap_prev = prev.eigenvalues[i] - prev.threshold_discrete;
                const double gap_cur = cur.eigenvalues[i] - cur.threshold_discrete;
                if (!(gap_cur < gap_prev)) drift = false;
            }
        }
    }
    result.drift_observed = any_above && drift;
    result.bound_states_stable = !any_below || stable;

    std::ostringstream verdict;
    verdict << "above-threshold eigenvalues "
            << (result.drift_observed ? "drift toward" : "do not consistently approach")
            << " the transverse threshold as L grows; below-threshold eigenvalues are "
            << (any_below ? (stable ? "present and L-stable" : "present but NOT L-stable")
                          : "absent");
    result.verdict = verdict.str();
    return result;
}

} // namespace tubespec
