#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tubespec/operators.hpp"

namespace tubespec {

/// Grid-refinement diagnostics for one eigenvalue.
struct ConvergenceDiagnostics {
    std::vector<double> grid_values; // coarse -> fine
    double extrapolated = 0.0;
    double observed_order = 0.0;
    double error_estimate = 0.0; // spread of successive extrapolants
};

/// Computed low-lying spectrum of one assembled operator with the threshold
/// bookkeeping the bound-state classification needs.
struct SpectralReport {
    Eigen::VectorXd eigenvalues;
    Eigen::VectorXd residuals;
    Eigen::MatrixXd vectors;

    double threshold_mu1 = 0.0;      // continuum transverse eigenvalue
    double threshold_discrete = 0.0; // same threshold at this grid resolution
    double safety_margin = 0.0;
    int below_threshold_count = 0;
    bool converged = true;

    double truncation = 0.0, ds = 0.0, du = 0.0;
    long long dof = 0;

    std::vector<ConvergenceDiagnostics> convergence; // optional, per eigenvalue
};

/// k lowest generalized eigenpairs of (A, M), deterministic for a fixed seed.
/// Classification threshold is min(mu1, discrete threshold) minus a safety
/// margin of max(10 * residual, 1e-10); refinement-based margins are layered
/// on by callers that own multi-grid data.
SpectralReport lowest_eigenpairs(const AssembledOperator& op, const TruncatedGrid& grid, int k,
                                 double tol, std::uint64_t seed);

struct ScanPolicy {
    double ds = 1.0 / 64;
    double du = 1.0 / 64;
    int k = 4;
    double tol = 1e-9;
    std::uint64_t seed = 1;
};

/// Truncation-length scan: eigenvalues above the threshold must drift down
/// toward it as L grows while below-threshold eigenvalues stay put.
struct ScanResult {
    std::vector<double> lengths;
    std::vector<SpectralReport> reports;
    bool drift_observed = false;      // above-threshold gaps shrink with L
    bool bound_states_stable = false; // below-threshold values L-stable
    std::string verdict;
};

ScanResult threshold_scan(const TubeGeometry& tube, const std::vector<double>& lengths,
                          const ScanPolicy& policy);

/// Richardson extrapolation helper for a sequence of values on grids with
/// successively halved steps (coarse -> fine).
ConvergenceDiagnostics richardson(const std::vector<double>& values);

/// M-weighted mass fraction of eigenvector x in the region |s| > fraction*L.
double tail_mass_fraction(const TruncatedGrid& grid, const Eigen::VectorXd& mass,
                          const Eigen::VectorXd& x, double fraction = 0.5);

} // namespace tubespec
