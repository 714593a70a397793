#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "tubespec/grid.hpp"
#include "tubespec/tube.hpp"

namespace tubespec {

/// Sparse symmetric discretization of the tube operator on a truncated grid.
/// FormH: generalized pair (A, M) from the weighted Dirichlet form, mass
///        diagonal h * cell volume.
/// Schroedinger: unitarily transformed variant with explicit potential and
///        flat (cell volume) mass.
struct AssembledOperator {
    enum class Variant { FormH, Schroedinger };

    Eigen::SparseMatrix<double> stiffness;
    Eigen::VectorXd mass; // diagonal of M
    Variant variant = Variant::FormH;

    // geometry provenance, carried into reports
    double mu1 = 0.0;
    double c_minus = 1.0, c_plus = 1.0;
};

/// Assemble the weighted form: longitudinal fluxes weighted 1/h at cell
/// midpoints, transverse fluxes weighted h, mass h * volume. Writes symmetric
/// entry pairs once, so the matrix is exactly symmetric.
AssembledOperator assemble_form(const TubeGeometry& tube, const TruncatedGrid& grid);

/// Curvature-induced potential of the transformed operator, evaluated from
/// the curvature-matrix identities for the s-derivatives of h (never from
/// finite differences of h itself).
class EffectivePotential {
public:
    explicit EffectivePotential(const TubeGeometry& tube);

    double operator()(double s, const Eigen::VectorXd& u) const;

    struct Level {
        double kappa1 = 0.0;
        Eigen::VectorXd b;  // rotation column coupling u
        Eigen::VectorXd v1; // u . v1 = dh/ds
        Eigen::VectorXd v2; // u . v2 = d2h/ds2
        double value(const Eigen::VectorXd& u) const;
    };
    Level level(double s) const;

    bool smooth() const { return true; } // construction enforces C2

private:
    CurvatureProfile profile_;
    TangFrameTable frame_;
};

EffectivePotential effective_potential(const TubeGeometry& tube);

/// Assemble the transformed operator: longitudinal fluxes weighted 1/h^2,
/// unit transverse fluxes (negative-sign Laplacian), diagonal potential,
/// flat mass.
AssembledOperator assemble_schroedinger(const TubeGeometry& tube, const TruncatedGrid& grid,
                                        const EffectivePotential& potential);

/// Lowest eigenvalue of the transverse finite-difference Dirichlet Laplacian
/// on the grid's node set: the grid-consistent essential-spectrum threshold.
double transverse_discrete_threshold(const TruncatedGrid& grid);

} // namespace tubespec
