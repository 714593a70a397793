#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tubespec/curve.hpp"

namespace tubespec {

/// Sampled solution R(s) of the transverse rotation ODE R' = -R K, kept on
/// the rotation group by per-step projection. Between nodes, values come from
/// geodesic interpolation in the group.
class TangFrameTable {
public:
    TangFrameTable(int dim, double s0, double step, std::vector<Eigen::MatrixXd> nodes,
                   Eigen::MatrixXd initial);

    int dimension() const { return dim_; }          // ambient d
    int transverse_dim() const { return dim_ - 1; } // matrix size
    double s_begin() const { return s0_; }
    double s_end() const { return s0_ + step_ * (static_cast<double>(nodes_.size()) - 1.0); }
    double step() const { return step_; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    double s_node(int k) const { return s0_ + step_ * k; }
    const Eigen::MatrixXd& node(int k) const { return nodes_[k]; }
    const Eigen::MatrixXd& initial_condition() const { return initial_; }

    /// Interpolated rotation; exact at nodes. Throws RangeError outside the table.
    Eigen::MatrixXd rotation_at(double s) const;

    /// As rotation_at, but clamps s to the table range (geometry evaluation
    /// beyond the table only happens where kappa_1 vanishes).
    Eigen::MatrixXd rotation_clamped(double s) const;

    /// First column of R(s): the direction the metric factor couples to u.
    Eigen::VectorXd first_column(double s) const { return rotation_clamped(s).col(0); }

    /// Worst deviation from the rotation group over all nodes.
    double max_orthogonality_drift() const;
    double max_determinant_drift() const;

private:
    int dim_;
    double s0_, step_;
    std::vector<Eigen::MatrixXd> nodes_;
    Eigen::MatrixXd initial_;
};

/// Integrate R' = -R K(s) over [s_lo, s_hi] with a classical 4th-order
/// one-step scheme and per-step polar re-projection onto the rotation group.
/// `initial` must satisfy the rotation conditions to 1e-12.
TangFrameTable solve_frame_ode(const CurvatureProfile& profile, double s_lo, double s_hi,
                               double step, const Eigen::MatrixXd& initial);

/// As above with the default initial condition R = I and the default step
/// min(0.01, 0.1 / max(1, sup|kappa| * (d-2))).
TangFrameTable solve_frame_ode(const CurvatureProfile& profile, double s_lo, double s_hi);

/// Default integration step for a profile.
double default_frame_step(const CurvatureProfile& profile);

/// The rotated moving frame at the frame sample's position:
/// vector 0 is e_1, vector mu is sum_nu R_(mu,nu) e_(nu+1).
std::vector<Eigen::VectorXd> tang_vectors(const TangFrameTable& table,
                                          const FrenetFrameSample& frenet);

/// Nearest rotation matrix (polar factor, determinant +1).
Eigen::MatrixXd project_to_rotation(const Eigen::MatrixXd& m);

/// CSV dump of (s, flattened R(s)) column-major with 17 significant digits.
void dump_frame_csv(const TangFrameTable& table, const std::string& path);

} // namespace tubespec
