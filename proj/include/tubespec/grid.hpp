#pragma once

#include <Eigen/Dense>
#include <array>
#include <unordered_map>
#include <vector>

#include "tubespec/cross_section.hpp"

namespace tubespec {

/// Tensor finite-difference grid on the truncated straight tube
/// (-L, L) x omega, Dirichlet by node exclusion on all boundaries. The s step
/// and (for wall-aligned shapes) the transverse steps are snapped so the walls
/// fall exactly on the excluded node layer.
class TruncatedGrid {
public:
    static TruncatedGrid make(const CrossSection& section, double L, double ds_target,
                              double du_target);

    double truncation() const { return L_; }
    double ds() const { return ds_; }
    int n_s() const { return n_s_; }
    double s_node(int i) const { return -L_ + (i + 1) * ds_; }

    int n_u() const { return static_cast<int>(u_nodes_.size()); }
    const Eigen::VectorXd& u_node(int t) const { return u_nodes_[t]; }
    int axes() const { return static_cast<int>(steps_.size()); }
    double axis_step(int axis) const { return steps_[axis]; }
    double cell_area() const { return cell_area_; } // transverse cell measure
    double cell_volume() const { return ds_ * cell_area_; }

    /// Index of the +axis / -axis neighbor of transverse node t, or -1 when
    /// the neighbor is excluded (Dirichlet wall).
    int neighbor_plus(int t, int axis) const { return nbr_[t][2 * axis]; }
    int neighbor_minus(int t, int axis) const { return nbr_[t][2 * axis + 1]; }

    long long dof() const { return static_cast<long long>(n_s_) * n_u(); }
    long long index(int is, int iu) const { return static_cast<long long>(is) * n_u() + iu; }

private:
    double L_ = 0.0, ds_ = 0.0;
    int n_s_ = 0;
    std::vector<double> steps_;
    double cell_area_ = 0.0;
    std::vector<Eigen::VectorXd> u_nodes_;
    std::vector<std::array<int, 4>> nbr_; // 2 per axis; axes() <= 2
};

} // namespace tubespec
