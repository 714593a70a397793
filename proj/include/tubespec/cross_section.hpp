#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "tubespec/errors.hpp"

namespace tubespec {

/// Quadrature node over the cross-section.
struct QuadNode {
    Eigen::VectorXd point;
    double weight;
};

/// Binary occupancy grid for rasterized cross-sections; cell (i,j) has its
/// center at origin_ + spacing * (i + 1/2, j + 1/2).
struct Mask {
    int nx = 0, ny = 0;
    std::vector<std::uint8_t> cells; // row-major, ny rows of nx
    bool at(int i, int j) const {
        return i >= 0 && i < nx && j >= 0 && j < ny && cells[static_cast<size_t>(j) * nx + i];
    }
};

Mask load_mask_pgm(const std::string& path);
Mask load_mask_csv(const std::string& path);

/// The cross-section omega in R^(d-1) with its first Dirichlet eigenpair.
/// The transverse origin sits at the centroid of omega; the radius is
/// sup_{u in omega} |u| under that convention.
class CrossSection {
public:
    enum class Shape { Interval, Rectangle, Disk, MaskGrid };

    int dim() const { return dim_; }
    Shape shape() const { return shape_; }
    double radius() const { return radius_; }       // a = sup |u|
    double mu1() const { return mu1_; }
    double mu2() const { return mu2_; }

    double eigenfunction(const Eigen::VectorXd& u) const;
    Eigen::VectorXd eigenfunction_gradient(const Eigen::VectorXd& u) const;

    bool contains(const Eigen::VectorXd& u) const;
    Eigen::VectorXd bbox_lo() const { return bbox_lo_; }
    Eigen::VectorXd bbox_hi() const { return bbox_hi_; }

    const std::vector<QuadNode>& quadrature() const { return quad_; }

    /// L2(omega) norm of the stored eigenfunction under the stored rule.
    double eigenfunction_norm() const;

    std::string describe() const;

    friend CrossSection make_interval(double a);
    friend CrossSection make_rectangle(double b, double c);
    friend CrossSection make_disk(double r);
    friend CrossSection make_mask(const Mask& mask, double spacing);

private:
    CrossSection() = default;

    int dim_ = 1;
    Shape shape_ = Shape::Interval;
    double radius_ = 0.0;
    double mu1_ = 0.0, mu2_ = 0.0;
    Eigen::VectorXd bbox_lo_, bbox_hi_;
    std::vector<QuadNode> quad_;

    // shape parameters
    double half_width_ = 0.0;        // interval a
    double side_b_ = 0.0, side_c_ = 0.0; // rectangle
    double disk_r_ = 0.0;
    // mask data (cell centers re-centered at the centroid)
    double mask_spacing_ = 0.0;
    double mask_origin_x_ = 0.0, mask_origin_y_ = 0.0;
    Mask mask_;
    Eigen::MatrixXd mask_values_;    // nodal eigenfunction values on the mask lattice
    double disk_norm_ = 1.0;
};

/// omega = (-a, a) in R; mu1 = (pi/2a)^2, J1(u) = cos(pi u / 2a)/sqrt(a).
CrossSection make_interval(double a);

/// Centered rectangle with sides b x c; product-of-cosines eigenfunction,
/// radius = half diagonal.
CrossSection make_rectangle(double b, double c);

/// Centered disk of radius r; mu1 = (j01/r)^2 with j01 the first zero of the
/// order-zero Bessel function (series + bisection).
CrossSection make_disk(double r);

/// Rasterized section from a connected mask; 5-point Dirichlet eigenproblem
/// on the cell centers for (mu1, J1), midpoint quadrature.
CrossSection make_mask(const Mask& mask, double spacing);

/// Bessel J0/J1 by power series (adequate for |x| up to ~20).
double bessel_j0(double x);
double bessel_j1(double x);
/// First positive zero of J0 (~2.40483) via bisection on the series.
double bessel_j0_first_zero();
/// First positive zero of J1 (~3.83171).
double bessel_j1_first_zero();

} // namespace tubespec
