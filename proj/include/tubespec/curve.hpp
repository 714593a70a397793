#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <vector>

#include "tubespec/errors.hpp"

namespace tubespec {

/// Scalar function of arc length with optional analytic derivatives.
/// Missing derivatives are filled in by 4th-order central differences.
struct ScalarFunction {
    std::function<double(double)> value;
    std::function<double(double)> deriv1; // optional
    std::function<double(double)> deriv2; // optional

    double d1(double s) const;
    double d2(double s) const;
};

/// Support of a curvature profile along the arc-length axis.
struct Support {
    bool finite = false;
    double bound = 0.0; // kappa_i(s) == 0 for |s| > bound when finite

    static Support infinite() { return {false, 0.0}; }
    static Support bounded(double b) { return {true, b}; }
};

/// Sampled function with local-polynomial interpolation: cubic (4-point
/// window) for values, quintic (6-point window) for first and second
/// derivatives. Abscissae must be strictly increasing.
class TabulatedFunction {
public:
    TabulatedFunction(std::vector<double> x, std::vector<double> y);
    double value(double s) const;
    double deriv1(double s) const;
    double deriv2(double s) const;
    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

private:
    void window(double s, int width, int& lo) const;
    std::vector<double> x_, y_;
};

/// Parametric curve t -> Gamma(t) in R^d with derivative maps up to order d.
/// Derivatives not supplied analytically fall back to 4th-order central
/// differences with step eps^(1/(order+2)).
class ParametricCurve {
public:
    using Map = std::function<Eigen::VectorXd(double)>;

    ParametricCurve(int dim, Map position, std::vector<Map> derivatives, double t0, double t1);

    /// Curve from a position map alone; all derivatives by finite differences.
    static ParametricCurve from_position(int dim, Map position, double t0, double t1);

    int dimension() const { return dim_; }
    double t_begin() const { return t0_; }
    double t_end() const { return t1_; }

    Eigen::VectorXd position(double t) const;
    Eigen::VectorXd derivative(double t, int order) const;
    bool has_analytic_derivative(int order) const;

    /// Number of orders covered by analytic maps (prefix length).
    int analytic_order() const;

private:
    int dim_;
    Map position_;
    std::vector<Map> derivatives_;
    double t0_, t1_;
};

/// Orthonormal Frenet frame at one arc-length position.
/// Column i of `vectors` is e_{i+1}; det(vectors) == +1.
struct FrenetFrameSample {
    double s = 0.0;
    Eigen::MatrixXd vectors;
    double orientation = 1.0;
};

enum class SmoothnessGrade { C0, C1, C2 };
enum class DerivativeSource { analytic, tabulated, finite_difference };

/// The curvature functions kappa_1..kappa_{d-1} of a curve in R^d, together
/// with the metadata the tube construction needs (sup norm, support, grade).
class CurvatureProfile {
public:
    CurvatureProfile(int dim, std::vector<ScalarFunction> components, Support support,
                     SmoothnessGrade grade, DerivativeSource source);

    int dimension() const { return dim_; }
    int count() const { return dim_ - 1; }

    /// kappa_{i+1}(s) for i in [0, d-2]; exactly zero outside a finite support.
    double kappa(int i, double s) const;
    double kappa_d1(int i, double s) const;
    double kappa_d2(int i, double s) const;

    /// Reported bound on |kappa_1|: sampled maximum inflated by 5%.
    double sup_kappa1() const { return sup_kappa1_; }
    Support support() const { return support_; }
    SmoothnessGrade grade() const { return grade_; }
    DerivativeSource derivative_source() const { return source_; }

    /// Radius beyond which every sampled |kappa_i| drops below 1e-14;
    /// equals the sampling cap when the profile does not decay there.
    double effective_support() const { return effective_support_; }
    /// Largest |kappa_i| seen over the outer tenth of the sampled range.
    double tail_magnitude() const { return tail_magnitude_; }
    /// True when all sampled |kappa_i| stay below tol.
    bool is_straight(double tol = 1e-12) const { return sampled_max_all_ <= tol; }

    /// Full skew-symmetric d x d curvature matrix at s.
    Eigen::MatrixXd curvature_matrix(double s) const;
    /// Transverse (d-1)x(d-1) block (rows/cols 2..d), which drives the frame ODE.
    Eigen::MatrixXd transverse_block(double s) const;
    Eigen::MatrixXd transverse_block_d1(double s) const;

private:
    void sample_metadata();

    int dim_;
    std::vector<ScalarFunction> components_;
    Support support_;
    SmoothnessGrade grade_;
    DerivativeSource source_;
    double sup_kappa1_ = 0.0;
    double sampled_max_all_ = 0.0;
    double effective_support_ = 0.0;
    double tail_magnitude_ = 0.0;
};

/// Reparametrize by arc length via adaptive quadrature of |Gamma'| and
/// monotone inversion. The result runs over [0, total_length] at unit speed;
/// its derivative maps are exact chain-rule transports of the original ones.
ParametricCurve arc_length_reparametrize(const ParametricCurve& curve, double tolerance);

/// Total arc length of the curve (adaptive quadrature).
double arc_length(const ParametricCurve& curve, double tolerance);

/// Frenet frame at s by Gram-Schmidt of Gamma', ..., Gamma^(d-1); the last
/// vector completes the frame by generalized cross product so det == +1.
/// Trailing all-degenerate derivative blocks are completed from the canonical
/// basis (covers straight lines and curves confined to subspaces).
FrenetFrameSample frenet_frame(const ParametricCurve& curve, double s);

/// Tabulate kappa_i(s) = e_i'(s) . e_{i+1}(s) over the grid; interpolated
/// profile with the 5%-inflated sup-norm bound.
CurvatureProfile curvatures(const ParametricCurve& curve, const std::vector<double>& s_grid);

/// Profile assembled directly from closures (abstract geometry, no embedding).
CurvatureProfile profile_from_closures(int dim, std::vector<ScalarFunction> evaluators,
                                       Support support,
                                       SmoothnessGrade grade = SmoothnessGrade::C2);

} // namespace tubespec
