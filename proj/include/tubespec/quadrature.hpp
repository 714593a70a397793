#pragma once

#include <functional>
#include <vector>

namespace tubespec {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Nodes/weights for an n-point Gauss-Legendre rule (n >= 1), computed by
/// Newton iteration on the Legendre polynomial and cached per order.
const GaussRule& gauss_legendre(int n);

/// Integrate f over [a, b] with an n-point Gauss rule.
double gauss_integrate(const std::function<double(double)>& f, double a, double b, int n = 8);

/// Adaptive integration of f over [a, b]: per-cell Gauss 7/15-style refinement
/// (order-8 vs order-16 comparison), subdividing until the global error
/// estimate is below tol. Throws ToleranceError if the cell budget is exhausted.
double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double tol, int max_cells = 200000);

} // namespace tubespec
