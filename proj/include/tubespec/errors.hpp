#pragma once

#include <stdexcept>
#include <string>

namespace tubespec {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// |Gamma'| fell below the regularity threshold somewhere on the interval.
class DegenerateCurveError : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature could not reach the requested tolerance.
class ToleranceError : public Error {
public:
    using Error::Error;
};

/// Derivatives at a point do not span enough directions to build the frame.
class FrameDegeneracyError : public Error {
public:
    FrameDegeneracyError(const std::string& what, int deficient_order)
        : Error(what), deficient_order(deficient_order) {}
    int deficient_order;
};

/// A frame vector flipped sign between adjacent samples; the grid is too coarse.
class FrameContinuityError : public Error {
public:
    using Error::Error;
};

/// Wrong number of components/evaluators for the stated dimension.
class ArityError : public Error {
public:
    using Error::Error;
};

/// A user-supplied evaluator returned a non-finite value.
class EvaluationError : public Error {
public:
    using Error::Error;
};

/// a * sup|kappa_1| >= 1: the tube coordinates degenerate.
class AssumptionViolationError : public Error {
public:
    AssumptionViolationError(const std::string& what, double radius, double kappa_sup)
        : Error(what), radius(radius), kappa_sup(kappa_sup) {}
    double radius;
    double kappa_sup;
};

/// Argument outside the tabulated/valid range.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Mask is disconnected or otherwise topologically unusable.
class TopologyError : public Error {
public:
    using Error::Error;
};

/// An iterative numeric routine failed to converge.
class NumericError : public Error {
public:
    using Error::Error;
};

/// Eigen/factorization failure with diagnostics in the message.
class SolverError : public Error {
public:
    using Error::Error;
};

/// The frame ODE solution drifted off the rotation group beyond tolerance.
class IntegratorFailureError : public Error {
public:
    using Error::Error;
};

/// Operation requires an embedded curve but only an abstract profile is present.
class NotEmbeddableError : public Error {
public:
    using Error::Error;
};

/// The curvature profile is not smooth enough for the requested operation.
class SmoothnessError : public Error {
public:
    using Error::Error;
};

/// The geometry does not satisfy the precondition of the requested analysis.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Nothing to certify: the tube is straight within tolerance.
class StraightTubeError : public Error {
public:
    using Error::Error;
};

/// Config file could not be parsed; carries the offending location.
class ConfigError : public Error {
public:
    ConfigError(const std::string& what, int line, int column)
        : Error(what), line(line), column(column) {}
    int line;
    int column;
};

} // namespace tubespec
