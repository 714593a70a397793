#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <string>

#include "tubespec/cross_section.hpp"
#include "tubespec/curve.hpp"
#include "tubespec/tang_frame.hpp"

namespace tubespec {

/// Result of the sampling-based self-intersection check. Advisory only.
struct OverlapReport {
    enum class Status { Passed, Failed, SkippedAbstract };
    Status status = Status::SkippedAbstract;
    double min_distance = 0.0;
    double margin = 0.0;
    double witness_s1 = 0.0, witness_s2 = 0.0;

    std::string to_string() const;
};

/// Curved-tube geometry: curvature profile + transverse rotation + section.
/// The metric factor is h(s,u) = 1 - kappa_1(s) * (b(s) . u) with b the first
/// column of the rotation table; validity requires a*sup|kappa_1| < 1.
class TubeGeometry {
public:
    TubeGeometry(CurvatureProfile profile, TangFrameTable frame, CrossSection section);

    int dimension() const { return profile_.dimension(); }
    const CurvatureProfile& profile() const { return profile_; }
    const TangFrameTable& frame() const { return frame_; }
    const CrossSection& section() const { return section_; }

    double c_minus() const { return c_minus_; }
    double c_plus() const { return c_plus_; }
    bool assumption2i() const { return true; } // construction fails otherwise

    /// Metric factor h(s,u). Exactly 1 wherever kappa_1 vanishes; requires s
    /// inside the rotation table range where kappa_1 is materially nonzero.
    double h(double s, const Eigen::VectorXd& u) const;

    /// Per-s data for inner loops over u.
    struct Level {
        double kappa1;
        Eigen::VectorXd b; // first rotation column; empty when kappa1 == 0
        double h(const Eigen::VectorXd& u) const {
            return kappa1 == 0.0 ? 1.0 : 1.0 - kappa1 * b.dot(u);
        }
    };
    Level level(double s) const;

    const OverlapReport& overlap() const { return overlap_; }
    void set_overlap(const OverlapReport& report) { overlap_ = report; }

private:
    CurvatureProfile profile_;
    TangFrameTable frame_;
    CrossSection section_;
    double c_minus_ = 1.0, c_plus_ = 1.0;
    OverlapReport overlap_;
};

/// Validates Assumption 2(i) (a * sup|kappa_1| < 1) and assembles the
/// geometry; throws AssumptionViolationError when the coordinates degenerate.
TubeGeometry build_tube(const CurvatureProfile& profile, const TangFrameTable& frame,
                        const CrossSection& section);

/// Embedding L(s,u) = Gamma(s) + sum_mu u_mu e~_mu(s). Requires a unit-speed
/// embedded curve covering s.
Eigen::VectorXd embed(const TubeGeometry& tube, const ParametricCurve& curve, double s,
                      const Eigen::VectorXd& u);

/// Sampling-based overlap check: minimum distance between tube points whose
/// arc-length parameters differ by more than the decorrelation length 4a,
/// compared against a resolution-based margin.
OverlapReport overlap_check(const TubeGeometry& tube, const ParametricCurve& curve, double s_lo,
                            double s_hi, double resolution);

/// Diagnostic variant usable without a validated TubeGeometry (e.g. when
/// Assumption 2(i) already fails); needs only curve + rotation + section.
OverlapReport overlap_check_embedded(const ParametricCurve& curve, const TangFrameTable& frame,
                                     const CrossSection& section, double s_lo, double s_hi,
                                     double resolution);

} // namespace tubespec
