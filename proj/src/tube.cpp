#include "tubespec/tube.hpp"

#include <cmath>

namespace tubespec {

std::string OverlapReport::to_string() const {
    switch (status) {
        case Status::Passed:
            return "passed";
        case Status::Failed:
            return "failed";
        case Status::SkippedAbstract:
            return "skipped-abstract";
    }
    return "?";
}

TubeGeometry::TubeGeometry(CurvatureProfile profile, TangFrameTable frame, CrossSection section)
    : profile_(std::move(profile)), frame_(std::move(frame)), section_(std::move(section)) {
    const double coupling = section_.radius() * profile_.sup_kappa1();
    c_minus_ = 1.0 - coupling;
    c_plus_ = 1.0 + coupling;
}

double TubeGeometry::h(double s, const Eigen::VectorXd& u) const {
    const double k = profile_.kappa(0, s);
    if (k == 0.0) return 1.0;
    if (std::abs(k) <= 1e-13) return 1.0 - k * frame_.rotation_clamped(s).col(0).dot(u);
    if (s < frame_.s_begin() - 1e-9 || s > frame_.s_end() + 1e-9)
        throw RangeError("TubeGeometry::h: s outside the rotation table where kappa_1 != 0");
    return 1.0 - k * frame_.rotation_clamped(s).col(0).dot(u);
}

TubeGeometry::Level TubeGeometry::level(double s) const {
    Level lv;
    lv.kappa1 = profile_.kappa(0, s);
    if (lv.kappa1 != 0.0) {
        if (std::abs(lv.kappa1) > 1e-13 &&
            (s < frame_.s_begin() - 1e-9 || s > frame_.s_end() + 1e-9))
            throw RangeError("TubeGeometry::level: s outside the rotation table");
        lv.b = frame_.rotation_clamped(s).col(0);
    }
    return lv;
}

TubeGeometry build_tube(const CurvatureProfile& profile, const TangFrameTable& frame,
                        const CrossSection& section) {
    if (frame.dimension() != profile.dimension())
        throw ArityError("build_tube: frame/profile dimension mismatch");
    if (section.dim() != profile.dimension() - 1)
        throw ArityError("build_tube: section dimension must be d-1");
    const double coupling = section.radius() * profile.sup_kappa1();
    if (coupling >= 1.0)
        throw AssumptionViolationError(
            "build_tube: a*sup|kappa_1| = " + std::to_string(coupling) +
                " >= 1 (a = " + std::to_string(section.radius()) +
                ", sup|kappa_1| = " + std::to_string(profile.sup_kappa1()) +
                "); the tube coordinates degenerate",
            section.radius(), profile.sup_kappa1());
    return TubeGeometry(profile, frame, section);
}

Eigen::VectorXd embed(const TubeGeometry& tube, const ParametricCurve& curve, double s,
                      const Eigen::VectorXd& u) {
    if (curve.dimension() != tube.dimension())
        throw NotEmbeddableError("embed: curve dimension mismatch");
    if (u.size() != tube.dimension() - 1) throw ArityError("embed: transverse point size");
    const FrenetFrameSample fr = frenet_frame(curve, s);
    const auto tang = tang_vectors(tube.frame(), fr);
    Eigen::VectorXd p = curve.position(s);
    for (int mu = 0; mu < tube.dimension() - 1; ++mu) p += u[mu] * tang[mu + 1];
    return p;
}

namespace {

OverlapReport overlap_impl(const ParametricCurve& curve, const TangFrameTable& frame,
                           const CrossSection& section, double s_lo, double s_hi,
                           double resolution) {
    const int d = curve.dimension();
    const double a = section.radius();
    if (!(resolution > 0)) throw PreconditionError("overlap_check: resolution must be positive");

    // Transverse sample set: section quadrature nodes thinned to a few dozen.
    std::vector<Eigen::VectorXd> us;
    const auto& quad = section.quadrature();
    const size_t stride = std::max<size_t>(1, quad.size() / 32);
    for (size_t i = 0; i < quad.size(); i += stride) us.push_back(quad[i].point);

    const int n_s = std::max(2, static_cast<int>(std::ceil((s_hi - s_lo) / resolution)) + 1);
    std::vector<double> ss(n_s);
    std::vector<std::vector<Eigen::VectorXd>> pts(n_s);
    for (int i = 0; i < n_s; ++i) {
        ss[i] = s_lo + (s_hi - s_lo) * i / (n_s - 1.0);
        const FrenetFrameSample fr = frenet_frame(curve, ss[i]);
        const auto tang = tang_vectors(frame, fr);
        const Eigen::VectorXd base = curve.position(ss[i]);
        pts[i].reserve(us.size());
        for (const auto& u : us) {
            Eigen::VectorXd p = base;
            for (int mu = 0; mu < d - 1; ++mu) p += u[mu] * tang[mu + 1];
            pts[i].push_back(std::move(p));
        }
    }

    OverlapReport report;
    report.margin = resolution;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_s; ++i) {
        for (int j = i + 1; j < n_s; ++j) {
            if (ss[j] - ss[i] <= 4.0 * a) continue;
            for (const auto& p : pts[i])
                for (const auto& q : pts[j]) {
                    const double dist = (p - q).norm();
                    if (dist < best) {
                        best = dist;
                        report.witness_s1 = ss[i];
                        report.witness_s2 = ss[j];
                    }
                }
        }
    }
    report.min_distance = std::isfinite(best) ? best : 0.0;
    if (!std::isfinite(best)) {
        // range shorter than the decorrelation length: nothing to compare
        report.status = OverlapReport::Status::Passed;
        report.min_distance = std::numeric_limits<double>::infinity();
        return report;
    }
    report.status = best > report.margin ? OverlapReport::Status::Passed
                                         : OverlapReport::Status::Failed;
    return report;
}

} // namespace

OverlapReport overlap_check(const TubeGeometry& tube, const ParametricCurve& curve, double s_lo,
                            double s_hi, double resolution) {
    return overlap_impl(curve, tube.frame(), tube.section(), s_lo, s_hi, resolution);
}

OverlapReport overlap_check_embedded(const ParametricCurve& curve, const TangFrameTable& frame,
                                     const CrossSection& section, double s_lo, double s_hi,
                                     double resolution) {
    return overlap_impl(curve, frame, section, s_lo, s_hi, resolution);
}

} // namespace tubespec
