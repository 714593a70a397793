#include "tubespec/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "tubespec/quadrature.hpp"

namespace tubespec {

std::vector<long long> default_certificate_schedule() { return {2, 5, 10, 20, 50, 100, 200}; }

std::string verdict_name(CertificateVerdict v) {
    switch (v) {
        case CertificateVerdict::Certified:
            return "certified";
        case CertificateVerdict::NotCertified:
            return "not-certified";
        case CertificateVerdict::Indeterminate:
            return "indeterminate";
    }
    return "?";
}

TrialFamily build_trial(const TubeGeometry& tube, long long n) {
    const CurvatureProfile& profile = tube.profile();
    if (profile.is_straight(1e-12))
        throw StraightTubeError("build_trial: kappa_1 vanishes identically; nothing to certify");

    const double scan_radius = std::max(1.0, profile.effective_support());
    const int samples = 40001;
    const double step = 2.0 * scan_radius / (samples - 1);
    const double floor = 1e-8;

    // Maximal runs of constant sign with |kappa_1| > floor, scored by the
    // trapezoid integral of |kappa_1|; near-ties resolve to the rightmost run.
    double best_score = 0.0, best_lo = 0.0, best_hi = 0.0, best_sign = 0.0;
    double run_lo = 0.0, run_score = 0.0, prev_abs = 0.0;
    int run_sign = 0;
    for (int i = 0; i <= samples; ++i) {
        const double s = -scan_radius + i * step;
        const double k = i < samples ? profile.kappa(0, s) : 0.0;
        const int sign = (i < samples && std::abs(k) > floor) ? (k > 0 ? 1 : -1) : 0;
        if (sign == run_sign) {
            if (run_sign != 0) run_score += 0.5 * (prev_abs + std::abs(k)) * step;
        } else {
            if (run_sign != 0) {
                const double run_hi = s - step;
                if (run_hi > run_lo && run_score >= best_score * (1.0 - 1e-12)) {
                    best_score = run_score;
                    best_lo = run_lo;
                    best_hi = run_hi;
                    best_sign = run_sign;
                }
            }
            run_sign = sign;
            run_lo = s;
            run_score = 0.0;
        }
        prev_abs = std::abs(k);
    }
    if (best_sign == 0.0)
        throw ScanResolutionError(
            "build_trial: no sign-constant interval with |kappa_1| > 1e-8 found at scan resolution");

    TrialFamily family;
    family.n = n;
    family.phi_n = Mollifier{n};
    family.supp_lo = best_lo;
    family.supp_hi = best_hi;
    family.kappa_sign = best_sign;
    return family;
}

// ---------------------------------------------------------------------------
// Quadrature machinery

namespace {

struct SectionCache {
    std::vector<Eigen::VectorXd> points;
    std::vector<double> weights;
    std::vector<double> j;             // J1 values
    std::vector<Eigen::VectorXd> grad; // grad J1
    double mu1 = 0.0;
};

SectionCache cache_section(const CrossSection& section) {
    SectionCache cache;
    cache.mu1 = section.mu1();
    for (const auto& node : section.quadrature()) {
        cache.points.push_back(node.point);
        cache.weights.push_back(node.weight);
        cache.j.push_back(section.eigenfunction(node.point));
        cache.grad.push_back(section.eigenfunction_gradient(node.point));
    }
    return cache;
}

// kappa_1 and rotation-column data at one s.
struct FrameAt {
    double kappa1 = 0.0;
    Eigen::VectorXd b;    // R column 0
    Eigen::VectorXd bdot; // its derivative, from the frame ODE
};

FrameAt frame_at(const TubeGeometry& tube, double s, int m) {
    FrameAt fa;
    fa.kappa1 = tube.profile().kappa(0, s);
    const bool inside = s >= tube.frame().s_begin() - 1e-9 && s <= tube.frame().s_end() + 1e-9;
    if (inside) {
        const Eigen::MatrixXd rot = tube.frame().rotation_clamped(s);
        fa.b = rot.col(0);
        fa.bdot = -(rot * tube.profile().transverse_block(s)).col(0);
    } else {
        if (std::abs(fa.kappa1) > 1e-13)
            throw RangeError("certificate: rotation table does not cover the curvature support");
        fa.b = Eigen::VectorXd::Zero(m);
        fa.b[0] = 1.0;
        fa.bdot = Eigen::VectorXd::Zero(m);
    }
    return fa;
}

// Integration cells in s: the domain spans the mollifier support united with
// the hat support, split at all integrand breakpoints and refined where the
// curvature is active. Cells where every integrand vanishes are dropped.
std::vector<std::pair<double, double>> build_cells(const TubeGeometry& tube,
                                                   const TrialFamily& family,
                                                   double max_active_len) {
    const double n = static_cast<double>(family.n);
    const double top = 2.0 * n + 1.0;
    const double eff = tube.profile().effective_support();
    const double lo_all = std::min(-top, family.supp_lo);
    const double hi_all = std::max(top, family.supp_hi);
    std::set<double> breaks;
    auto add = [&](double x) {
        if (x >= lo_all && x <= hi_all) breaks.insert(x);
    };
    add(lo_all);
    add(hi_all);
    add(-top);
    add(top);
    add(-n);
    add(n);
    add(family.supp_lo);
    add(family.supp_hi);
    add(0.5 * (family.supp_lo + family.supp_hi));
    add(-eff);
    add(eff);
    add(0.0);

    std::vector<std::pair<double, double>> cells;
    double prev = 0.0;
    bool first = true;
    for (double x : breaks) {
        if (!first && x > prev + 1e-300) {
            const double lo = prev, hi = x;
            const double mid = 0.5 * (lo + hi);
            const bool mollifier_grad = std::abs(mid) > n && std::abs(mid) < top;
            const bool phi_zone = hi > family.supp_lo && lo < family.supp_hi;
            const bool kappa_zone = hi > -eff && lo < eff && lo < top && hi > -top;
            if (mollifier_grad || phi_zone || kappa_zone) {
                int pieces = 1;
                if (hi > -eff && lo < eff)
                    pieces = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_active_len)));
                for (int p = 0; p < pieces; ++p)
                    cells.emplace_back(lo + (hi - lo) * p / pieces,
                                       lo + (hi - lo) * (p + 1) / pieces);
            }
        }
        prev = x;
        first = false;
    }
    return cells;
}

struct Functionals {
    double q0 = 0.0, q1_grad = 0.0, q1_cross = 0.0, q2 = 0.0, vanishing = 0.0;
    double phi_kappa = 0.0;
};

Functionals integrate(const TubeGeometry& tube, const TrialFamily& family,
                      const SectionCache& cache, double max_active_len) {
    const int m = tube.dimension() - 1;
    const auto cells = build_cells(tube, family, max_active_len);
    const GaussRule& rule = gauss_legendre(8);
    const size_t nu = cache.points.size();

    // s-independent transverse moment entering the vanishing term.
    Eigen::VectorXd jgrad_moment = Eigen::VectorXd::Zero(m);
    for (size_t i = 0; i < nu; ++i)
        jgrad_moment += cache.weights[i] * cache.j[i] * cache.grad[i];

    Functionals f;
    for (const auto& [clo, chi] : cells) {
        const double mid = 0.5 * (clo + chi), half = 0.5 * (chi - clo);
        for (size_t g = 0; g < rule.nodes.size(); ++g) {
            const double s = mid + half * rule.nodes[g];
            const double w = half * rule.weights[g];
            const FrameAt fa = frame_at(tube, s, m);
            const double pn = family.phi_n(s);
            const double pnd = family.phi_n.slope(s);
            const double ph = family.phi(s);
            const double phd = family.phi_slope(s);

            double w_q0 = 0.0;       // int J^2 / h du
            double w_q1g = 0.0;      // int (b.u) J^2 / h du
            double w_q1gd = 0.0;     // int (bdot.u) J^2 / h du
            double w_q2_long = 0.0;  // int (dPhi/ds)^2 / h du
            double w_q2_trans = 0.0; // int |grad_u Phi|^2 h du, per phi^2
            double w_q2_mass = 0.0;  // int (b.u)^2 J^2 h du
            for (size_t i = 0; i < nu; ++i) {
                const double bu = fa.b.dot(cache.points[i]);
                const double bdu = fa.bdot.dot(cache.points[i]);
                const double h = 1.0 - fa.kappa1 * bu;
                const double jj = cache.j[i];
                const double wq = cache.weights[i];
                w_q0 += wq * jj * jj / h;
                w_q1g += wq * bu * jj * jj / h;
                w_q1gd += wq * bdu * jj * jj / h;
                const double phi1 = (phd * bu + ph * bdu) * jj;
                w_q2_long += wq * phi1 * phi1 / h;
                double trans = 0.0;
                for (int axis = 0; axis < m; ++axis) {
                    const double t = fa.b[axis] * jj + bu * cache.grad[i][axis];
                    trans += t * t;
                }
                w_q2_trans += wq * trans * h;
                w_q2_mass += wq * bu * bu * jj * jj * h;
            }

            f.q0 += w * pnd * pnd * w_q0;
            f.q1_grad += w * pnd * (phd * w_q1g + ph * w_q1gd);
            f.q1_cross += w * ph * fa.kappa1 * pn;
            f.q2 += w * (w_q2_long + ph * ph * (w_q2_trans - cache.mu1 * w_q2_mass));
            f.vanishing += w * pn * pn * fa.kappa1 * fa.b.dot(jgrad_moment);
            f.phi_kappa += w * ph * fa.kappa1;
        }
    }
    return f;
}

} // namespace

CertificateEvaluation evaluate_certificate(const TubeGeometry& tube, const TrialFamily& family) {
    const SectionCache cache = cache_section(tube.section());
    const Functionals coarse = integrate(tube, family, cache, 0.25);
    const Functionals fine = integrate(tube, family, cache, 0.125);

    CertificateEvaluation eval;
    eval.n = family.n;
    eval.q0 = fine.q0;
    eval.q1 = fine.q1_grad - 0.5 * fine.q1_cross;
    eval.q2 = fine.q2;
    eval.vanishing_term = fine.vanishing;
    eval.phi_kappa_integral = fine.phi_kappa;

    const double err0 = std::abs(fine.q0 - coarse.q0);
    const double err1 =
        std::abs((fine.q1_grad - 0.5 * fine.q1_cross) - (coarse.q1_grad - 0.5 * coarse.q1_cross));
    const double err2 = std::abs(fine.q2 - coarse.q2);

    const double tiny = 1e-14 * (std::abs(eval.q0) + std::abs(eval.q1) + std::abs(eval.q2) + 1.0);
    if (eval.q2 > tiny) {
        eval.eps_star = -eval.q1 / eval.q2;
    } else if (std::abs(eval.q1) > tiny) {
        // Degenerate branch: the quadratic is unbounded below; any epsilon of
        // the right sign and enough magnitude does.
        eval.eps_star = -(std::abs(eval.q0) + 1.0) / eval.q1;
    } else if (eval.q2 < -tiny) {
        eval.eps_star = std::sqrt((std::abs(eval.q0) + 1.0) / -eval.q2);
    } else {
        eval.eps_star = 0.0;
    }
    eval.min_value =
        eval.q0 + 2.0 * eval.eps_star * eval.q1 + eval.eps_star * eval.eps_star * eval.q2;
    eval.quad_error = err0 + 2.0 * std::abs(eval.eps_star) * err1 +
                      eval.eps_star * eval.eps_star * err2 + tiny;

    if (eval.min_value < -eval.quad_error)
        eval.verdict = CertificateVerdict::Certified;
    else if (eval.min_value < 0.0)
        eval.verdict = CertificateVerdict::Indeterminate;
    else
        eval.verdict = CertificateVerdict::NotCertified;
    return eval;
}

double evaluate_q1_combined(const TubeGeometry& tube, const TrialFamily& family, double eps) {
    const SectionCache cache = cache_section(tube.section());
    const int m = tube.dimension() - 1;
    const auto cells = build_cells(tube, family, 0.125);
    const GaussRule& rule = gauss_legendre(8);
    const size_t nu = cache.points.size();

    double total = 0.0;
    for (const auto& [clo, chi] : cells) {
        const double mid = 0.5 * (clo + chi), half = 0.5 * (chi - clo);
        for (size_t g = 0; g < rule.nodes.size(); ++g) {
            const double s = mid + half * rule.nodes[g];
            const double w = half * rule.weights[g];
            const FrameAt fa = frame_at(tube, s, m);
            const double pn = family.phi_n(s);
            const double pnd = family.phi_n.slope(s);
            const double ph = family.phi(s);
            const double phd = family.phi_slope(s);
            double acc = 0.0;
            for (size_t i = 0; i < nu; ++i) {
                const double bu = fa.b.dot(cache.points[i]);
                const double bdu = fa.bdot.dot(cache.points[i]);
                const double h = 1.0 - fa.kappa1 * bu;
                const double jj = cache.j[i];
                const double psi = pn * jj + eps * ph * bu * jj;
                const double psi_s = pnd * jj + eps * (phd * bu + ph * bdu) * jj;
                double grad2 = 0.0;
                for (int axis = 0; axis < m; ++axis) {
                    const double t = pn * cache.grad[i][axis] +
                                     eps * ph * (fa.b[axis] * jj + bu * cache.grad[i][axis]);
                    grad2 += t * t;
                }
                acc += cache.weights[i] *
                       (psi_s * psi_s / h + grad2 * h - cache.mu1 * psi * psi * h);
            }
            total += w * acc;
        }
    }
    return total;
}

CertificateResult certify(const TubeGeometry& tube, const std::vector<long long>& schedule) {
    if (schedule.empty()) throw PreconditionError("certify: empty schedule");
    CertificateResult result;
    for (long long n : schedule) {
        const TrialFamily family = build_trial(tube, n);
        const CertificateEvaluation eval = evaluate_certificate(tube, family);
        result.trace.push_back(eval);
        if (eval.verdict == CertificateVerdict::Certified) {
            result.best = eval;
            result.certified = true;
            return result;
        }
    }
    result.best = result.trace.back();
    result.certified = false;
    return result;
}

} // namespace tubespec
