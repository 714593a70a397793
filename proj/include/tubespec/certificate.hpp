#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tubespec/tube.hpp"

namespace tubespec {

/// Scan could not find a sign-constant interval of kappa_1 at resolution.
class ScanResolutionError : public Error {
public:
    using Error::Error;
};

/// The piecewise-linear cutoff family: 1 on [0,n), linear down to 0 on
/// [n, 2n+1), 0 beyond; even in s. ||phi_n'||^2 == 2/(n+1) exactly.
struct Mollifier {
    long long n = 1;

    double operator()(double s) const {
        const double a = std::abs(s);
        if (a <= static_cast<double>(n)) return 1.0;
        const double top = 2.0 * static_cast<double>(n) + 1.0;
        if (a >= top) return 0.0;
        return (top - a) / (static_cast<double>(n) + 1.0);
    }
    double slope(double s) const {
        const double a = std::abs(s);
        if (a <= static_cast<double>(n) || a >= 2.0 * static_cast<double>(n) + 1.0) return 0.0;
        return (s > 0 ? -1.0 : 1.0) / (static_cast<double>(n) + 1.0);
    }
    double derivative_energy() const { return 2.0 / (static_cast<double>(n) + 1.0); }
};

/// Trial pair: Psi_n = phi_n (x) J1 and the curvature-coupled correction
/// Phi(s,u) = phi(s) (b(s).u) J1(u), with phi a unit-height hat on a
/// sign-constant interval of kappa_1.
struct TrialFamily {
    long long n = 1;
    Mollifier phi_n;
    double supp_lo = 0.0, supp_hi = 0.0; // hat support
    double kappa_sign = 1.0;             // sign of kappa_1 on the support

    double phi(double s) const {
        if (s <= supp_lo || s >= supp_hi) return 0.0;
        const double mid = 0.5 * (supp_lo + supp_hi);
        const double half = 0.5 * (supp_hi - supp_lo);
        return 1.0 - std::abs(s - mid) / half;
    }
    double phi_slope(double s) const {
        if (s <= supp_lo || s >= supp_hi) return 0.0;
        const double mid = 0.5 * (supp_lo + supp_hi);
        const double half = 0.5 * (supp_hi - supp_lo);
        return (s < mid ? 1.0 : -1.0) / half;
    }
};

enum class CertificateVerdict { Certified, NotCertified, Indeterminate };

/// One evaluation of the shifted-energy quadratic in the coupling epsilon.
struct CertificateEvaluation {
    long long n = 0;
    double q0 = 0.0;            // Q1[Psi_n]    (the vanishing term excluded)
    double q1 = 0.0;            // Q1(Phi, Psi_n)
    double q2 = 0.0;            // Q1[Phi]
    double vanishing_term = 0.0; // quadrature value of the term that is zero analytically
    double eps_star = 0.0;
    double min_value = 0.0;     // q0 + 2 eps* q1 + eps*^2 q2
    double quad_error = 0.0;    // refinement-based bound on the q's
    double phi_kappa_integral = 0.0; // int phi kappa_1 ds
    CertificateVerdict verdict = CertificateVerdict::NotCertified;
};

struct CertificateResult {
    CertificateEvaluation best;
    std::vector<CertificateEvaluation> trace;
    bool certified = false;
};

/// Build the trial family: locate a sign-constant interval of kappa_1 with
/// |kappa_1| > 1e-8 (the one with the largest integral of |kappa_1|, ties to
/// the right) and put the unit hat on it.
TrialFamily build_trial(const TubeGeometry& tube, long long n);

/// Quadrature evaluation of q0, q1, q2 and the consistency/vanishing checks;
/// all integrals carry the weighted volume element of the tube geometry.
CertificateEvaluation evaluate_certificate(const TubeGeometry& tube, const TrialFamily& family);

/// Direct quadrature of Q1[Psi_n + eps Phi] on the same cells; the quadratic
/// model check and the epsilon-optimality tests use this.
double evaluate_q1_combined(const TubeGeometry& tube, const TrialFamily& family, double eps);

/// Escalate n over the schedule until the quadratic dips certifiably negative.
CertificateResult certify(const TubeGeometry& tube, const std::vector<long long>& schedule);

std::vector<long long> default_certificate_schedule();

std::string verdict_name(CertificateVerdict v);

} // namespace tubespec
