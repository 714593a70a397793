#include "tubespec/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tubespec/quadrature.hpp"

namespace tubespec {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Central-difference step: eps^(1/(order+2)), scaled by the evaluation point.
double fd_step(int order, double t) {
    return std::pow(kEps, 1.0 / (order + 2)) * std::max(1.0, std::abs(t));
}

// 4th-order central differences for derivative orders 1..4.
template <typename F>
auto central_difference(const F& f, double t, int order) -> decltype(f(t)) {
    const double h = fd_step(order, t);
    switch (order) {
        case 1:
            return (f(t - 2 * h) - 8.0 * f(t - h) + 8.0 * f(t + h) - f(t + 2 * h)) / (12.0 * h);
        case 2:
            return (-f(t - 2 * h) + 16.0 * f(t - h) - 30.0 * f(t) + 16.0 * f(t + h) -
                    f(t + 2 * h)) /
                   (12.0 * h * h);
        case 3:
            return (f(t - 3 * h) / 8.0 - f(t - 2 * h) + 13.0 / 8.0 * f(t - h) -
                    13.0 / 8.0 * f(t + h) + f(t + 2 * h) - f(t + 3 * h) / 8.0) /
                   (h * h * h);
        case 4:
            return (-f(t - 3 * h) / 6.0 + 2.0 * f(t - 2 * h) - 6.5 * f(t - h) +
                    28.0 / 3.0 * f(t) - 6.5 * f(t + h) + 2.0 * f(t + 2 * h) -
                    f(t + 3 * h) / 6.0) /
                   (h * h * h * h);
        default:
            throw RangeError("finite-difference derivatives supported up to order 4");
    }
}

} // namespace

double ScalarFunction::d1(double s) const {
    if (deriv1) return deriv1(s);
    return central_difference([this](double t) { return value(t); }, s, 1);
}

double ScalarFunction::d2(double s) const {
    if (deriv2) return deriv2(s);
    return central_difference([this](double t) { return value(t); }, s, 2);
}

// ---------------------------------------------------------------------------
// TabulatedFunction

TabulatedFunction::TabulatedFunction(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() != y_.size() || x_.size() < 2)
        throw ArityError("TabulatedFunction: need >= 2 matching samples");
    for (size_t i = 1; i < x_.size(); ++i)
        if (!(x_[i] > x_[i - 1]))
            throw RangeError("TabulatedFunction: abscissae must be strictly increasing");
}

void TabulatedFunction::window(double s, int width, int& lo) const {
    const int n = static_cast<int>(x_.size());
    width = std::min(width, n);
    auto it = std::upper_bound(x_.begin(), x_.end(), s);
    int j = static_cast<int>(it - x_.begin()) - 1;
    lo = std::clamp(j - width / 2 + 1, 0, n - width);
}

namespace {

// Evaluate Newton-form polynomial and its first two derivatives at s.
void newton_eval(const std::vector<double>& xs, const std::vector<double>& coef, double s,
                 double& p, double& p1, double& p2) {
    const int n = static_cast<int>(coef.size());
    p = coef[n - 1];
    p1 = 0.0;
    p2 = 0.0;
    for (int k = n - 2; k >= 0; --k) {
        const double d = s - xs[k];
        p2 = p2 * d + 2.0 * p1;
        p1 = p1 * d + p;
        p = p * d + coef[k];
    }
}

std::vector<double> divided_differences(const std::vector<double>& xs,
                                        const std::vector<double>& ys) {
    std::vector<double> c = ys;
    const int n = static_cast<int>(c.size());
    for (int j = 1; j < n; ++j)
        for (int i = n - 1; i >= j; --i) c[i] = (c[i] - c[i - 1]) / (xs[i] - xs[i - j]);
    return c;
}

} // namespace

double TabulatedFunction::value(double s) const {
    int lo = 0;
    window(s, 4, lo);
    const int w = std::min<int>(4, static_cast<int>(x_.size()));
    std::vector<double> xs(x_.begin() + lo, x_.begin() + lo + w);
    std::vector<double> ys(y_.begin() + lo, y_.begin() + lo + w);
    double p, p1, p2;
    newton_eval(xs, divided_differences(xs, ys), s, p, p1, p2);
    return p;
}

double TabulatedFunction::deriv1(double s) const {
    int lo = 0;
    window(s, 6, lo);
    const int w = std::min<int>(6, static_cast<int>(x_.size()));
    std::vector<double> xs(x_.begin() + lo, x_.begin() + lo + w);
    std::vector<double> ys(y_.begin() + lo, y_.begin() + lo + w);
    double p, p1, p2;
    newton_eval(xs, divided_differences(xs, ys), s, p, p1, p2);
    return p1;
}

double TabulatedFunction::deriv2(double s) const {
    int lo = 0;
    window(s, 6, lo);
    const int w = std::min<int>(6, static_cast<int>(x_.size()));
    std::vector<double> xs(x_.begin() + lo, x_.begin() + lo + w);
    std::vector<double> ys(y_.begin() + lo, y_.begin() + lo + w);
    double p, p1, p2;
    newton_eval(xs, divided_differences(xs, ys), s, p, p1, p2);
    return p2;
}

// ---------------------------------------------------------------------------
// ParametricCurve

ParametricCurve::ParametricCurve(int dim, Map position, std::vector<Map> derivatives, double t0,
                                 double t1)
    : dim_(dim), position_(std::move(position)), derivatives_(std::move(derivatives)), t0_(t0),
      t1_(t1) {
    if (dim_ < 2) throw ArityError("ParametricCurve: dimension must be >= 2");
    if (!(t1_ > t0_)) throw RangeError("ParametricCurve: empty parameter interval");
}

ParametricCurve ParametricCurve::from_position(int dim, Map position, double t0, double t1) {
    return ParametricCurve(dim, std::move(position), {}, t0, t1);
}

Eigen::VectorXd ParametricCurve::position(double t) const { return position_(t); }

Eigen::VectorXd ParametricCurve::derivative(double t, int order) const {
    if (order <= 0) return position_(t);
    if (order <= static_cast<int>(derivatives_.size()) && derivatives_[order - 1])
        return derivatives_[order - 1](t);
    return central_difference([this](double x) { return position_(x); }, t, order);
}

bool ParametricCurve::has_analytic_derivative(int order) const {
    return order >= 1 && order <= static_cast<int>(derivatives_.size()) &&
           static_cast<bool>(derivatives_[order - 1]);
}

int ParametricCurve::analytic_order() const {
    int n = 0;
    while (has_analytic_derivative(n + 1)) ++n;
    return n;
}

// ---------------------------------------------------------------------------
// Arc-length reparametrization.
//
// The returned curve carries exact chain-rule derivatives: at a query point we
// build truncated Taylor series of Gamma about t0 = t(s), solve the series ODE
// dt/dsigma = 1/|Gamma'(t(sigma))| coefficient by coefficient, and compose.

namespace {

constexpr int kSeriesOrder = 8; // enough for derivative maps up to order 6

struct Series {
    // coefficients c[0..kSeriesOrder] of sum c_k x^k
    std::array<double, kSeriesOrder + 1> c{};

    static Series constant(double v) {
        Series s;
        s.c[0] = v;
        return s;
    }
    Series operator+(const Series& o) const {
        Series r;
        for (int i = 0; i <= kSeriesOrder; ++i) r.c[i] = c[i] + o.c[i];
        return r;
    }
    Series operator*(const Series& o) const {
        Series r;
        for (int i = 0; i <= kSeriesOrder; ++i)
            for (int j = 0; i + j <= kSeriesOrder; ++j) r.c[i + j] += c[i] * o.c[j];
        return r;
    }
    Series scaled(double a) const {
        Series r;
        for (int i = 0; i <= kSeriesOrder; ++i) r.c[i] = c[i] * a;
        return r;
    }
};

// sqrt of a series with positive constant term.
Series series_sqrt(const Series& a) {
    Series r;
    r.c[0] = std::sqrt(a.c[0]);
    for (int k = 1; k <= kSeriesOrder; ++k) {
        double conv = 0.0;
        for (int i = 1; i < k; ++i) conv += r.c[i] * r.c[k - i];
        r.c[k] = (a.c[k] - conv) / (2.0 * r.c[0]);
    }
    return r;
}

// reciprocal of a series with nonzero constant term.
Series series_recip(const Series& a) {
    Series r;
    r.c[0] = 1.0 / a.c[0];
    for (int k = 1; k <= kSeriesOrder; ++k) {
        double conv = 0.0;
        for (int i = 1; i <= k; ++i) conv += a.c[i] * r.c[k - i];
        r.c[k] = -conv / a.c[0];
    }
    return r;
}

// Compose outer(inner(x)) where inner has zero constant term.
Series series_compose(const Series& outer, const Series& inner) {
    Series pow = Series::constant(1.0);
    Series r = Series::constant(outer.c[0]);
    for (int j = 1; j <= kSeriesOrder; ++j) {
        pow = pow * inner;
        for (int i = 0; i <= kSeriesOrder; ++i) r.c[i] += outer.c[j] * pow.c[i];
    }
    return r;
}

struct ArcLengthTable {
    std::vector<double> t_knots;
    std::vector<double> s_knots; // cumulative arc length, s_knots[0] == 0
    double total = 0.0;
};

double speed_at(const ParametricCurve& curve, double t) {
    const double v = curve.derivative(t, 1).norm();
    if (v < 1e-10) throw DegenerateCurveError("non-regular point: |Gamma'| ~ 0 at t=" +
                                              std::to_string(t));
    return v;
}

ArcLengthTable build_arclength_table(const ParametricCurve& curve, double tol) {
    auto speed = [&](double t) { return speed_at(curve, t); };
    struct Cell {
        double a, b;
    };
    // Refine cells until the 8- vs 16-point Gauss values agree.
    std::vector<Cell> cells;
    const int n0 = 64;
    const double t0 = curve.t_begin(), t1 = curve.t_end();
    for (int i = 0; i < n0; ++i)
        cells.push_back({t0 + (t1 - t0) * i / n0, t0 + (t1 - t0) * (i + 1) / n0});
    std::vector<Cell> done;
    int budget = 200000;
    while (!cells.empty()) {
        if (--budget < 0) throw ToleranceError("arc length quadrature: tolerance not met");
        Cell c = cells.back();
        cells.pop_back();
        const double coarse = gauss_integrate(speed, c.a, c.b, 8);
        const double fine = gauss_integrate(speed, c.a, c.b, 16);
        if (std::abs(fine - coarse) < tol * std::max(1e-3, (c.b - c.a) / (t1 - t0)) ||
            (c.b - c.a) < 1e-13 * (t1 - t0)) {
            done.push_back(c);
        } else {
            const double m = 0.5 * (c.a + c.b);
            cells.push_back({c.a, m});
            cells.push_back({m, c.b});
        }
    }
    std::sort(done.begin(), done.end(), [](const Cell& a, const Cell& b) { return a.a < b.a; });
    ArcLengthTable table;
    table.t_knots.push_back(t0);
    table.s_knots.push_back(0.0);
    double acc = 0.0;
    for (const Cell& c : done) {
        acc += gauss_integrate(speed, c.a, c.b, 16);
        table.t_knots.push_back(c.b);
        table.s_knots.push_back(acc);
    }
    table.total = acc;
    return table;
}

struct Reparametrization {
    ParametricCurve original;
    ArcLengthTable table;

    // t(s) by bracketed Newton on the cumulative table.
    double parameter_of(double s) const {
        s = std::clamp(s, 0.0, table.total);
        auto it = std::upper_bound(table.s_knots.begin(), table.s_knots.end(), s);
        int j = std::clamp<int>(static_cast<int>(it - table.s_knots.begin()) - 1, 0,
                                static_cast<int>(table.s_knots.size()) - 2);
        double lo = table.t_knots[j], hi = table.t_knots[j + 1];
        const double s_lo = table.s_knots[j];
        auto speed = [&](double t) { return speed_at(original, t); };
        auto s_of = [&](double t) { return s_lo + gauss_integrate(speed, lo, t, 16); };
        double t = lo + (hi - lo) * (s - s_lo) / std::max(table.s_knots[j + 1] - s_lo, 1e-300);
        for (int it2 = 0; it2 < 60; ++it2) {
            const double err = s_of(t) - s;
            if (std::abs(err) < 1e-14 * std::max(1.0, table.total)) break;
            if (err > 0)
                hi = t;
            else
                lo = t;
            double step = err / speed(t);
            double tn = t - step;
            if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
            t = tn;
        }
        return t;
    }

    // Taylor coefficients (about sigma = 0) of the unit-speed curve at s,
    // one Series per component, up to kSeriesOrder.
    std::vector<Series> component_series(double s, int orders_needed) const {
        const int d = original.dimension();
        const double t0 = parameter_of(s);
        const int n = std::min(kSeriesOrder, orders_needed);
        // Gamma series about t0 (coefficients = derivatives / k!).
        std::vector<Series> gamma(d);
        double fact = 1.0;
        for (int k = 0; k <= n; ++k) {
            if (k > 0) fact *= k;
            const Eigen::VectorXd der = original.derivative(t0, k);
            for (int i = 0; i < d; ++i) gamma[i].c[k] = der[i] / fact;
        }
        // Speed series v(t0 + delta): sqrt(sum_i (Gamma_i')^2).
        Series v2{};
        for (int i = 0; i < d; ++i) {
            Series g1{};
            for (int k = 0; k + 1 <= kSeriesOrder; ++k) g1.c[k] = (k + 1) * gamma[i].c[k + 1];
            v2 = v2 + g1 * g1;
        }
        const Series r = series_recip(series_sqrt(v2)); // 1/v as series in delta
        // w(sigma) with t = t0 + w, solving w' = r(w), w(0) = 0.
        Series w{};
        for (int k = 0; k < n; ++k) {
            const Series q = series_compose(r, w); // valid through order k
            w.c[k + 1] = q.c[k] / (k + 1);
        }
        // Compose components with w.
        std::vector<Series> out(d);
        for (int i = 0; i < d; ++i) out[i] = series_compose(gamma[i], w);
        return out;
    }
};

} // namespace

double arc_length(const ParametricCurve& curve, double tolerance) {
    return build_arclength_table(curve, tolerance).total;
}

ParametricCurve arc_length_reparametrize(const ParametricCurve& curve, double tolerance) {
    auto rep = std::make_shared<Reparametrization>(
        Reparametrization{curve, build_arclength_table(curve, tolerance)});
    const int d = curve.dimension();
    ParametricCurve::Map pos = [rep](double s) {
        return rep->original.position(rep->parameter_of(s));
    };
    std::vector<ParametricCurve::Map> ders;
    for (int order = 1; order <= d + 1; ++order) {
        ders.push_back([rep, order](double s) {
            const auto series = rep->component_series(s, order);
            const int d2 = rep->original.dimension();
            Eigen::VectorXd out(d2);
            double fact = 1.0;
            for (int k = 2; k <= order; ++k) fact *= k;
            for (int i = 0; i < d2; ++i) out[i] = series[i].c[order] * fact;
            return out;
        });
    }
    ParametricCurve result(d, std::move(pos), std::move(ders), 0.0, rep->table.total);
    // Post-condition: |Gamma'(s)| == 1 within tolerance at sample points.
    const int n_check = 17;
    for (int i = 0; i < n_check; ++i) {
        const double s = rep->table.total * i / (n_check - 1.0);
        const double v = result.derivative(std::clamp(s, 1e-12, rep->table.total - 1e-12), 1).norm();
        if (std::abs(v - 1.0) > std::max(tolerance, 1e-8))
            throw ToleranceError("arc_length_reparametrize: unit speed violated, |Gamma'|=" +
                                 std::to_string(v));
    }
    return result;
}

// ---------------------------------------------------------------------------
// Frenet frames

namespace {

// Generalized cross product of the d-1 columns of A (d x (d-1)), oriented so
// that det[A | result] > 0.
Eigen::VectorXd orthogonal_complement(const Eigen::MatrixXd& A) {
    const int d = static_cast<int>(A.rows());
    Eigen::VectorXd w(d);
    Eigen::MatrixXd minor(d - 1, d - 1);
    for (int i = 0; i < d; ++i) {
        int r = 0;
        for (int row = 0; row < d; ++row) {
            if (row == i) continue;
            minor.row(r++) = A.row(row);
        }
        w[i] = ((i % 2) ? -1.0 : 1.0) * minor.determinant();
    }
    Eigen::MatrixXd full(d, d);
    full.leftCols(d - 1) = A;
    full.col(d - 1) = w;
    if (full.determinant() < 0) w = -w;
    return w / w.norm();
}

} // namespace

FrenetFrameSample frenet_frame(const ParametricCurve& curve, double s) {
    const int d = curve.dimension();
    const Eigen::VectorXd tangent = curve.derivative(s, 1);
    if (std::abs(tangent.norm() - 1.0) > 1e-6)
        throw PreconditionError("frenet_frame requires a unit-speed curve (|Gamma'| = " +
                                std::to_string(tangent.norm()) + ")");

    Eigen::MatrixXd frame(d, d);
    int built = 0;
    bool degenerate_seen = false;
    const double threshold = 1e-7;
    for (int order = 1; order <= d - 1; ++order) {
        Eigen::VectorXd v = curve.derivative(s, order);
        const double scale = std::max(1.0, v.norm());
        for (int j = 0; j < built; ++j) v -= frame.col(j).dot(v) * frame.col(j);
        if (v.norm() < threshold * scale) {
            degenerate_seen = true;
            continue;
        }
        if (degenerate_seen)
            throw FrameDegeneracyError(
                "frenet_frame: derivative order " + std::to_string(order) +
                    " is independent after a degenerate lower order (no Frenet frame)",
                order);
        frame.col(built++) = v / v.norm();
    }
    // Complete remaining slots from the canonical basis, deterministically.
    for (int axis = 0; axis < d && built < d - 1; ++axis) {
        Eigen::VectorXd v = Eigen::VectorXd::Unit(d, axis);
        for (int j = 0; j < built; ++j) v -= frame.col(j).dot(v) * frame.col(j);
        if (v.norm() > 0.5) frame.col(built++) = v / v.norm();
    }
    frame.col(d - 1) = orthogonal_complement(frame.leftCols(d - 1));

    FrenetFrameSample sample;
    sample.s = s;
    sample.vectors = frame;
    sample.orientation = 1.0;
    return sample;
}

// ---------------------------------------------------------------------------
// Curvature extraction

CurvatureProfile curvatures(const ParametricCurve& curve, const std::vector<double>& s_grid) {
    if (s_grid.size() < 2) throw ArityError("curvatures: need at least two grid points");
    const int d = curve.dimension();
    const double h = fd_step(1, 1.0);

    std::vector<double> xs;
    std::vector<std::vector<double>> ys(d - 1);
    Eigen::MatrixXd previous;
    for (double s : s_grid) {
        const FrenetFrameSample center = frenet_frame(curve, s);
        if (previous.size() > 0) {
            for (int i = 0; i < d; ++i)
                if (center.vectors.col(i).dot(previous.col(i)) < 0.0)
                    throw FrameContinuityError(
                        "curvatures: frame vector sign flip between adjacent samples near s=" +
                        std::to_string(s) + "; refine the grid");
        }
        previous = center.vectors;
        // 4th-order finite difference of the frame field; shift the stencil
        // inward by up to 2h at the parameter interval ends.
        const double sc = std::clamp(s, curve.t_begin() + 2 * h, curve.t_end() - 2 * h);
        const Eigen::MatrixXd fm2 = frenet_frame(curve, sc - 2 * h).vectors;
        const Eigen::MatrixXd fm1 = frenet_frame(curve, sc - h).vectors;
        const Eigen::MatrixXd fp1 = frenet_frame(curve, sc + h).vectors;
        const Eigen::MatrixXd fp2 = frenet_frame(curve, sc + 2 * h).vectors;
        const Eigen::MatrixXd dframe = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
        xs.push_back(s);
        for (int i = 0; i < d - 1; ++i)
            ys[i].push_back(dframe.col(i).dot(center.vectors.col(i + 1)));
    }

    std::vector<ScalarFunction> comps;
    for (int i = 0; i < d - 1; ++i) {
        auto tab = std::make_shared<TabulatedFunction>(xs, ys[i]);
        const double lo = tab->x_min(), hi = tab->x_max();
        comps.push_back(ScalarFunction{
            [tab, lo, hi](double s) { return (s < lo || s > hi) ? 0.0 : tab->value(s); },
            [tab, lo, hi](double s) { return (s < lo || s > hi) ? 0.0 : tab->deriv1(s); },
            [tab, lo, hi](double s) { return (s < lo || s > hi) ? 0.0 : tab->deriv2(s); }});
    }
    const double bound = std::max(std::abs(xs.front()), std::abs(xs.back()));
    return CurvatureProfile(d, std::move(comps), Support::bounded(bound), SmoothnessGrade::C2,
                            DerivativeSource::tabulated);
}

CurvatureProfile profile_from_closures(int dim, std::vector<ScalarFunction> evaluators,
                                       Support support, SmoothnessGrade grade) {
    if (static_cast<int>(evaluators.size()) != dim - 1)
        throw ArityError("profile_from_closures: expected " + std::to_string(dim - 1) +
                         " evaluators, got " + std::to_string(evaluators.size()));
    const DerivativeSource source = (evaluators[0].deriv1 && evaluators[0].deriv2)
                                        ? DerivativeSource::analytic
                                        : DerivativeSource::finite_difference;
    return CurvatureProfile(dim, std::move(evaluators), support, grade, source);
}

// ---------------------------------------------------------------------------
// CurvatureProfile

CurvatureProfile::CurvatureProfile(int dim, std::vector<ScalarFunction> components,
                                   Support support, SmoothnessGrade grade,
                                   DerivativeSource source)
    : dim_(dim), components_(std::move(components)), support_(support), grade_(grade),
      source_(source) {
    if (dim_ < 2) throw ArityError("CurvatureProfile: dimension must be >= 2");
    if (static_cast<int>(components_.size()) != dim_ - 1)
        throw ArityError("CurvatureProfile: component count must be d-1");
    sample_metadata();
}

void CurvatureProfile::sample_metadata() {
    const double cap = support_.finite ? support_.bound : 50.0;
    const int n = 20001;
    double max1 = 0.0, max_all = 0.0, tail = 0.0, eff = 0.0;
    for (int j = 0; j < n; ++j) {
        const double s = -cap + 2.0 * cap * j / (n - 1.0);
        double here = 0.0;
        for (int i = 0; i < dim_ - 1; ++i) {
            const double v = kappa(i, s);
            if (!std::isfinite(v))
                throw EvaluationError("curvature evaluator returned a non-finite value at s=" +
                                      std::to_string(s));
            here = std::max(here, std::abs(v));
            if (i == 0) max1 = std::max(max1, std::abs(v));
        }
        max_all = std::max(max_all, here);
        if (std::abs(s) > 0.9 * cap) tail = std::max(tail, here);
        if (here > 1e-14) eff = std::max(eff, std::abs(s));
    }
    sup_kappa1_ = 1.05 * max1;
    sampled_max_all_ = max_all;
    tail_magnitude_ = tail;
    effective_support_ = (support_.finite && eff == 0.0) ? 0.0 : eff;
    if (!support_.finite && eff >= cap - 2.0 * cap / (n - 1.0)) effective_support_ = cap;
    if (support_.finite) effective_support_ = std::min(effective_support_, support_.bound);
}

double CurvatureProfile::kappa(int i, double s) const {
    if (support_.finite && std::abs(s) > support_.bound) return 0.0;
    return components_[i].value(s);
}

double CurvatureProfile::kappa_d1(int i, double s) const {
    if (support_.finite && std::abs(s) > support_.bound) return 0.0;
    return components_[i].d1(s);
}

double CurvatureProfile::kappa_d2(int i, double s) const {
    if (support_.finite && std::abs(s) > support_.bound) return 0.0;
    return components_[i].d2(s);
}

Eigen::MatrixXd CurvatureProfile::curvature_matrix(double s) const {
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(dim_, dim_);
    for (int i = 0; i < dim_ - 1; ++i) {
        const double k = kappa(i, s);
        K(i, i + 1) = k;
        K(i + 1, i) = -k;
    }
    return K;
}

Eigen::MatrixXd CurvatureProfile::transverse_block(double s) const {
    const int m = dim_ - 1;
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i + 1 < m; ++i) {
        const double k = kappa(i + 1, s);
        K(i, i + 1) = k;
        K(i + 1, i) = -k;
    }
    return K;
}

Eigen::MatrixXd CurvatureProfile::transverse_block_d1(double s) const {
    const int m = dim_ - 1;
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i + 1 < m; ++i) {
        const double k = kappa_d1(i + 1, s);
        K(i, i + 1) = k;
        K(i + 1, i) = -k;
    }
    return K;
}

} // namespace tubespec
