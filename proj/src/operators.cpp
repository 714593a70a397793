#include "tubespec/operators.hpp"

#include <cmath>
#include <vector>

#include "tubespec/lanczos.hpp"

namespace tubespec {

namespace {

// Shared assembly skeleton. The longitudinal flux weight and the nodal extras
// (mass, potential) are what distinguish the two variants.
template <typename LongWeight, typename TransWeight, typename NodalMass, typename NodalPotential>
AssembledOperator assemble_impl(const TubeGeometry& tube, const TruncatedGrid& grid,
                                LongWeight wlong, TransWeight wtrans, NodalMass nodal_mass,
                                NodalPotential nodal_potential,
                                AssembledOperator::Variant variant) {
    const int n_s = grid.n_s();
    const int n_u = grid.n_u();
    if (n_s <= 0 || n_u <= 0) throw ArityError("assemble: empty grid");
    const long long n = grid.dof();
    const double ds = grid.ds();
    const double vol_u = grid.cell_area();
    const double vol = ds * vol_u;

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<size_t>(n) * 4);
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd mass(n);

    // Longitudinal edges, including the Dirichlet walls at s = -L and +L:
    // edge e connects s-level e-1 and e; levels -1 and n_s are walls.
    for (int e = 0; e <= n_s; ++e) {
        const double s_mid = -grid.truncation() + (e + 0.5) * ds;
        const TubeGeometry::Level lv = tube.level(s_mid);
        for (int t = 0; t < n_u; ++t) {
            const double c = wlong(lv.h(grid.u_node(t))) * vol_u / ds;
            const long long p = e > 0 ? grid.index(e - 1, t) : -1;
            const long long q = e < n_s ? grid.index(e, t) : -1;
            if (p >= 0) diag[p] += c;
            if (q >= 0) diag[q] += c;
            if (p >= 0 && q >= 0) {
                trips.emplace_back(static_cast<int>(p), static_cast<int>(q), -c);
                trips.emplace_back(static_cast<int>(q), static_cast<int>(p), -c);
            }
        }
    }

    // Transverse edges per s-level; walls appear as missing neighbors.
    for (int i = 0; i < n_s; ++i) {
        const double s = grid.s_node(i);
        const TubeGeometry::Level lv = tube.level(s);
        const auto pot = nodal_potential(s);
        for (int t = 0; t < n_u; ++t) {
            const long long p = grid.index(i, t);
            for (int axis = 0; axis < grid.axes(); ++axis) {
                const double du = grid.axis_step(axis);
                const double scale = vol / (du * du);
                Eigen::VectorXd mid = grid.u_node(t);
                mid[axis] += 0.5 * du;
                const int qn = grid.neighbor_plus(t, axis);
                const double c = wtrans(lv.h(mid)) * scale;
                diag[p] += c;
                if (qn >= 0) {
                    const long long q = grid.index(i, qn);
                    diag[q] += c;
                    trips.emplace_back(static_cast<int>(p), static_cast<int>(q), -c);
                    trips.emplace_back(static_cast<int>(q), static_cast<int>(p), -c);
                }
                if (grid.neighbor_minus(t, axis) < 0) {
                    Eigen::VectorXd mid2 = grid.u_node(t);
                    mid2[axis] -= 0.5 * du;
                    diag[p] += wtrans(lv.h(mid2)) * scale;
                }
            }
            mass[p] = nodal_mass(lv, grid.u_node(t)) * vol;
            diag[p] += pot(grid.u_node(t)) * vol;
        }
    }

    for (long long p = 0; p < n; ++p)
        trips.emplace_back(static_cast<int>(p), static_cast<int>(p), diag[p]);

    AssembledOperator op;
    op.variant = variant;
    op.stiffness.resize(n, n);
    op.stiffness.setFromTriplets(trips.begin(), trips.end());
    op.mass = std::move(mass);
    op.mu1 = tube.section().mu1();
    op.c_minus = tube.c_minus();
    op.c_plus = tube.c_plus();
    return op;
}

} // namespace

AssembledOperator assemble_form(const TubeGeometry& tube, const TruncatedGrid& grid) {
    auto no_potential = [](double) {
        return [](const Eigen::VectorXd&) { return 0.0; };
    };
    return assemble_impl(
        tube, grid, [](double h) { return 1.0 / h; }, [](double h) { return h; },
        [](const TubeGeometry::Level& lv, const Eigen::VectorXd& u) { return lv.h(u); },
        no_potential, AssembledOperator::Variant::FormH);
}

// ---------------------------------------------------------------------------
// Effective potential

EffectivePotential::EffectivePotential(const TubeGeometry& tube)
    : profile_(tube.profile()), frame_(tube.frame()) {
    if (profile_.grade() != SmoothnessGrade::C2)
        throw SmoothnessError(
            "effective_potential: the curvature profile must be C2 (kappa derivatives needed)");
}

EffectivePotential::Level EffectivePotential::level(double s) const {
    const int m = profile_.dimension() - 1;
    Level lv;
    lv.kappa1 = profile_.kappa(0, s);

    Eigen::VectorXd kcol = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd kcol_d1 = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd kcol_d2 = Eigen::VectorXd::Zero(m);
    kcol[0] = -profile_.kappa(0, s);
    kcol_d1[0] = -profile_.kappa_d1(0, s);
    kcol_d2[0] = -profile_.kappa_d2(0, s);

    const Eigen::MatrixXd rot = frame_.rotation_clamped(s);
    const Eigen::MatrixXd kt = profile_.transverse_block(s);
    const Eigen::MatrixXd kt_d1 = profile_.transverse_block_d1(s);

    lv.b = rot.col(0);
    lv.v1 = rot * (kcol_d1 - kt * kcol);
    lv.v2 = rot * (kcol_d2 - kt_d1 * kcol - 2.0 * kt * kcol_d1 + kt * kt * kcol);
    return lv;
}

double EffectivePotential::Level::value(const Eigen::VectorXd& u) const {
    const double h = 1.0 - kappa1 * b.dot(u);
    const double h1 = u.dot(v1);
    const double h11 = u.dot(v2);
    const double h2 = h * h;
    return -0.25 * kappa1 * kappa1 / h2 + 0.5 * h11 / (h2 * h) - 1.25 * h1 * h1 / (h2 * h2);
}

double EffectivePotential::operator()(double s, const Eigen::VectorXd& u) const {
    return level(s).value(u);
}

EffectivePotential effective_potential(const TubeGeometry& tube) {
    return EffectivePotential(tube);
}

AssembledOperator assemble_schroedinger(const TubeGeometry& tube, const TruncatedGrid& grid,
                                        const EffectivePotential& potential) {
    auto pot_level = [&potential](double s) {
        auto lv = std::make_shared<EffectivePotential::Level>(potential.level(s));
        return [lv](const Eigen::VectorXd& u) { return lv->value(u); };
    };
    return assemble_impl(
        tube, grid, [](double h) { return 1.0 / (h * h); }, [](double) { return 1.0; },
        [](const TubeGeometry::Level&, const Eigen::VectorXd&) { return 1.0; }, pot_level,
        AssembledOperator::Variant::Schroedinger);
}

double transverse_discrete_threshold(const TruncatedGrid& grid) {
    const int n = grid.n_u();
    if (n == 1) {
        // single interior node: 2/du^2 per axis
        double acc = 0.0;
        for (int axis = 0; axis < grid.axes(); ++axis)
            acc += 2.0 / (grid.axis_step(axis) * grid.axis_step(axis));
        return acc;
    }
    std::vector<Eigen::Triplet<double>> trips;
    for (int t = 0; t < n; ++t) {
        double diag = 0.0;
        for (int axis = 0; axis < grid.axes(); ++axis) {
            const double inv = 1.0 / (grid.axis_step(axis) * grid.axis_step(axis));
            diag += 2.0 * inv;
            const int qp = grid.neighbor_plus(t, axis);
            if (qp >= 0) trips.emplace_back(t, qp, -inv);
            const int qm = grid.neighbor_minus(t, axis);
            if (qm >= 0) trips.emplace_back(t, qm, -inv);
        }
        trips.emplace_back(t, t, diag);
    }
    Eigen::SparseMatrix<double> lap(n, n);
    lap.setFromTriplets(trips.begin(), trips.end());
    if (n <= 1200) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(lap));
        return es.eigenvalues()[0];
    }
    EigOptions opts;
    opts.k = 1;
    opts.tol = 1e-11;
    opts.seed = 99;
    return smallest_eigenpairs(lap, opts).values[0];
}

} // namespace tubespec
