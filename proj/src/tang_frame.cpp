#include "tubespec/tang_frame.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>

#include <unsupported/Eigen/MatrixFunctions>

namespace tubespec {

namespace {

bool is_rotation(const Eigen::MatrixXd& m, double tol) {
    if (m.rows() != m.cols()) return false;
    const int n = static_cast<int>(m.rows());
    const double orth = (m * m.transpose() - Eigen::MatrixXd::Identity(n, n))
                            .cwiseAbs()
                            .maxCoeff();
    return orth <= tol && std::abs(m.determinant() - 1.0) <= tol;
}

} // namespace

Eigen::MatrixXd project_to_rotation(const Eigen::MatrixXd& m) {
    if (m.rows() == 1) return Eigen::MatrixXd::Ones(1, 1);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::MatrixXd u = svd.matrixU();
    const Eigen::MatrixXd v = svd.matrixV();
    if ((u * v.transpose()).determinant() < 0) u.col(u.cols() - 1) *= -1.0;
    return u * v.transpose();
}

TangFrameTable::TangFrameTable(int dim, double s0, double step,
                               std::vector<Eigen::MatrixXd> nodes, Eigen::MatrixXd initial)
    : dim_(dim), s0_(s0), step_(step), nodes_(std::move(nodes)), initial_(std::move(initial)) {}

Eigen::MatrixXd TangFrameTable::rotation_at(double s) const {
    const double slack = 1e-9 * std::max(1.0, std::abs(s_end() - s_begin()));
    if (s < s_begin() - slack || s > s_end() + slack)
        throw RangeError("rotation_at: s=" + std::to_string(s) + " outside table range [" +
                         std::to_string(s_begin()) + ", " + std::to_string(s_end()) + "]");
    return rotation_clamped(s);
}

Eigen::MatrixXd TangFrameTable::rotation_clamped(double s) const {
    const int last = node_count() - 1;
    double x = (s - s0_) / step_;
    if (x <= 0.0) return nodes_.front();
    if (x >= last) return nodes_.back();
    const int k = std::min(static_cast<int>(x), last - 1);
    const double f = x - k;
    if (f < 1e-14) return nodes_[k];
    if (f > 1.0 - 1e-14) return nodes_[k + 1];
    if (dim_ == 2) return Eigen::MatrixXd::Ones(1, 1);
    // Geodesic interpolation: R_k * exp(f * log(R_k^T R_{k+1})).
    const Eigen::MatrixXd rel = nodes_[k].transpose() * nodes_[k + 1];
    const Eigen::MatrixXd w = rel.log();
    return project_to_rotation(nodes_[k] * (f * w).exp());
}

double TangFrameTable::max_orthogonality_drift() const {
    const int m = transverse_dim();
    double worst = 0.0;
    for (const auto& r : nodes_)
        worst = std::max(worst, (r * r.transpose() - Eigen::MatrixXd::Identity(m, m))
                                    .cwiseAbs()
                                    .maxCoeff());
    return worst;
}

double TangFrameTable::max_determinant_drift() const {
    double worst = 0.0;
    for (const auto& r : nodes_) worst = std::max(worst, std::abs(r.determinant() - 1.0));
    return worst;
}

double default_frame_step(const CurvatureProfile& profile) {
    const double rate = profile.sup_kappa1() * std::max(0, profile.dimension() - 2);
    return std::min(0.01, 0.1 / std::max(1.0, rate));
}

TangFrameTable solve_frame_ode(const CurvatureProfile& profile, double s_lo, double s_hi,
                               double step, const Eigen::MatrixXd& initial) {
    const int d = profile.dimension();
    const int m = d - 1;
    if (initial.rows() != m || initial.cols() != m)
        throw ArityError("solve_frame_ode: initial matrix must be (d-1)x(d-1)");
    if (!is_rotation(initial, 1e-12))
        throw PreconditionError("solve_frame_ode: initial matrix is not a rotation to 1e-12");
    if (!(s_hi > s_lo)) throw RangeError("solve_frame_ode: empty s range");

    const int n_steps = std::max(1, static_cast<int>(std::ceil((s_hi - s_lo) / step)));
    const double h = (s_hi - s_lo) / n_steps;

    std::vector<Eigen::MatrixXd> nodes;
    nodes.reserve(n_steps + 1);
    Eigen::MatrixXd r = initial;
    nodes.push_back(r);
    auto rhs = [&](const Eigen::MatrixXd& rr, double s) -> Eigen::MatrixXd {
        return -rr * profile.transverse_block(s);
    };
    for (int k = 0; k < n_steps; ++k) {
        const double s = s_lo + h * k;
        if (d == 2) {
            nodes.push_back(r); // transverse block is empty: R stays (1)
            continue;
        }
        const Eigen::MatrixXd k1 = rhs(r, s);
        const Eigen::MatrixXd k2 = rhs(r + 0.5 * h * k1, s + 0.5 * h);
        const Eigen::MatrixXd k3 = rhs(r + 0.5 * h * k2, s + 0.5 * h);
        const Eigen::MatrixXd k4 = rhs(r + h * k3, s + h);
        r = r + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        r = project_to_rotation(r);
        nodes.push_back(r);
    }

    TangFrameTable table(d, s_lo, h, std::move(nodes), initial);
    if (table.max_orthogonality_drift() > 1e-10 || table.max_determinant_drift() > 1e-10)
        throw IntegratorFailureError("solve_frame_ode: rotation invariants drifted beyond 1e-10");
    return table;
}

TangFrameTable solve_frame_ode(const CurvatureProfile& profile, double s_lo, double s_hi) {
    const int m = profile.dimension() - 1;
    return solve_frame_ode(profile, s_lo, s_hi, default_frame_step(profile),
                           Eigen::MatrixXd::Identity(m, m));
}

std::vector<Eigen::VectorXd> tang_vectors(const TangFrameTable& table,
                                          const FrenetFrameSample& frenet) {
    const int d = table.dimension();
    if (frenet.vectors.rows() != d)
        throw ArityError("tang_vectors: frame dimension mismatch");
    const Eigen::MatrixXd r = table.rotation_at(frenet.s);
    std::vector<Eigen::VectorXd> out(d);
    out[0] = frenet.vectors.col(0);
    for (int mu = 0; mu < d - 1; ++mu) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
        for (int nu = 0; nu < d - 1; ++nu) v += r(mu, nu) * frenet.vectors.col(nu + 1);
        out[mu + 1] = v;
    }
    return out;
}

void dump_frame_csv(const TangFrameTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("dump_frame_csv: cannot open " + path);
    const int m = table.transverse_dim();
    out << "s";
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) out << ",R" << i + 1 << j + 1;
    out << "\n";
    out << std::setprecision(17);
    for (int k = 0; k < table.node_count(); ++k) {
        out << table.s_node(k);
        const Eigen::MatrixXd& r = table.node(k);
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < m; ++i) out << "," << r(i, j);
        out << "\n";
    }
}

} // namespace tubespec
