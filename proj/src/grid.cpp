#include "tubespec/grid.hpp"

#include <array>
#include <cmath>

#include "tubespec/errors.hpp"

namespace tubespec {

TruncatedGrid TruncatedGrid::make(const CrossSection& section, double L, double ds_target,
                                  double du_target) {
    if (!(L > 0) || !(ds_target > 0) || !(du_target > 0))
        throw PreconditionError("TruncatedGrid: L, ds, du must be positive");
    TruncatedGrid grid;
    grid.L_ = L;
    grid.n_s_ = std::max(1, static_cast<int>(std::lround(2.0 * L / ds_target)) - 1);
    grid.ds_ = 2.0 * L / (grid.n_s_ + 1);

    const int dim_u = section.dim();
    if (dim_u == 1) {
        const double a = section.radius();
        const int n = std::max(1, static_cast<int>(std::lround(2.0 * a / du_target)) - 1);
        const double du = 2.0 * a / (n + 1);
        grid.steps_ = {du};
        grid.cell_area_ = du;
        for (int j = 1; j <= n; ++j)
            grid.u_nodes_.push_back(Eigen::VectorXd::Constant(1, -a + j * du));
        grid.nbr_.resize(n, {-1, -1, -1, -1});
        for (int t = 0; t < n; ++t) {
            grid.nbr_[t][0] = t + 1 < n ? t + 1 : -1;
            grid.nbr_[t][1] = t > 0 ? t - 1 : -1;
        }
        return grid;
    }

    if (section.shape() == CrossSection::Shape::Rectangle) {
        // Wall-aligned tensor lattice with per-axis steps.
        const Eigen::VectorXd lo = section.bbox_lo(), hi = section.bbox_hi();
        std::array<int, 2> counts;
        std::array<double, 2> steps;
        for (int axis = 0; axis < 2; ++axis) {
            const double w = hi[axis] - lo[axis];
            counts[axis] = std::max(1, static_cast<int>(std::lround(w / du_target)) - 1);
            steps[axis] = w / (counts[axis] + 1);
        }
        grid.steps_ = {steps[0], steps[1]};
        grid.cell_area_ = steps[0] * steps[1];
        std::unordered_map<long long, int> id;
        auto key = [&](int i, int j) { return static_cast<long long>(i) * 1000000 + j; };
        for (int i = 1; i <= counts[0]; ++i)
            for (int j = 1; j <= counts[1]; ++j) {
                id[key(i, j)] = static_cast<int>(grid.u_nodes_.size());
                grid.u_nodes_.push_back(
                    Eigen::Vector2d(lo[0] + i * steps[0], lo[1] + j * steps[1]));
            }
        grid.nbr_.resize(grid.u_nodes_.size(), {-1, -1, -1, -1});
        for (int i = 1; i <= counts[0]; ++i)
            for (int j = 1; j <= counts[1]; ++j) {
                auto& nb = grid.nbr_[id[key(i, j)]];
                auto find = [&](int ii, int jj) {
                    auto it = id.find(key(ii, jj));
                    return it == id.end() ? -1 : it->second;
                };
                nb[0] = find(i + 1, j);
                nb[1] = find(i - 1, j);
                nb[2] = find(i, j + 1);
                nb[3] = find(i, j - 1);
            }
        return grid;
    }

    // Disk / mask: centered integer lattice with uniform step, membership by
    // the section's containment test.
    const double du = du_target;
    grid.steps_ = {du, du};
    grid.cell_area_ = du * du;
    const Eigen::VectorXd lo = section.bbox_lo(), hi = section.bbox_hi();
    const int i_min = static_cast<int>(std::floor(lo[0] / du)) - 1;
    const int i_max = static_cast<int>(std::ceil(hi[0] / du)) + 1;
    const int j_min = static_cast<int>(std::floor(lo[1] / du)) - 1;
    const int j_max = static_cast<int>(std::ceil(hi[1] / du)) + 1;
    std::unordered_map<long long, int> id;
    auto key = [&](int i, int j) {
        return static_cast<long long>(i + 1000000) * 4000037LL + (j + 1000000);
    };
    for (int i = i_min; i <= i_max; ++i)
        for (int j = j_min; j <= j_max; ++j) {
            const Eigen::Vector2d u(i * du, j * du);
            if (!section.contains(u)) continue;
            id[key(i, j)] = static_cast<int>(grid.u_nodes_.size());
            grid.u_nodes_.push_back(u);
        }
    if (grid.u_nodes_.empty())
        throw PreconditionError("TruncatedGrid: no transverse nodes inside the section (du too coarse)");
    grid.nbr_.resize(grid.u_nodes_.size(), {-1, -1, -1, -1});
    for (int i = i_min; i <= i_max; ++i)
        for (int j = j_min; j <= j_max; ++j) {
            auto it = id.find(key(i, j));
            if (it == id.end()) continue;
            auto& nb = grid.nbr_[it->second];
            auto find = [&](int ii, int jj) {
                auto it2 = id.find(key(ii, jj));
                return it2 == id.end() ? -1 : it2->second;
            };
            nb[0] = find(i + 1, j);
            nb[1] = find(i - 1, j);
            nb[2] = find(i, j + 1);
            nb[3] = find(i, j - 1);
        }
    return grid;
}

} // namespace tubespec
