#include "tubespec/cross_section.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <sstream>

#include "tubespec/lanczos.hpp"
#include "tubespec/quadrature.hpp"

namespace tubespec {

// ---------------------------------------------------------------------------
// Bessel helpers

double bessel_j0(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 80; ++k) {
        term *= -q / (static_cast<double>(k) * k);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

double bessel_j1(double x) {
    const double q = 0.25 * x * x;
    double term = 0.5 * x, sum = term;
    for (int k = 1; k < 80; ++k) {
        term *= -q / (static_cast<double>(k) * (k + 1.0));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

namespace {

double bisect_zero(double (*f)(double), double lo, double hi) {
    double flo = f(lo);
    if (flo * f(hi) > 0) throw NumericError("bessel zero: bracket does not straddle a root");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0 || hi - lo < 1e-15) return mid;
        if (flo * fm < 0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

double bessel_j0_first_zero() {
    static const double z = bisect_zero(&bessel_j0, 2.0, 3.0);
    return z;
}

double bessel_j1_first_zero() {
    static const double z = bisect_zero(&bessel_j1, 3.0, 4.5);
    return z;
}

// ---------------------------------------------------------------------------
// Mask loading

Mask load_mask_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("load_mask_pgm: cannot open " + path);
    std::string magic;
    in >> magic;
    if (magic != "P2" && magic != "P5") throw Error("load_mask_pgm: expected P2 or P5 header");
    auto next_int = [&in]() {
        int v;
        while (true) {
            in >> std::ws;
            if (in.peek() == '#') {
                std::string line;
                std::getline(in, line);
                continue;
            }
            if (!(in >> v)) throw Error("load_mask_pgm: truncated header");
            return v;
        }
    };
    Mask mask;
    mask.nx = next_int();
    mask.ny = next_int();
    const int maxval = next_int();
    mask.cells.resize(static_cast<size_t>(mask.nx) * mask.ny);
    if (magic == "P2") {
        for (auto& c : mask.cells) {
            int v;
            if (!(in >> v)) throw Error("load_mask_pgm: truncated P2 data");
            c = v > maxval / 2 ? 1 : 0;
        }
    } else {
        in.get(); // single whitespace after maxval
        std::vector<char> raw(mask.cells.size());
        in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
        if (in.gcount() != static_cast<std::streamsize>(raw.size()))
            throw Error("load_mask_pgm: truncated P5 data");
        for (size_t i = 0; i < raw.size(); ++i)
            mask.cells[i] = static_cast<unsigned char>(raw[i]) > maxval / 2 ? 1 : 0;
    }
    return mask;
}

Mask load_mask_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("load_mask_csv: cannot open " + path);
    std::vector<std::vector<std::uint8_t>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::uint8_t> row;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) row.push_back(std::stod(tok) >= 0.5 ? 1 : 0);
        if (!rows.empty() && row.size() != rows.front().size())
            throw Error("load_mask_csv: ragged rows");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error("load_mask_csv: empty file");
    Mask mask;
    mask.ny = static_cast<int>(rows.size());
    mask.nx = static_cast<int>(rows.front().size());
    mask.cells.resize(static_cast<size_t>(mask.nx) * mask.ny);
    for (int j = 0; j < mask.ny; ++j)
        for (int i = 0; i < mask.nx; ++i) mask.cells[static_cast<size_t>(j) * mask.nx + i] = rows[j][i];
    return mask;
}

// ---------------------------------------------------------------------------
// Factories

CrossSection make_interval(double a) {
    if (!(a > 0)) throw PreconditionError("make_interval: a must be positive");
    CrossSection cs;
    cs.dim_ = 1;
    cs.shape_ = CrossSection::Shape::Interval;
    cs.half_width_ = a;
    cs.radius_ = a;
    cs.mu1_ = std::pow(M_PI / (2.0 * a), 2);
    cs.mu2_ = std::pow(M_PI / a, 2);
    cs.bbox_lo_ = Eigen::VectorXd::Constant(1, -a);
    cs.bbox_hi_ = Eigen::VectorXd::Constant(1, a);
    const GaussRule& rule = gauss_legendre(20);
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        QuadNode node;
        node.point = Eigen::VectorXd::Constant(1, a * rule.nodes[i]);
        node.weight = a * rule.weights[i];
        cs.quad_.push_back(node);
    }
    return cs;
}

CrossSection make_rectangle(double b, double c) {
    if (!(b > 0) || !(c > 0)) throw PreconditionError("make_rectangle: sides must be positive");
    CrossSection cs;
    cs.dim_ = 2;
    cs.shape_ = CrossSection::Shape::Rectangle;
    cs.side_b_ = b;
    cs.side_c_ = c;
    cs.radius_ = 0.5 * std::sqrt(b * b + c * c);
    cs.mu1_ = M_PI * M_PI * (1.0 / (b * b) + 1.0 / (c * c));
    cs.mu2_ = M_PI * M_PI * std::min(4.0 / (b * b) + 1.0 / (c * c), 1.0 / (b * b) + 4.0 / (c * c));
    cs.bbox_lo_ = Eigen::Vector2d(-0.5 * b, -0.5 * c);
    cs.bbox_hi_ = Eigen::Vector2d(0.5 * b, 0.5 * c);
    const GaussRule& rule = gauss_legendre(20);
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        for (size_t j = 0; j < rule.nodes.size(); ++j) {
            QuadNode node;
            node.point = Eigen::Vector2d(0.5 * b * rule.nodes[i], 0.5 * c * rule.nodes[j]);
            node.weight = 0.25 * b * c * rule.weights[i] * rule.weights[j];
            cs.quad_.push_back(node);
        }
    }
    return cs;
}

CrossSection make_disk(double r) {
    if (!(r > 0)) throw PreconditionError("make_disk: r must be positive");
    CrossSection cs;
    cs.dim_ = 2;
    cs.shape_ = CrossSection::Shape::Disk;
    cs.disk_r_ = r;
    cs.radius_ = r;
    const double j01 = bessel_j0_first_zero();
    const double j11 = bessel_j1_first_zero();
    cs.mu1_ = std::pow(j01 / r, 2);
    cs.mu2_ = std::pow(j11 / r, 2);
    cs.disk_norm_ = 1.0 / (std::sqrt(M_PI) * r * std::abs(bessel_j1(j01)));
    cs.bbox_lo_ = Eigen::Vector2d(-r, -r);
    cs.bbox_hi_ = Eigen::Vector2d(r, r);
    const GaussRule& radial = gauss_legendre(24);
    const int n_phi = 48;
    for (size_t i = 0; i < radial.nodes.size(); ++i) {
        const double rho = 0.5 * r * (radial.nodes[i] + 1.0);
        const double wr = 0.5 * r * radial.weights[i] * rho; // polar measure
        for (int j = 0; j < n_phi; ++j) {
            const double phi = 2.0 * M_PI * j / n_phi;
            QuadNode node;
            node.point = Eigen::Vector2d(rho * std::cos(phi), rho * std::sin(phi));
            node.weight = wr * 2.0 * M_PI / n_phi;
            cs.quad_.push_back(node);
        }
    }
    return cs;
}

CrossSection make_mask(const Mask& mask, double spacing) {
    if (!(spacing > 0)) throw PreconditionError("make_mask: spacing must be positive");
    const int nx = mask.nx, ny = mask.ny;
    std::vector<int> index(static_cast<size_t>(nx) * ny, -1);
    std::vector<std::pair<int, int>> cells;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            if (mask.at(i, j)) {
                index[static_cast<size_t>(j) * nx + i] = static_cast<int>(cells.size());
                cells.emplace_back(i, j);
            }
    if (cells.size() < 4)
        throw TopologyError("make_mask: mask too small to be open/connected at this resolution");

    // connectivity by flood fill
    std::vector<char> seen(cells.size(), 0);
    std::queue<int> queue;
    queue.push(0);
    seen[0] = 1;
    size_t reached = 1;
    while (!queue.empty()) {
        const auto [ci, cj] = cells[static_cast<size_t>(queue.front())];
        queue.pop();
        const int neighbors[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        for (const auto& nb : neighbors) {
            const int ni = ci + nb[0], nj = cj + nb[1];
            if (ni < 0 || ni >= nx || nj < 0 || nj >= ny) continue;
            const int id = index[static_cast<size_t>(nj) * nx + ni];
            if (id >= 0 && !seen[id]) {
                seen[id] = 1;
                ++reached;
                queue.push(id);
            }
        }
    }
    if (reached != cells.size()) throw TopologyError("make_mask: mask is disconnected");

    // 5-point Dirichlet Laplacian on cell centers
    const int n = static_cast<int>(cells.size());
    Eigen::SparseMatrix<double> lap(n, n);
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<size_t>(n) * 5);
    const double inv_h2 = 1.0 / (spacing * spacing);
    for (int p = 0; p < n; ++p) {
        const auto [ci, cj] = cells[static_cast<size_t>(p)];
        trips.emplace_back(p, p, 4.0 * inv_h2);
        const int neighbors[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        for (const auto& nb : neighbors) {
            const int id = mask.at(ci + nb[0], cj + nb[1])
                               ? index[static_cast<size_t>(cj + nb[1]) * nx + (ci + nb[0])]
                               : -1;
            if (id >= 0) trips.emplace_back(p, id, -inv_h2);
        }
    }
    lap.setFromTriplets(trips.begin(), trips.end());

    EigOptions opts;
    opts.k = 2;
    opts.tol = 1e-10;
    opts.seed = 2025;
    EigResult eig = smallest_eigenpairs(lap, opts);
    if (!eig.converged) throw NumericError("make_mask: transverse eigensolve did not converge");

    CrossSection cs;
    cs.dim_ = 2;
    cs.shape_ = CrossSection::Shape::MaskGrid;
    cs.mask_ = mask;
    cs.mask_spacing_ = spacing;
    cs.mu1_ = eig.values[0];
    cs.mu2_ = eig.values[1];

    // centroid of cell centers -> transverse origin
    double cx = 0.0, cy = 0.0;
    for (const auto& [ci, cj] : cells) {
        cx += (ci + 0.5) * spacing;
        cy += (cj + 0.5) * spacing;
    }
    cx /= n;
    cy /= n;
    cs.mask_origin_x_ = cx;
    cs.mask_origin_y_ = cy;

    // radius: farthest cell center plus half cell diagonal
    double far = 0.0;
    for (const auto& [ci, cj] : cells) {
        const double x = (ci + 0.5) * spacing - cx;
        const double y = (cj + 0.5) * spacing - cy;
        far = std::max(far, std::hypot(x, y));
    }
    cs.radius_ = far + 0.5 * spacing * std::sqrt(2.0);
    cs.bbox_lo_ = Eigen::Vector2d(-cx, -cy);
    cs.bbox_hi_ = Eigen::Vector2d(nx * spacing - cx, ny * spacing - cy);

    // normalized nodal values (sign fixed positive)
    Eigen::VectorXd v = eig.vectors.col(0);
    if (v.sum() < 0) v = -v;
    v /= v.norm() * spacing; // sum v_i^2 * spacing^2 == 1
    cs.mask_values_ = Eigen::MatrixXd::Zero(nx, ny);
    for (int p = 0; p < n; ++p)
        cs.mask_values_(cells[static_cast<size_t>(p)].first, cells[static_cast<size_t>(p)].second) = v[p];

    for (const auto& [ci, cj] : cells) {
        QuadNode node;
        node.point = Eigen::Vector2d((ci + 0.5) * spacing - cx, (cj + 0.5) * spacing - cy);
        node.weight = spacing * spacing;
        cs.quad_.push_back(node);
    }
    return cs;
}

// ---------------------------------------------------------------------------
// Evaluators

double CrossSection::eigenfunction(const Eigen::VectorXd& u) const {
    switch (shape_) {
        case Shape::Interval:
            if (std::abs(u[0]) >= half_width_) return 0.0;
            return std::cos(M_PI * u[0] / (2.0 * half_width_)) / std::sqrt(half_width_);
        case Shape::Rectangle: {
            if (std::abs(u[0]) >= 0.5 * side_b_ || std::abs(u[1]) >= 0.5 * side_c_) return 0.0;
            return std::sqrt(2.0 / side_b_) * std::cos(M_PI * u[0] / side_b_) *
                   std::sqrt(2.0 / side_c_) * std::cos(M_PI * u[1] / side_c_);
        }
        case Shape::Disk: {
            const double rho = u.norm();
            if (rho >= disk_r_) return 0.0;
            return disk_norm_ * bessel_j0(bessel_j0_first_zero() * rho / disk_r_);
        }
        case Shape::MaskGrid: {
            // bilinear interpolation on the cell-center lattice
            const double x = (u[0] + mask_origin_x_) / mask_spacing_ - 0.5;
            const double y = (u[1] + mask_origin_y_) / mask_spacing_ - 0.5;
            const int i0 = static_cast<int>(std::floor(x));
            const int j0 = static_cast<int>(std::floor(y));
            const double fx = x - i0, fy = y - j0;
            auto val = [&](int i, int j) {
                if (i < 0 || i >= mask_.nx || j < 0 || j >= mask_.ny) return 0.0;
                return mask_values_(i, j);
            };
            return (1 - fx) * (1 - fy) * val(i0, j0) + fx * (1 - fy) * val(i0 + 1, j0) +
                   (1 - fx) * fy * val(i0, j0 + 1) + fx * fy * val(i0 + 1, j0 + 1);
        }
    }
    return 0.0;
}

Eigen::VectorXd CrossSection::eigenfunction_gradient(const Eigen::VectorXd& u) const {
    switch (shape_) {
        case Shape::Interval: {
            Eigen::VectorXd g(1);
            g[0] = std::abs(u[0]) >= half_width_
                       ? 0.0
                       : -(M_PI / (2.0 * half_width_)) *
                             std::sin(M_PI * u[0] / (2.0 * half_width_)) / std::sqrt(half_width_);
            return g;
        }
        case Shape::Rectangle: {
            Eigen::VectorXd g = Eigen::VectorXd::Zero(2);
            if (std::abs(u[0]) >= 0.5 * side_b_ || std::abs(u[1]) >= 0.5 * side_c_) return g;
            const double nb = std::sqrt(2.0 / side_b_), nc = std::sqrt(2.0 / side_c_);
            g[0] = -nb * (M_PI / side_b_) * std::sin(M_PI * u[0] / side_b_) * nc *
                   std::cos(M_PI * u[1] / side_c_);
            g[1] = nb * std::cos(M_PI * u[0] / side_b_) * -nc * (M_PI / side_c_) *
                   std::sin(M_PI * u[1] / side_c_);
            return g;
        }
        case Shape::Disk: {
            Eigen::VectorXd g = Eigen::VectorXd::Zero(2);
            const double rho = u.norm();
            if (rho >= disk_r_ || rho == 0.0) return g;
            const double j01 = bessel_j0_first_zero();
            const double dr = -disk_norm_ * (j01 / disk_r_) * bessel_j1(j01 * rho / disk_r_);
            g = dr * u / rho;
            return g;
        }
        case Shape::MaskGrid: {
            // central difference of the bilinear interpolant
            Eigen::VectorXd g(2);
            const double h = 0.25 * mask_spacing_;
            for (int axis = 0; axis < 2; ++axis) {
                Eigen::VectorXd up = u, dn = u;
                up[axis] += h;
                dn[axis] -= h;
                g[axis] = (eigenfunction(up) - eigenfunction(dn)) / (2.0 * h);
            }
            return g;
        }
    }
    return Eigen::VectorXd::Zero(dim_);
}

bool CrossSection::contains(const Eigen::VectorXd& u) const {
    switch (shape_) {
        case Shape::Interval:
            return std::abs(u[0]) < half_width_;
        case Shape::Rectangle:
            return std::abs(u[0]) < 0.5 * side_b_ && std::abs(u[1]) < 0.5 * side_c_;
        case Shape::Disk:
            return u.squaredNorm() < disk_r_ * disk_r_;
        case Shape::MaskGrid: {
            const int i = static_cast<int>(std::floor((u[0] + mask_origin_x_) / mask_spacing_));
            const int j = static_cast<int>(std::floor((u[1] + mask_origin_y_) / mask_spacing_));
            return mask_.at(i, j);
        }
    }
    return false;
}

double CrossSection::eigenfunction_norm() const {
    double acc = 0.0;
    for (const auto& node : quad_) {
        const double v = eigenfunction(node.point);
        acc += node.weight * v * v;
    }
    return std::sqrt(acc);
}

std::string CrossSection::describe() const {
    switch (shape_) {
        case Shape::Interval:
            return "interval a=" + std::to_string(half_width_);
        case Shape::Rectangle:
            return "rectangle " + std::to_string(side_b_) + "x" + std::to_string(side_c_);
        case Shape::Disk:
            return "disk r=" + std::to_string(disk_r_);
        case Shape::MaskGrid:
            return "mask " + std::to_string(mask_.nx) + "x" + std::to_string(mask_.ny) +
                   " spacing=" + std::to_string(mask_spacing_);
    }
    return "?";
}

} // namespace tubespec
