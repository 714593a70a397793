#include "tubespec/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "tubespec/errors.hpp"

namespace tubespec {

namespace {

// P_n(x) and its derivative via the three-term recurrence.
void legendre(int n, double x, double& pn, double& dpn) {
    double p0 = 1.0, p1 = x;
    if (n == 0) {
        pn = 1.0;
        dpn = 0.0;
        return;
    }
    for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    pn = p1;
    dpn = n * (x * p1 - p0) / (x * x - 1.0);
}

GaussRule compute_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pn = 0.0, dpn = 1.0;
        for (int it = 0; it < 100; ++it) {
            legendre(n, x, pn, dpn);
            double dx = pn / dpn;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        legendre(n, x, pn, dpn);
        rule.nodes[n - 1 - i] = x;
        rule.nodes[i] = -x;
        double w = 2.0 / ((1.0 - x * x) * dpn * dpn);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

} // namespace

const GaussRule& gauss_legendre(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

double gauss_integrate(const std::function<double(double)>& f, double a, double b, int n) {
    const GaussRule& rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double tol, int max_cells) {
    struct Cell {
        double a, b, coarse;
    };
    std::vector<Cell> stack{{a, b, gauss_integrate(f, a, b, 8)}};
    double total = 0.0;
    int cells = 0;
    while (!stack.empty()) {
        if (++cells > max_cells)
            throw ToleranceError("adaptive_integrate: tolerance not met within cell budget");
        Cell c = stack.back();
        stack.pop_back();
        const double fine = gauss_integrate(f, c.a, c.b, 16);
        const double err = std::abs(fine - c.coarse);
        if (err < 0.5 * tol * std::max(1e-3, (c.b - c.a) / (b - a)) || (c.b - c.a) < 1e-14 * (b - a)) {
            total += fine;
        } else {
            const double m = 0.5 * (c.a + c.b);
            stack.push_back({c.a, m, gauss_integrate(f, c.a, m, 8)});
            stack.push_back({m, c.b, gauss_integrate(f, m, c.b, 8)});
        }
    }
    return total;
}

} // namespace tubespec
