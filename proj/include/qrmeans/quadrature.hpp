#ifndef QRMEANS_QUADRATURE_HPP
#define QRMEANS_QUADRATURE_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include <qrmeans/series.hpp>

namespace qrmeans
{

// Nodes and weights of a 1-D rule.
struct rule_1d {
    std::vector<double> nodes;
    std::vector<double> weights;

    [[nodiscard]] std::size_t size() const noexcept
    {
        return nodes.size();
    }
};

// n-point Gauss-Legendre rule on [a, b] (Newton iteration on P_n).
inline rule_1d gauss_legendre(std::size_t n, double a = -1.0, double b = 1.0)
{
    if (n == 0) {
        throw std::invalid_argument("gauss_legendre: n must be positive");
    }
    rule_1d out;
    out.nodes.resize(n);
    out.weights.resize(n);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    const std::size_t m = (n + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
        double x = std::cos(pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double kk = static_cast<double>(k);
                const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        // Recompute derivative at the converged node.
        double p0 = 1.0;
        double p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
            const double kk = static_cast<double>(k);
            const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
            p0 = p1;
            p1 = p2;
        }
        dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.nodes[i] = mid - half * x;
        out.nodes[n - 1 - i] = mid + half * x;
        out.weights[i] = half * w;
        out.weights[n - 1 - i] = half * w;
    }
    if (n % 2 == 1) {
        out.nodes[n / 2] = mid;
    }
    return out;
}

// Angular rule on the circle with weights normalized to sum 1, so that
// sum w_i F(theta_i) approximates (1/2pi) int_0^{2pi} F dtheta.
struct circle_rule {
    std::vector<double> theta;
    std::vector<double> weight;
    bool uniform = true;

    [[nodiscard]] std::size_t size() const noexcept
    {
        return theta.size();
    }
};

inline circle_rule uniform_circle(std::size_t n)
{
    if (n == 0) {
        throw std::invalid_argument("uniform_circle: empty grid");
    }
    circle_rule c;
    c.theta.resize(n);
    c.weight.assign(n, 1.0 / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        c.theta[i] = 2.0 * pi * static_cast<double>(i) / static_cast<double>(n);
    }
    return c;
}

// Composite Gauss-Legendre on panels graded geometrically toward `focus`:
// breakpoints focus +- {0, d, 2d, 4d, ...} up to pi on each side.
inline circle_rule graded_circle(double focus, double d, std::size_t per_panel = 24)
{
    if (!(d > 0)) {
        throw std::invalid_argument("graded_circle: grading scale must be positive");
    }
    std::vector<double> br{0.0};
    for (double x = d; x < pi; x *= 2.0) {
        br.push_back(x);
    }
    if (br.size() > 2 && pi - br.back() < 0.5 * (br.back() - br[br.size() - 2])) {
        br.back() = pi;
    } else {
        br.push_back(pi);
    }
    const auto gl = gauss_legendre(per_panel);
    circle_rule c;
    c.uniform = false;
    for (int side : {-1, 1}) {
        for (std::size_t k = 0; k + 1 < br.size(); ++k) {
            const double a = br[k];
            const double b = br[k + 1];
            for (std::size_t i = 0; i < per_panel; ++i) {
                const double x = a + (b - a) * 0.5 * (gl.nodes[i] + 1.0);
                c.theta.push_back(focus + side * x);
                c.weight.push_back((b - a) * 0.5 * gl.weights[i] / (2.0 * pi));
            }
        }
    }
    return c;
}

} // namespace qrmeans

#endif
