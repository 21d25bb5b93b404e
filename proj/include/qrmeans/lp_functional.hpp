#ifndef QRMEANS_LP_FUNCTIONAL_HPP
#define QRMEANS_LP_FUNCTIONAL_HPP

// Littlewood-Paley radial square function G[A](zeta) = (int_0^1 (1-r)|A'(r zeta)|^2 dr)^{1/2}
// and the norm-equivalence and splitting probes built on it.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <qrmeans/circle_means.hpp>
#include <qrmeans/conjugation.hpp>
#include <qrmeans/qr_profile.hpp>
#include <qrmeans/quadrature.hpp>
#include <qrmeans/series.hpp>

namespace qrmeans
{

struct radial_spec {
    std::size_t n_radial = 0; // 0: max(32, deg + 2)
    std::size_t max_radial = 4096;
    double tol = 1e-12;
};

struct g_samples {
    std::vector<double> angles;
    std::vector<double> values;
    std::vector<bool> converged;
    std::size_t n_radial = 0; // largest rule used
    [[nodiscard]] bool all_converged() const
    {
        return std::all_of(converged.begin(), converged.end(), [](bool b) { return b; });
    }
};

inline g_samples g_function(const analytic_series &A, std::size_t n_angles = 256, const radial_spec &spec = {})
{
    if (n_angles == 0) {
        throw std::invalid_argument("g_function: empty angular grid");
    }
    const auto dA = A.derivative();
    std::size_t n0 = spec.n_radial;
    if (n0 == 0) {
        n0 = std::max<std::size_t>(32, dA.degree() + 2);
    }
    auto radial = [&](double theta, std::size_t n) {
        const auto gl = gauss_legendre(n, 0.0, 1.0);
        double s = 0;
        for (std::size_t i = 0; i < gl.size(); ++i) {
            const double r = gl.nodes[i];
            s += gl.weights[i] * (1.0 - r) * std::norm(dA.at_polar(r, theta));
        }
        return s;
    };
    g_samples out;
    out.angles.resize(n_angles);
    out.values.resize(n_angles);
    out.converged.resize(n_angles);
    for (std::size_t j = 0; j < n_angles; ++j) {
        const double theta = 2.0 * pi * static_cast<double>(j) / static_cast<double>(n_angles);
        out.angles[j] = theta;
        if (dA.is_zero()) {
            out.values[j] = 0.0;
            out.converged[j] = true;
            continue;
        }
        std::size_t n = n0;
        double prev = radial(theta, n);
        bool ok = false;
        while (2 * n <= spec.max_radial) {
            n *= 2;
            const double cur = radial(theta, n);
            const bool agree = std::abs(cur - prev) <= spec.tol * std::max(std::abs(cur), 1e-300);
            prev = cur;
            if (agree) {
                ok = true;
                break;
            }
        }
        out.values[j] = std::sqrt(std::max(prev, 0.0));
        out.converged[j] = ok;
        out.n_radial = std::max(out.n_radial, n);
    }
    return out;
}

// Angular grid L^p norm (normalized measure) of G over T.
inline double g_lp_norm(const g_samples &s, double p)
{
    return mean_p(std::span<const double>(s.values), p);
}

// Hardy norm of an analytic series: M_p(1, A) for polynomials (M_p is nondecreasing
// in r), otherwise the sup over the ladder.
inline double analytic_hardy_norm(const analytic_series &A, double p, std::span<const double> ladder = {},
                                  const means_options &o = {})
{
    if (A.is_polynomial()) {
        return integral_mean([&](double t) { return std::abs(A.at_polar(1.0, t)); }, p, o).value;
    }
    if (ladder.empty()) {
        throw std::invalid_argument("analytic_hardy_norm: non-polynomial series needs a radius ladder");
    }
    double best = 0;
    for (double r : ladder) {
        best = std::max(best, integral_mean(A, r, p, o).value);
    }
    return best;
}

struct g_bracket {
    double lo = 0;
    double hi = p_infinity;
};

struct g_ratio_report {
    double g_norm = 0;
    double hardy = 0;          // ||A||_p
    double hardy_adjusted = 0; // ||A - A(0)||_p
    std::optional<double> raw;      // g_norm / hardy
    std::optional<double> adjusted; // g_norm / hardy_adjusted
    std::optional<bool> in_bracket; // adjusted ratio against the calibrated bracket
    std::string note;
};

inline g_ratio_report g_norm_ratio(const analytic_series &A, double p, std::optional<g_bracket> bracket = std::nullopt,
                                   std::size_t n_angles = 256, std::span<const double> ladder = {})
{
    g_ratio_report rep;
    rep.g_norm = g_lp_norm(g_function(A, n_angles), p);
    rep.hardy = analytic_hardy_norm(A, p, ladder);
    const auto centered = A - analytic_series::constant(A(0.0));
    rep.hardy_adjusted = analytic_hardy_norm(centered, p, ladder);
    if (rep.hardy > 0) {
        rep.raw = rep.g_norm / rep.hardy;
    } else {
        rep.note = "zero norm: ratio undefined";
    }
    if (rep.hardy_adjusted > 0) {
        rep.adjusted = rep.g_norm / rep.hardy_adjusted;
        if (bracket) {
            rep.in_bracket = *rep.adjusted >= bracket->lo && *rep.adjusted <= bracket->hi;
        }
    } else if (rep.note.empty()) {
        rep.note = "constant series: adjusted ratio undefined";
    }
    return rep;
}

// (a+b)^p <= 2^{max(p-1,0)}(a^p + b^p) for a, b >= 0; returns RHS - LHS.
inline double power_sum_slack(double a, double b, double p)
{
    if (a < 0 || b < 0 || !(p > 0)) {
        throw std::invalid_argument("power_sum_slack: need a, b >= 0 and p > 0");
    }
    return std::pow(2.0, std::max(p - 1.0, 0.0)) * (std::pow(a, p) + std::pow(b, p)) - std::pow(a + b, p);
}

inline bool power_sum_holds(double a, double b, double p)
{
    const double rhs = std::pow(2.0, std::max(p - 1.0, 0.0)) * (std::pow(a, p) + std::pow(b, p));
    return power_sum_slack(a, b, p) >= -1e-14 * std::max(1.0, rhs);
}

// Constant in ||G[F2]||_p <= C (K ||G[F1]||_p + sqrt K'); the q < 1 form applies below 1.
inline double splitting_constant_lp(double p)
{
    if (!(p > 0)) {
        throw std::invalid_argument("splitting_constant_lp: p must be positive");
    }
    if (p >= 1.0) {
        return std::pow(2.0, std::max(0.0, 0.5 * p - 1.0) / p + 0.5);
    }
    return std::pow(2.0, 1.0 / p - 0.5);
}

struct splitting_report {
    double pointwise_deficit = -p_infinity; // sup |F2'| - K|F1'| - sqrt K'
    double squared_deficit = -p_infinity;   // sup |F2'|^2 - 2K^2|F1'|^2 - 2K'
    double g_F1 = 0;                        // ||G[F1]||_p
    double g_F2 = 0;
    double g_bound = 0; // C (K ||G[F1]||_p + sqrt K')
    double g_slack = 0; // g_bound - g_F2
    bool profile_certified = false;
    [[nodiscard]] bool holds(double tol = 1e-10) const
    {
        return profile_certified && pointwise_deficit <= tol && squared_deficit <= tol && g_slack >= -tol;
    }
};

inline splitting_report splitting_bound_check(const conjugate_pair &pair, const qr_profile &profile, double p,
                                              std::size_t n_angles = 256)
{
    splitting_report rep;
    rep.profile_certified = profile.certified();
    const double K = profile.K;
    const double Kp = profile.Kprime;
    const auto d1 = pair.F1.derivative();
    const auto d2 = pair.F2.derivative();
    profile.grid.for_each([&](double r, double t) {
        const double a1 = std::abs(d1.at_polar(r, t));
        const double a2 = std::abs(d2.at_polar(r, t));
        rep.pointwise_deficit = std::max(rep.pointwise_deficit, a2 - K * a1 - std::sqrt(Kp));
        rep.squared_deficit = std::max(rep.squared_deficit, a2 * a2 - 2.0 * K * K * a1 * a1 - 2.0 * Kp);
    });
    rep.g_F1 = g_lp_norm(g_function(pair.F1, n_angles), p);
    rep.g_F2 = g_lp_norm(g_function(pair.F2, n_angles), p);
    rep.g_bound = splitting_constant_lp(p) * (K * rep.g_F1 + std::sqrt(Kp));
    rep.g_slack = rep.g_bound - rep.g_F2;
    return rep;
}

} // namespace qrmeans

#endif
