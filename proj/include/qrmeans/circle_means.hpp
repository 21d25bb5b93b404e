#ifndef QRMEANS_CIRCLE_MEANS_HPP
#define QRMEANS_CIRCLE_MEANS_HPP

// Integral means M_p(r, f) = ((1/2pi) int |f(r e^{it})|^p dt)^{1/p}, Hardy-type
// norms as sup over radius ladders, and radial growth fits.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include <qrmeans/quadrature.hpp>
#include <qrmeans/series.hpp>

namespace qrmeans
{

inline constexpr double p_infinity = std::numeric_limits<double>::infinity();

namespace detail
{

inline void check_exponent(double p)
{
    if (!(p > 0) || std::isnan(p)) {
        throw std::invalid_argument("mean_p: exponent must be positive (or infinity)");
    }
}

inline double pow_abs(double x, double p)
{
    const double a = std::abs(x);
    if (p == 1.0) {
        return a;
    }
    if (p == 2.0) {
        return a * a;
    }
    return std::pow(a, p);
}

} // namespace detail

// M_p over a uniform angular sample; p = p_infinity gives the grid max of |f|.
inline double mean_p(std::span<const double> values, double p)
{
    if (values.empty()) {
        throw std::invalid_argument("mean_p: empty grid");
    }
    if (values.size() < 16) {
        throw std::invalid_argument("mean_p: uniform grid needs at least 16 points");
    }
    detail::check_exponent(p);
    if (std::isinf(p)) {
        double m = 0;
        for (double v : values) {
            m = std::max(m, std::abs(v));
        }
        return m;
    }
    double s = 0;
    for (double v : values) {
        s += detail::pow_abs(v, p);
    }
    return std::pow(s / static_cast<double>(values.size()), 1.0 / p);
}

inline double mean_p(std::span<const cplx> values, double p)
{
    std::vector<double> a(values.size());
    std::transform(values.begin(), values.end(), a.begin(), [](cplx z) { return std::abs(z); });
    return mean_p(std::span<const double>(a), p);
}

// Which scalar of f = u + iv is being averaged.
enum class component { f, u, v };

inline const char *to_string(component c)
{
    switch (c) {
    case component::f:
        return "f";
    case component::u:
        return "u";
    case component::v:
        return "v";
    }
    return "?";
}

inline double component_abs(cplx w, component c)
{
    switch (c) {
    case component::f:
        return std::abs(w);
    case component::u:
        return std::abs(w.real());
    case component::v:
        return std::abs(w.imag());
    }
    return 0;
}

struct means_options {
    std::size_t n_theta = 4096;       // starting uniform grid
    std::size_t max_theta = 1u << 20; // doubling cap
    double tol = 1e-9;                // agreement of successive refinements
    bool adaptive = true;
    std::size_t per_panel = 24;       // graded rule, starting nodes per panel
    std::size_t max_per_panel = 768;
};

struct mean_result {
    double value = 0;
    std::size_t n_theta = 0; // nodes of the accepted rule
    bool converged = true;
};

namespace detail
{

inline bool agree(double a, double b, double tol)
{
    return a == b || std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

// (1/2pi) int_0^{2pi} F(theta) dtheta by periodic trapezoid with doubling.
// Returns the normalized mean of F, or the max if `take_max`.
inline mean_result trapezoid_mean(const std::function<double(double)> &F, const means_options &o,
                                  bool take_max)
{
    std::size_t n = std::max<std::size_t>(o.n_theta, 16);
    double acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = F(2.0 * pi * static_cast<double>(i) / static_cast<double>(n));
        acc = take_max ? std::max(acc, v) : acc + v;
    }
    double prev = take_max ? acc : acc / static_cast<double>(n);
    if (!o.adaptive) {
        return {prev, n, true};
    }
    while (2 * n <= o.max_theta) {
        for (std::size_t i = 0; i < n; ++i) {
            const double t = 2.0 * pi * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
            const double v = F(t);
            acc = take_max ? std::max(acc, v) : acc + v;
        }
        n *= 2;
        const double cur = take_max ? acc : acc / static_cast<double>(n);
        if (agree(prev, cur, o.tol)) {
            return {cur, n, true};
        }
        prev = cur;
    }
    return {prev, n, false};
}

inline mean_result graded_mean(const std::function<double(double)> &F, double d, const means_options &o,
                               bool take_max)
{
    auto eval = [&](std::size_t m) {
        const auto rule = graded_circle(0.0, d, m);
        double acc = 0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const double v = F(rule.theta[i]);
            acc = take_max ? std::max(acc, v) : acc + rule.weight[i] * v;
        }
        return std::pair{acc, rule.size()};
    };
    std::size_t m = o.per_panel;
    auto [prev, n] = eval(m);
    if (!o.adaptive) {
        return {prev, n, true};
    }
    while (2 * m <= o.max_per_panel) {
        m *= 2;
        auto [cur, n2] = eval(m);
        if (agree(prev, cur, o.tol)) {
            return {cur, n2, true};
        }
        prev = cur;
        n = n2;
    }
    return {prev, n, false};
}

} // namespace detail

// Normalized circle mean of F(theta). `singular_scale` > 0 selects panels graded
// toward theta = 0 at that scale (used for atoms singular at z = 1).
inline mean_result circle_average(const std::function<double(double)> &F, const means_options &o = {},
                                  double singular_scale = 0.0)
{
    if (singular_scale > 0) {
        return detail::graded_mean(F, singular_scale, o, false);
    }
    return detail::trapezoid_mean(F, o, false);
}

// Generic M_p of |F(theta)| on a circle.
inline mean_result integral_mean(const std::function<double(double)> &absF, double p,
                                 const means_options &o = {}, double singular_scale = 0.0)
{
    detail::check_exponent(p);
    if (std::isinf(p)) {
        if (singular_scale > 0) {
            return detail::graded_mean(absF, singular_scale, o, true);
        }
        return detail::trapezoid_mean(absF, o, true);
    }
    auto powF = [&](double t) { return detail::pow_abs(absF(t), p); };
    auto res = singular_scale > 0 ? detail::graded_mean(powF, singular_scale, o, false)
                                  : detail::trapezoid_mean(powF, o, false);
    res.value = std::pow(res.value, 1.0 / p);
    return res;
}

// Scale at which angular panels are graded for a map of radius r; 0 for polynomial maps.
inline double grading_scale(const harmonic_map &m, double r)
{
    if (m.is_polynomial()) {
        return 0.0;
    }
    return std::max(1.0 - r, 1e-15);
}

inline mean_result integral_mean(const harmonic_map &m, component c, double r, double p,
                                 const means_options &o = {})
{
    if (r < 0) {
        throw std::invalid_argument("integral_mean: negative radius");
    }
    return integral_mean([&](double t) { return component_abs(m.at_polar(r, t), c); }, p, o,
                         grading_scale(m, r));
}

inline mean_result integral_mean(const analytic_series &a, double r, double p, const means_options &o = {})
{
    const double scale = a.is_polynomial() ? 0.0 : std::max(1.0 - r, 1e-15);
    return integral_mean([&](double t) { return std::abs(a.at_polar(r, t)); }, p, o, scale);
}

// Radius ladder r_k = 1 - 10^{-k}.
inline std::vector<double> radius_ladder(int k_min = 1, int k_max = 4)
{
    std::vector<double> r;
    for (int k = k_min; k <= k_max; ++k) {
        r.push_back(1.0 - std::pow(10.0, -k));
    }
    return r;
}

// QRMEANS_DEEP=1 selects the k = 1..6 ladder.
inline bool deep_mode_from_env()
{
    const char *e = std::getenv("QRMEANS_DEEP");
    return e != nullptr && std::string(e) == "1";
}

inline std::vector<double> default_ladder(bool deep)
{
    return radius_ladder(1, deep ? 6 : 4);
}

// M_p(r, f) over a radius x exponent grid.
struct means_table {
    std::vector<double> radii;
    std::vector<double> exponents;
    std::vector<std::vector<double>> values; // values[i][j] = M_{p_j}(r_i)
    std::size_t n_theta = 0;                 // largest rule used
    std::string target;
    bool monotone = true; // nondecreasing in r for each p

    [[nodiscard]] std::vector<double> column(std::size_t j) const
    {
        std::vector<double> c;
        for (const auto &row : values) {
            c.push_back(row.at(j));
        }
        return c;
    }
};

inline means_table make_means_table(const harmonic_map &m, component c, std::vector<double> radii,
                                    std::vector<double> exponents, std::string target,
                                    const means_options &o = {})
{
    means_table t;
    t.radii = std::move(radii);
    t.exponents = std::move(exponents);
    t.target = std::move(target);
    t.values.assign(t.radii.size(), std::vector<double>(t.exponents.size()));
    for (std::size_t i = 0; i < t.radii.size(); ++i) {
        for (std::size_t j = 0; j < t.exponents.size(); ++j) {
            const auto res = integral_mean(m, c, t.radii[i], t.exponents[j], o);
            t.values[i][j] = res.value;
            t.n_theta = std::max(t.n_theta, res.n_theta);
        }
    }
    for (std::size_t j = 0; j < t.exponents.size(); ++j) {
        for (std::size_t i = 1; i < t.radii.size(); ++i) {
            if (t.values[i][j] < t.values[i - 1][j] * (1.0 - 1e-12)) {
                t.monotone = false;
            }
        }
    }
    return t;
}

inline void write_csv(std::ostream &os, const means_table &t)
{
    os << "r,p,value,n_theta\n";
    os.precision(17);
    for (std::size_t i = 0; i < t.radii.size(); ++i) {
        for (std::size_t j = 0; j < t.exponents.size(); ++j) {
            os << t.radii[i] << ',';
            if (std::isinf(t.exponents[j])) {
                os << "inf";
            } else {
                os << t.exponents[j];
            }
            os << ',' << t.values[i][j] << ',' << t.n_theta << '\n';
        }
    }
}

inline nlohmann::ordered_json to_json(const means_table &t)
{
    nlohmann::ordered_json j;
    j["target"] = t.target;
    j["n_theta"] = t.n_theta;
    j["monotone"] = t.monotone;
    j["radii"] = t.radii;
    auto ex = nlohmann::ordered_json::array();
    for (double p : t.exponents) {
        if (std::isinf(p)) {
            ex.push_back("inf");
        } else {
            ex.push_back(p);
        }
    }
    j["exponents"] = ex;
    j["values"] = t.values;
    return j;
}

// Classification of a ladder sequence approaching the boundary.
struct ladder_trend {
    bool bounded = true;
    double increment_ratio = 0; // |Delta_last| / |Delta_prev|; 1 for log growth, > 1 for power growth
    double last_increment = 0;
};

// Bounded when the last increments decay geometrically (ratio <= max_ratio) or the
// last increment is negligible relative to the values.
inline ladder_trend analyze_ladder(std::span<const double> values, double max_ratio = 0.99,
                                   double negligible = 1e-12)
{
    ladder_trend tr;
    const std::size_t n = values.size();
    if (n < 3) {
        throw std::invalid_argument("analyze_ladder: need at least 3 ladder values");
    }
    if (!std::all_of(values.begin(), values.end(), [](double x) { return std::isfinite(x); })) {
        tr.bounded = false;
        tr.increment_ratio = p_infinity;
        tr.last_increment = p_infinity;
        return tr;
    }
    const double d1 = std::abs(values[n - 1] - values[n - 2]);
    const double d0 = std::abs(values[n - 2] - values[n - 3]);
    const double scale = std::max(std::abs(values[n - 1]), 1e-300);
    tr.last_increment = d1;
    if (d1 <= negligible * scale) {
        tr.increment_ratio = d0 > 0 ? d1 / d0 : 0.0;
        tr.bounded = true;
        return tr;
    }
    tr.increment_ratio = d0 > 0 ? d1 / d0 : p_infinity;
    tr.bounded = tr.increment_ratio <= max_ratio;
    return tr;
}

struct hardy_norm_result {
    double value = 0;
    double argmax_radius = 0;
    bool divergence_suspected = false; // last two values grew by more than the factor
    std::vector<double> sequence;
    std::optional<ladder_trend> trend; // when >= 3 radii
};

inline hardy_norm_result hardy_norm(const harmonic_map &m, component c, double p, std::span<const double> r_grid,
                                    double divergence_factor = 1.5, const means_options &o = {})
{
    if (r_grid.empty()) {
        throw std::invalid_argument("hardy_norm: empty radius grid");
    }
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        if (!(r_grid[i] < 1.0) || r_grid[i] < 0 || (i > 0 && !(r_grid[i] > r_grid[i - 1]))) {
            throw std::invalid_argument("hardy_norm: radii must be strictly increasing in [0,1)");
        }
    }
    hardy_norm_result res;
    for (double r : r_grid) {
        const double v = integral_mean(m, c, r, p, o).value;
        res.sequence.push_back(v);
        if (v > res.value || res.sequence.size() == 1) {
            res.value = v;
            res.argmax_radius = r;
        }
    }
    const std::size_t n = res.sequence.size();
    if (n >= 2) {
        const double a = res.sequence[n - 2];
        const double b = res.sequence[n - 1];
        res.divergence_suspected = !std::isfinite(b) || (a > 0 && b > divergence_factor * a);
    }
    if (n >= 3) {
        // Classified on M_p^p: same boundedness, without the 1/p power amplifying slow convergence.
        std::vector<double> powered(res.sequence);
        if (!std::isinf(p)) {
            for (double &x : powered) {
                x = std::pow(x, p);
            }
        }
        res.trend = analyze_ladder(powered);
    }
    return res;
}

enum class growth_model { log_power, inv_power };

struct growth_fit {
    double slope = 0;
    double intercept = 0;
    double max_residual = 0;
    bool degenerate = false;
};

// Least-squares slope of log M against log log(1/(1-r)) (log_power) or
// log(1/(1-r)) (inv_power).
inline growth_fit growth_exponent(std::span<const double> radii, std::span<const double> values, growth_model model)
{
    if (radii.size() != values.size()) {
        throw std::invalid_argument("growth_exponent: size mismatch");
    }
    if (radii.size() < 4) {
        throw std::invalid_argument("growth_exponent: need at least 4 radii");
    }
    std::vector<double> x, y;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double L = std::log(1.0 / (1.0 - radii[i]));
        if (!(values[i] > 0) || !(L > 0)) {
            throw std::invalid_argument("growth_exponent: values must be positive, radii in (0,1)");
        }
        x.push_back(model == growth_model::log_power ? std::log(L) : L);
        y.push_back(std::log(values[i]));
    }
    growth_fit fit;
    const double ymin = *std::min_element(y.begin(), y.end());
    const double ymax = *std::max_element(y.begin(), y.end());
    if (ymax - ymin <= 1e-14 * std::max(1.0, std::abs(ymax))) {
        fit.degenerate = true;
        fit.intercept = y.front();
        return fit;
    }
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < x.size(); ++i) {
        fit.max_residual = std::max(fit.max_residual, std::abs(y[i] - fit.intercept - fit.slope * x[i]));
    }
    return fit;
}

inline growth_fit growth_exponent(const means_table &t, std::size_t exponent_index, growth_model model)
{
    const auto col = t.column(exponent_index);
    return growth_exponent(t.radii, col, model);
}

// int_0^{2pi} |u| log+ |u| dtheta (not normalized), u = Re f, periodic trapezoid.
inline double zygmund_integral(const harmonic_map &m, double r, std::size_t n)
{
    if (!(std::abs(r) < 1.0)) {
        throw std::domain_error("zygmund_integral: |r| must be < 1");
    }
    if (n == 0) {
        throw std::invalid_argument("zygmund_integral: empty grid");
    }
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = 2.0 * pi * static_cast<double>(i) / static_cast<double>(n);
        const double u = std::abs(m.at_polar(r, t).real());
        if (u > 1.0) {
            s += u * std::log(u);
        }
    }
    return 2.0 * pi * s / static_cast<double>(n);
}

// Graded variant for maps carrying atoms singular at z = 1.
inline double zygmund_integral(const harmonic_map &m, double r, const means_options &o = {})
{
    if (!(std::abs(r) < 1.0)) {
        throw std::domain_error("zygmund_integral: |r| must be < 1");
    }
    auto F = [&](double t) {
        const double u = std::abs(m.at_polar(r, t).real());
        return u > 1.0 ? u * std::log(u) : 0.0;
    };
    return 2.0 * pi * circle_average(F, o, grading_scale(m, r)).value;
}

} // namespace qrmeans

#endif
