#ifndef QRMEANS_EXTREMAL_HPP
#define QRMEANS_EXTREMAL_HPP

// Sharpness witnesses: affine stretches f = alpha Re A + i beta Im A of
// A = e^{j pi i/2}(1-z)^{-j-1} and of Phi with Phi' = (1-z)^{-(1/p - eps)}, Phi(0) = 0.
// alpha = 2K/(K+1), beta = 2/(K+1), so the dilatation is (K-1)/(K+1) everywhere.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include <qrmeans/circle_means.hpp>
#include <qrmeans/conjugation.hpp>
#include <qrmeans/series.hpp>

namespace qrmeans
{

enum class extremal_family { hl_growth, hl_derivative };

inline const char *to_string(extremal_family f)
{
    return f == extremal_family::hl_growth ? "hl_growth" : "hl_derivative";
}

struct extremal_spec {
    extremal_family family = extremal_family::hl_growth;
    int j = 0;
    double K = 1;
    double p = 0.5;
    double epsilon = 0.05;
    std::optional<std::size_t> N; // truncate the generator instead of keeping it in closed form
};

// f = alpha Re A + i beta Im A as h + conj(g), g(0) = 0.
inline harmonic_map affine_stretch(const analytic_series &A, double K)
{
    if (!(K >= 1.0)) {
        throw std::invalid_argument("affine_stretch: K must be >= 1");
    }
    const double k = (K - 1.0) / (K + 1.0);
    const cplx a0 = A(0.0);
    analytic_series h = A + analytic_series::constant(k * std::conj(a0));
    analytic_series g = k * (A - analytic_series::constant(a0));
    return {std::move(h), std::move(g)};
}

inline analytic_series growth_generator(int j, std::optional<std::size_t> N = std::nullopt)
{
    if (j < 0) {
        throw std::invalid_argument("growth_generator: j must be >= 0");
    }
    const cplx w = std::polar(1.0, 0.5 * pi * j);
    const double alpha = j + 1.0;
    return N ? analytic_series::inv_power_truncated(alpha, *N, w) : analytic_series::inv_power(alpha, w);
}

// Phi with Phi' = (1-z)^{-(1/p - eps)} and Phi(0) = 0.
inline analytic_series derivative_generator(double p, double epsilon, std::optional<std::size_t> N = std::nullopt)
{
    if (!(p > 0 && p < 1)) {
        throw std::invalid_argument("derivative_generator: p must lie in (0,1)");
    }
    if (!(epsilon > 0 && epsilon < 1.0 / p - 1.0)) {
        throw std::invalid_argument("derivative_generator: need 0 < eps < 1/p - 1");
    }
    const double b = 1.0 / p - epsilon;
    const auto d = N ? analytic_series::inv_power_truncated(b, *N) : analytic_series::inv_power(b);
    return d.antiderivative();
}

inline harmonic_map build_extremal(const extremal_spec &s)
{
    if (s.family == extremal_family::hl_growth) {
        return affine_stretch(growth_generator(s.j, s.N), s.K);
    }
    return affine_stretch(derivative_generator(s.p, s.epsilon, s.N), s.K);
}

struct window {
    double lo = 1.0 / (2.0 * pi);
    double hi = 2.0 / pi;
};

struct growth_sharpness_report {
    int j = 0;
    double K = 1;
    double q = 1; // 1/(1+j)
    std::vector<double> radii;
    std::vector<double> I;          // (1/2pi) int |Im f|^q
    std::vector<double> ratio;      // I / log(1/(1-r))
    std::vector<double> normalized; // ratio / beta^q
    window bounds;
    double lower_slack = 0; // min normalized - lo
    double upper_slack = 0; // hi - max normalized
    bool pass = false;
};

namespace detail
{

inline growth_sharpness_report growth_ratio_ladder(const harmonic_map &m, int j, double K,
                                                   const std::vector<double> &ladder, window w, double scale,
                                                   const means_options &o)
{
    growth_sharpness_report rep;
    rep.j = j;
    rep.K = K;
    rep.q = 1.0 / (1.0 + j);
    rep.radii = ladder;
    rep.bounds = w;
    double lo = p_infinity, hi = -p_infinity;
    for (double r : ladder) {
        const double M = integral_mean(m, component::v, r, rep.q, o).value;
        const double I = std::pow(M, rep.q);
        const double ratio = I / std::log(1.0 / (1.0 - r));
        rep.I.push_back(I);
        rep.ratio.push_back(ratio);
        rep.normalized.push_back(ratio / scale);
        lo = std::min(lo, ratio / scale);
        hi = std::max(hi, ratio / scale);
    }
    rep.lower_slack = lo - w.lo;
    rep.upper_slack = w.hi - hi;
    rep.pass = rep.lower_slack >= 0 && rep.upper_slack >= 0;
    return rep;
}

} // namespace detail

// I(r) is measured after the shift v(0) = 0.
inline growth_sharpness_report sharpness_experiment_growth(int j, double K, const std::vector<double> &ladder,
                                                           window w = {}, const means_options &o = {})
{
    if (ladder.empty()) {
        throw std::invalid_argument("sharpness_experiment_growth: empty ladder");
    }
    auto m = build_extremal({extremal_family::hl_growth, j, K, 0.5, 0.05, std::nullopt});
    normalize_v0(m);
    const double beta = 2.0 / (K + 1.0);
    return detail::growth_ratio_ladder(m, j, K, ladder, w, std::pow(beta, 1.0 / (1.0 + j)), o);
}

// Same pipeline on f = i (Im f = 1): the ratio decays like 1/log and must leave the window.
inline growth_sharpness_report growth_control(const std::vector<double> &ladder, window w = {},
                                              const means_options &o = {})
{
    const harmonic_map m(analytic_series::constant(cplx(0.0, 1.0)), analytic_series{});
    return detail::growth_ratio_ladder(m, 0, 1.0, ladder, w, 1.0, o);
}

struct derivative_sharpness_report {
    double p = 0.5;
    double epsilon = 0.05;
    double K = 1;
    double q = 1;                      // p/(1-p)
    std::optional<double> predicted;   // 1/(1/p - eps - 1), blow-up threshold of the witness
    std::vector<double> radii;
    std::vector<double> grad_means;    // M_p(r, |grad u|)
    bool grad_bounded = false;
    double grad_increment_ratio = 0;
    std::optional<double> critical;    // empirical critical exponent (nullopt: no crossing)
    double bracket_lo = 0;
    double bracket_hi = 0;
    std::size_t evaluations = 0;
};

// Increment ratio of M_q'(r, f)^q' on the last three ladder radii; > 1 means blow-up.
inline double blowup_ratio(const harmonic_map &m, double q, const std::vector<double> &ladder,
                           const means_options &o = {})
{
    if (ladder.size() < 3) {
        throw std::invalid_argument("blowup_ratio: need at least 3 ladder radii");
    }
    std::vector<double> v;
    for (std::size_t i = ladder.size() - 3; i < ladder.size(); ++i) {
        v.push_back(std::pow(integral_mean(m, component::f, ladder[i], q, o).value, q));
    }
    return analyze_ladder(v).increment_ratio;
}

struct critical_search {
    std::optional<double> critical;
    double lo = 0;
    double hi = 0;
    std::size_t evaluations = 0;
};

// Bisection for the blow-up threshold of M_q'(r, m) over q' in [lo, hi].
inline critical_search find_critical_exponent(const harmonic_map &m, double lo, double hi,
                                              const std::vector<double> &ladder, double tol = 1e-3,
                                              const means_options &o = {})
{
    critical_search cs;
    auto blows = [&](double q) {
        ++cs.evaluations;
        return blowup_ratio(m, q, ladder, o) > 1.0;
    };
    cs.lo = lo;
    cs.hi = hi;
    if (blows(lo) || !blows(hi)) {
        return cs;
    }
    while (cs.hi - cs.lo > tol) {
        const double mid = 0.5 * (cs.lo + cs.hi);
        (blows(mid) ? cs.hi : cs.lo) = mid;
    }
    cs.critical = 0.5 * (cs.lo + cs.hi);
    return cs;
}

inline derivative_sharpness_report sharpness_experiment_derivative(double p, double epsilon, double K,
                                                                   const std::vector<double> &ladder,
                                                                   const means_options &o = {})
{
    derivative_sharpness_report rep;
    rep.p = p;
    rep.epsilon = epsilon;
    rep.K = K;
    rep.q = p / (1.0 - p);
    rep.radii = ladder;
    const auto m = build_extremal({extremal_family::hl_derivative, 0, K, p, epsilon, std::nullopt});
    const double s = 1.0 / p - epsilon - 1.0;
    if (s > 0) {
        rep.predicted = 1.0 / s;
    }
    // |grad u| = |F1'| with F1 = h + g.
    const auto dF1 = (m.h() + m.g()).derivative();
    for (double r : ladder) {
        rep.grad_means.push_back(integral_mean(dF1, r, p, o).value);
    }
    if (rep.grad_means.size() >= 3) {
        std::vector<double> powered;
        for (double x : rep.grad_means) {
            powered.push_back(std::pow(x, p));
        }
        const auto tr = analyze_ladder(powered);
        rep.grad_bounded = tr.bounded;
        rep.grad_increment_ratio = tr.increment_ratio;
    }
    const auto cs = find_critical_exponent(m, 0.5 * rep.q, 2.0 * rep.q, ladder, 1e-3, o);
    rep.critical = cs.critical;
    rep.bracket_lo = cs.lo;
    rep.bracket_hi = cs.hi;
    rep.evaluations = cs.evaluations;
    return rep;
}

// f = z: every mean is bounded, so no crossing exists in [q/2, 2q].
inline critical_search derivative_control(double q, const std::vector<double> &ladder, const means_options &o = {})
{
    const harmonic_map m(analytic_series::monomial(1.0, 1), analytic_series{});
    return find_critical_exponent(m, 0.5 * q, 2.0 * q, ladder, 1e-3, o);
}

inline nlohmann::ordered_json to_json(const growth_sharpness_report &r)
{
    return {{"family", "hl_growth"},
            {"j", r.j},
            {"K", r.K},
            {"q", r.q},
            {"radii", r.radii},
            {"I", r.I},
            {"ratio", r.ratio},
            {"normalized_ratio", r.normalized},
            {"window", {r.bounds.lo, r.bounds.hi}},
            {"lower_slack", r.lower_slack},
            {"upper_slack", r.upper_slack},
            {"pass", r.pass}};
}

inline nlohmann::ordered_json to_json(const derivative_sharpness_report &r)
{
    nlohmann::ordered_json j{{"family", "hl_derivative"},
                             {"p", r.p},
                             {"epsilon", r.epsilon},
                             {"K", r.K},
                             {"q", r.q},
                             {"radii", r.radii},
                             {"grad_means", r.grad_means},
                             {"grad_bounded", r.grad_bounded},
                             {"grad_increment_ratio", r.grad_increment_ratio}};
    j["predicted_threshold"] = r.predicted ? nlohmann::ordered_json(*r.predicted) : nlohmann::ordered_json("none");
    j["critical_exponent"] = r.critical ? nlohmann::ordered_json(*r.critical) : nlohmann::ordered_json("none");
    j["bracket"] = {r.bracket_lo, r.bracket_hi};
    j["evaluations"] = r.evaluations;
    return j;
}

} // namespace qrmeans

#endif
