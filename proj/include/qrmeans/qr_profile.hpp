#ifndef QRMEANS_QR_PROFILE_HPP
#define QRMEANS_QR_PROFILE_HPP

// Grid certification of (K,K')-quasiregularity: Lambda^2 <= K J + K', J >= 0.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include <qrmeans/conjugation.hpp>
#include <qrmeans/series.hpp>

namespace qrmeans
{

// Polar lattice: radii r_max * sin(pi i / (2(n-1))), i = 0..n-1 (Chebyshev clustering
// toward r_max), times uniform angles.
struct qr_grid {
    std::size_t n_radii = 64;
    std::size_t n_angles = 1024;
    double r_max = 0.999;

    [[nodiscard]] std::vector<double> radii() const
    {
        if (!(r_max < 1.0) || r_max <= 0 || n_radii < 2 || n_angles == 0) {
            throw std::invalid_argument("qr_grid: need 0 < r_max < 1, n_radii >= 2, n_angles >= 1");
        }
        std::vector<double> r(n_radii);
        for (std::size_t i = 0; i < n_radii; ++i) {
            r[i] = r_max * std::sin(0.5 * pi * static_cast<double>(i) / static_cast<double>(n_radii - 1));
        }
        r.back() = r_max;
        return r;
    }

    [[nodiscard]] double angle(std::size_t j) const
    {
        return 2.0 * pi * static_cast<double>(j) / static_cast<double>(n_angles);
    }

    // Calls fn(r, theta) at every lattice point (the origin once).
    template <typename Fn>
    void for_each(Fn &&fn) const
    {
        const auto rs = radii();
        for (double r : rs) {
            if (r == 0.0) {
                fn(0.0, 0.0);
                continue;
            }
            for (std::size_t j = 0; j < n_angles; ++j) {
                fn(r, angle(j));
            }
        }
    }
};

inline nlohmann::ordered_json to_json(const qr_grid &g)
{
    return {{"n_radii", g.n_radii}, {"n_angles", g.n_angles}, {"r_max", g.r_max}};
}

inline constexpr double qr_certification_tol = 1e-9;

struct qr_profile {
    double K = 1;
    double Kprime = 0;
    qr_grid grid;
    double max_violation = 0;          // sup_grid Lambda^2 - K J - K'
    double max_relative_violation = 0; // sup_grid (Lambda^2 - K J - K') / max(1, Lambda^2)
    double min_jacobian = 0;
    bool negative_jacobian = false;
    cplx worst_point{};

    [[nodiscard]] double mu1() const
    {
        return (K - 1.0) / (K + 1.0);
    }
    [[nodiscard]] double mu2() const
    {
        return std::sqrt(Kprime) / (1.0 + K);
    }
    [[nodiscard]] bool certified(double tol = qr_certification_tol) const
    {
        return !negative_jacobian && max_relative_violation <= tol;
    }
};

inline nlohmann::ordered_json to_json(const qr_profile &p)
{
    return {{"K", p.K},
            {"Kprime", p.Kprime},
            {"max_violation", p.max_violation},
            {"max_relative_violation", p.max_relative_violation},
            {"min_jacobian", p.min_jacobian},
            {"negative_jacobian", p.negative_jacobian},
            {"mu1", p.mu1()},
            {"mu2", p.mu2()},
            {"certified", p.certified()},
            {"grid", to_json(p.grid)}};
}

namespace detail
{

inline bool jacobian_negative(const point_diff &d)
{
    const double scale = std::norm(d.fz) + std::norm(d.fzbar);
    return d.J < -1e-13 * scale;
}

} // namespace detail

inline qr_profile check_qr(const harmonic_map &m, double K, double Kprime, const qr_grid &grid = {})
{
    if (!(K >= 1.0) || !(Kprime >= 0.0)) {
        throw std::invalid_argument("check_qr: need K >= 1, K' >= 0");
    }
    qr_profile prof;
    prof.K = K;
    prof.Kprime = Kprime;
    prof.grid = grid;
    prof.max_violation = -std::numeric_limits<double>::infinity();
    prof.max_relative_violation = -std::numeric_limits<double>::infinity();
    prof.min_jacobian = std::numeric_limits<double>::infinity();
    grid.for_each([&](double r, double t) {
        const auto d = m.diff_polar(r, t);
        const double viol = d.Lambda * d.Lambda - K * d.J - Kprime;
        if (viol > prof.max_violation) {
            prof.max_violation = viol;
            prof.worst_point = std::polar(r, t);
        }
        prof.max_relative_violation =
            std::max(prof.max_relative_violation, viol / std::max(1.0, d.Lambda * d.Lambda));
        prof.min_jacobian = std::min(prof.min_jacobian, d.J);
        if (detail::jacobian_negative(d)) {
            prof.negative_jacobian = true;
        }
    });
    return prof;
}

// sup over the grid of (Lambda^2 - K J)^+.
inline double min_kprime(const harmonic_map &m, double K, const qr_grid &grid = {})
{
    if (!(K >= 1.0)) {
        throw std::invalid_argument("min_kprime: K must be >= 1");
    }
    double best = 0;
    grid.for_each([&](double r, double t) {
        const auto d = m.diff_polar(r, t);
        best = std::max(best, d.Lambda * d.Lambda - K * d.J);
    });
    return best;
}

struct dilatation_report {
    double g_deficit = 0;  // sup |g'| - mu1 |h'| - mu2
    double F2_deficit = 0; // sup |F2'| - K |F1'| - sqrt(K')
    bool profile_certified = false;
};

inline dilatation_report dilatation_bound_check(const harmonic_map &m, const qr_profile &profile,
                                                const qr_grid &grid = {})
{
    dilatation_report rep;
    rep.profile_certified = profile.certified();
    rep.g_deficit = -std::numeric_limits<double>::infinity();
    rep.F2_deficit = -std::numeric_limits<double>::infinity();
    const double mu1 = profile.mu1();
    const double mu2 = profile.mu2();
    const double sk = std::sqrt(profile.Kprime);
    grid.for_each([&](double r, double t) {
        const cplx hp = m.dh().at_polar(r, t);
        const cplx gp = m.dg().at_polar(r, t);
        rep.g_deficit = std::max(rep.g_deficit, std::abs(gp) - mu1 * std::abs(hp) - mu2);
        rep.F2_deficit = std::max(rep.F2_deficit, std::abs(hp - gp) - profile.K * std::abs(hp + gp) - sk);
    });
    return rep;
}

struct synthesized_map {
    harmonic_map map;
    qr_profile profile;
};

// Builds g' = k * omega * h' + s * b with g(0) = 0; certified by direct grid evaluation.
inline synthesized_map synthesize_qr(const analytic_series &h, double k, const analytic_series &omega,
                                     std::optional<std::pair<analytic_series, double>> perturb = std::nullopt,
                                     const qr_grid &grid = {})
{
    if (!(k >= 0.0 && k < 1.0)) {
        throw std::invalid_argument("synthesize_qr: k must lie in [0,1)");
    }
    double sup_omega = 0;
    grid.for_each([&](double r, double t) { sup_omega = std::max(sup_omega, std::abs(omega.at_polar(r, t))); });
    if (sup_omega > 1.0 + 1e-12) {
        throw std::invalid_argument("synthesize_qr: omega exceeds unit modulus on the grid");
    }
    analytic_series gp = k * (omega * h.derivative());
    double s = 0;
    if (perturb) {
        s = perturb->second;
        if (s < 0) {
            throw std::invalid_argument("synthesize_qr: perturbation scale must be >= 0");
        }
        gp += s * perturb->first;
    }
    harmonic_map m(h, gp.antiderivative());
    const double K = (1.0 + k) / (1.0 - k);
    const double Kp = s == 0.0 ? 0.0 : min_kprime(m, K, grid);
    auto prof = check_qr(m, K, Kp, grid);
    return {std::move(m), prof};
}

struct sector_flags {
    std::optional<bool> origin_condition; // origin_value <= 0; nullopt when f(0) = 0
    double origin_value = 0;              // cos(p(arg f(0) - pi/2))
    bool in_sector = true;                // arg f in [-(p-1)pi/(2p), (3p-1)pi/(2p)] on the grid
    bool inside_unit_disk = true;
    std::size_t zero_values = 0; // grid points with f = 0 (argument undefined)
    cplx worst_point{};
    double worst_margin = std::numeric_limits<double>::infinity(); // distance of arg to the excluded arc
};

// Sector argument of w in the branch [-(p-1)pi/(2p), -(p-1)pi/(2p) + 2pi).
inline double sector_argument(cplx w, double p)
{
    const double lo = -(p - 1.0) * pi / (2.0 * p);
    double a = std::arg(w);
    if (a < lo) {
        a += 2.0 * pi;
    }
    return a;
}

inline sector_flags sector_hypotheses(const harmonic_map &m, double p, const qr_grid &grid = {})
{
    if (!(p >= 2.0)) {
        throw std::invalid_argument("sector_hypotheses: p must be >= 2");
    }
    sector_flags fl;
    const cplx f0 = m(0.0);
    if (f0 != cplx{}) {
        fl.origin_value = std::cos(p * (std::arg(f0) - 0.5 * pi));
        fl.origin_condition = fl.origin_value <= 1e-12;
    }
    const double lo = -(p - 1.0) * pi / (2.0 * p);
    const double hi = (3.0 * p - 1.0) * pi / (2.0 * p);
    grid.for_each([&](double r, double t) {
        const cplx w = m.at_polar(r, t);
        if (std::abs(w) >= 1.0) {
            fl.inside_unit_disk = false;
        }
        if (w == cplx{}) {
            ++fl.zero_values;
            return;
        }
        const double a = sector_argument(w, p);
        const double margin = std::min(a - lo, hi - a);
        if (margin < fl.worst_margin) {
            fl.worst_margin = margin;
            fl.worst_point = std::polar(r, t);
        }
        if (a > hi) {
            fl.in_sector = false;
        }
    });
    return fl;
}

} // namespace qrmeans

#endif
