#ifndef QRMEANS_SECTOR_PHI_HPP
#define QRMEANS_SECTOR_PHI_HPP

// The homogeneous subharmonic sector function Phi_p(r e^{it}) = r^p phi(t), the
// auxiliary F_p = Re(-(-i f)^p), the four pointwise inequalities relating
// |Im z|^p, |z|^p, |Re z|^p and Phi_p, and the Green representation used to
// turn them into norm inequalities.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <qrmeans/circle_means.hpp>
#include <qrmeans/constants.hpp>
#include <qrmeans/quadrature.hpp>
#include <qrmeans/series.hpp>

namespace qrmeans
{

struct even_check {
    bool even = false;
    bool snapped = false; // p was within 1e-12 of an even integer but not equal
};

inline even_check even_integer_check(double p)
{
    const double n = 2.0 * std::round(0.5 * p);
    if (p == n) {
        return {true, false};
    }
    if (std::abs(p - n) <= 1e-12) {
        return {true, true};
    }
    return {false, false};
}

inline bool is_integer(double p)
{
    return p == std::round(p);
}

namespace detail
{

inline void check_sector_exponent(double p)
{
    if (!(p >= 2.0) || !std::isfinite(p)) {
        throw std::invalid_argument("sector function: p must be >= 2");
    }
}

// Wrap into [-pi, pi].
inline double wrap_angle(double t)
{
    if (t >= -pi && t <= pi) {
        return t;
    }
    double w = std::remainder(t, 2.0 * pi);
    return w;
}

} // namespace detail

// phi(t): -cos p(pi/2 - |t|) on pi/2 - pi/p <= |t| <= pi/2,
// max{|cos p(pi/2 - t)|, |cos p(pi/2 + t)|} on |t| < pi/2 - pi/p,
// phi(pi - |t|) on pi/2 <= |t| <= pi.
inline double phi_angle(double p, double t)
{
    detail::check_sector_exponent(p);
    double a = std::abs(detail::wrap_angle(t));
    if (a > 0.5 * pi) {
        a = pi - a;
    }
    const double seam = 0.5 * pi - pi / p;
    auto outer = [&] { return -std::cos(p * (0.5 * pi - a)); };
    auto inner = [&] {
        return std::max(std::abs(std::cos(p * (0.5 * pi - a))), std::abs(std::cos(p * (0.5 * pi + a))));
    };
    if (std::abs(a - seam) <= 1e-12) {
        const double x = outer();
        const double y = inner();
        if (std::abs(x - y) > 1e-9) {
            throw std::logic_error("phi_angle: branches disagree at the seam");
        }
        return std::max(x, y);
    }
    return a > seam ? outer() : inner();
}

// Phi_p(z) = |z|^p phi(arg z).
inline double sector_phi(double p, cplx z)
{
    if (z == cplx{}) {
        detail::check_sector_exponent(p);
        return 0.0;
    }
    return std::pow(std::abs(z), p) * phi_angle(p, std::arg(z));
}

// Admissible arguments for the second and fourth inequalities.
struct angle_interval {
    double lo = -pi;
    double hi = pi;
};

inline angle_interval lemma_angle_set(double p)
{
    if (even_integer_check(p).even) {
        return {-pi, pi};
    }
    return {-0.5 * pi + pi / p, 1.5 * pi - pi / p};
}

// -(-i w)^p on the principal branch; throws when -i w lies on (-inf, 0) for
// non-integer p.
inline cplx rotated_power(cplx w, double p)
{
    const cplx x = cplx(0.0, -1.0) * w;
    if (x == cplx{}) {
        return {};
    }
    if (!is_integer(p) && x.imag() == 0.0 && x.real() < 0.0) {
        std::ostringstream os;
        os << "F_p: -i f = " << x.real() << " lies on the branch cut";
        throw std::domain_error(os.str());
    }
    return -std::pow(std::abs(x), p) * std::polar(1.0, p * std::arg(x));
}

inline double F_p_value(cplx w, double p)
{
    return rotated_power(w, p).real();
}

inline double F_p_eval(const harmonic_map &m, double p, cplx z)
{
    detail::check_sector_exponent(p);
    const cplx w = m(z);
    try {
        return F_p_value(w, p);
    } catch (const std::domain_error &) {
        std::ostringstream os;
        os << "F_p_eval: branch violation at z = (" << z.real() << ", " << z.imag() << ")";
        throw std::domain_error(os.str());
    }
}

struct lemma_grid {
    std::vector<double> radii{0.5, 1.0, 2.0};
    std::size_t n_angles = 10000;
};

struct lemma_report {
    double max_deficit = -std::numeric_limits<double>::infinity(); // LHS - RHS
    double max_scaled_deficit = -std::numeric_limits<double>::infinity(); // deficit / max(1, r^p)
    cplx argmax{};
    angle_interval angles;
};

// Deficit LHS - RHS of inequality `which` at z = r e^{it} (t taken literally).
inline double lemma_deficit(double p, int which, double r, double t, const lemma_set &L)
{
    const double rp = std::pow(r, p);
    const double re = rp * std::pow(std::abs(std::cos(t)), p);
    const double im = rp * std::pow(std::abs(std::sin(t)), p);
    switch (which) {
    case 1:
        return im - (L.a * re - L.b * rp * phi_angle(p, t));
    case 2:
        return im - (L.a * re + L.b * rp * std::cos(p * (0.5 * pi - t)));
    case 3:
        return rp - (L.m * re - L.n * rp * phi_angle(p, t));
    case 4:
        return rp - (L.m * re + L.n * rp * std::cos(p * (0.5 * pi - t)));
    default:
        throw std::invalid_argument("lemma_check: inequality index must be 1..4");
    }
}

inline lemma_report lemma_check(double p, int which, const lemma_grid &grid = {})
{
    detail::check_sector_exponent(p);
    if (which < 1 || which > 4) {
        throw std::invalid_argument("lemma_check: inequality index must be 1..4");
    }
    if (grid.n_angles < 2) {
        throw std::invalid_argument("lemma_check: need at least 2 angles");
    }
    const auto L = lemma_constants(p);
    lemma_report rep;
    rep.angles = (which == 2 || which == 4) ? lemma_angle_set(p) : angle_interval{-pi, pi};
    for (double r : grid.radii) {
        const double scale = std::max(1.0, std::pow(r, p));
        for (std::size_t i = 0; i < grid.n_angles; ++i) {
            const double t = rep.angles.lo
                             + (rep.angles.hi - rep.angles.lo) * static_cast<double>(i)
                                   / static_cast<double>(grid.n_angles - 1);
            const double d = lemma_deficit(p, which, r, t, L);
            if (d > rep.max_deficit) {
                rep.max_deficit = d;
                rep.argmax = std::polar(r, t);
            }
            rep.max_scaled_deficit = std::max(rep.max_scaled_deficit, d / scale);
        }
    }
    return rep;
}

struct green_spec {
    std::size_t n_angles = 1024;
    std::size_t n_radial = 512;
    double tol = 1e-8;            // agreement of radial refinements
    std::size_t max_radial = 4096;
};

struct green_report {
    double residual = 0;        // |F(0) - mean_T F + (1/2) int Lap F log(1/|z|) dA|
    double center = 0;          // F(0)
    double boundary_mean = 0;   // (1/2pi) int F(e^{it}) dt
    double correction = 0;      // (1/2) int Lap F log(1/|z|) dA, dA = dxdy/pi
    double refinement_diff = 0; // change of the correction under radial doubling
    std::size_t n_radial = 0;
    bool converged = true;
};

// F and its Laplacian must be evaluable on the closed disk.
inline green_report green_identity_residual(const std::function<double(cplx)> &F,
                                            const std::function<double(cplx)> &lapF, const green_spec &spec = {})
{
    const auto ang = uniform_circle(spec.n_angles);
    auto angular_mean = [&](const std::function<double(cplx)> &G, double r) {
        double s = 0;
        for (std::size_t i = 0; i < ang.size(); ++i) {
            s += ang.weight[i] * G(std::polar(r, ang.theta[i]));
        }
        return s;
    };
    // (1/2)(1/pi) int_0^{2pi} int_0^1 Lap F log(1/r) r dr dt = int_0^1 r log(1/r) mean_t(Lap F) dr
    auto correction = [&](std::size_t nr) {
        const auto gl = gauss_legendre(nr, 0.0, 1.0);
        double s = 0;
        for (std::size_t i = 0; i < gl.size(); ++i) {
            const double r = gl.nodes[i];
            s += gl.weights[i] * r * std::log(1.0 / r) * angular_mean(lapF, r);
        }
        return s;
    };
    green_report rep;
    rep.center = F(0.0);
    rep.boundary_mean = angular_mean(F, 1.0);
    std::size_t nr = spec.n_radial;
    double prev = correction(nr);
    double cur = prev;
    rep.converged = false;
    while (2 * nr <= spec.max_radial) {
        cur = correction(2 * nr);
        rep.refinement_diff = std::abs(cur - prev);
        nr *= 2;
        if (rep.refinement_diff <= spec.tol) {
            rep.converged = true;
            break;
        }
        prev = cur;
    }
    if (!rep.converged && spec.max_radial < 2 * spec.n_radial) {
        rep.converged = true; // no refinement requested
    }
    rep.n_radial = nr;
    rep.correction = cur;
    rep.residual = std::abs(rep.center - rep.boundary_mean + rep.correction);
    return rep;
}

// Pointwise Laplacian data for F_p and the chain of majorants
// |Lap F_p| <= 4p(p-1)R^{p-2}|g'h'| <= 4kp(p-1)R^{p-2}|h'|^2
//           <= 4kp(p-1)c_p(|u|^{p-2}+|v|^{p-2})|h'|^2 <= (K^2-1)c_p(Lap|u|^p + Lap|v|^p).
struct laplacian_report {
    double value = 0;          // Lap F_p (signed)
    double exact = 0;          // |Lap F_p|
    double fut_bound = 0;      // 4p(p-1)R^{p-2}|g'h'|
    double dilatation_bound = 0; // 4kp(p-1)R^{p-2}|h'|^2
    double split_bound = 0;    // 4kp(p-1)c_p(|u|^{p-2}+|v|^{p-2})|h'|^2
    double majorant = 0;       // (K^2-1)c_p(Lap|u|^p + Lap|v|^p)
    double lap_u_p = 0;        // p(p-1)|grad u|^2 |u|^{p-2}
    double lap_v_p = 0;
    bool degenerate = false;   // f, u or v vanishes here
};

namespace detail
{

// x^{p-2} for x >= 0, p >= 2, continuous extension 0^0 = 1.
inline double pow_pm2(double x, double p)
{
    if (p == 2.0) {
        return 1.0;
    }
    return std::pow(x, p - 2.0);
}

} // namespace detail

inline laplacian_report laplacian_F_p(const harmonic_map &m, double p, cplx z, double K = 1.0)
{
    detail::check_sector_exponent(p);
    const cplx w = m(z);
    const cplx hp = m.dh()(z);
    const cplx gp = m.dg()(z);
    const double R = std::abs(w);
    const double u = std::abs(w.real());
    const double v = std::abs(w.imag());
    laplacian_report rep;
    rep.degenerate = R == 0.0 || u == 0.0 || v == 0.0;
    // Lap Psi(f) = 4 Psi''(f) f_z f_zbar with Psi(w) = -(-iw)^p, Psi'' = p(p-1)(-iw)^{p-2}.
    cplx second{};
    if (p == 2.0) {
        second = 2.0;
    } else if (R > 0) {
        second = -p * (p - 1.0) * rotated_power(w, p - 2.0);
    }
    rep.value = (4.0 * second * hp * std::conj(gp)).real();
    rep.exact = std::abs(rep.value);
    const double k = (K - 1.0) / (K + 1.0);
    const double cp = splitting_constant(p);
    const double pp = p * (p - 1.0);
    rep.fut_bound = 4.0 * pp * detail::pow_pm2(R, p) * std::abs(gp * hp);
    rep.dilatation_bound = 4.0 * k * pp * detail::pow_pm2(R, p) * std::norm(hp);
    rep.split_bound = 4.0 * k * pp * cp * (detail::pow_pm2(u, p) + detail::pow_pm2(v, p)) * std::norm(hp);
    rep.lap_u_p = pp * std::norm(hp + gp) * detail::pow_pm2(u, p);
    rep.lap_v_p = pp * std::norm(hp - gp) * detail::pow_pm2(v, p);
    rep.majorant = (K * K - 1.0) * cp * (rep.lap_u_p + rep.lap_v_p);
    return rep;
}

// Green identity for F_p of a polynomial map (boundary values on |z| = 1).
inline green_report green_identity_residual(const harmonic_map &m, double p, const green_spec &spec = {})
{
    if (!m.is_polynomial()) {
        throw std::invalid_argument("green: boundary evaluation needs a polynomial map");
    }
    detail::check_sector_exponent(p);
    auto F = [&](cplx z) { return F_p_value(m(z), p); };
    auto L = [&](cplx z) { return laplacian_F_p(m, p, z).value; };
    return green_identity_residual(F, L, spec);
}

struct meanvalue_report {
    double lhs = 0; // circle mean of Phi_p(f) at radius r
    double rhs = 0; // Phi_p(f(0))
    double slack = 0;
    bool holds = false;
};

inline meanvalue_report meanvalue_hypothesis(const harmonic_map &m, double p, double r, double tol = 1e-9,
                                             const means_options &o = {})
{
    detail::check_sector_exponent(p);
    if (!(r < 1.0) || r < 0) {
        throw std::invalid_argument("meanvalue_hypothesis: radius must lie in [0,1)");
    }
    meanvalue_report rep;
    rep.lhs = circle_average([&](double t) { return sector_phi(p, m.at_polar(r, t)); }, o, grading_scale(m, r))
                  .value;
    rep.rhs = sector_phi(p, m(0.0));
    rep.slack = rep.lhs - rep.rhs;
    rep.holds = rep.slack >= -tol;
    return rep;
}

// Small-circle mean of Phi_p minus its center value.
inline double phi_subharmonic_probe(double p, cplx z, double rho = 1e-3, std::size_t n = 4096)
{
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) {
        s += sector_phi(p, z + std::polar(rho, 2.0 * pi * static_cast<double>(i) / static_cast<double>(n)));
    }
    return s / static_cast<double>(n) - sector_phi(p, z);
}

} // namespace qrmeans

#endif
