#ifndef QRMEANS_CORPUS_HPP
#define QRMEANS_CORPUS_HPP

// Seeded random corpora of polynomial maps. Draws use raw mt19937_64 output so the
// corpus is identical across standard library implementations.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <qrmeans/circle_means.hpp>
#include <qrmeans/conjugation.hpp>
#include <qrmeans/qr_profile.hpp>
#include <qrmeans/series.hpp>

namespace qrmeans
{

class corpus_rng
{
  public:
    explicit corpus_rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform on [0, 1) from the top 53 bits.
    double uniform()
    {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }
    double uniform(double a, double b)
    {
        return a + (b - a) * uniform();
    }
    // Uniform integer in [a, b].
    std::size_t integer(std::size_t a, std::size_t b)
    {
        return a + static_cast<std::size_t>(uniform() * static_cast<double>(b - a + 1));
    }
    cplx box()
    {
        const double x = uniform(-1.0, 1.0);
        return {x, uniform(-1.0, 1.0)};
    }

  private:
    std::mt19937_64 eng_;
};

struct named_map {
    std::string name;
    harmonic_map map;
    double K = 1;
    double Kprime = 0;
};

enum class origin_rule {
    free,         // keep the drawn constant term
    v_zero,       // Im f(0) = 0
    origin_angle, // arg f(0) = pi/2 + pi/p, so cos(p(arg f(0) - pi/2)) = -1
    sector_safe,  // arg f(0) = pi/2 + pi/p, range kept off the excluded arc around -i
};

struct corpus_options {
    std::uint64_t seed = 1;
    std::size_t count = 20;
    std::size_t max_degree = 32;
    double p_normalize = 2.0; // ||u||_p = 1 after normalization (p >= 1)
    origin_rule origin = origin_rule::v_zero;
    double sector_p = 2.0;    // p used by the sector-safe rule
};

// ||u||_p of a polynomial map, M_p(1, u) (|u|^p is subharmonic for p >= 1).
inline double boundary_norm(const harmonic_map &m, component c, double p, const means_options &o = {})
{
    if (!m.is_polynomial()) {
        throw std::invalid_argument("boundary_norm: polynomial maps only");
    }
    return integral_mean([&](double t) { return component_abs(m.at_polar(1.0, t), c); }, p, o).value;
}

inline harmonic_map scaled(const harmonic_map &m, double s)
{
    return {s * m.h(), s * m.g()};
}

namespace detail
{

inline analytic_series random_polynomial(corpus_rng &rng, std::size_t degree)
{
    std::vector<cplx> c(degree + 1);
    for (auto &x : c) {
        x = rng.box();
    }
    return analytic_series(std::move(c));
}

// Polynomial with sum |c_k| <= 1, hence sup_D |P| <= 1.
inline analytic_series random_unit_polynomial(corpus_rng &rng, std::size_t degree)
{
    std::vector<cplx> c(degree + 1);
    double s = 0;
    for (auto &x : c) {
        x = rng.box();
        s += std::abs(x);
    }
    for (auto &x : c) {
        x /= s;
    }
    return analytic_series(std::move(c));
}

inline double sector_offset(double p)
{
    return 0.5 * pi + pi / p;
}

// Angular room between arg f(0) = pi/2 + pi/p and the excluded arc, as a fraction of |f(0)|.
inline double sector_room(double p)
{
    return 0.5 * std::sin(std::min(0.5 * pi, pi - 1.5 * pi / p));
}

// Applies the origin rule to h (g(0) = 0 so f(0) = h(0)), then normalizes ||u||_p = 1.
inline harmonic_map finish_map(analytic_series h, analytic_series g, const corpus_options &o, corpus_rng &rng)
{
    const cplx c0 = h(0.0);
    switch (o.origin) {
    case origin_rule::free:
        break;
    case origin_rule::v_zero:
        h += analytic_series::constant(cplx(0.0, -c0.imag()));
        break;
    case origin_rule::origin_angle: {
        const double rho = std::abs(c0) > 0 ? std::abs(c0) : 1.0;
        h += analytic_series::constant(std::polar(rho, sector_offset(o.sector_p)) - c0);
        break;
    }
    case origin_rule::sector_safe: {
        // f = f0 + delta * (P - P(0)), sup |P - P(0)| <= 2.
        harmonic_map tmp(h - analytic_series::constant(c0), g);
        double sup = 0;
        qr_grid grid{16, 256, 0.999};
        grid.for_each([&](double r, double t) { sup = std::max(sup, std::abs(tmp.at_polar(r, t))); });
        for (double t = 0; t < 2.0 * pi; t += 2.0 * pi / 1024.0) {
            sup = std::max(sup, std::abs(tmp.at_polar(1.0, t)));
        }
        const double rho = 1.0 + rng.uniform();
        const double s = sup > 0 ? sector_room(o.sector_p) * rho / sup : 1.0;
        h = s * (h - analytic_series::constant(c0)) + analytic_series::constant(std::polar(rho, sector_offset(o.sector_p)));
        g = s * g;
        break;
    }
    }
    harmonic_map m(std::move(h), std::move(g));
    const double n = boundary_norm(m, component::u, o.p_normalize);
    if (!(n > 0)) {
        throw std::logic_error("corpus: degenerate map with u = 0");
    }
    return scaled(m, 1.0 / n);
}

} // namespace detail

// Analytic maps (g = 0): degree uniform in [1, max_degree], coefficients in the unit box.
inline std::vector<named_map> analytic_corpus(const corpus_options &o)
{
    corpus_rng rng(o.seed);
    std::vector<named_map> out;
    for (std::size_t i = 0; i < o.count; ++i) {
        const std::size_t d = rng.integer(1, o.max_degree);
        auto h = detail::random_polynomial(rng, d);
        if (h.degree() == 0) {
            h += analytic_series::monomial(1.0, 1);
        }
        out.push_back({"analytic-" + std::to_string(o.seed) + "-" + std::to_string(i),
                       detail::finish_map(std::move(h), analytic_series{}, o, rng), 1.0, 0.0});
    }
    return out;
}

struct qr_corpus_options {
    corpus_options base;
    double K = 1.2;
    double Kprime = 0; // > 0: add a perturbation, shrunk until min K' <= Kprime
    qr_grid grid{};
};

// h' = a (1 + w) with sum |w_k| <= 1/2, so |h'| >= |a|/2 and J >= 0 survives the perturbation.
inline std::vector<named_map> qr_corpus(const qr_corpus_options &o)
{
    if (!(o.K >= 1.0) || o.Kprime < 0) {
        throw std::invalid_argument("qr_corpus: need K >= 1, K' >= 0");
    }
    corpus_rng rng(o.base.seed);
    const double k = (o.K - 1.0) / (o.K + 1.0);
    std::vector<named_map> out;
    for (std::size_t i = 0; i < o.base.count; ++i) {
        const std::size_t d = rng.integer(1, o.base.max_degree);
        const cplx a = rng.box() + cplx(1.0, 0.0);
        auto w = detail::random_unit_polynomial(rng, d);
        w = 0.5 * (w - analytic_series::constant(w(0.0)));
        const auto dh = a * (analytic_series::constant(1.0) + w);
        analytic_series h = dh.antiderivative() + analytic_series::constant(rng.box());
        const auto omega = detail::random_unit_polynomial(rng, rng.integer(0, 4));
        const auto b = detail::random_unit_polynomial(rng, rng.integer(0, 4));
        auto gp = k * (omega * dh);
        harmonic_map m;
        double s = o.Kprime > 0 ? 0.25 * (1.0 - k) * std::abs(a) : 0.0;
        for (int attempt = 0;; ++attempt) {
            auto g = (gp + s * b).antiderivative();
            m = detail::finish_map(h, g, o.base, rng);
            if (o.Kprime == 0 || min_kprime(m, o.K, o.grid) <= o.Kprime || attempt > 40) {
                break;
            }
            s *= 0.5;
        }
        out.push_back({"qr-" + std::to_string(o.base.seed) + "-" + std::to_string(i), std::move(m), o.K, o.Kprime});
    }
    return out;
}

} // namespace qrmeans

#endif
