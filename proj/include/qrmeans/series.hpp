#ifndef QRMEANS_SERIES_HPP
#define QRMEANS_SERIES_HPP

// Analytic atoms and harmonic mappings f = h + conj(g) on the unit disk.
//
// An analytic_series is a polynomial part plus an optional list of closed-form
// singular atoms w * (1 - z)^(-alpha). Both parts have exact Taylor
// coefficients; the atoms are evaluated in closed form so that radii very
// close to the boundary stay meaningful.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qrmeans
{

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

// weight * (1 - z)^(-alpha), principal branch (1 - z has positive real part in the disk).
struct power_term {
    cplx weight{};
    double alpha = 0;

    friend bool operator==(const power_term &, const power_term &) = default;
};

namespace detail
{

// 1 - r e^{i theta} without cancellation near theta = 0, r = 1.
inline cplx one_minus_polar(double r, double theta)
{
    const double s = std::sin(0.5 * theta);
    return {(1.0 - r) + 2.0 * r * s * s, -r * std::sin(theta)};
}

inline cplx horner(std::span<const cplx> c, cplx z)
{
    cplx acc{};
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

inline bool all_finite(std::span<const cplx> c)
{
    return std::all_of(c.begin(), c.end(),
                       [](cplx a) { return std::isfinite(a.real()) && std::isfinite(a.imag()); });
}

} // namespace detail

// Taylor coefficients of (1 - z)^(-alpha) up to degree n:
// c_0 = 1, c_{k+1} = c_k (k + alpha) / (k + 1).
inline std::vector<double> binomial_coefficients(double alpha, std::size_t n)
{
    std::vector<double> c(n + 1);
    c[0] = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        c[k + 1] = c[k] * (static_cast<double>(k) + alpha) / static_cast<double>(k + 1);
    }
    return c;
}

// Smallest N with tail sum_{k>N} |c_k| r^k below tol for (1-z)^(-alpha), capped.
// The tail is bounded by the geometric majorant |c_{N+1}| r^{N+1} / (1 - r q) once
// the coefficient ratio q = (k+alpha)/(k+1) has settled.
inline std::size_t tail_degree(double alpha, double r_max = 0.999, double tol = 1e-10,
                               std::size_t cap = 200000)
{
    double c = 1.0;
    double rk = 1.0;
    for (std::size_t k = 0; k < cap; ++k) {
        const double q = (static_cast<double>(k) + alpha) / static_cast<double>(k + 1);
        const double next = c * q;
        const double rnext = rk * r_max;
        const double qr = std::abs(q) * r_max;
        if (k > static_cast<std::size_t>(std::abs(alpha)) + 1 && qr < 1.0) {
            const double bound = std::abs(next) * rnext / (1.0 - qr);
            if (bound < tol) {
                return k;
            }
        }
        c = next;
        rk = rnext;
    }
    return cap;
}

class analytic_series
{
public:
    analytic_series() = default;

    explicit analytic_series(std::vector<cplx> coeffs, std::vector<power_term> terms = {})
        : coeffs_(std::move(coeffs)), terms_(std::move(terms))
    {
        if (!detail::all_finite(coeffs_)) {
            throw std::invalid_argument("analytic_series: non-finite coefficient");
        }
        for (const auto &t : terms_) {
            if (!std::isfinite(t.alpha) || !std::isfinite(t.weight.real())
                || !std::isfinite(t.weight.imag())) {
                throw std::invalid_argument("analytic_series: non-finite power term");
            }
        }
        trim();
    }

    static analytic_series constant(cplx c)
    {
        return analytic_series(std::vector<cplx>{c});
    }

    static analytic_series monomial(cplx c, std::size_t n)
    {
        std::vector<cplx> a(n + 1);
        a[n] = c;
        return analytic_series(std::move(a));
    }

    // weight * (1 - z)^(-alpha) in closed form.
    static analytic_series inv_power(double alpha, cplx weight = 1.0)
    {
        if (alpha == 0.0) {
            return constant(weight);
        }
        return analytic_series({}, {power_term{weight, alpha}});
    }

    // weight * (1 - z)^(-alpha) truncated at degree n.
    static analytic_series inv_power_truncated(double alpha, std::size_t n, cplx weight = 1.0)
    {
        const auto b = binomial_coefficients(alpha, n);
        std::vector<cplx> a(b.size());
        std::transform(b.begin(), b.end(), a.begin(), [&](double x) { return weight * x; });
        return analytic_series(std::move(a));
    }

    [[nodiscard]] const std::vector<cplx> &coeffs() const noexcept
    {
        return coeffs_;
    }
    [[nodiscard]] const std::vector<power_term> &terms() const noexcept
    {
        return terms_;
    }
    [[nodiscard]] bool is_polynomial() const noexcept
    {
        return terms_.empty();
    }
    // Degree of the polynomial part (0 for the zero series).
    [[nodiscard]] std::size_t degree() const noexcept
    {
        return coeffs_.empty() ? 0 : coeffs_.size() - 1;
    }
    [[nodiscard]] bool is_zero() const noexcept
    {
        return coeffs_.empty() && terms_.empty();
    }

    // Polynomials are entire; closed-form atoms require |z| < 1.
    [[nodiscard]] cplx operator()(cplx z) const
    {
        cplx acc = detail::horner(coeffs_, z);
        if (!terms_.empty()) {
            if (!(std::abs(z) < 1.0)) {
                throw std::domain_error("analytic_series: closed-form atom evaluated outside the disk");
            }
            const cplx w = 1.0 - z;
            for (const auto &t : terms_) {
                acc += t.weight * std::pow(w, -t.alpha);
            }
        }
        return acc;
    }

    // Value at r e^{i theta}, with 1 - z formed without cancellation.
    [[nodiscard]] cplx at_polar(double r, double theta) const
    {
        const cplx z = std::polar(r, theta);
        cplx acc = detail::horner(coeffs_, z);
        if (!terms_.empty()) {
            if (!(r < 1.0)) {
                throw std::domain_error("analytic_series: closed-form atom evaluated outside the disk");
            }
            const cplx w = detail::one_minus_polar(r, theta);
            for (const auto &t : terms_) {
                acc += t.weight * std::pow(w, -t.alpha);
            }
        }
        return acc;
    }

    [[nodiscard]] analytic_series derivative() const
    {
        std::vector<cplx> d;
        if (coeffs_.size() > 1) {
            d.resize(coeffs_.size() - 1);
            for (std::size_t k = 1; k < coeffs_.size(); ++k) {
                d[k - 1] = static_cast<double>(k) * coeffs_[k];
            }
        }
        std::vector<power_term> dt;
        for (const auto &t : terms_) {
            dt.push_back({t.weight * t.alpha, t.alpha + 1.0});
        }
        return analytic_series(std::move(d), std::move(dt));
    }

    // Antiderivative vanishing at 0. Polynomial part only; atoms with alpha != 1
    // integrate in closed form.
    [[nodiscard]] analytic_series antiderivative() const
    {
        std::vector<cplx> a(coeffs_.size() + 1);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            a[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
        }
        std::vector<power_term> at;
        for (const auto &t : terms_) {
            if (t.alpha == 1.0) {
                throw std::domain_error("analytic_series: antiderivative of (1-z)^-1 is logarithmic");
            }
            // d/dz (1-z)^{-(alpha-1)} = (alpha-1)(1-z)^{-alpha}
            const cplx w = t.weight / (t.alpha - 1.0);
            at.push_back({w, t.alpha - 1.0});
            a[0] -= w;
        }
        if (a.empty()) {
            a.resize(1);
        }
        return analytic_series(std::move(a), std::move(at));
    }

    // Taylor coefficients a_0..a_n (atoms materialized by the binomial recurrence).
    [[nodiscard]] std::vector<cplx> taylor(std::size_t n) const
    {
        std::vector<cplx> a(n + 1);
        for (std::size_t k = 0; k <= n && k < coeffs_.size(); ++k) {
            a[k] = coeffs_[k];
        }
        for (const auto &t : terms_) {
            const auto b = binomial_coefficients(t.alpha, n);
            for (std::size_t k = 0; k <= n; ++k) {
                a[k] += t.weight * b[k];
            }
        }
        return a;
    }

    [[nodiscard]] analytic_series truncated(std::size_t n) const
    {
        return analytic_series(taylor(n));
    }

    [[nodiscard]] analytic_series conj_coefficients() const
    {
        std::vector<cplx> a(coeffs_.size());
        std::transform(coeffs_.begin(), coeffs_.end(), a.begin(), [](cplx c) { return std::conj(c); });
        std::vector<power_term> t(terms_);
        for (auto &x : t) {
            x.weight = std::conj(x.weight);
        }
        return analytic_series(std::move(a), std::move(t));
    }

    analytic_series &operator+=(const analytic_series &o)
    {
        if (coeffs_.size() < o.coeffs_.size()) {
            coeffs_.resize(o.coeffs_.size());
        }
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) {
            coeffs_[k] += o.coeffs_[k];
        }
        for (const auto &t : o.terms_) {
            add_term(t);
        }
        trim();
        return *this;
    }

    analytic_series &operator*=(cplx s)
    {
        for (auto &c : coeffs_) {
            c *= s;
        }
        for (auto &t : terms_) {
            t.weight *= s;
        }
        trim();
        return *this;
    }

    friend analytic_series operator+(analytic_series a, const analytic_series &b)
    {
        a += b;
        return a;
    }
    friend analytic_series operator*(cplx s, analytic_series a)
    {
        a *= s;
        return a;
    }
    friend analytic_series operator*(analytic_series a, cplx s)
    {
        a *= s;
        return a;
    }
    friend analytic_series operator-(analytic_series a)
    {
        a *= -1.0;
        return a;
    }
    friend analytic_series operator-(analytic_series a, const analytic_series &b)
    {
        a += -b;
        return a;
    }

    // Cauchy product; polynomial operands only.
    friend analytic_series operator*(const analytic_series &a, const analytic_series &b)
    {
        if (!a.is_polynomial() || !b.is_polynomial()) {
            throw std::invalid_argument("analytic_series: product requires polynomial operands");
        }
        if (a.coeffs_.empty() || b.coeffs_.empty()) {
            return {};
        }
        std::vector<cplx> c(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                c[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return analytic_series(std::move(c));
    }

    friend bool operator==(const analytic_series &, const analytic_series &) = default;

private:
    void add_term(const power_term &t)
    {
        for (auto &x : terms_) {
            if (x.alpha == t.alpha) {
                x.weight += t.weight;
                return;
            }
        }
        terms_.push_back(t);
    }

    void trim()
    {
        while (!coeffs_.empty() && coeffs_.back() == cplx{}) {
            coeffs_.pop_back();
        }
        std::erase_if(terms_, [](const power_term &t) { return t.weight == cplx{}; });
        std::sort(terms_.begin(), terms_.end(),
                  [](const power_term &x, const power_term &y) { return x.alpha < y.alpha; });
    }

    std::vector<cplx> coeffs_;
    std::vector<power_term> terms_;
};

// Wirtinger data of f at a point.
struct point_diff {
    cplx fz{};
    cplx fzbar{};
    double Lambda = 0; // |f_z| + |f_zbar|
    double lambda = 0; // ||f_z| - |f_zbar||
    double J = 0;      // |f_z|^2 - |f_zbar|^2
};

inline point_diff make_point_diff(cplx fz, cplx fzbar)
{
    const double a = std::abs(fz);
    const double b = std::abs(fzbar);
    return {fz, fzbar, a + b, std::abs(a - b), (a - b) * (a + b)};
}

// f = h + conj(g) with g(0) = 0.
class harmonic_map
{
public:
    harmonic_map() = default;

    harmonic_map(analytic_series h, analytic_series g) : h_(std::move(h)), g_(std::move(g))
    {
        const double g0 = std::abs(g_(0.0));
        const double scale = std::max(1.0, max_weight(g_));
        if (g0 > 1e-12 * scale) {
            throw std::invalid_argument("harmonic_map: g(0) must vanish");
        }
        dh_ = h_.derivative();
        dg_ = g_.derivative();
    }

    [[nodiscard]] const analytic_series &h() const noexcept
    {
        return h_;
    }
    [[nodiscard]] const analytic_series &g() const noexcept
    {
        return g_;
    }
    [[nodiscard]] const analytic_series &dh() const noexcept
    {
        return dh_;
    }
    [[nodiscard]] const analytic_series &dg() const noexcept
    {
        return dg_;
    }
    [[nodiscard]] bool is_polynomial() const noexcept
    {
        return h_.is_polynomial() && g_.is_polynomial();
    }
    [[nodiscard]] bool is_analytic() const noexcept
    {
        return g_.is_zero();
    }

    // Unchecked evaluation (polynomial maps extend to the closed disk).
    [[nodiscard]] cplx operator()(cplx z) const
    {
        return h_(z) + std::conj(g_(z));
    }
    [[nodiscard]] cplx at_polar(double r, double theta) const
    {
        return h_.at_polar(r, theta) + std::conj(g_.at_polar(r, theta));
    }
    [[nodiscard]] point_diff diff(cplx z) const
    {
        return make_point_diff(dh_(z), std::conj(dg_(z)));
    }
    [[nodiscard]] point_diff diff_polar(double r, double theta) const
    {
        return make_point_diff(dh_.at_polar(r, theta), std::conj(dg_.at_polar(r, theta)));
    }

    friend harmonic_map operator+(const harmonic_map &a, const harmonic_map &b)
    {
        return {a.h_ + b.h_, a.g_ + b.g_};
    }

private:
    static double max_weight(const analytic_series &s)
    {
        double m = 0;
        for (const auto &c : s.coeffs()) {
            m = std::max(m, std::abs(c));
        }
        for (const auto &t : s.terms()) {
            m = std::max(m, std::abs(t.weight));
        }
        return m;
    }

    analytic_series h_;
    analytic_series g_;
    analytic_series dh_;
    analytic_series dg_;
};

inline void require_in_disk(cplx z, const char *who)
{
    if (!(std::abs(z) < 1.0)) {
        throw std::domain_error(std::string(who) + ": |z| must be < 1");
    }
}

inline cplx eval_map(const harmonic_map &m, cplx z)
{
    require_in_disk(z, "eval_map");
    return m(z);
}

inline point_diff diff_at(const harmonic_map &m, cplx z)
{
    require_in_disk(z, "diff_at");
    return m.diff(z);
}

// f_z e^{i theta} + f_zbar e^{-i theta}
inline cplx directional_derivative(const harmonic_map &m, cplx z, double theta)
{
    const auto d = diff_at(m, z);
    return d.fz * std::polar(1.0, theta) + d.fzbar * std::polar(1.0, -theta);
}

// Re f and Im f.
inline double real_part(const harmonic_map &m, cplx z)
{
    return m(z).real();
}
inline double imag_part(const harmonic_map &m, cplx z)
{
    return m(z).imag();
}

} // namespace qrmeans

#endif
