#ifndef QRMEANS_CONJUGATION_HPP
#define QRMEANS_CONJUGATION_HPP

#include <cmath>

#include <qrmeans/series.hpp>

namespace qrmeans
{

// F1 = h + g, F2 = h - g, so that u = Re F1 and v = Im F2.
struct conjugate_pair {
    analytic_series F1;
    analytic_series F2;
};

inline conjugate_pair decompose(const harmonic_map &m)
{
    return {m.h() + m.g(), m.h() - m.g()};
}

// Analytic completion of u = Re A with Im A(0) = 0; then Im of the result is the
// conjugate v with v(0) = 0.
inline analytic_series conjugate_function(const analytic_series &A)
{
    const double im0 = A(0.0).imag();
    if (im0 == 0.0) {
        return A;
    }
    return A + analytic_series::constant(cplx(0.0, -im0));
}

// |F1'(z)| = |grad u|(z).
inline double gradient_modulus_u(const conjugate_pair &pair, cplx z)
{
    require_in_disk(z, "gradient_modulus_u");
    return std::abs(pair.F1.derivative()(z));
}

// Shift h by -i Im h(0) so that v(0) = Im f(0) = 0; returns the applied shift.
inline double normalize_v0(harmonic_map &m)
{
    const double s = m.h()(0.0).imag();
    if (s != 0.0) {
        m = harmonic_map(m.h() + analytic_series::constant(cplx(0.0, -s)), m.g());
    }
    return s;
}

} // namespace qrmeans

#endif
