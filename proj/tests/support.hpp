#ifndef QRMEANS_TESTS_SUPPORT_HPP
#define QRMEANS_TESTS_SUPPORT_HPP

#include <complex>
#include <initializer_list>
#include <vector>

#include <qrmeans/qrmeans.hpp>

namespace qt
{

using qrmeans::analytic_series;
using qrmeans::cplx;
using qrmeans::harmonic_map;

inline analytic_series poly(std::initializer_list<cplx> c)
{
    return analytic_series(std::vector<cplx>(c));
}

inline analytic_series z_pow(std::size_t n, cplx c = 1.0)
{
    return analytic_series::monomial(c, n);
}

inline harmonic_map analytic(const analytic_series &h)
{
    return {h, analytic_series{}};
}

// Relative error with an absolute floor of 1.
inline double rel_err(double a, double b)
{
    return std::abs(a - b) / std::max(1.0, std::abs(b));
}

} // namespace qt

#endif
