#ifndef QRMEANS_FIXTURES_HPP
#define QRMEANS_FIXTURES_HPP

// Empirical brackets calibrated once over fixed seeded corpora (regression alerts
// only; they are not theorem constants). Recalibrate with `qrmeans gfun --calibrate`
// and `qrmeans theorem --id riesz_kk --calibrate`.

#include <cmath>
#include <cstdint>
#include <optional>

namespace qrmeans::fixtures
{

inline constexpr std::uint64_t gfun_seed = 20240601;
inline constexpr std::size_t gfun_count = 30;

// C_emp(p): every f(0)-adjusted ratio ||G[A]||_p / ||A - A(0)||_p of the gfun corpus
// lies in [1/C_emp, C_emp].
inline std::optional<double> gfun_bracket(double p)
{
    struct entry {
        double p, C;
    };
    // 1.1 x the extreme ratio, rounded up.
    static constexpr entry table[] = {{1.0, 2.051}, {1.5, 2.103}, {2.0, 2.137}, {3.0, 2.191}};
    for (const auto &e : table) {
        if (e.p == p) {
            return e.C;
        }
    }
    return std::nullopt;
}

inline constexpr std::uint64_t riesz_kk_seed = 1;

// Upper bracket for (M_p(r,v) - C2 sqrt K') / M_p(r,u) over the K = 1.2 corpora
// (seed riesz_kk_seed, count 20).
inline std::optional<double> riesz_kk_bracket(double K, double Kprime, double p)
{
    struct entry {
        double K, Kprime, p, hi;
    };
    // Largest calibrated ratio + 0.25, rounded up.
    static constexpr entry table[] = {{1.2, 0.0, 1.5, 1.419}, {1.2, 0.0, 2.0, 1.411}, {1.2, 0.0, 3.0, 1.397},
                                      {1.2, 0.5, 1.5, 0.369}, {1.2, 0.5, 2.0, 0.361}, {1.2, 0.5, 3.0, 0.176}};
    for (const auto &e : table) {
        if (e.K == K && e.Kprime == Kprime && e.p == p) {
            return e.hi;
        }
    }
    return std::nullopt;
}

} // namespace qrmeans::fixtures

#endif
