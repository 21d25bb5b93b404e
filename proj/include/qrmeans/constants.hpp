#ifndef QRMEANS_CONSTANTS_HPP
#define QRMEANS_CONSTANTS_HPP

// Sharp-constant catalogue for conjugate-function inequalities and the
// K-dependent constants of the sector-function argument.

#include <cmath>
#include <optional>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include <qrmeans/series.hpp>

namespace qrmeans
{

// p* = max{p, p/(p-1)}
inline double pstar(double p)
{
    if (!(p > 1.0) || !std::isfinite(p)) {
        throw std::invalid_argument("pstar: p must lie in (1, inf)");
    }
    return std::max(p, p / (p - 1.0));
}

struct classical_set {
    double pichorides = 0;      // cot(pi / 2p*)
    double verbitsky_upper = 0; // 1 / sin(pi / 2p*)
    double verbitsky_lower = 0; // 1 / cos(pi / 2p*)
};

inline classical_set classical_constants(double p)
{
    const double x = pi / (2.0 * pstar(p));
    return {std::cos(x) / std::sin(x), 1.0 / std::sin(x), 1.0 / std::cos(x)};
}

struct lemma_set {
    double a = 0; // cot^p(pi/2p)
    double b = 0; // 2 cos^p(pi/2p) csc(pi/p)
    double m = 0; // csc^p(pi/2p)
    double n = 0; // cot(pi/2p)
    double c = 0; // 1 on [2,4], 2^{(p-4)/2} on [4, inf)
};

// c_p of the splitting |x+iy|^{p-2} <= c_p(|x|^{p-2} + |y|^{p-2}); c_2 := 1.
inline double splitting_constant(double p)
{
    if (p < 2.0) {
        throw std::invalid_argument("splitting_constant: p must be >= 2");
    }
    return p <= 4.0 ? 1.0 : std::pow(2.0, 0.5 * (p - 4.0));
}

inline lemma_set lemma_constants(double p)
{
    if (!(p >= 2.0) || !std::isfinite(p)) {
        throw std::invalid_argument("lemma_constants: p must be >= 2");
    }
    const double x = pi / (2.0 * p);
    const double cot = std::cos(x) / std::sin(x);
    lemma_set s;
    s.a = std::pow(cot, p);
    s.b = 2.0 * std::pow(std::cos(x), p) / std::sin(pi / p);
    s.m = std::pow(1.0 / std::sin(x), p);
    s.n = cot;
    s.c = splitting_constant(p);
    return s;
}

struct theorem_set {
    std::optional<double> C; // ||f||_p <= C ||u||_p, absent when invalid
    std::optional<double> c; // ||v||_p <= c ||u||_p, absent when invalid
    bool f_bound_valid = false; // (K^2-1) c_p n_p 2^{1-p/2} < 1
    bool v_bound_valid = false; // (K^2-1) b_p c_p < 1
    double f_bound_load = 0;    // the left-hand sides of the two validity tests
    double v_bound_load = 0;
};

inline theorem_set theorem_constants(double K, double p)
{
    if (!(K >= 1.0)) {
        throw std::invalid_argument("theorem_constants: K must be >= 1");
    }
    const auto L = lemma_constants(p);
    const double k2 = K * K - 1.0;
    theorem_set t;
    t.f_bound_load = k2 * L.c * L.n * std::pow(2.0, 1.0 - 0.5 * p);
    t.v_bound_load = k2 * L.b * L.c;
    t.f_bound_valid = t.f_bound_load < 1.0;
    t.v_bound_valid = t.v_bound_load < 1.0;
    if (t.f_bound_valid) {
        t.C = std::pow(L.m / (1.0 - t.f_bound_load), 1.0 / p);
    }
    if (t.v_bound_valid) {
        t.c = std::pow((L.a + t.v_bound_load) / (1.0 - t.v_bound_load), 1.0 / p);
    }
    return t;
}

struct constant_set {
    double p = 0;
    double K = 1;
    double pstar = 0;
    classical_set classical;
    std::optional<lemma_set> lemma; // p >= 2 only
    std::optional<theorem_set> theorem;
};

inline constant_set constant_catalogue(double p, double K)
{
    constant_set s;
    s.p = p;
    s.K = K;
    s.pstar = pstar(p);
    s.classical = classical_constants(p);
    if (p >= 2.0) {
        s.lemma = lemma_constants(p);
        s.theorem = theorem_constants(K, p);
    }
    return s;
}

inline nlohmann::ordered_json to_json(const constant_set &s)
{
    nlohmann::ordered_json j;
    j["p"] = s.p;
    j["K"] = s.K;
    j["pstar"] = s.pstar;
    j["pichorides"] = s.classical.pichorides;
    j["verbitsky_upper"] = s.classical.verbitsky_upper;
    j["verbitsky_lower"] = s.classical.verbitsky_lower;
    if (s.lemma) {
        j["a_p"] = s.lemma->a;
        j["b_p"] = s.lemma->b;
        j["c_p"] = s.lemma->c;
        j["m_p"] = s.lemma->m;
        j["n_p"] = s.lemma->n;
    }
    if (s.theorem) {
        const auto &t = *s.theorem;
        j["C_Kp"] = t.C ? nlohmann::ordered_json(*t.C) : nlohmann::ordered_json("invalid");
        j["c_Kp"] = t.c ? nlohmann::ordered_json(*t.c) : nlohmann::ordered_json("invalid");
        j["validity"] = {{"f_bound", t.f_bound_valid},
                         {"v_bound", t.v_bound_valid},
                         {"f_bound_load", t.f_bound_load},
                         {"v_bound_load", t.v_bound_load}};
    }
    // Constants of the (K,K')-Riesz chain depend on the unnamed Littlewood-Paley
    // constant; only empirical brackets exist for them.
    j["C1_Kp"] = "empirical";
    j["C2_Kp"] = "empirical";
    return j;
}

} // namespace qrmeans

#endif
