// Acceptance run: one line per criterion, nonzero exit if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <qrmeans/qrmeans.hpp>

using namespace qrmeans;

namespace
{

struct outcome {
    bool pass = false;
    std::string detail;
};

struct criterion {
    int id;
    const char *name;
    double budget_s; // wall-clock bound; 0 = none
    std::function<outcome()> run;
};

std::string fmt(const char *f, double a)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt2(const char *f, double a, double b)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

outcome lemma_sweep()
{
    double worst = -p_infinity;
    for (double p : {2.0, 2.5, 3.0, 4.0, 6.0}) {
        for (int which = 1; which <= 4; ++which) {
            worst = std::max(worst, lemma_check(p, which, {{0.5, 1.0, 2.0}, 10000}).max_scaled_deficit);
        }
    }
    return {worst <= 1e-11, fmt("max scaled deficit %.3e", worst)};
}

outcome equality_witnesses()
{
    const auto L = lemma_constants(2.0);
    const double s1 = std::abs(lemma_deficit(2.0, 1, 1.0, pi / 4.0, L));
    const double s3 = std::abs(lemma_deficit(2.0, 3, 1.0, pi / 2.0, L));
    return {s1 <= 1e-12 && s3 <= 1e-12, fmt2("|slack| ineq1 %.2e, ineq3 %.2e", s1, s3)};
}

outcome constant_catalogue_check()
{
    double worst = 0;
    bool ok = true;
    for (double p : {2.0, 3.0, 4.0, 6.0, 8.0}) {
        const double x = pi / (2.0 * p);
        const double m = std::pow(1.0 / std::sin(x), p);
        const double a = std::pow(std::cos(x) / std::sin(x), p);
        const auto T = theorem_constants(1.0, p);
        if (!T.C || !T.c) {
            return {false, "conformal constants missing"};
        }
        worst = std::max({worst, std::abs(std::pow(*T.C, p) / m - 1.0), std::abs(std::pow(*T.c, p) / a - 1.0)});
    }
    ok = worst <= 1e-14;
    double limit = 0;
    for (double p : {2.0, 3.0, 4.0, 6.0, 8.0}) {
        const double x = pi / (2.0 * p);
        const auto T = theorem_constants(1.0 + 1e-8, p);
        if (!T.C || !T.c) {
            return {false, "near-conformal constants missing"};
        }
        limit = std::max({limit, std::abs(*T.C * std::sin(x) - 1.0), std::abs(*T.c * std::sin(x) / std::cos(x) - 1.0)});
    }
    ok = ok && limit <= 1e-6;
    double lo = 1.0, hi = 2.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (theorem_constants(mid, 2.0).f_bound_valid ? lo : hi) = mid;
    }
    const double thr = std::abs(0.5 * (lo + hi) - std::sqrt(2.0));
    ok = ok && thr <= 1e-10;
    char buf[200];
    std::snprintf(buf, sizeof buf, "rel err %.1e, K->1 err %.1e, threshold err %.1e", worst, limit, thr);
    return {ok, buf};
}

outcome parseval()
{
    corpus_options o;
    o.seed = 2;
    o.count = 50;
    o.origin = origin_rule::free;
    double worst = 0;
    bool dominated = true;
    for (const auto &nm : analytic_corpus(o)) {
        harmonic_map m = nm.map;
        normalize_v0(m);
        const double nu = boundary_norm(m, component::u, 2.0);
        const double nv = boundary_norm(m, component::v, 2.0);
        const double u0 = m(0.0).real();
        const double rhs = nu * nu - u0 * u0;
        worst = std::max(worst, std::abs(nv * nv - rhs) / rhs);
        dominated = dominated && nv <= nu;
    }
    return {worst <= 1e-10 && dominated, fmt("max relative residual %.2e over 50 maps", worst)};
}

outcome pichorides_p4()
{
    const double p = 4.0;
    const double cot = 1.0 + std::sqrt(2.0);
    const double csc = 1.0 / std::sin(pi / 8.0);
    corpus_options o;
    o.seed = 4;
    o.count = 20;
    o.p_normalize = p;
    o.origin = origin_rule::v_zero;
    double v_slack = p_infinity;
    for (const auto &nm : analytic_corpus(o)) {
        const double nu = boundary_norm(nm.map, component::u, p);
        v_slack = std::min(v_slack, cot * nu + 1e-8 - boundary_norm(nm.map, component::v, p));
    }
    o.origin = origin_rule::origin_angle;
    o.sector_p = p;
    double f_slack = p_infinity;
    for (const auto &nm : analytic_corpus(o)) {
        if (!sector_hypotheses(nm.map, p).origin_condition.value_or(false)) {
            return {false, "origin condition not arranged"};
        }
        const double nu = boundary_norm(nm.map, component::u, p);
        f_slack = std::min(f_slack, csc * nu + 1e-8 - boundary_norm(nm.map, component::f, p));
    }
    experiment_config kk;
    kk.theorem = "riesz_kk";
    kk.p = {p};
    const bool kk_ok = run_experiment(kk).passed(true);
    experiment_config sharp = kk;
    sharp.theorem = "riesz_sharp";
    const bool sharp_ok = run_experiment(sharp).passed(true);
    return {v_slack >= 0 && f_slack >= 0 && kk_ok && sharp_ok,
            fmt2("min slack v %.3e, f %.3e", v_slack, f_slack) + (kk_ok && sharp_ok ? "; verdicts PASS" : "; verdict FAIL")};
}

outcome green_identity()
{
    const green_spec spec{1024, 512, 1e-8, 4096};
    const auto a = green_identity_residual([](cplx z) { return std::norm(z); }, [](cplx) { return 4.0; }, spec);
    const auto b = green_identity_residual([](cplx z) { return (z * z * z).real(); }, [](cplx) { return 0.0; }, spec);
    const harmonic_map m(analytic_series::monomial(1.0, 1), analytic_series::monomial(0.3, 2));
    const auto c = green_identity_residual(m, 2.0, spec);
    const bool decomposition = std::abs(a.center) <= 1e-12 && std::abs(a.boundary_mean - 1.0) <= 1e-10
                               && std::abs(a.correction - 1.0) <= 1e-8;
    const bool ok = a.residual < 1e-6 && b.residual < 1e-6 && c.residual < 1e-6 && decomposition;
    char buf[200];
    std::snprintf(buf, sizeof buf, "residuals %.1e, %.1e, %.1e; |z|^2 = %.3g - %.3g", a.residual, b.residual,
                  c.residual, a.boundary_mean, a.correction);
    return {ok, buf};
}

outcome qr_envelope()
{
    const qr_grid grid{64, 1024, 0.9999};
    const harmonic_map m(analytic_series::monomial(1.0, 1), analytic_series::monomial(0.5, 2));
    const double kp = min_kprime(m, 1.0, grid);
    bool ok = std::abs(kp - 4.0) <= 1e-3;
    double worst = 0;
    for (double k : {0.1, 0.5, 0.9}) {
        const harmonic_map e(analytic_series::monomial(1.0, 1), analytic_series::monomial(k, 1));
        const auto prof = check_qr(e, (1.0 + k) / (1.0 - k), 0.0);
        worst = std::max(worst, prof.max_violation);
        ok = ok && prof.certified() && prof.max_violation <= 1e-10;
    }
    return {ok, fmt2("min K' %.6f, equality-case violation %.1e", kp, worst)};
}

outcome qr_chain()
{
    const std::vector<double> ps{1.5, 2.0, 3.0};
    double point = p_infinity, split = p_infinity;
    bool ladders = true;
    for (double Kp : {0.0, 0.5}) {
        qr_corpus_options o;
        o.base.seed = fixtures::riesz_kk_seed;
        o.base.count = 20;
        o.K = 1.2;
        o.Kprime = Kp;
        for (const auto &nm : qr_corpus(o)) {
            const auto prof = check_qr(nm.map, nm.K, nm.Kprime, o.grid);
            if (!prof.certified()) {
                return {false, nm.name + " not certified"};
            }
            point = std::min(point, -dilatation_bound_check(nm.map, prof, o.grid).F2_deficit);
            const auto pair = decompose(nm.map);
            const auto g1 = g_function(pair.F1, 256);
            const auto g2 = g_function(pair.F2, 256);
            for (double p : ps) {
                const double bound = splitting_constant_lp(p) * (nm.K * g_lp_norm(g1, p) + std::sqrt(nm.Kprime));
                split = std::min(split, bound - g_lp_norm(g2, p));
            }
        }
        experiment_config c;
        c.theorem = "riesz_kk";
        c.K = 1.2;
        c.Kprime = Kp;
        c.p = ps;
        c.seed = fixtures::riesz_kk_seed;
        ladders = ladders && run_experiment(c).passed(true);
    }
    return {point >= 0 && split >= 0 && ladders,
            fmt2("min pointwise slack %.3e, min G-splitting slack %.3e", point, split)
                + (ladders ? "; ladders finite" : "; ladder FAIL")};
}

outcome growth_sharpness()
{
    const window w{};
    bool ok = std::abs(w.hi / w.lo - 4.0) <= 1e-12;
    double worst = p_infinity;
    for (int j : {0, 1}) {
        for (double K : {1.0, 2.0}) {
            const auto rep = sharpness_experiment_growth(j, K, radius_ladder(1, 4), w);
            ok = ok && rep.pass;
            worst = std::min({worst, rep.lower_slack, rep.upper_slack});
        }
    }
    const auto ctl = growth_control(radius_ladder(1, 4), w);
    ok = ok && !ctl.pass && ctl.lower_slack < 0;
    return {ok, fmt2("min window slack %.3f; control lower slack %.3f", worst, ctl.lower_slack)};
}

outcome critical_exponent()
{
    const auto rep = sharpness_experiment_derivative(0.5, 0.05, 1.0, default_ladder(true));
    if (!rep.critical) {
        return {false, "no crossing found"};
    }
    const double c = *rep.critical;
    return {rep.grad_bounded && c >= 0.9 && c <= 1.1, fmt2("critical exponent %.4f (q = %.1f), deep ladder", c, rep.q)};
}

outcome prop2()
{
    experiment_config c;
    c.theorem = "prop2";
    c.p = {2.0, 3.0, 4.0};
    c.count = 20;
    const auto v = run_experiment(c);
    double worst_mv = p_infinity, worst = p_infinity;
    for (const auto &r : v.records) {
        if (auto it = r.metrics.find("meanvalue_min_slack"); it != r.metrics.end()) {
            worst_mv = std::min(worst_mv, it->second);
        }
        worst = std::min(worst, r.slack);
    }
    return {v.passed(true) && v.records.size() == 60 && worst_mv >= -1e-9,
            fmt2("min mean-value slack %.2e, min norm slack %.3e", worst_mv, worst)};
}

outcome determinism()
{
    std::vector<experiment_config> cfgs;
    for (const char *id : {"riesz_kk", "riesz_sharp", "kolmogorov", "zygmund", "hl_growth", "prop2"}) {
        experiment_config c;
        c.theorem = id;
        c.count = 5;
        c.p = std::string(id) == "riesz_kk" ? std::vector<double>{1.5, 2.0} : std::vector<double>{2.0};
        cfgs.push_back(c);
    }
    experiment_config qr;
    qr.theorem = "riesz_kk";
    qr.K = 1.2;
    qr.Kprime = 0.5;
    qr.count = 5;
    qr.seed = 99;
    cfgs.push_back(qr);
    for (const auto &c : cfgs) {
        const auto a = serialize(run_experiment(c));
        const auto b = serialize(run_experiment(c));
        if (a != b) {
            return {false, c.theorem + " differs between runs"};
        }
    }
    return {true, fmt("%.0f configurations byte-identical", static_cast<double>(cfgs.size()))};
}

} // namespace

int main()
{
    const std::vector<criterion> all{
        {1, "lemma sweep", 10, lemma_sweep},
        {2, "equality witnesses", 0, equality_witnesses},
        {3, "constant catalogue", 1, constant_catalogue_check},
        {4, "parseval p=2", 5, parseval},
        {5, "pichorides/verbitsky p=4", 10, pichorides_p4},
        {6, "green identity", 20, green_identity},
        {7, "qr envelope oracle", 0, qr_envelope},
        {8, "qr pipeline chain", 60, qr_chain},
        {9, "growth sharpness", 60, growth_sharpness},
        {10, "critical exponent (deep)", 120, critical_exponent},
        {11, "mean-value hypothesis and norm bounds", 30, prop2},
        {12, "determinism", 0, determinism},
    };
    int failed = 0;
    for (const auto &c : all) {
        const auto t0 = std::chrono::steady_clock::now();
        outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = c.budget_s == 0 || dt < c.budget_s;
        const bool pass = o.pass && in_time;
        failed += pass ? 0 : 1;
        std::printf("[%s] %2d %-40s %8.2f s  %s%s\n", pass ? "PASS" : "FAIL", c.id, c.name, dt, o.detail.c_str(),
                    in_time ? "" : " (over time budget)");
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
    return failed == 0 ? 0 : 1;
}
