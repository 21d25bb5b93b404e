#ifndef QRMEANS_EXPERIMENTS_HPP
#define QRMEANS_EXPERIMENTS_HPP

// Theorem-level experiments. Every conclusion is evaluated only on maps that pass
// the corresponding hypothesis gate; gate failures are recorded as SKIP with the
// failing slack.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include <qrmeans/circle_means.hpp>
#include <qrmeans/conjugation.hpp>
#include <qrmeans/constants.hpp>
#include <qrmeans/corpus.hpp>
#include <qrmeans/extremal.hpp>
#include <qrmeans/fixtures.hpp>
#include <qrmeans/lp_functional.hpp>
#include <qrmeans/map_spec.hpp>
#include <qrmeans/qr_profile.hpp>
#include <qrmeans/report.hpp>
#include <qrmeans/sector_phi.hpp>

namespace qrmeans
{

inline const std::vector<std::string> &theorem_ids()
{
    static const std::vector<std::string> ids{"riesz_kk",     "riesz_sharp",   "kolmogorov", "zygmund",
                                              "hl_growth",    "hl_derivative", "prop2"};
    return ids;
}

struct experiment_config {
    std::string theorem = "riesz_kk";
    std::vector<double> p{2.0};
    double K = 1.0;
    double Kprime = 0.0;
    std::uint64_t seed = 1;
    std::size_t count = 20;
    std::size_t max_degree = 32;
    bool deep = false;
    std::vector<int> j{0, 1};
    double epsilon = 0.05;
    qr_grid grid{};
    std::vector<nlohmann::json> maps; // extra map specs, evaluated after the built-in maps
    bool corpus = true;               // include the seeded corpus / built-in gallery
};

inline nlohmann::ordered_json to_json(const experiment_config &c)
{
    nlohmann::ordered_json j;
    j["theorem"] = c.theorem;
    j["p"] = c.p;
    j["K"] = c.K;
    j["Kprime"] = c.Kprime;
    j["seed"] = c.seed;
    j["count"] = c.count;
    j["max_degree"] = c.max_degree;
    j["deep"] = c.deep;
    j["ladder"] = default_ladder(c.deep);
    j["j"] = c.j;
    j["epsilon"] = c.epsilon;
    j["grid"] = to_json(c.grid);
    j["corpus"] = c.corpus;
    auto maps = nlohmann::ordered_json::array();
    for (const auto &m : c.maps) {
        maps.push_back(nlohmann::ordered_json::parse(m.dump()));
    }
    j["maps"] = maps;
    return j;
}

namespace detail
{

inline constexpr double ladder_max_ratio = 0.99;

// Positive when the ladder is classified bounded.
inline double ladder_slack(const ladder_trend &tr)
{
    const double s = ladder_max_ratio - tr.increment_ratio;
    return tr.bounded ? std::max(s, 0.0) : std::min(s, -1e-300);
}

inline std::vector<double> ladder_means(const harmonic_map &m, component c, double p, const std::vector<double> &radii)
{
    std::vector<double> v;
    for (double r : radii) {
        v.push_back(integral_mean(m, c, r, p).value);
    }
    return v;
}

// Trend of M_p^p along the ladder.
inline ladder_trend powered_trend(const std::vector<double> &means, double p)
{
    std::vector<double> x(means);
    for (double &y : x) {
        y = std::pow(y, p);
    }
    return analyze_ladder(x);
}

inline std::string pname(const char *stem, double p)
{
    nlohmann::json j = p;
    return std::string(stem) + "_p" + j.dump();
}

inline std::vector<named_map> user_maps(const experiment_config &c, double K, double Kprime)
{
    std::vector<named_map> out;
    for (std::size_t i = 0; i < c.maps.size(); ++i) {
        out.push_back({"map-" + std::to_string(i), parse_map(c.maps[i]), K, Kprime});
    }
    return out;
}

inline verdict start_verdict(const experiment_config &c)
{
    verdict v;
    v.theorem = c.theorem;
    v.config = to_json(c);
    return v;
}

inline map_record skip(const std::string &name, const std::string &reason, double slack)
{
    map_record r;
    r.map = name;
    r.outcome = status::skip;
    r.reason = reason;
    r.slack = slack;
    return r;
}

inline void add_profile_metrics(map_record &rec, const qr_profile &prof)
{
    rec.metrics["qr_max_violation"] = prof.max_violation;
    rec.metrics["qr_relative_violation"] = prof.max_relative_violation;
    rec.metrics["qr_min_jacobian"] = prof.min_jacobian;
}

// Slack of the certification gate: tol - relative violation (negative Jacobian: -inf).
inline double qr_gate_slack(const qr_profile &prof)
{
    if (prof.negative_jacobian) {
        return -std::numeric_limits<double>::infinity();
    }
    return qr_certification_tol - prof.max_relative_violation;
}

// Phi_p o f has kinks where arg f crosses the seams of phi; trapezoid error decays
// only like N^{-2} there, so the agreement target is looser than for smooth means.
inline means_options kinked_options()
{
    means_options o;
    o.max_theta = 1u << 18;
    o.tol = 1e-7;
    return o;
}

} // namespace detail

// (M_p(r,v) - C2 sqrt K') / M_p(r,u) along the ladder with C2 = 2^{max(0,p/2-1)/p+1/2}.
inline verdict run_riesz_kk(const experiment_config &cfg)
{
    auto v = detail::start_verdict(cfg);
    const auto ladder = default_ladder(cfg.deep);
    for (double p : cfg.p) {
        if (!(p > 1.0)) {
            throw std::invalid_argument("riesz_kk: p must lie in (1, inf)");
        }
        std::vector<named_map> maps;
        if (cfg.corpus) {
            corpus_options co{cfg.seed, cfg.count, cfg.max_degree, p, origin_rule::v_zero, 2.0};
            if (cfg.K == 1.0 && cfg.Kprime == 0.0) {
                maps = analytic_corpus(co);
            } else {
                maps = qr_corpus({co, cfg.K, cfg.Kprime, cfg.grid});
            }
        }
        for (auto &m : detail::user_maps(cfg, cfg.K, cfg.Kprime)) {
            maps.push_back(std::move(m));
        }
        const double C2 = splitting_constant_lp(p);
        const auto bracket = fixtures::riesz_kk_bracket(cfg.K, cfg.Kprime, p);
        const double pich = classical_constants(p).pichorides;
        for (auto &nm : maps) {
            const std::string name = nm.name + "@" + detail::pname("p", p).substr(2);
            const auto prof = check_qr(nm.map, cfg.K, cfg.Kprime, cfg.grid);
            if (!prof.certified()) {
                auto rec = detail::skip(name, "map not certified (K, K')", detail::qr_gate_slack(prof));
                detail::add_profile_metrics(rec, prof);
                v.records.push_back(std::move(rec));
                continue;
            }
            harmonic_map m = nm.map;
            const double shift = normalize_v0(m);
            map_record rec;
            rec.map = name;
            detail::add_profile_metrics(rec, prof);
            rec.metrics["v0_shift"] = shift;
            auto Mv = detail::ladder_means(m, component::v, p, ladder);
            auto Mu = detail::ladder_means(m, component::u, p, ladder);
            std::vector<double> ratio;
            bool finite = true;
            for (std::size_t i = 0; i < ladder.size(); ++i) {
                ratio.push_back((Mv[i] - C2 * std::sqrt(cfg.Kprime)) / Mu[i]);
                finite = finite && std::isfinite(ratio.back());
            }
            const double rmax = *std::max_element(ratio.begin(), ratio.end());
            const auto tr = analyze_ladder(ratio);
            rec.metrics["ratio_max"] = rmax;
            rec.metrics["ratio_top"] = ratio.back();
            rec.metrics["increment_ratio"] = tr.increment_ratio;
            rec.metrics["C2_candidate"] = C2;
            rec.series["M_u"] = Mu;
            rec.series["M_v"] = Mv;
            rec.series["ratio"] = ratio;
            const double stability = detail::ladder_slack(tr);
            rec.metrics["stability_slack"] = stability;
            bool ok = finite && tr.bounded;
            rec.slack = finite ? stability : -std::numeric_limits<double>::infinity();
            rec.reason = "ratio finite and stable on the ladder";
            if (cfg.K == 1.0 && cfg.Kprime == 0.0) {
                const double tol = p == 2.0 ? 1e-9 : 1e-6;
                const double s = pich - rmax;
                rec.metrics["pichorides"] = pich;
                rec.metrics["bound_slack"] = s;
                ok = ok && s >= -tol;
                rec.slack = s;
                rec.reason = "ratio <= cot(pi/2p*)";
                if (p == 2.0) {
                    // ||v||_2^2 = ||u||_2^2 - u(0)^2 at every radius.
                    const double u0 = m(0.0).real();
                    const double lhs = Mv.back() * Mv.back();
                    const double rhs = Mu.back() * Mu.back() - u0 * u0;
                    rec.metrics["parseval_residual"] = std::abs(lhs - rhs) / std::max(rhs, 1e-300);
                }
            } else if (bracket) {
                const double s = *bracket - rmax;
                rec.metrics["bracket_hi"] = *bracket;
                rec.metrics["bracket_slack"] = s;
                ok = ok && s >= 0;
                rec.slack = std::min(rec.slack, s);
                rec.reason = "ratio finite, stable, inside the calibrated bracket";
            }
            rec.outcome = ok ? status::pass : status::fail;
            v.records.push_back(std::move(rec));
        }
    }
    return v;
}

// |f| <= C(K,p)|u| and |v| <= c(K,p)|u| in norm at the ladder top, under
// cos(p(arg f(0) - pi/2)) <= 0 (even p), plus the slit sector condition on the range (other p).
inline verdict run_riesz_sharp(const experiment_config &cfg)
{
    auto v = detail::start_verdict(cfg);
    const double rtop = default_ladder(cfg.deep).back();
    for (double p : cfg.p) {
        if (!(p >= 2.0)) {
            throw std::invalid_argument("riesz_sharp: p must be >= 2");
        }
        const auto tc = theorem_constants(cfg.K, p);
        const auto L = lemma_constants(p);
        const bool even = even_integer_check(p).even;
        std::vector<named_map> maps;
        if (cfg.corpus) {
            corpus_options co{cfg.seed, cfg.count, cfg.max_degree, p,
                              even ? origin_rule::origin_angle : origin_rule::sector_safe, p};
            maps = cfg.K == 1.0 ? analytic_corpus(co) : qr_corpus({co, cfg.K, 0.0, cfg.grid});
        }
        for (auto &m : detail::user_maps(cfg, cfg.K, 0.0)) {
            maps.push_back(std::move(m));
        }
        for (auto &nm : maps) {
            const std::string name = nm.name + "@" + detail::pname("p", p).substr(2);
            if (!tc.f_bound_valid && !tc.v_bound_valid) {
                v.records.push_back(detail::skip(name, "constants invalid at (K, p)",
                                                 1.0 - std::min(tc.f_bound_load, tc.v_bound_load)));
                continue;
            }
            const auto prof = check_qr(nm.map, cfg.K, 0.0, cfg.grid);
            if (!prof.certified()) {
                auto rec = detail::skip(name, "map not certified (K, 0)", detail::qr_gate_slack(prof));
                detail::add_profile_metrics(rec, prof);
                v.records.push_back(std::move(rec));
                continue;
            }
            const auto fl = sector_hypotheses(nm.map, p, cfg.grid);
            const bool origin_ok = fl.origin_condition.value_or(true);
            const bool gate = even ? origin_ok : (origin_ok && fl.in_sector);
            const std::string gate_name = even ? "origin-angle" : "origin-angle+sector";
            if (!gate) {
                auto rec = detail::skip(name, "hypothesis gate failed (" + gate_name + ")",
                                        !origin_ok ? -fl.origin_value : -fl.worst_margin);
                rec.metrics["origin_angle_value"] = fl.origin_value;
                v.records.push_back(std::move(rec));
                continue;
            }
            const harmonic_map &m = nm.map;
            const double Mf = integral_mean(m, component::f, rtop, p).value;
            const double Mu = integral_mean(m, component::u, rtop, p).value;
            const double Mv = integral_mean(m, component::v, rtop, p).value;
            const double meanF =
                circle_average([&](double t) { return F_p_value(m.at_polar(rtop, t), p); }).value;
            map_record rec;
            rec.map = name;
            detail::add_profile_metrics(rec, prof);
            rec.metrics["origin_angle_value"] = fl.origin_value;
            rec.metrics["gate_even"] = even ? 1.0 : 0.0;
            rec.metrics["sector_margin"] = fl.worst_margin;
            rec.metrics["inside_unit_disk"] = fl.inside_unit_disk ? 1.0 : 0.0;
            rec.metrics["M_f"] = Mf;
            rec.metrics["M_u"] = Mu;
            rec.metrics["M_v"] = Mv;
            rec.metrics["F_p_center"] = F_p_value(m(0.0), p);
            rec.metrics["F_p_mean"] = meanF;
            rec.metrics["chain_f_slack"] = L.m * std::pow(Mu, p) - L.n * meanF - std::pow(Mf, p);
            rec.metrics["chain_v_slack"] = L.a * std::pow(Mu, p) - L.b * meanF - std::pow(Mv, p);
            const double tol = 1e-8 * Mu;
            double slack = std::numeric_limits<double>::infinity();
            if (tc.C) {
                rec.metrics["C_Kp"] = *tc.C;
                rec.metrics["f_slack"] = *tc.C * Mu - Mf;
                slack = std::min(slack, *tc.C * Mu - Mf);
            }
            if (tc.c) {
                rec.metrics["c_Kp"] = *tc.c;
                rec.metrics["v_slack"] = *tc.c * Mu - Mv;
                slack = std::min(slack, *tc.c * Mu - Mv);
            }
            rec.slack = slack;
            rec.reason = "gate " + gate_name + "; norm inequalities at r = ladder top";
            rec.outcome = slack >= -tol ? status::pass : status::fail;
            v.records.push_back(std::move(rec));
        }
    }
    return v;
}

namespace detail
{

struct limit_map {
    std::string name;
    harmonic_map map;
};

inline std::vector<limit_map> limit_gallery(const experiment_config &cfg)
{
    std::vector<limit_map> g;
    if (!cfg.corpus) {
        return g;
    }
    auto stretch = [&](double alpha) { return affine_stretch(analytic_series::inv_power(alpha), cfg.K); };
    if (cfg.theorem == "kolmogorov") {
        g.push_back({"stretch-(1-z)^-0.9", stretch(0.9)});
        g.push_back({"stretch-(1-z)^-1", stretch(1.0)});
        g.push_back({"control-(1-z)^-2", stretch(2.0)});
    } else if (cfg.theorem == "zygmund") {
        g.push_back({"stretch-(1-z)^-0.5", stretch(0.5)});
        g.push_back({"control-(1-z)^-1", stretch(1.0)});
    }
    for (std::size_t i = 0; i < cfg.maps.size(); ++i) {
        g.push_back({"map-" + std::to_string(i), parse_map(cfg.maps[i])});
    }
    return g;
}

// Shared beginning: certification and v(0) = 0. Returns false (and records a skip) on failure.
inline bool limit_prelude(verdict &v, const experiment_config &cfg, const std::string &name, harmonic_map &m,
                          map_record &rec)
{
    const auto prof = check_qr(m, cfg.K, cfg.Kprime, cfg.grid);
    if (!prof.certified()) {
        auto s = skip(name, "map not certified (K, K')", qr_gate_slack(prof));
        add_profile_metrics(s, prof);
        v.records.push_back(std::move(s));
        return false;
    }
    rec.map = name;
    add_profile_metrics(rec, prof);
    rec.metrics["v0_shift"] = normalize_v0(m);
    return true;
}

inline void run_kolmogorov(verdict &v, const experiment_config &cfg)
{
    const auto ladder = default_ladder(cfg.deep);
    for (auto &lm : limit_gallery(cfg)) {
        map_record rec;
        if (!limit_prelude(v, cfg, lm.name, lm.map, rec)) {
            continue;
        }
        const auto Mu = ladder_means(lm.map, component::u, 1.0, ladder);
        const auto hyp = analyze_ladder(Mu);
        if (!hyp.bounded) {
            auto s = skip(lm.name, "hypothesis u in h^1 fails on the ladder", ladder_slack(hyp));
            s.series["M1_u"] = Mu;
            s.metrics["increment_ratio"] = hyp.increment_ratio;
            v.records.push_back(std::move(s));
            continue;
        }
        rec.series["M1_u"] = Mu;
        rec.metrics["hypothesis_slack"] = ladder_slack(hyp);
        double slack = std::numeric_limits<double>::infinity();
        for (double q : {0.25, 0.5, 0.75}) {
            const auto Mv = ladder_means(lm.map, component::v, q, ladder);
            const auto tr = powered_trend(Mv, q);
            rec.series[pname("M_v", q)] = Mv;
            rec.metrics[pname("increment_ratio_v", q)] = tr.increment_ratio;
            slack = std::min(slack, ladder_slack(tr));
        }
        rec.slack = slack;
        rec.reason = "v in h^q for q = 0.25, 0.5, 0.75 (ladder-bounded)";
        rec.outcome = slack >= 0 ? status::pass : status::fail;
        v.records.push_back(std::move(rec));
    }
}

inline void run_zygmund(verdict &v, const experiment_config &cfg)
{
    const auto ladder = default_ladder(cfg.deep);
    for (auto &lm : limit_gallery(cfg)) {
        map_record rec;
        if (!limit_prelude(v, cfg, lm.name, lm.map, rec)) {
            continue;
        }
        std::vector<double> Z;
        for (double r : ladder) {
            Z.push_back(zygmund_integral(lm.map, r));
        }
        const auto hyp = analyze_ladder(Z);
        if (!hyp.bounded) {
            auto s = skip(lm.name, "hypothesis int |u| log+|u| bounded fails on the ladder", ladder_slack(hyp));
            s.series["zygmund"] = Z;
            s.metrics["increment_ratio"] = hyp.increment_ratio;
            v.records.push_back(std::move(s));
            continue;
        }
        rec.series["zygmund"] = Z;
        rec.metrics["hypothesis_slack"] = ladder_slack(hyp);
        const auto Mv = ladder_means(lm.map, component::v, 1.0, ladder);
        const auto tr = analyze_ladder(Mv);
        rec.series["M1_v"] = Mv;
        rec.metrics["increment_ratio_v"] = tr.increment_ratio;
        rec.slack = ladder_slack(tr);
        rec.reason = "v in h^1 (ladder-bounded)";
        rec.outcome = rec.slack >= 0 ? status::pass : status::fail;
        v.records.push_back(std::move(rec));
    }
}

inline void run_hl_growth(verdict &v, const experiment_config &cfg)
{
    const auto ladder = default_ladder(cfg.deep);
    const window w{};
    for (int j : cfg.j) {
        const std::string name = "f_" + std::to_string(j);
        harmonic_map m = build_extremal({extremal_family::hl_growth, j, cfg.K, 0.5, 0.05, std::nullopt});
        map_record rec;
        if (!limit_prelude(v, cfg, name, m, rec)) {
            continue;
        }
        const double q = 1.0 / (1.0 + j);
        const auto Mu = ladder_means(m, component::u, q, ladder);
        const auto hyp = powered_trend(Mu, q);
        if (!hyp.bounded) {
            auto s = skip(name, "hypothesis u in h^p fails on the ladder", ladder_slack(hyp));
            s.series["M_u"] = Mu;
            v.records.push_back(std::move(s));
            continue;
        }
        rec.series["M_u"] = Mu;
        rec.metrics["hypothesis_slack"] = ladder_slack(hyp);
        const auto rep = sharpness_experiment_growth(j, cfg.K, ladder, w);
        rec.series["I"] = rep.I;
        rec.series["normalized_ratio"] = rep.normalized;
        rec.metrics["p"] = q;
        rec.metrics["window_lo"] = w.lo;
        rec.metrics["window_hi"] = w.hi;
        rec.metrics["lower_slack"] = rep.lower_slack;
        rec.metrics["upper_slack"] = rep.upper_slack;
        std::vector<double> Mv;
        for (double x : rep.I) {
            Mv.push_back(std::pow(x, 1.0 / q));
        }
        const auto fit = growth_exponent(ladder, Mv, growth_model::log_power);
        rec.metrics["fitted_log_exponent"] = fit.slope;
        rec.metrics["predicted_log_exponent"] = 1.0 / q;
        if (j >= 1) {
            const auto Mu_j = ladder_means(m, component::u, 1.0 / j, ladder);
            rec.metrics["increment_ratio_u_p1j"] = powered_trend(Mu_j, 1.0 / j).increment_ratio;
        }
        rec.slack = std::min(rep.lower_slack, rep.upper_slack);
        rec.reason = "I(r)/log(1/(1-r)) inside the a-priori window";
        rec.outcome = rep.pass ? status::pass : status::fail;
        v.records.push_back(std::move(rec));
    }
    if (cfg.corpus) {
        const auto c = growth_control(ladder, w);
        map_record rec;
        rec.map = "control-constant";
        rec.series["normalized_ratio"] = c.normalized;
        rec.metrics["lower_slack"] = c.lower_slack;
        rec.metrics["upper_slack"] = c.upper_slack;
        rec.slack = -c.lower_slack;
        rec.reason = "constant control must leave the lower window";
        rec.outcome = c.lower_slack < 0 ? status::pass : status::fail;
        v.records.push_back(std::move(rec));
    }
}

inline void run_hl_derivative(verdict &v, const experiment_config &cfg)
{
    const auto ladder = default_ladder(cfg.deep);
    for (double p : cfg.p) {
        if (!(p > 0 && p < 1)) {
            throw std::invalid_argument("hl_derivative: p must lie in (0,1)");
        }
        const std::string name = "Phi@p" + pname("", p).substr(2);
        harmonic_map m = build_extremal({extremal_family::hl_derivative, 0, cfg.K, p, cfg.epsilon, std::nullopt});
        map_record rec;
        if (!limit_prelude(v, cfg, name, m, rec)) {
            continue;
        }
        const auto rep = sharpness_experiment_derivative(p, cfg.epsilon, cfg.K, ladder);
        rec.series["grad_means"] = rep.grad_means;
        if (!rep.grad_bounded) {
            auto s = skip(name, "hypothesis |grad u| in H^p fails on the ladder",
                          detail::ladder_max_ratio - rep.grad_increment_ratio);
            s.series = rec.series;
            v.records.push_back(std::move(s));
            continue;
        }
        const double q = rep.q;
        const double qb = 0.9 * q;
        const auto Mf = ladder_means(m, component::f, qb, ladder);
        const auto tr = powered_trend(Mf, qb);
        rec.series["M_f_below"] = Mf;
        rec.metrics["q"] = q;
        rec.metrics["q_below"] = qb;
        rec.metrics["increment_ratio_below"] = tr.increment_ratio;
        rec.metrics["epsilon"] = cfg.epsilon;
        rec.metrics["predicted_threshold"] = rep.predicted.value_or(std::nan(""));
        rec.metrics["bisection_evaluations"] = static_cast<double>(rep.evaluations);
        double slack = ladder_slack(tr);
        if (rep.critical) {
            rec.metrics["critical_exponent"] = *rep.critical;
            slack = std::min(slack, std::min(*rep.critical - 0.9 * q, 1.1 * q - *rep.critical));
        } else {
            rec.metrics["critical_exponent"] = std::nan("");
            slack = -std::numeric_limits<double>::infinity();
        }
        rec.slack = slack;
        rec.reason = "f in h^{0.9q}; blow-up exponent within [0.9q, 1.1q]";
        rec.outcome = slack >= 0 ? status::pass : status::fail;
        v.records.push_back(std::move(rec));
    }
    if (cfg.corpus) {
        const auto cs = derivative_control(cfg.p.front() / (1.0 - cfg.p.front()), ladder);
        map_record rec;
        rec.map = "control-z";
        rec.metrics["bisection_evaluations"] = static_cast<double>(cs.evaluations);
        rec.metrics["critical_exponent"] = cs.critical.value_or(std::nan(""));
        rec.slack = cs.critical ? -1.0 : 0.0;
        rec.reason = "analytic control f = z: no finite critical exponent";
        rec.outcome = cs.critical ? status::fail : status::pass;
        v.records.push_back(std::move(rec));
    }
}

} // namespace detail

inline verdict run_limit_theorems(const experiment_config &cfg)
{
    auto v = detail::start_verdict(cfg);
    if (cfg.theorem == "kolmogorov") {
        detail::run_kolmogorov(v, cfg);
    } else if (cfg.theorem == "zygmund") {
        detail::run_zygmund(v, cfg);
    } else if (cfg.theorem == "hl_growth") {
        detail::run_hl_growth(v, cfg);
    } else if (cfg.theorem == "hl_derivative") {
        detail::run_hl_derivative(v, cfg);
    } else {
        throw std::invalid_argument("run_limit_theorems: unknown theorem " + cfg.theorem);
    }
    return v;
}

// Mean-value hypothesis on the ladder, then ||f|| <= csc(pi/2p)||u|| and
// ||v|| <= cot(pi/2p)||u|| at the ladder top.
inline verdict run_prop2(const experiment_config &cfg)
{
    auto v = detail::start_verdict(cfg);
    const auto ladder = default_ladder(cfg.deep);
    for (double p : cfg.p) {
        if (!(p >= 2.0)) {
            throw std::invalid_argument("prop2: p must be >= 2");
        }
        std::vector<named_map> maps;
        if (cfg.corpus) {
            corpus_options co{cfg.seed, cfg.count, cfg.max_degree, p, origin_rule::v_zero, 2.0};
            maps = cfg.K == 1.0 ? analytic_corpus(co) : qr_corpus({co, cfg.K, 0.0, cfg.grid});
        }
        for (auto &m : detail::user_maps(cfg, cfg.K, 0.0)) {
            maps.push_back(std::move(m));
        }
        const double x = pi / (2.0 * p);
        const double csc = 1.0 / std::sin(x);
        const double cot = std::cos(x) / std::sin(x);
        for (auto &nm : maps) {
            const std::string name = nm.name + "@" + detail::pname("p", p).substr(2);
            harmonic_map m = nm.map;
            const double shift = normalize_v0(m);
            std::vector<double> mv_slack;
            double worst = std::numeric_limits<double>::infinity();
            for (double r : ladder) {
                const auto mv = meanvalue_hypothesis(m, p, r, 1e-9, detail::kinked_options());
                mv_slack.push_back(mv.slack);
                worst = std::min(worst, mv.slack);
            }
            if (worst < -1e-9) {
                auto s = detail::skip(name, "mean-value hypothesis fails", worst);
                s.series["meanvalue_slack"] = mv_slack;
                v.records.push_back(std::move(s));
                continue;
            }
            const double r = ladder.back();
            const double Mf = integral_mean(m, component::f, r, p).value;
            const double Mu = integral_mean(m, component::u, r, p).value;
            const double Mv = integral_mean(m, component::v, r, p).value;
            map_record rec;
            rec.map = name;
            rec.series["meanvalue_slack"] = mv_slack;
            rec.metrics["v0_shift"] = shift;
            rec.metrics["meanvalue_min_slack"] = worst;
            rec.metrics["M_f"] = Mf;
            rec.metrics["M_u"] = Mu;
            rec.metrics["M_v"] = Mv;
            rec.metrics["csc"] = csc;
            rec.metrics["cot"] = cot;
            rec.metrics["f_csc_slack"] = csc * Mu - Mf;
            rec.metrics["v_cot_slack"] = cot * Mu - Mv;
            rec.slack = std::min(csc * Mu - Mf, cot * Mu - Mv);
            rec.reason = "mean-value hypothesis on the ladder; csc and cot bounds at the ladder top";
            rec.outcome = rec.slack >= -1e-8 * Mu ? status::pass : status::fail;
            v.records.push_back(std::move(rec));
        }
    }
    return v;
}

// Extreme adjusted ratios ||G[A]||_p / ||A - A(0)||_p over the calibration corpus.
struct gfun_calibration {
    double p = 0;
    double min_ratio = p_infinity;
    double max_ratio = 0;
    [[nodiscard]] double bracket(double margin = 1.1) const
    {
        return margin * std::max(max_ratio, 1.0 / min_ratio);
    }
};

inline std::vector<analytic_series> gfun_corpus(std::uint64_t seed = fixtures::gfun_seed,
                                                std::size_t count = fixtures::gfun_count)
{
    std::vector<analytic_series> out;
    for (const auto &nm : analytic_corpus({seed, count, 32, 2.0, origin_rule::free, 2.0})) {
        out.push_back(nm.map.h());
    }
    return out;
}

inline gfun_calibration calibrate_gfun(double p, std::uint64_t seed = fixtures::gfun_seed,
                                       std::size_t count = fixtures::gfun_count)
{
    gfun_calibration c;
    c.p = p;
    for (const auto &A : gfun_corpus(seed, count)) {
        const auto rep = g_norm_ratio(A, p);
        c.min_ratio = std::min(c.min_ratio, rep.adjusted.value());
        c.max_ratio = std::max(c.max_ratio, rep.adjusted.value());
    }
    return c;
}

// Largest ratio_max of run_riesz_kk over the default corpus at (K, K', p).
inline double calibrate_riesz_kk(double K, double Kprime, double p, std::uint64_t seed = fixtures::riesz_kk_seed)
{
    experiment_config cfg;
    cfg.theorem = "riesz_kk";
    cfg.K = K;
    cfg.Kprime = Kprime;
    cfg.p = {p};
    cfg.seed = seed;
    double mx = -p_infinity;
    for (const auto &r : run_riesz_kk(cfg).records) {
        if (auto it = r.metrics.find("ratio_max"); it != r.metrics.end()) {
            mx = std::max(mx, it->second);
        }
    }
    return mx;
}

inline verdict run_experiment(const experiment_config &cfg)
{
    if (cfg.theorem == "riesz_kk") {
        return run_riesz_kk(cfg);
    }
    if (cfg.theorem == "riesz_sharp") {
        return run_riesz_sharp(cfg);
    }
    if (cfg.theorem == "prop2") {
        return run_prop2(cfg);
    }
    return run_limit_theorems(cfg);
}

} // namespace qrmeans

#endif
