// qrmeans: command-line front end for the integral-means library.
// Exit status: 0 when every check passes, 1 on a failed check, 2 on usage or I/O errors.

#include <cerrno>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <qrmeans/qrmeans.hpp>

namespace
{

using json = nlohmann::ordered_json;
using namespace qrmeans;

void emit(const std::string &text, const std::string &path)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path + ": " + std::strerror(errno));
    }
    out << text;
    out.close();
    if (!out) {
        throw std::runtime_error("write failed for " + path + ": " + std::strerror(errno));
    }
}

std::string dump(const json &j)
{
    return j.dump(2) + "\n";
}

double parse_exponent(const std::string &s)
{
    if (s == "inf" || s == "infinity") {
        return p_infinity;
    }
    return std::stod(s);
}

component parse_component(const std::string &s)
{
    if (s == "f") {
        return component::f;
    }
    if (s == "u") {
        return component::u;
    }
    if (s == "v") {
        return component::v;
    }
    throw CLI::ValidationError("--component", "expected f, u or v");
}

json point(cplx z)
{
    return json::array({z.real(), z.imag()});
}

bool deep_requested(bool flag)
{
    return flag || deep_mode_from_env();
}

struct means_args {
    std::string map, comp = "f", format = "csv", output;
    std::vector<std::string> p{"2"};
    std::vector<double> radii;
    int kmin = 1, kmax = 0;
    bool deep = false;
};

int run_means(const means_args &a)
{
    const auto m = map_from_argument(a.map);
    std::vector<double> ex;
    for (const auto &s : a.p) {
        ex.push_back(parse_exponent(s));
    }
    auto radii = a.radii;
    if (radii.empty()) {
        radii = a.kmax > 0 ? radius_ladder(a.kmin, a.kmax) : default_ladder(deep_requested(a.deep));
    }
    const auto t = make_means_table(m, parse_component(a.comp), radii, ex, a.comp);
    if (a.format == "json") {
        emit(dump(to_json(t)), a.output);
    } else {
        std::ostringstream os;
        write_csv(os, t);
        emit(os.str(), a.output);
    }
    return 0;
}

int run_conjugate(const std::string &spec, const std::string &output)
{
    auto m = map_from_argument(spec);
    const auto pair = decompose(m);
    const double u0 = m(0.0).real();
    const double shift = normalize_v0(m);
    json j;
    j["F1"] = to_json(pair.F1);
    j["F2"] = to_json(pair.F2);
    j["v0_shift"] = shift;
    j["u0"] = u0;
    j["normalized_map"] = to_json(m);
    emit(dump(j), output);
    return 0;
}

int run_constants(double p, double K, const std::string &output)
{
    emit(dump(to_json(constant_catalogue(p, K))), output);
    return 0;
}

int run_lemma(double p, int which, std::size_t angles, const std::vector<double> &radii, const std::string &output)
{
    const auto rep = lemma_check(p, which, {radii, angles});
    const double tol = 1e-11;
    json j;
    j["p"] = p;
    j["ineq"] = which;
    j["angles"] = angles;
    j["radii"] = radii;
    j["angle_interval"] = {rep.angles.lo, rep.angles.hi};
    j["even_snapped"] = even_integer_check(p).snapped;
    j["max_deficit"] = rep.max_deficit;
    j["max_scaled_deficit"] = rep.max_scaled_deficit;
    j["argmax_point"] = point(rep.argmax);
    j["tolerance"] = tol;
    j["pass"] = rep.max_scaled_deficit <= tol;
    emit(dump(j), output);
    return rep.max_scaled_deficit <= tol ? 0 : 1;
}

int run_green(const std::string &spec, double p, std::size_t angles, std::size_t radial,
              const std::string &output)
{
    const auto m = map_from_argument(spec);
    green_spec gs;
    gs.n_angles = angles;
    gs.n_radial = radial;
    const auto rep = green_identity_residual(m, p, gs);
    const double tol = 1e-6;
    json j;
    j["p"] = p;
    j["residual"] = rep.residual;
    j["center"] = rep.center;
    j["boundary_mean"] = rep.boundary_mean;
    j["correction"] = rep.correction;
    j["refinement_diff"] = rep.refinement_diff;
    j["n_angles"] = angles;
    j["n_radial"] = rep.n_radial;
    j["converged"] = rep.converged;
    j["tolerance"] = tol;
    const bool ok = rep.converged && rep.residual < tol;
    j["pass"] = ok;
    emit(dump(j), output);
    return ok ? 0 : 1;
}

int run_gfun(const std::string &spec, double p, std::size_t angles, bool calibrate, const std::string &output)
{
    if (calibrate) {
        json j;
        j["seed"] = fixtures::gfun_seed;
        j["count"] = fixtures::gfun_count;
        auto rows = json::array();
        for (double q : {1.0, 1.5, 2.0, 3.0}) {
            const auto c = calibrate_gfun(q);
            rows.push_back({{"p", q}, {"min_ratio", c.min_ratio}, {"max_ratio", c.max_ratio}, {"C_emp", c.bracket()}});
        }
        j["brackets"] = rows;
        emit(dump(j), output);
        return 0;
    }
    if (spec.empty()) {
        throw CLI::ValidationError("--map", "required unless --calibrate is given");
    }
    const auto m = map_from_argument(spec);
    if (!m.is_analytic()) {
        throw std::invalid_argument("gfun: the map must be analytic (g = 0)");
    }
    std::optional<g_bracket> br;
    if (auto C = fixtures::gfun_bracket(p)) {
        br = g_bracket{1.0 / *C, *C};
    }
    const auto s = g_function(m.h(), angles);
    const auto rep = g_norm_ratio(m.h(), p, br, angles, default_ladder(deep_mode_from_env()));
    json j;
    j["p"] = p;
    j["angles"] = s.angles;
    j["values"] = s.values;
    j["n_radial"] = s.n_radial;
    j["all_converged"] = s.all_converged();
    j["g_norm"] = rep.g_norm;
    j["hardy_norm"] = rep.hardy;
    j["hardy_norm_adjusted"] = rep.hardy_adjusted;
    j["raw_ratio"] = rep.raw ? json(*rep.raw) : json("undefined");
    j["adjusted_ratio"] = rep.adjusted ? json(*rep.adjusted) : json("undefined");
    j["in_bracket"] = rep.in_bracket ? json(*rep.in_bracket) : json("no bracket");
    if (br) {
        j["bracket"] = {br->lo, br->hi};
    }
    if (!rep.note.empty()) {
        j["note"] = rep.note;
    }
    emit(dump(j), output);
    return rep.in_bracket.value_or(true) ? 0 : 1;
}

struct extremal_args {
    std::string family = "hl_growth", output;
    int j = 0;
    double K = 1, p = 0.5, epsilon = 0.05;
    bool deep = false;
};

int run_extremal(const extremal_args &a)
{
    const auto ladder = default_ladder(deep_requested(a.deep));
    if (a.family == "hl_growth") {
        const auto rep = sharpness_experiment_growth(a.j, a.K, ladder);
        emit(dump(to_json(rep)), a.output);
        return rep.pass ? 0 : 1;
    }
    if (a.family == "hl_derivative") {
        const auto rep = sharpness_experiment_derivative(a.p, a.epsilon, a.K, ladder);
        auto j = to_json(rep);
        const bool ok = rep.critical && *rep.critical >= 0.9 * rep.q && *rep.critical <= 1.1 * rep.q;
        j["pass"] = ok;
        emit(dump(j), a.output);
        return ok ? 0 : 1;
    }
    throw CLI::ValidationError("--family", "expected hl_growth or hl_derivative");
}

struct theorem_args {
    experiment_config cfg;
    std::vector<std::string> maps;
    std::string format = "json", output;
    bool strict = false, no_corpus = false, deep = false, calibrate = false;
    bool p_given = false;
};

int run_theorem(theorem_args a)
{
    auto &cfg = a.cfg;
    cfg.deep = deep_requested(a.deep);
    cfg.corpus = !a.no_corpus;
    if (!a.p_given && cfg.theorem == "hl_derivative") {
        cfg.p = {0.5};
    }
    for (const auto &m : a.maps) {
        const auto first = m.find_first_not_of(" \t\n");
        if (first != std::string::npos && m[first] == '{') {
            cfg.maps.push_back(nlohmann::json::parse(m));
        } else {
            std::ifstream in(m);
            if (!in) {
                throw std::runtime_error("cannot open map spec: " + m);
            }
            cfg.maps.push_back(nlohmann::json::parse(in));
        }
    }
    if (a.calibrate) {
        if (cfg.theorem != "riesz_kk") {
            throw CLI::ValidationError("--calibrate", "only riesz_kk has a calibrated bracket");
        }
        json j;
        j["K"] = cfg.K;
        j["Kprime"] = cfg.Kprime;
        auto rows = json::array();
        for (double p : cfg.p) {
            rows.push_back({{"p", p}, {"max_ratio", calibrate_riesz_kk(cfg.K, cfg.Kprime, p, cfg.seed)}});
        }
        j["ratios"] = rows;
        emit(dump(j), a.output);
        return 0;
    }
    const auto v = run_experiment(cfg);
    if (a.format == "csv") {
        std::ostringstream os;
        write_csv(os, v);
        emit(os.str(), a.output);
    } else {
        emit(serialize(v), a.output);
    }
    return v.passed(a.strict) ? 0 : 1;
}

int run_report(const std::string &input, const std::string &format, const std::string &output, bool strict)
{
    std::ifstream in(input, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + input + ": " + std::strerror(errno));
    }
    std::stringstream ss;
    ss << in.rdbuf();
    const auto v = parse_verdict(ss.str());
    if (format == "csv") {
        std::ostringstream os;
        write_csv(os, v);
        emit(os.str(), output);
    } else {
        emit(serialize(v), output);
    }
    return v.passed(strict) ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Integral means, conjugate functions and sharp constants for harmonic quasiregular maps"};
    app.set_version_flag("--version", version_string());
    app.require_subcommand(1);

    means_args ma;
    auto *means = app.add_subcommand("means", "M_p(r, .) table over radii and exponents");
    means->add_option("--map", ma.map, "map spec (file or inline JSON)")->required();
    means->add_option("--component", ma.comp, "f, u or v");
    means->add_option("--p", ma.p, "exponents (inf allowed)");
    means->add_option("--radii", ma.radii, "explicit radii");
    means->add_option("--kmin", ma.kmin, "ladder start, r = 1 - 10^-k");
    means->add_option("--kmax", ma.kmax, "ladder end");
    means->add_flag("--deep", ma.deep, "k = 1..6 ladder");
    means->add_option("--format", ma.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    means->add_option("--output", ma.output, "output path (default stdout)");

    std::string cj_map, cj_out;
    auto *conj = app.add_subcommand("conjugate", "F1 = h + g, F2 = h - g and the v(0) = 0 normalization");
    conj->add_option("--map", cj_map, "map spec")->required();
    conj->add_option("--output", cj_out, "output path");

    double c_p = 2, c_K = 1;
    std::string c_out;
    auto *cons = app.add_subcommand("constants", "sharp-constant catalogue at (p, K)");
    cons->add_option("--p", c_p, "exponent > 1")->required();
    cons->add_option("--K", c_K, "K >= 1");
    cons->add_option("--output", c_out, "output path");

    double l_p = 2;
    int l_ineq = 1;
    std::size_t l_angles = 10000;
    std::vector<double> l_radii{0.5, 1.0, 2.0};
    std::string l_out;
    auto *lemma = app.add_subcommand("lemma-check", "grid sweep of the four pointwise inequalities");
    lemma->add_option("--p", l_p, "exponent >= 2")->required();
    lemma->add_option("--ineq", l_ineq, "1, 2, 3 or 4")->required()->check(CLI::Range(1, 4));
    lemma->add_option("--angles", l_angles, "angles per radius");
    lemma->add_option("--radii", l_radii, "radii");
    lemma->add_option("--output", l_out, "output path");

    std::string g_map, g_out;
    double g_p = 2;
    std::size_t g_angles = 1024, g_radial = 512;
    auto *green = app.add_subcommand("green", "Green identity residual for F_p of a polynomial map");
    green->add_option("--map", g_map, "map spec")->required();
    green->add_option("--p", g_p, "exponent >= 2")->required();
    green->add_option("--angles", g_angles, "angular nodes");
    green->add_option("--radial", g_radial, "radial Gauss-Legendre nodes");
    green->add_option("--output", g_out, "output path");

    std::string gf_map, gf_out;
    double gf_p = 2;
    std::size_t gf_angles = 256;
    bool gf_cal = false;
    auto *gfun = app.add_subcommand("gfun", "Littlewood-Paley G-function samples and norm ratios");
    gfun->add_option("--map", gf_map, "analytic map spec");
    gfun->add_option("--p", gf_p, "exponent > 0");
    gfun->add_option("--angles", gf_angles, "angular samples");
    gfun->add_flag("--calibrate", gf_cal, "recompute the fixture brackets");
    gfun->add_option("--output", gf_out, "output path");

    extremal_args ea;
    auto *ext = app.add_subcommand("extremal", "sharpness experiments on the extremal gallery");
    ext->add_option("--family", ea.family, "hl_growth or hl_derivative")
        ->check(CLI::IsMember({"hl_growth", "hl_derivative"}));
    ext->add_option("--j", ea.j, "index j >= 0 (hl_growth)");
    ext->add_option("--K", ea.K, "K >= 1");
    ext->add_option("--p", ea.p, "p in (0,1) (hl_derivative)");
    ext->add_option("--epsilon", ea.epsilon, "epsilon (hl_derivative)");
    ext->add_flag("--deep", ea.deep, "k = 1..6 ladder");
    ext->add_option("--output", ea.output, "output path");

    theorem_args ta;
    auto *thm = app.add_subcommand("theorem", "run a theorem-level experiment and emit a verdict");
    thm->add_option("--id", ta.cfg.theorem, "theorem id")->required()->check(CLI::IsMember(theorem_ids()));
    thm->add_option("--p", ta.cfg.p, "exponents");
    thm->add_option("--K", ta.cfg.K, "K >= 1");
    thm->add_option("--Kprime", ta.cfg.Kprime, "K' >= 0");
    thm->add_option("--seed", ta.cfg.seed, "corpus seed");
    thm->add_option("--count", ta.cfg.count, "corpus size");
    thm->add_option("--max-degree", ta.cfg.max_degree, "corpus polynomial degree bound");
    thm->add_option("--j", ta.cfg.j, "gallery indices (hl_growth)");
    thm->add_option("--epsilon", ta.cfg.epsilon, "epsilon (hl_derivative)");
    thm->add_option("--grid-radii", ta.cfg.grid.n_radii, "certification grid radii");
    thm->add_option("--grid-angles", ta.cfg.grid.n_angles, "certification grid angles");
    thm->add_option("--grid-rmax", ta.cfg.grid.r_max, "certification grid outer radius");
    thm->add_option("--map", ta.maps, "extra map specs (repeatable)");
    thm->add_flag("--no-corpus", ta.no_corpus, "evaluate only the --map inputs");
    thm->add_flag("--deep", ta.deep, "k = 1..6 ladder");
    thm->add_flag("--strict", ta.strict, "treat skips as failures");
    thm->add_flag("--calibrate", ta.calibrate, "print calibration ratios (riesz_kk)");
    thm->add_option("--format", ta.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    thm->add_option("--output", ta.output, "output path");

    std::string r_in, r_format = "json", r_out;
    bool r_strict = false;
    auto *rep = app.add_subcommand("report", "re-emit a saved verdict as JSON or CSV");
    rep->add_option("--input", r_in, "verdict JSON")->required();
    rep->add_option("--format", r_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    rep->add_option("--output", r_out, "output path");
    rep->add_flag("--strict", r_strict, "treat skips as failures");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*means) {
            return run_means(ma);
        }
        if (*conj) {
            return run_conjugate(cj_map, cj_out);
        }
        if (*cons) {
            return run_constants(c_p, c_K, c_out);
        }
        if (*lemma) {
            return run_lemma(l_p, l_ineq, l_angles, l_radii, l_out);
        }
        if (*green) {
            return run_green(g_map, g_p, g_angles, g_radial, g_out);
        }
        if (*gfun) {
            return run_gfun(gf_map, gf_p, gf_angles, gf_cal, gf_out);
        }
        if (*ext) {
            return run_extremal(ea);
        }
        if (*thm) {
            ta.p_given = thm->count("--p") > 0;
            return run_theorem(ta);
        }
        if (*rep) {
            return run_report(r_in, r_format, r_out, r_strict);
        }
    } catch (const CLI::Error &e) {
        std::cerr << "qrmeans: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "qrmeans: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
