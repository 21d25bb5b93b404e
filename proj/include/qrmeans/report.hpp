#ifndef QRMEANS_REPORT_HPP
#define QRMEANS_REPORT_HPP

// Verdicts of theorem-level experiments and their JSON / CSV serialization.
// Non-finite numbers are written as the strings "inf", "-inf", "nan".

#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#ifndef QRMEANS_VERSION
#define QRMEANS_VERSION "unknown"
#endif

namespace qrmeans
{

inline std::string version_string()
{
    return QRMEANS_VERSION;
}

enum class status { pass, fail, skip };

inline const char *to_string(status s)
{
    switch (s) {
    case status::pass:
        return "PASS";
    case status::fail:
        return "FAIL";
    case status::skip:
        return "SKIP";
    }
    return "?";
}

inline status status_from_string(const std::string &s)
{
    if (s == "PASS") {
        return status::pass;
    }
    if (s == "FAIL") {
        return status::fail;
    }
    if (s == "SKIP") {
        return status::skip;
    }
    throw std::invalid_argument("unknown status: " + s);
}

struct map_record {
    std::string map;
    status outcome = status::pass;
    std::string reason;
    double slack = 0; // governing slack; >= -tolerance on PASS
    std::map<std::string, double> metrics;
    std::map<std::string, std::vector<double>> series;
};

struct verdict {
    std::string theorem;
    std::string version = version_string();
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    std::vector<map_record> records;

    [[nodiscard]] std::size_t count(status s) const
    {
        std::size_t n = 0;
        for (const auto &r : records) {
            n += r.outcome == s ? 1 : 0;
        }
        return n;
    }
    // PASS unless some record failed; skips count as failures only when strict.
    [[nodiscard]] bool passed(bool strict = false) const
    {
        return count(status::fail) == 0 && (!strict || count(status::skip) == 0);
    }
};

namespace detail
{

inline bool same_double(double a, double b)
{
    return (std::isnan(a) && std::isnan(b)) || a == b;
}

} // namespace detail

inline bool operator==(const map_record &a, const map_record &b)
{
    if (a.map != b.map || a.outcome != b.outcome || a.reason != b.reason || !detail::same_double(a.slack, b.slack)
        || a.metrics.size() != b.metrics.size() || a.series.size() != b.series.size()) {
        return false;
    }
    for (auto ia = a.metrics.begin(), ib = b.metrics.begin(); ia != a.metrics.end(); ++ia, ++ib) {
        if (ia->first != ib->first || !detail::same_double(ia->second, ib->second)) {
            return false;
        }
    }
    for (auto ia = a.series.begin(), ib = b.series.begin(); ia != a.series.end(); ++ia, ++ib) {
        if (ia->first != ib->first || ia->second.size() != ib->second.size()) {
            return false;
        }
        for (std::size_t i = 0; i < ia->second.size(); ++i) {
            if (!detail::same_double(ia->second[i], ib->second[i])) {
                return false;
            }
        }
    }
    return true;
}

inline bool operator==(const verdict &a, const verdict &b)
{
    return a.theorem == b.theorem && a.version == b.version && a.config == b.config && a.records == b.records;
}

inline nlohmann::ordered_json number_to_json(double x)
{
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    return x;
}

inline double number_from_json(const nlohmann::ordered_json &j)
{
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "nan") {
            return std::nan("");
        }
        if (s == "inf") {
            return INFINITY;
        }
        if (s == "-inf") {
            return -INFINITY;
        }
        throw std::invalid_argument("not a number: " + s);
    }
    return j.get<double>();
}

inline nlohmann::ordered_json to_json(const map_record &r)
{
    nlohmann::ordered_json j;
    j["map"] = r.map;
    j["status"] = to_string(r.outcome);
    j["reason"] = r.reason;
    j["slack"] = number_to_json(r.slack);
    auto m = nlohmann::ordered_json::object();
    for (const auto &[k, v] : r.metrics) {
        m[k] = number_to_json(v);
    }
    j["metrics"] = m;
    auto s = nlohmann::ordered_json::object();
    for (const auto &[k, v] : r.series) {
        auto a = nlohmann::ordered_json::array();
        for (double x : v) {
            a.push_back(number_to_json(x));
        }
        s[k] = a;
    }
    j["series"] = s;
    return j;
}

inline map_record record_from_json(const nlohmann::ordered_json &j)
{
    map_record r;
    r.map = j.at("map").get<std::string>();
    r.outcome = status_from_string(j.at("status").get<std::string>());
    r.reason = j.at("reason").get<std::string>();
    r.slack = number_from_json(j.at("slack"));
    for (const auto &[k, v] : j.at("metrics").items()) {
        r.metrics[k] = number_from_json(v);
    }
    for (const auto &[k, v] : j.at("series").items()) {
        auto &dst = r.series[k];
        for (const auto &x : v) {
            dst.push_back(number_from_json(x));
        }
    }
    return r;
}

inline nlohmann::ordered_json to_json(const verdict &v)
{
    nlohmann::ordered_json j;
    j["theorem"] = v.theorem;
    j["version"] = v.version;
    j["config"] = v.config;
    j["status"] = v.passed() ? "PASS" : "FAIL";
    j["summary"] = {{"pass", v.count(status::pass)}, {"fail", v.count(status::fail)}, {"skip", v.count(status::skip)}};
    auto recs = nlohmann::ordered_json::array();
    for (const auto &r : v.records) {
        recs.push_back(to_json(r));
    }
    j["records"] = recs;
    return j;
}

inline verdict verdict_from_json(const nlohmann::ordered_json &j)
{
    verdict v;
    v.theorem = j.at("theorem").get<std::string>();
    v.version = j.at("version").get<std::string>();
    v.config = j.at("config");
    for (const auto &r : j.at("records")) {
        v.records.push_back(record_from_json(r));
    }
    return v;
}

inline std::string serialize(const verdict &v)
{
    return to_json(v).dump(2) + "\n";
}

inline verdict parse_verdict(const std::string &text)
{
    return verdict_from_json(nlohmann::ordered_json::parse(text));
}

namespace detail
{

inline std::string csv_field(const std::string &s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
}

inline std::string csv_number(double x)
{
    const auto j = number_to_json(x);
    return j.is_string() ? j.get<std::string>() : j.dump();
}

} // namespace detail

// One row per map record; metric columns are the sorted union over records.
inline void write_csv(std::ostream &os, const verdict &v)
{
    std::set<std::string> keys;
    for (const auto &r : v.records) {
        for (const auto &kv : r.metrics) {
            keys.insert(kv.first);
        }
    }
    os << "theorem,map,status,slack,reason";
    for (const auto &k : keys) {
        os << ',' << detail::csv_field(k);
    }
    os << '\n';
    for (const auto &r : v.records) {
        os << detail::csv_field(v.theorem) << ',' << detail::csv_field(r.map) << ',' << to_string(r.outcome) << ','
           << detail::csv_number(r.slack) << ',' << detail::csv_field(r.reason);
        for (const auto &k : keys) {
            os << ',';
            if (auto it = r.metrics.find(k); it != r.metrics.end()) {
                os << detail::csv_number(it->second);
            }
        }
        os << '\n';
    }
}

} // namespace qrmeans

#endif
