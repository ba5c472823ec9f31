#pragma once
#include "jrh/io/parse.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

namespace jrh {

/// Everything a run depends on. Rationals are kept as canonical text so the
/// file is exact and a run is reproducible from it alone.
struct RunConfig {
    std::string command;
    std::optional<Rational> A, B, alpha, beta;
    int n = 100;
    unsigned prec_bits = 128;
    double tol = 1e-30;
    std::string out = "out";
    std::vector<double> levels;
    std::vector<int> ns;
    std::vector<std::string> points;  // "re,im"
    std::uint64_t seed = 1;
};

inline nlohmann::json to_json(const RunConfig& c) {
    nlohmann::json j;
    auto opt = [](const std::optional<Rational>& q) -> nlohmann::json {
        return q ? nlohmann::json(rational_text(*q)) : nlohmann::json(nullptr);
    };
    j["command"] = c.command;
    j["A"] = opt(c.A);
    j["B"] = opt(c.B);
    j["alpha"] = opt(c.alpha);
    j["beta"] = opt(c.beta);
    j["n"] = c.n;
    j["prec_bits"] = c.prec_bits;
    j["tol"] = c.tol;
    j["out"] = c.out;
    j["levels"] = c.levels;
    j["ns"] = c.ns;
    j["points"] = c.points;
    j["seed"] = c.seed;
    return j;
}

inline RunConfig config_from_json(const nlohmann::json& j) {
    RunConfig c;
    try {
        auto opt = [&](const char* k) -> std::optional<Rational> {
            if (!j.contains(k) || j.at(k).is_null()) return std::nullopt;
            return parse_rational(j.at(k).get<std::string>());
        };
        if (j.contains("command")) c.command = j.at("command").get<std::string>();
        c.A = opt("A");
        c.B = opt("B");
        c.alpha = opt("alpha");
        c.beta = opt("beta");
        if (j.contains("n")) c.n = j.at("n").get<int>();
        if (j.contains("prec_bits")) c.prec_bits = j.at("prec_bits").get<unsigned>();
        if (j.contains("tol")) c.tol = j.at("tol").get<double>();
        if (j.contains("out")) c.out = j.at("out").get<std::string>();
        if (j.contains("levels")) c.levels = j.at("levels").get<std::vector<double>>();
        if (j.contains("ns")) c.ns = j.at("ns").get<std::vector<int>>();
        if (j.contains("points")) c.points = j.at("points").get<std::vector<std::string>>();
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("bad config: ") + e.what());
    }
    return c;
}

inline std::string dump_config(const RunConfig& c) { return to_json(c).dump(2) + "\n"; }

inline RunConfig parse_config(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("config is not valid JSON: ") + e.what());
    }
    return config_from_json(j);
}

/// Overrides from JRH_* environment variables (JRH_A, JRH_N, JRH_PREC_BITS, ...).
inline void apply_environment(RunConfig& c) {
    auto env = [](const char* k) -> std::optional<std::string> {
        const char* v = std::getenv(k);
        if (!v || !*v) return std::nullopt;
        return std::string(v);
    };
    auto to_int = [](const std::string& s, const char* name) {
        try {
            size_t pos = 0;
            long v = std::stol(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw InvalidInput(std::string(name) + " must be an integer");
        }
    };
    if (auto v = env("JRH_A")) c.A = parse_rational(*v);
    if (auto v = env("JRH_B")) c.B = parse_rational(*v);
    if (auto v = env("JRH_ALPHA")) c.alpha = parse_rational(*v);
    if (auto v = env("JRH_BETA")) c.beta = parse_rational(*v);
    if (auto v = env("JRH_N")) c.n = static_cast<int>(to_int(*v, "JRH_N"));
    if (auto v = env("JRH_PREC_BITS")) c.prec_bits = static_cast<unsigned>(to_int(*v, "JRH_PREC_BITS"));
    if (auto v = env("JRH_TOL")) {
        auto l = parse_double_list(*v);
        if (l.size() != 1) throw InvalidInput("JRH_TOL must be one number");
        c.tol = l[0];
    }
    if (auto v = env("JRH_OUT")) c.out = *v;
    if (auto v = env("JRH_LEVELS")) c.levels = parse_double_list(*v);
    if (auto v = env("JRH_SEED")) c.seed = static_cast<std::uint64_t>(to_int(*v, "JRH_SEED"));
}

}  // namespace jrh
