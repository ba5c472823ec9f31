#include "jrh/cli/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

struct Flags {
    std::string A, B, alpha, beta, tol, out, levels, config, ns;
    int n = 0;
    unsigned prec_bits = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> points;
};

void add_flags(CLI::App* sub, Flags& f) {
    sub->add_option("--A", f.A, "limit ratio alpha/n, e.g. -0.7 or -7/10");
    sub->add_option("--B", f.B, "limit ratio beta/n");
    sub->add_option("--n", f.n, "degree");
    sub->add_option("--alpha", f.alpha, "alpha as an exact expression, e.g. -70+1e-5");
    sub->add_option("--beta", f.beta, "beta as an exact expression");
    sub->add_option("--prec-bits", f.prec_bits, "working precision in bits");
    sub->add_option("--tol", f.tol, "quadrature tolerance");
    sub->add_option("--out", f.out, "output directory");
    sub->add_option("--levels", f.levels, "comma separated level values r");
    sub->add_option("--seed", f.seed, "seed for the deterministic grid jitter");
    sub->add_option("--config", f.config, "JSON run configuration");
    sub->add_option("--ns", f.ns, "comma separated degrees for converge");
    sub->add_option("--z", f.points, "evaluation point re,im (repeatable)");
}

jrh::RunConfig build_config(const std::string& command, const Flags& f, CLI::App* sub) {
    jrh::RunConfig c;
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        if (!in) throw jrh::InvalidInput("cannot read config " + f.config);
        std::stringstream ss;
        ss << in.rdbuf();
        c = jrh::parse_config(ss.str());
    }
    c.command = command;
    jrh::apply_environment(c);
    auto given = [&](const char* name) { return sub->count(name) > 0; };
    if (given("--A")) c.A = jrh::parse_rational(f.A);
    if (given("--B")) c.B = jrh::parse_rational(f.B);
    if (given("--alpha")) c.alpha = jrh::parse_rational(f.alpha);
    if (given("--beta")) c.beta = jrh::parse_rational(f.beta);
    if (given("--n")) c.n = f.n;
    if (given("--prec-bits")) c.prec_bits = f.prec_bits;
    if (given("--tol")) {
        auto v = jrh::parse_double_list(f.tol);
        if (v.size() != 1) throw jrh::InvalidInput("--tol takes one number");
        c.tol = v[0];
    }
    if (given("--out")) c.out = f.out;
    if (given("--levels")) c.levels = jrh::parse_double_list(f.levels);
    if (given("--seed")) c.seed = f.seed;
    if (given("--ns")) {
        c.ns.clear();
        for (double d : jrh::parse_double_list(f.ns)) c.ns.push_back(static_cast<int>(d));
    }
    if (given("--z")) c.points = f.points;
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Jacobi polynomials with varying negative parameters: geometry, phase, zeros and asymptotics"};
    app.require_subcommand(1);
    Flags f;
    std::vector<std::pair<std::string, CLI::App*>> subs;
    for (auto [name, help] : {std::pair{"geometry", "trace critical, orthogonal and level trajectories"},
                              std::pair{"phase", "phase function values, jumps and the constant c"},
                              std::pair{"zeros", "zeros, rate exponents and attractor comparison"},
                              std::pair{"asym", "asymptotic formulas against the exact polynomial"},
                              std::pair{"converge", "convergence table over several degrees"}}) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_flags(sub, f);
        subs.push_back({name, sub});
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        for (auto& [name, sub] : subs) {
            if (!sub->parsed()) continue;
            jrh::RunConfig cfg = build_config(name, f, sub);
            auto res = jrh::cli::run_command(cfg);
            for (auto& file : res.files) std::cout << file << "\n";
        }
    } catch (const jrh::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
