#pragma once
#include "jrh/asymptotics/asymptotics.hpp"
#include "jrh/io/config.hpp"
#include "jrh/io/writers.hpp"
#include "jrh/reference/jacobi.hpp"
#include "jrh/zerodist/zerodist.hpp"

#include <filesystem>
#include <random>

namespace jrh::cli {

namespace fs = std::filesystem;

/// Summary returned by every command; `files` lists what was written.
struct CommandResult {
    nlohmann::json summary;
    std::vector<std::string> files;
};

namespace detail {

inline std::string cfmt(const BigComplex& z) { return fmt(z.re) + (z.im < 0 ? "" : "+") + fmt(z.im) + "i"; }

inline nlohmann::json cjson(const BigComplex& z) { return {fmt(z.re), fmt(z.im)}; }

inline Rational need(const std::optional<Rational>& q, const Rational& fallback) { return q ? *q : fallback; }

inline GeometryOptions geometry_options(const RunConfig& c) {
    if (c.prec_bits < 64 || c.prec_bits > 4096) throw InvalidInput("prec-bits must lie in [64, 4096]");
    GeometryOptions o;
    o.prec_bits = c.prec_bits;
    return o;
}

inline void check_tol(const RunConfig& c) {
    if (!(c.tol > 0) || c.tol >= 1e-3) throw InvalidInput("tol must lie in (0, 1e-3)");
}

/// Files are written only after all computation succeeded, under the lock.
class Output {
public:
    explicit Output(const RunConfig& c) : dir_(c.out), lock_(dir_) { add("config.json", dump_config(c)); }
    void add(const std::string& name, const std::string& text) {
        write_text(dir_ / name, text);
        files_.push_back((dir_ / name).string());
    }
    const std::vector<std::string>& files() const { return files_; }

private:
    fs::path dir_;
    DirectoryLock lock_;
    std::vector<std::string> files_;
};

inline const char* arc_color(ArcKind k) {
    if (is_critical(k)) return "black";
    if (is_level(k)) return "#2a7ab0";
    return "#c0504d";
}

}  // namespace detail

// Defaults: the figure parameters for geometry and phase; for the asymptotic
// commands a pair whose (A+B)n is never an integer at the default degrees.
inline const Rational kDefaultA(-7, 10), kDefaultB(-8, 10);
inline const Rational kAsymA(-209, 300), kAsymB(-559, 700);

// ---------------------------------------------------------------- geometry
inline CommandResult cmd_geometry(const RunConfig& c) {
    ParameterPair pp = make_params(detail::need(c.A, kDefaultA), detail::need(c.B, kDefaultB));
    Geometry g(pp, detail::geometry_options(c));
    PrecisionGuard guard(g.bits());
    std::vector<Arc> levels;
    for (double r : c.levels) {
        if (r > 0) {
            levels.push_back(g.level_set(BigReal(r), ArcKind::LevelOuter));
        } else if (r < 0) {
            levels.push_back(g.level_set(BigReal(r), ArcKind::LevelM1));
            levels.push_back(g.level_set(BigReal(r), ArcKind::LevelP1));
        } else {
            throw InvalidInput("level 0 is Gamma itself");
        }
    }
    ArcMasses masses = arc_masses(g);

    CsvWriter csv({"arc", "level", "index", "re", "im"});
    SvgPlot svg;
    nlohmann::json arcs = nlohmann::json::array();
    auto emit = [&](const Arc& a) {
        for (size_t i = 0; i < a.points.size(); ++i)
            csv.row({arc_name(a.kind), fmt(a.level), std::to_string(i), fmt(a.points[i].re), fmt(a.points[i].im)});
        svg.polyline(a.polyline(), detail::arc_color(a.kind), is_critical(a.kind) ? 2.0 : 1.2, a.closed());
        arcs.push_back({{"arc", arc_name(a.kind)}, {"level", fmt(a.level)}, {"points", a.points.size()}});
    };
    int n_crit = 0, n_orth = 0;
    for (ArcKind k : g.arc_kinds()) {
        emit(g.arc(k));
        (is_critical(k) ? n_crit : n_orth)++;
    }
    for (auto& a : levels) emit(a);
    svg.dots({to_double(g.branch().zeta_plus), to_double(g.branch().zeta_minus)}, "black", 3.5);
    svg.dots({{-1, 0}, {1, 0}}, "#888888", 3.0);
    double L = 1.6 * std::max(std::abs(static_cast<double>(g.xi(ArcKind::GammaL))),
                              std::abs(static_cast<double>(g.xi(ArcKind::GammaR))));
    svg.clip(-L, L, -L, L);

    nlohmann::json s;
    s["command"] = "geometry";
    s["A"] = rational_text(pp.A);
    s["B"] = rational_text(pp.B);
    s["zeta_plus"] = detail::cjson(g.branch().zeta_plus);
    s["zeta_minus"] = detail::cjson(g.branch().zeta_minus);
    s["xi_L"] = fmt(g.xi(ArcKind::GammaL));
    s["xi_C"] = fmt(g.xi(ArcKind::GammaC));
    s["xi_R"] = fmt(g.xi(ArcKind::GammaR));
    s["critical_arcs"] = n_crit;
    s["orthogonal_arcs"] = n_orth;
    s["level_components"] = levels.size();
    s["arcs"] = arcs;
    const char* names[3] = {"Gamma_L", "Gamma_C", "Gamma_R"};
    for (size_t i = 0; i < 3; ++i)
        s["masses"][names[i]] = {{"closed_form", rational_text(masses.closed_form[i])},
                                 {"quadrature", fmt(masses.quadrature[i].re)}};
    s["ill_conditioned"] = pp.ill_conditioned;

    detail::Output out(c);
    out.add("arcs.csv", csv.str());
    out.add("geometry.svg", svg.str());
    out.add("geometry.json", s.dump(2) + "\n");
    return {s, out.files()};
}

// ---------------------------------------------------------------- phase
inline std::vector<std::pair<std::string, BigComplex>> requested_points(const RunConfig& c) {
    std::vector<std::pair<std::string, BigComplex>> pts;
    for (auto& p : c.points) pts.push_back({"z=" + p, from_double(parse_point(p))});
    return pts;
}

inline CommandResult cmd_phase(const RunConfig& c) {
    detail::check_tol(c);
    ParameterPair pp = make_params(detail::need(c.A, kDefaultA), detail::need(c.B, kDefaultB));
    auto g = std::make_shared<Geometry>(pp, detail::geometry_options(c));
    auto ph = std::make_shared<Phase>(g, PhaseOptions{c.tol});
    Asymptotics as(ph);
    PrecisionGuard guard(g->bits());
    auto pts = requested_points(c);
    if (pts.empty())
        for (auto& d : domain_sample_points(as)) pts.push_back({"domain " + region_name(d.region), d.z});

    CsvWriter csv({"label", "re", "im", "region", "phi_re", "phi_im", "quad_error"});
    for (auto& [label, z] : pts) {
        PhaseValue v = ph->phi(z);
        csv.row({label, fmt(z.re), fmt(z.im), region_name(g->classify(z).region), fmt(v.value.re), fmt(v.value.im),
                 fmt(v.error)});
    }
    nlohmann::json s;
    s["command"] = "phase";
    s["A"] = rational_text(pp.A);
    s["B"] = rational_text(pp.B);
    s["kappa"] = fmt(g->branch().kappa);
    s["c"] = detail::cjson(as.c());
    s["c_error"] = fmt(as.c_info().error);
    s["jumps"] = {{"gamma_1+", detail::cjson(ph->jump(ArcKind::GammaP1Plus))},
                  {"gamma_-1+", detail::cjson(ph->jump(ArcKind::GammaM1Plus))},
                  {"gamma_inf+", detail::cjson(ph->jump(ArcKind::GammaInfPlus))}};
    s["conformal_radius"] = as.delta();

    detail::Output out(c);
    out.add("phase.csv", csv.str());
    out.add("phase.json", s.dump(2) + "\n");
    return {s, out.files()};
}

// ---------------------------------------------------------------- zeros
/// alpha, beta from the config: explicit values win, else A n and B n.
inline std::pair<Rational, Rational> degree_parameters(const RunConfig& c, const Rational& A0, const Rational& B0) {
    if (c.n < 1) throw InvalidInput("n must be >= 1");
    Rational al = c.alpha ? *c.alpha : detail::need(c.A, A0) * c.n;
    Rational be = c.beta ? *c.beta : detail::need(c.B, B0) * c.n;
    return {al, be};
}

inline CommandResult cmd_zeros(const RunConfig& c) {
    auto [al, be] = degree_parameters(c, kDefaultA, kDefaultB);
    const int n = c.n;
    ParameterPair pp = make_params(al / n, be / n);
    RateExponents e;
    try {
        e = rate_exponents(al, be, n);
    } catch (const ExactInteger& ex) {
        throw ExactInteger(ex.detail() +
                           ". Integer alpha or beta factors a power of (x-1) or (x+1) out of the polynomial, and an "
                           "integer alpha+beta can lower its degree, so the attractor cases do not apply");
    }
    RationalPoly P = build_jacobi_monic(n, al, be);
    ZeroSet zs = find_zeros(P, c.prec_bits);
    Geometry g(pp, detail::geometry_options(c));
    AttractorPrediction pred = predict_attractor(e, g);
    ZeroComparison cmp = compare_zeros(zs, pred);

    PrecisionGuard guard(zs.precision_bits);
    CsvWriter csv({"index", "re", "im", "arc", "distance"});
    std::vector<std::complex<double>> zd;
    for (size_t i = 0; i < zs.zeros.size(); ++i) {
        const auto& a = cmp.assignments[i];
        csv.row({std::to_string(i), fmt(zs.zeros[i].re), fmt(zs.zeros[i].im),
                 arc_name(pred.arcs[static_cast<size_t>(a.arc)].kind), fmt(a.distance)});
        zd.push_back(a.z);
    }
    SvgPlot svg;
    for (auto& a : pred.arcs) svg.polyline(a.polyline(), detail::arc_color(a.kind), 1.5, a.closed());
    svg.dots(zd, "#d62728", 2.5);

    nlohmann::json s;
    s["command"] = "zeros";
    s["n"] = n;
    s["alpha"] = rational_text(al);
    s["beta"] = rational_text(be);
    s["exponents"] = {{"r_alpha", e.r_alpha}, {"r_beta", e.r_beta}, {"r_alphabeta", e.r_alphabeta},
                      {"tolerance", e.tolerance()}};
    s["case"] = std::string(1, case_letter(pred.which));
    s["r"] = pred.r;
    s["residual_bound"] = fmt(zs.residual_bound);
    s["precision_bits"] = zs.precision_bits;
    s["max_dist"] = cmp.max_dist;
    s["fraction_within_0.1"] = cmp.fraction_within(0.1);
    s["cdf_sup_dev"] = cmp.cdf_sup_dev;
    TextTable tt({"arc", "count", "expected"});
    for (size_t i = 0; i < pred.arcs.size(); ++i) {
        s["arcs"].push_back({{"arc", arc_name(pred.arcs[i].kind)},
                             {"count", cmp.per_arc_counts[i]},
                             {"expected", cmp.per_arc_expected[i]},
                             {"mass", fmt(pred.measures[i].mass.re)}});
        tt.row({arc_name(pred.arcs[i].kind), std::to_string(cmp.per_arc_counts[i]), fmt(cmp.per_arc_expected[i])});
    }
    std::string txt = "case " + std::string(1, case_letter(pred.which)) + "  r = " + fmt(pred.r) +
                      "\nmax_dist = " + fmt(cmp.max_dist) + "\ncdf_sup_dev = " + fmt(cmp.cdf_sup_dev) + "\n\n" +
                      tt.str();

    detail::Output out(c);
    out.add("zeros.csv", csv.str());
    out.add("zeros.svg", svg.str());
    out.add("report.json", s.dump(2) + "\n");
    out.add("report.txt", txt);
    return {s, out.files()};
}

// ---------------------------------------------------------------- asym / converge
struct Evaluation {
    std::string method;  // outer, local-, local+
    BigComplex value;
    Region region{};
};

/// Routing rule: inside the exclusion radius of a branch point the local
/// formula is used, elsewhere the outer one.
inline Evaluation evaluate_asymptotic(const Asymptotics& as, const BigComplex& z, int n) {
    const BranchPoints& bp = as.geometry().branch();
    Evaluation ev;
    if (abs(z - bp.zeta_minus) < BigReal(as.delta())) {
        ev.method = "local-";
        ev.value = as.local_eval(z, n);
        ev.region = as.geometry().classify(z).region;
    } else if (abs(z - bp.zeta_plus) < BigReal(as.delta())) {
        ev.method = "local+";
        ev.value = as.local_eval_plus(z, n);
        ev.region = as.geometry().classify(z).region;
    } else {
        OuterResult o = as.outer_eval(z, n);
        ev.method = "outer";
        ev.value = o.value;
        ev.region = o.domain.region;
    }
    return ev;
}

inline BigComplex oracle_value(int n, const Rational& al, const Rational& be, const BigComplex& z) {
    RationalPoly P = build_jacobi_monic(n, al, be);
    return at_prec(eval_poly_relative(P, z, 1e-30).value);
}

/// Default grid: one point per domain, then two points at half the conformal
/// radius from zeta- on seeded rays.
inline std::vector<std::pair<std::string, BigComplex>> default_grid(const Asymptotics& as, std::uint64_t seed) {
    std::vector<std::pair<std::string, BigComplex>> pts;
    for (auto& d : domain_sample_points(as)) pts.push_back({"domain " + region_name(d.region), d.z});
    std::mt19937_64 rng(seed);
    for (int k = 0; k < 2; ++k) {
        double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        double ang = 2 * M_PI * (k + u) / 2;
        pts.push_back({"near zeta- #" + std::to_string(k + 1),
                       as.geometry().branch().zeta_minus + polar(BigReal(as.delta() / 2), BigReal(ang))});
    }
    return pts;
}

inline CommandResult cmd_asym(const RunConfig& c) {
    detail::check_tol(c);
    ParameterPair pp = make_params(detail::need(c.A, kAsymA), detail::need(c.B, kAsymB));
    if (c.n < 1) throw InvalidInput("n must be >= 1");
    auto g = std::make_shared<Geometry>(pp, detail::geometry_options(c));
    auto ph = std::make_shared<Phase>(g, PhaseOptions{c.tol});
    Asymptotics as(ph);
    PrecisionGuard guard(g->bits());
    auto pts = requested_points(c);
    if (pts.empty()) pts = default_grid(as, c.seed);
    const Rational al = pp.A * c.n, be = pp.B * c.n;
    sine_data(al, be);
    CsvWriter csv({"label", "re", "im", "region", "method", "value_re", "value_im", "exact_re", "exact_im", "rel_err"});
    nlohmann::json rows = nlohmann::json::array();
    for (auto& [label, z] : pts) {
        Evaluation ev = evaluate_asymptotic(as, z, c.n);
        BigComplex ex = oracle_value(c.n, al, be, z);
        BigReal rel = abs(ev.value - ex) / abs(ex);
        csv.row({label, fmt(z.re), fmt(z.im), region_name(ev.region), ev.method, fmt(ev.value.re), fmt(ev.value.im),
                 fmt(ex.re), fmt(ex.im), fmt(rel)});
        rows.push_back({{"label", label}, {"method", ev.method}, {"rel_err", static_cast<double>(rel)}});
    }
    nlohmann::json s;
    s["command"] = "asym";
    s["A"] = rational_text(pp.A);
    s["B"] = rational_text(pp.B);
    s["n"] = c.n;
    s["conformal_radius"] = as.delta();
    s["points"] = rows;
    detail::Output out(c);
    out.add("asym.csv", csv.str());
    out.add("asym.json", s.dump(2) + "\n");
    return {s, out.files()};
}

inline CommandResult cmd_converge(const RunConfig& c) {
    detail::check_tol(c);
    ParameterPair pp = make_params(detail::need(c.A, kAsymA), detail::need(c.B, kAsymB));
    std::vector<int> ns = c.ns.empty() ? std::vector<int>{40, 80, 160} : c.ns;
    for (int n : ns)
        if (n < 1) throw InvalidInput("degrees must be >= 1");
    std::sort(ns.begin(), ns.end());
    auto g = std::make_shared<Geometry>(pp, detail::geometry_options(c));
    auto ph = std::make_shared<Phase>(g, PhaseOptions{c.tol});
    Asymptotics as(ph);
    PrecisionGuard guard(g->bits());
    auto pts = requested_points(c);
    if (pts.empty()) pts = default_grid(as, c.seed);

    CsvWriter csv({"n", "label", "region", "method", "rel_err", "order", "note"});
    TextTable tt({"n", "point", "region", "method", "rel_err", "order", "note"});
    nlohmann::json rows = nlohmann::json::array();
    for (auto& [label, z] : pts) {
        double prev_err = -1;
        int prev_n = 0;
        for (int n : ns) {
            const Rational al = pp.A * n, be = pp.B * n;
            std::string method, region, err_s, order_s, note;
            double err = -1, order = 0;
            bool has_order = false;
            try {
                Evaluation ev = evaluate_asymptotic(as, z, n);
                BigComplex ex = oracle_value(n, al, be, z);
                err = static_cast<double>(abs(ev.value - ex) / abs(ex));
                method = ev.method;
                region = region_name(ev.region);
                err_s = fmt(err);
                if (prev_err > 0 && err > 0) {
                    order = std::log(prev_err / err) / std::log(static_cast<double>(n) / prev_n);
                    has_order = true;
                    order_s = fmt(order);
                }
                prev_err = err;
                prev_n = n;
            } catch (const IntegerResonance&) {
                note = "IntegerResonance: (A+B)n is an integer, row skipped";
            }
            csv.row({std::to_string(n), label, region, method, err_s, order_s, note});
            tt.row({std::to_string(n), label, region, method, err_s, order_s, note});
            nlohmann::json r = {{"n", n}, {"label", label}, {"region", region}, {"method", method}, {"note", note}};
            r["rel_err"] = err >= 0 ? nlohmann::json(err) : nlohmann::json(nullptr);
            r["order"] = has_order ? nlohmann::json(order) : nlohmann::json(nullptr);
            rows.push_back(r);
        }
    }
    nlohmann::json s;
    s["command"] = "converge";
    s["A"] = rational_text(pp.A);
    s["B"] = rational_text(pp.B);
    s["ns"] = ns;
    s["conformal_radius"] = as.delta();
    s["rows"] = rows;
    detail::Output out(c);
    out.add("converge.csv", csv.str());
    out.add("converge.txt", tt.str());
    out.add("converge.json", s.dump(2) + "\n");
    return {s, out.files()};
}

inline CommandResult run_command(const RunConfig& c) {
    if (c.command == "geometry") return cmd_geometry(c);
    if (c.command == "phase") return cmd_phase(c);
    if (c.command == "zeros") return cmd_zeros(c);
    if (c.command == "asym") return cmd_asym(c);
    if (c.command == "converge") return cmd_converge(c);
    throw InvalidInput("unknown command '" + c.command + "'");
}

}  // namespace jrh::cli
