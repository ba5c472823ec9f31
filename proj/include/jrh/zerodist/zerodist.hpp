#pragma once
#include "jrh/geometry/geometry.hpp"
#include "jrh/reference/zeros.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace jrh {

// ---------------------------------------------------------------- density

/// Density of the measure (A+B+2)/(2 pi i) R(z)/(z^2-1) dz with respect to
/// arclength at a point of `arc`, signed by the arc orientation. R is taken
/// from the stored samples, so on Gamma_C it is the + boundary value.
inline BigReal arc_density(const Geometry& g, const Arc& arc, const BigComplex& zin) {
    PrecisionGuard guard(g.bits());
    BigComplex z = at_prec(zin);
    if (arc.points.size() < 2) throw NotOnArc("arc has no segments");
    auto pl = arc.polyline();
    std::complex<double> zd = to_double(z);
    auto hit = poly::nearest(pl, zd);
    if (hit.distance > 1e-3 * g.scale()) throw NotOnArc("point is not on " + arc_name(arc.kind));
    size_t i = hit.segment;
    size_t j = std::min(i + 1, pl.size() - 1);
    if (j == i) i = j - 1;
    // nearest stored vertex carries the branch of R
    size_t v = std::abs(zd - pl[i]) <= std::abs(zd - pl[j]) ? i : j;
    BigComplex Rv = arc.root[v];
    if (abs(Rv) == 0) Rv = arc.root[v == i ? j : i];
    BigComplex R = root_near(z, g.branch(), Rv);
    BigComplex dphi = phase_derivative(z, R, g.branch().kappa);
    BigReal mag = abs(dphi) / big_pi();
    // along a trajectory dphi/ds is imaginary; orientation picks the sign
    std::complex<double> t = pl[j] - pl[i];
    std::complex<double> d = to_double(dphi);
    double s = (d * t / std::complex<double>(0, 1)).real();
    return s >= 0 ? mag : BigReal(-mag);
}

/// Density of mu along one of the critical arcs.
inline BigReal mu_density(const Geometry& g, ArcKind k, const BigComplex& z) {
    if (!is_critical(k)) throw InvalidInput("mu lives on Gamma_L, Gamma_C, Gamma_R");
    return arc_density(g, g.arc(k), z);
}

/// Cumulative mass of the measure along an arc, by quadrature of the
/// analytic density between consecutive stored points.
struct ArcMeasure {
    ArcKind kind{};
    std::vector<std::complex<double>> poly;
    std::vector<double> cumulative;  // mass from the start to each vertex
    BigComplex mass;                  // total; imaginary part is quadrature noise
    BigReal error{0};
};

inline ArcMeasure measure_arc(const Geometry& g, const Arc& arc, double tol = 1e-20) {
    PrecisionGuard guard(g.bits());
    const BranchPoints& bp = g.branch();
    ArcMeasure m;
    m.kind = arc.kind;
    std::vector<BigComplex> pts = arc.points;
    std::vector<BigComplex> roots = arc.root;
    if (arc.closed() && abs(pts.front() - pts.back()) > 0) {
        pts.push_back(pts.front());
        roots.push_back(roots.front());
    }
    const BigComplex pi_i(BigReal(0), big_pi());
    const BigReal eps_bp = BigReal(1e-30);
    auto at_branch = [&](const BigComplex& z) {
        return abs(z - bp.zeta_plus) < eps_bp || abs(z - bp.zeta_minus) < eps_bp;
    };
    const size_t nseg = pts.size() - 1;
    BigReal seg_tol = BigReal(tol) / BigReal(static_cast<long>(std::max<size_t>(nseg, 1)));
    m.poly.reserve(pts.size());
    m.cumulative.reserve(pts.size());
    m.poly.push_back(to_double(pts[0]));
    m.cumulative.push_back(0.0);
    BigComplex acc;
    for (size_t i = 0; i < nseg; ++i) {
        bool s0 = at_branch(pts[i]), s1 = at_branch(pts[i + 1]);
        SqrtEnd sing = s0 && s1 ? SqrtEnd::Both : s0 ? SqrtEnd::Start : s1 ? SqrtEnd::End : SqrtEnd::None;
        // pin the branch at an end where R is nonzero
        size_t ref = s0 ? i + 1 : i;
        QuadResult q = phase_increment(bp, pts[i], pts[i + 1], pts[ref], roots[ref], seg_tol, sing);
        acc += q.value / pi_i;
        m.error += q.error / big_pi();
        m.poly.push_back(to_double(pts[i + 1]));
        m.cumulative.push_back(static_cast<double>(acc.re));
    }
    m.mass = acc;
    return m;
}

struct ArcMasses {
    std::array<Rational, 3> closed_form;  // L, C, R
    std::array<BigComplex, 3> quadrature;
    BigReal error{0};
};

inline ArcMasses arc_masses(const Geometry& g, double tol = 1e-20) {
    const Rational& A = g.params().A;
    const Rational& B = g.params().B;
    ArcMasses out;
    out.closed_form = {Rational(1) + A, Rational(-1) - A - B, Rational(1) + B};
    const ArcKind ks[3] = {ArcKind::GammaL, ArcKind::GammaC, ArcKind::GammaR};
    for (int i = 0; i < 3; ++i) {
        ArcMeasure m = measure_arc(g, g.arc(ks[i]), tol);
        out.quadrature[static_cast<size_t>(i)] = m.mass;
        out.error += m.error;
    }
    return out;
}

/// Masses of the three closed curves formed by pairs of critical arcs,
/// alongside the residues of the density at +1, -1 and infinity.
struct ResidueCheck {
    std::string name;
    BigReal quadrature{0};
    BigReal residue{0};
    Rational expected;
};

inline std::vector<ResidueCheck> residue_identities(const Geometry& g, double tol = 1e-20) {
    PrecisionGuard guard(g.bits());
    ArcMasses m = arc_masses(g, tol);
    const Rational& A = g.params().A;
    const Rational& B = g.params().B;
    const BigReal kappa = g.branch().kappa;
    auto re = [&](int i) { return BigReal(m.quadrature[static_cast<size_t>(i)].re); };
    std::vector<ResidueCheck> out;
    // 2 kappa res_{z=1} R/(z^2-1) = kappa R(1), likewise at -1
    out.push_back({"Gamma_C+Gamma_R", re(1) + re(2), kappa * g.R(BigComplex(BigReal(1))).re, -A});
    out.push_back({"Gamma_L+Gamma_C", re(0) + re(1), -kappa * g.R(BigComplex(BigReal(-1))).re, -B});
    out.push_back({"Gamma_L+Gamma_R", re(0) + re(2), kappa * 2, A + B + 2});
    return out;
}

// ---------------------------------------------------------------- exponents

enum class ExponentMode { LimitGiven, FiniteN };

struct RateExponents {
    double r_alpha = 0, r_beta = 0, r_alphabeta = 0;
    ExponentMode mode = ExponentMode::LimitGiven;
    int n = 0;

    static RateExponents limit(double ra, double rb, double rab) {
        return {ra, rb, rab, ExponentMode::LimitGiven, 0};
    }
    /// Width of the band inside which two exponents count as equal.
    double tolerance() const {
        if (mode == ExponentMode::LimitGiven) return 1e-12;
        return std::max(0.02, 5.0 / n);
    }
};

namespace detail {
inline double minus_log_dist(const Rational& x, int n, const char* what) {
    Rational d = dist_to_integer(x);
    if (d == 0) throw ExactInteger(std::string(what) + " is an integer; the exponent is infinite");
    PrecisionGuard guard(128);
    return static_cast<double>(-log(to_big(d)) / n);
}
}  // namespace detail

/// r = -(1/n) ln dist(., Z) from exact rational distances.
inline RateExponents rate_exponents(const Rational& alpha, const Rational& beta, int n) {
    if (n < 1) throw InvalidInput("n must be >= 1");
    RateExponents e;
    e.mode = ExponentMode::FiniteN;
    e.n = n;
    e.r_alpha = detail::minus_log_dist(alpha, n, "alpha");
    e.r_beta = detail::minus_log_dist(beta, n, "beta");
    e.r_alphabeta = detail::minus_log_dist(alpha + beta, n, "alpha+beta");
    return e;
}

// ---------------------------------------------------------------- attractor

enum class AttractorCase { A, B, C, D };

inline char case_letter(AttractorCase c) { return "ABCD"[static_cast<int>(c)]; }

struct CaseDecision {
    AttractorCase which = AttractorCase::A;
    double r = 0;
};

/// Picks one of the four cases: all equal; alpha and beta equal and below the
/// sum; alpha and the sum equal and below beta; beta and the sum equal and
/// below alpha.
inline CaseDecision decide_case(const RateExponents& e) {
    const double tol = e.tolerance();
    const double ra = e.r_alpha, rb = e.r_beta, rs = e.r_alphabeta;
    auto eq = [&](double x, double y) { return std::abs(x - y) < tol; };
    double lo = std::min({ra, rb, rs}), hi = std::max({ra, rb, rs});
    if (hi - lo < tol) return {AttractorCase::A, 0.0};
    if (eq(ra, rb) && rs > std::max(ra, rb)) return {AttractorCase::B, (rs - ra) / 2};
    if (eq(ra, rs) && rb > std::max(ra, rs)) return {AttractorCase::C, (ra - rb) / 2};
    if (eq(rb, rs) && ra > std::max(rb, rs)) return {AttractorCase::D, (rb - ra) / 2};
    throw InconsistentExponents("no two of the exponents agree with the third one larger (r_alpha = " +
                                std::to_string(ra) + ", r_beta = " + std::to_string(rb) +
                                ", r_alpha+beta = " + std::to_string(rs) + ")");
}

struct AttractorPrediction {
    AttractorCase which = AttractorCase::A;
    double r = 0;
    std::vector<Arc> arcs;  // canonical order
    std::vector<ArcMeasure> measures;
    BigReal total_mass{0};
    const Geometry* geometry = nullptr;

    /// Signed arclength density on arc i at z.
    BigReal density(size_t i, const BigComplex& z) const { return arc_density(*geometry, arcs.at(i), z); }
};

inline constexpr double kMassTolerance = 1e-6;

inline AttractorPrediction predict_attractor(const RateExponents& e, const Geometry& g, double tol = 1e-20) {
    CaseDecision d = decide_case(e);
    AttractorPrediction p;
    p.which = d.which;
    p.r = d.r;
    p.geometry = &g;
    switch (d.which) {
        case AttractorCase::A:
            p.arcs = {g.arc(ArcKind::GammaL), g.arc(ArcKind::GammaC), g.arc(ArcKind::GammaR)};
            break;
        case AttractorCase::B:
            p.arcs = {g.arc(ArcKind::GammaC), g.level_set(BigReal(d.r), ArcKind::LevelOuter)};
            break;
        case AttractorCase::C:
            p.arcs = {g.arc(ArcKind::GammaR), g.level_set(BigReal(d.r), ArcKind::LevelM1)};
            break;
        case AttractorCase::D:
            p.arcs = {g.arc(ArcKind::GammaL), g.level_set(BigReal(d.r), ArcKind::LevelP1)};
            break;
    }
    PrecisionGuard guard(g.bits());
    for (auto& a : p.arcs) {
        p.measures.push_back(measure_arc(g, a, tol));
        p.total_mass += p.measures.back().mass.re;
    }
    if (abs(p.total_mass - BigReal(1)) > BigReal(kMassTolerance))
        throw InvariantViolation("attractor measure has total mass " + to_string(p.total_mass, 12));
    return p;
}

// ---------------------------------------------------------------- comparison

struct ZeroAssignment {
    std::complex<double> z;
    int arc = -1;
    double distance = 0;
    double position = 0;  // predicted cumulative mass at the projection
};

struct ZeroComparison {
    double max_dist = 0;
    std::vector<int> per_arc_counts;
    std::vector<double> per_arc_expected;
    double cdf_sup_dev = 0;
    std::vector<ZeroAssignment> assignments;

    double fraction_within(double d) const {
        if (assignments.empty()) return 1.0;
        size_t k = 0;
        for (auto& a : assignments)
            if (a.distance <= d) ++k;
        return static_cast<double>(k) / static_cast<double>(assignments.size());
    }
};

/// Nearest-arc assignment, distances and a Kolmogorov type deviation between
/// the empirical distribution and the predicted one. Arcs are concatenated in
/// their canonical order.
inline ZeroComparison compare_zeros(const std::vector<std::complex<double>>& zeros, const AttractorPrediction& p) {
    ZeroComparison out;
    const size_t na = p.measures.size();
    out.per_arc_counts.assign(na, 0);
    std::vector<double> offset(na, 0.0);
    double total = 0;
    for (size_t i = 0; i < na; ++i) {
        offset[i] = total;
        double m = static_cast<double>(p.measures[i].mass.re);
        out.per_arc_expected.push_back(m * static_cast<double>(zeros.size()));
        total += m;
    }
    for (auto z : zeros) {
        ZeroAssignment a;
        a.z = z;
        a.distance = 1e300;
        for (size_t i = 0; i < na; ++i) {
            auto hit = poly::nearest(p.measures[i].poly, z);
            if (hit.distance < a.distance) {
                a.distance = hit.distance;
                a.arc = static_cast<int>(i);
                const auto& cum = p.measures[i].cumulative;
                size_t s = hit.segment;
                double t = std::clamp(hit.t, 0.0, 1.0);
                a.position = offset[i] + cum[s] + t * (cum[std::min(s + 1, cum.size() - 1)] - cum[s]);
            }
        }
        out.max_dist = std::max(out.max_dist, a.distance);
        ++out.per_arc_counts[static_cast<size_t>(a.arc)];
        out.assignments.push_back(a);
    }
    std::vector<double> pos;
    for (auto& a : out.assignments) pos.push_back(a.position / total);
    std::sort(pos.begin(), pos.end());
    const double N = static_cast<double>(pos.size());
    for (size_t i = 0; i < pos.size(); ++i) {
        double lo = static_cast<double>(i) / N, hi = static_cast<double>(i + 1) / N;
        out.cdf_sup_dev = std::max({out.cdf_sup_dev, std::abs(pos[i] - lo), std::abs(hi - pos[i])});
    }
    return out;
}

inline ZeroComparison compare_zeros(const ZeroSet& zs, const AttractorPrediction& p) {
    std::vector<std::complex<double>> z;
    for (auto& w : zs.zeros) z.push_back(to_double(w));
    return compare_zeros(z, p);
}

}  // namespace jrh
