#pragma once
#include "jrh/asymptotics/airy.hpp"
#include "jrh/phase/phase.hpp"

#include <array>
#include <optional>

namespace jrh {

// ---------------------------------------------------------------- trig of pi x

/// sin(pi x) after exact range reduction, so tiny offsets from integers keep
/// their relative accuracy.
inline BigReal sin_pi(const Rational& x) {
    BigInt k;
    Rational r = frac_nearest(x, &k);
    BigReal v = sin(big_pi() * to_big(r));
    return (k % 2 != 0) ? BigReal(-v) : v;
}
inline BigReal cos_pi(const Rational& x) {
    BigInt k;
    Rational r = frac_nearest(x, &k);
    BigReal v = cos(big_pi() * to_big(r));
    return (k % 2 != 0) ? BigReal(-v) : v;
}
inline BigComplex exp_i_pi(const Rational& x) { return {cos_pi(x), sin_pi(x)}; }

/// Sine ratios and phases for alpha = A n, beta = B n.
struct SineData {
    BigComplex sin_ratio_A;  // sin(A n pi) / sin((A+B) n pi)
    BigComplex sin_ratio_B;  // sin(B n pi) / sin((A+B) n pi)
    BigComplex phase_A;      // e^{-A n pi i}
    BigComplex phase_B;      // e^{B n pi i}
    BigReal cot_part;        // cos((A+B) n pi) / sin((A+B) n pi)
    BigComplex diff_phase;   // e^{(B-A) n pi i}
    BigReal sin_sum;
};

inline constexpr double kResonanceThreshold = 1e-12;

inline SineData sine_data(const Rational& alpha, const Rational& beta) {
    Rational s = alpha + beta;
    if (dist_to_integer(s) < Rational(1, 1000000000000LL))
        throw IntegerResonance("(A+B)n is within 1e-12 of an integer");
    SineData d;
    d.sin_sum = sin_pi(s);
    d.sin_ratio_A = BigComplex(sin_pi(alpha) / d.sin_sum);
    d.sin_ratio_B = BigComplex(sin_pi(beta) / d.sin_sum);
    d.phase_A = exp_i_pi(-alpha);
    d.phase_B = exp_i_pi(beta);
    d.cot_part = cos_pi(s) / d.sin_sum;
    d.diff_phase = exp_i_pi(beta - alpha);
    return d;
}

// ---------------------------------------------------------------- results

struct OuterTerms {
    BigComplex N11, N12, prefactor, exp_plus, exp_minus, sin_ratio_A, sin_ratio_B, phase_A, phase_B;
};

struct OuterResult {
    BigComplex value;
    RegionLabel domain;
    OuterTerms terms;
    BigComplex term_plus, term_minus;  // the two bracketed terms times the prefactor
};

struct AiryValue {
    BigComplex A_val, A_deriv, s;
    BigReal form_gap{0};  // difference between the two representations
};

struct NAlternative {
    BigComplex alt11, alt12;  // square roots of (1 + R')/2 and (1 - R')/2, analytic off Gamma_C
    BigComplex R_prime;
};

struct AsymptoticsOptions {
    double delta_target_rel = 0.25;  // initial conformal radius relative to |zeta+ - zeta-|
    int delta_samples = 64;
    int delta_shrinks = 12;
};

struct OuterOptions {
    double exclusion_radius = -1;  // negative: use the conformal radius
};

/// Outer and local asymptotic formulas for the monic polynomials with
/// parameters alpha = A n, beta = B n for one limiting pair (A, B).
class Asymptotics {
public:
    explicit Asymptotics(std::shared_ptr<const Phase> phase, AsymptoticsOptions opt = {})
        : ph_(std::move(phase)), g_(&ph_->geometry()), opt_(opt) {
        PrecisionGuard guard(g_->bits());
        cinfo_ = ph_->constant_c();
        build_power_regions();
        compute_delta();
    }

    const Phase& phase() const { return *ph_; }
    const Geometry& geometry() const { return *g_; }
    const BigComplex& c() const { return cinfo_.value; }
    const ConstantC& c_info() const { return cinfo_; }
    double delta() const { return delta_; }

    Rational alpha(int n) const { return g_->params().A * n; }
    Rational beta(int n) const { return g_->params().B * n; }

    // ------------------------------------------------------------ N
    /// a(z) = ((z - zeta-)/(z - zeta+))^{1/4}, tending to 1 at infinity.
    BigComplex a_of(const BigComplex& z) const {
        BigComplex R = g_->R(z);
        return sqrt((z - g_->branch().zeta_minus) / R);
    }

    std::pair<BigComplex, BigComplex> N_entries(const BigComplex& zin) const {
        PrecisionGuard guard(g_->bits());
        BigComplex z = at_prec(zin);
        BigComplex a = a_of(z), ia = BigReal(1) / a;
        BigComplex n11 = (a + ia) / BigReal(2);
        BigComplex n12 = (a - ia) / (I_unit() * BigReal(2));
        return {n11, n12};
    }

    NAlternative N_alternative(const BigComplex& zin) const {
        PrecisionGuard guard(g_->bits());
        BigComplex z = at_prec(zin);
        const BranchPoints& bp = g_->branch();
        NAlternative out;
        BigComplex R = g_->R(z);
        out.R_prime = (z * BigReal(2) - bp.zeta_plus - bp.zeta_minus) / (R * BigReal(2));
        // Re N11 > 0 off Gamma_C, so the principal root is the right branch
        out.alt11 = sqrt((BigReal(1) + out.R_prime) / BigReal(2));
        // N11 N12 = (zeta+ - zeta-)/(4 i R) fixes the branch of the other root
        out.alt12 = (bp.zeta_plus - bp.zeta_minus) / (I_unit() * BigReal(4) * R * out.alt11);
        return out;
    }

    // ------------------------------------------------------------ powers
    /// arg(z - 1) (s = +1) or arg(z + 1) (s = -1) on the branch that is
    /// analytic off gamma_s^+ u gamma_inf^+ and zero on (1, inf).
    BigReal power_arg(const BigComplex& z, int s) const {
        BigComplex w = s > 0 ? z - BigReal(1) : z + BigReal(1);
        BigReal th = arg(w);
        const BigReal pi = big_pi();
        if (w.im == 0 && w.re < 0) return -pi;
        if (w.im > 0 && in_power_region(z, s)) th -= pi * 2;
        return th;
    }

    /// (z-1)^{-alpha/2} (z+1)^{-beta/2} without the constant.
    BigComplex powers(const BigComplex& zin, const Rational& alpha, const Rational& beta) const {
        PrecisionGuard guard(g_->bits());
        BigComplex z = at_prec(zin);
        BigComplex l1(log(abs(z - BigReal(1))), power_arg(z, 1));
        BigComplex l2(log(abs(z + BigReal(1))), power_arg(z, -1));
        return exp(-(l1 * to_big(alpha) + l2 * to_big(beta)) / BigReal(2));
    }

    /// e^{-nc} (z-1)^{-An/2} (z+1)^{-Bn/2}.
    BigComplex fractional_prefactor(const BigComplex& zin, int n) const {
        PrecisionGuard guard(g_->bits());
        BigComplex z = at_prec(zin);
        if (abs(z - BigReal(1)) == 0 || abs(z + BigReal(1)) == 0) throw AtPole("prefactor is singular at +-1");
        return exp(-(cinfo_.value * BigReal(n))) * powers(z, alpha(n), beta(n));
    }

    // ------------------------------------------------------------ outer formulas
    OuterResult outer_eval(const BigComplex& zin, int n, const OuterOptions& oo = {}) const {
        PrecisionGuard guard(g_->bits());
        BigComplex z = at_prec(zin);
        const Rational al = alpha(n), be = beta(n);
        SineData sd = sine_data(al, be);
        double excl = oo.exclusion_radius < 0 ? delta_ : oo.exclusion_radius;
        const BranchPoints& bp = g_->branch();
        if (abs(z - bp.zeta_minus) < BigReal(excl) || abs(z - bp.zeta_plus) < BigReal(excl))
            throw NearBranchPoint("point lies inside the exclusion disk around a branch point");
        OuterResult out;
        out.domain = g_->classify(z);
        auto [n11, n12] = N_entries(z);
        assemble(out, n11, n12, fractional_prefactor(z, n), phi_any(z), sd, n);
        return out;
    }

    /// One-sided limit of the outer formula at a point of an arc: phi and R
    /// take the boundary values of `side` (+ is the left of the arc), every
    /// other branch is continued from a probe just off the arc on that side,
    /// and the domain formula is the one of that side.
    OuterResult outer_eval_one_sided(const BigComplex& zin, int n, ArcKind arc, Side side) const {
        PrecisionGuard guard(g_->bits());
        BigComplex z = at_prec(zin);
        const Rational al = alpha(n), be = beta(n);
        SineData sd = sine_data(al, be);
        const BranchPoints& bp = g_->branch();
        const BigReal pi = big_pi();
        LocalPhase lp = g_->local_phase(arc, z);
        if (lp.distance > BigReal(g_->cut_tol())) throw NotOnArc("point is not on " + arc_name(arc));
        const Arc& a = g_->arc(arc);
        size_t i = std::min(lp.index, a.points.size() - 2);
        BigComplex t = a.points[i + 1] - a.points[i];
        BigComplex nrm = I_unit() * t / abs(t);
        double dsing = std::min({static_cast<double>(abs(z - bp.zeta_plus)), static_cast<double>(abs(z - bp.zeta_minus)),
                                 static_cast<double>(abs(z - BigReal(1))), static_cast<double>(abs(z + BigReal(1)))});
        BigReal h(std::min(0.25 * dsing, std::max(100 * g_->cut_tol(), 4 * g_->near_threshold())));
        BigComplex probe = z + nrm * (side == Side::Plus ? h : BigReal(-h));

        OuterResult out;
        out.domain = g_->classify(probe);
        out.domain.on_boundary = true;
        out.domain.boundary = arc_name(arc);
        const bool cut = arc == ArcKind::GammaC || arc == ArcKind::GammaInfPlus || arc == ArcKind::GammaM1Plus ||
                         arc == ArcKind::GammaP1Plus;
        BigComplex phi = cut ? ph_->phi_side(z, arc, side).value : ph_->phi(z).value;
        BigComplex R = arc == ArcKind::GammaC ? g_->R_boundary(z, side) : g_->R(z);
        BigComplex av = sqrt((z - bp.zeta_minus) / R);
        if (norm(av - a_of(probe)) > norm(av + a_of(probe))) av = -av;
        BigComplex ia = BigReal(1) / av;
        BigComplex n11 = (av + ia) / BigReal(2), n12 = (av - ia) / (I_unit() * BigReal(2));
        // branches of arg(z -+ 1) matched to the probe
        auto matched_log = [&](int s) {
            BigComplex w = s > 0 ? z - BigReal(1) : z + BigReal(1);
            BigReal th = arg(w), ref = power_arg(probe, s);
            while (th - ref > pi) th -= pi * 2;
            while (ref - th > pi) th += pi * 2;
            return BigComplex(log(abs(w)), th);
        };
        BigComplex pw = exp(-(matched_log(1) * to_big(al) + matched_log(-1) * to_big(be)) / BigReal(2));
        BigComplex pref = exp(-(cinfo_.value * BigReal(n))) * pw;
        assemble(out, n11, n12, pref, phi, sd, n);
        return out;
    }

    // ------------------------------------------------------------ Airy combination
    AiryValue airy_combination(const BigComplex& sin_, int n) const {
        PrecisionGuard guard(g_->bits());
        return airy_combination_for(at_prec(sin_), alpha(n), beta(n));
    }

    static AiryValue airy_combination_for(const BigComplex& s, const Rational& al, const Rational& be) {
        SineData sd = sine_data(al, be);
        const BigReal pi = big_pi();
        BigComplex w = polar(BigReal(1), pi * 2 / 3), w2 = w * w;
        AiryBase b1 = airy_base(w * s), b2 = airy_base(w2 * s), b0 = airy_base(s);
        AiryValue out;
        out.s = s;
        BigComplex k1 = -(sd.phase_B * sd.sin_ratio_A), k2 = sd.phase_A * sd.sin_ratio_B;
        out.A_val = k1 * w * b1.ai + k2 * w2 * b2.ai;
        out.A_deriv = k1 * w2 * b1.ai_prime + k2 * w * b2.ai_prime;
        // second representation through Ai and Bi
        BigComplex half_i = BigReal(1) / (I_unit() * BigReal(2));
        BigComplex coef = (BigComplex(sd.cot_part) - sd.diff_phase / sd.sin_sum) * half_i;
        BigComplex v2 = coef * b0.ai + half_i * b0.bi;
        BigComplex d2 = coef * b0.ai_prime + half_i * b0.bi_prime;
        BigReal g1 = abs(out.A_val - v2) / (abs(out.A_val) + abs(v2) + BigReal(1e-300));
        BigReal g2 = abs(out.A_deriv - d2) / (abs(out.A_deriv) + abs(d2) + BigReal(1e-300));
        out.form_gap = g1 > g2 ? g1 : g2;
        return out;
    }

    // ------------------------------------------------------------ local formula near zeta-
    /// f(z) = (3/2 phi(z))^{2/3}, positive on gamma_inf^-.
    BigComplex conformal_f(const BigComplex& zin) const {
        PrecisionGuard guard(g_->bits());
        BigComplex z = at_prec(zin);
        if (abs(z - g_->branch().zeta_minus) >= BigReal(delta_))
            throw OutsideConformalRadius("point lies outside the validated conformal disk");
        return f_raw(z);
    }

    /// ((z - zeta+)/(z - zeta-) f(z))^{1/4}, continued from gamma_inf^-.
    BigComplex quarter_factor(const BigComplex& zin) const {
        PrecisionGuard guard(g_->bits());
        BigComplex z = at_prec(zin);
        BigComplex h = h_of(z, f_raw(z));
        return q_ref_ * pow(h / h_ref_, BigReal(0.25));
    }

    BigComplex local_eval(const BigComplex& zin, int n) const {
        PrecisionGuard guard(g_->bits());
        BigComplex z = at_prec(zin);
        if (abs(z - g_->branch().zeta_minus) >= BigReal(delta_))
            throw OutsideConformalRadius("point lies outside the validated conformal disk");
        const Rational al = alpha(n), be = beta(n);
        sine_data(al, be);  // resonance gate
        BigComplex f = f_raw(z);
        BigComplex q = q_ref_ * pow(h_of(z, f) / h_ref_, BigReal(0.25));
        BigReal nn(n);
        BigReal n16 = pow(nn, BigReal(1) / 6), n23 = pow(nn, BigReal(2) / 3);
        AiryValue av = airy_combination_for(f * n23, al, be);
        BigComplex bracket = q * av.A_val * n16 + av.A_deriv / (q * n16);
        return fractional_prefactor(z, n) * sqrt(big_pi()) * I_unit() * bracket;
    }

    /// Local formula near zeta+ by conjugation symmetry (real parameters).
    BigComplex local_eval_plus(const BigComplex& z, int n) const { return conj(local_eval(conj(z), n)); }

private:
    static void assemble(OuterResult& out, const BigComplex& n11, const BigComplex& n12, const BigComplex& pref,
                         const BigComplex& phi, const SineData& sd, int n) {
        OuterTerms& t = out.terms;
        t.N11 = n11;
        t.N12 = n12;
        t.prefactor = pref;
        t.exp_plus = exp(phi * BigReal(n));
        t.exp_minus = exp(-(phi * BigReal(n)));
        t.sin_ratio_A = sd.sin_ratio_A;
        t.sin_ratio_B = sd.sin_ratio_B;
        t.phase_A = sd.phase_A;
        t.phase_B = sd.phase_B;
        BigComplex up = t.exp_plus * t.N11, dn = t.exp_minus * t.N12;
        BigComplex c1, c2;
        switch (out.domain.region) {
            case Region::I:
            case Region::II:
                c1 = BigComplex(BigReal(1));
                c2 = -(t.phase_A * t.sin_ratio_B);
                break;
            case Region::III:
                c1 = t.phase_B * t.sin_ratio_A;
                c2 = -(t.phase_A * t.sin_ratio_B);
                break;
            case Region::IV:
                c1 = t.phase_A * t.sin_ratio_B;
                c2 = t.phase_B * t.sin_ratio_A;
                break;
            case Region::V:
            case Region::VI:
                c1 = BigComplex(BigReal(1));
                c2 = t.phase_B * t.sin_ratio_A;
                break;
        }
        out.term_plus = pref * c1 * up;
        out.term_minus = pref * c2 * dn;
        out.value = out.term_plus + out.term_minus;
    }

    BigComplex phi_any(const BigComplex& z) const {
        try {
            return ph_->phi(z).value;
        } catch (const OnCut&) {
            // on a cut: use the + boundary value of whichever cut it is
            for (ArcKind k : {ArcKind::GammaC, ArcKind::GammaInfPlus, ArcKind::GammaM1Plus, ArcKind::GammaP1Plus}) {
                try {
                    return ph_->phi_side(z, k, Side::Plus).value;
                } catch (const Error&) {
                }
            }
            throw;
        }
    }

    BigComplex f_raw(const BigComplex& z) const {
        const BigReal pi = big_pi();
        if (abs(z - g_->branch().zeta_minus) < BigReal(g_->cut_tol())) return BigComplex();
        BigComplex phi = phi_any(z);
        BigReal th = arg(phi);
        int omega = g_->classify(z).omega;
        if (omega < 0 && th > 0) th -= pi * 2;
        if (omega > 0 && th < 0) th += pi * 2;
        BigReal m = pow(abs(phi) * BigReal(1.5), BigReal(2) / 3);
        return polar(m, th * 2 / 3);
    }

    BigComplex h_of(const BigComplex& z, const BigComplex& f) const {
        const BranchPoints& bp = g_->branch();
        BigComplex d = z - bp.zeta_minus;
        if (abs(d) < BigReal(g_->cut_tol())) return (bp.zeta_minus - bp.zeta_plus) * fprime0_;
        return (z - bp.zeta_plus) * f / d;
    }

    /// Polygons bounded by (-inf, s], gamma_s^+ and gamma_inf^+ in the upper half plane.
    void build_power_regions() {
        const Geometry& g = *g_;
        for (int s : {1, -1}) {
            ArcKind cut = s > 0 ? ArcKind::GammaP1Plus : ArcKind::GammaM1Plus;
            auto c = g.arc(cut).polyline();  // zeta+ -> s
            auto inf = g.arc(ArcKind::GammaInfPlus).extended_polyline();  // inf -> zeta+
            std::vector<std::complex<double>> poly(c.rbegin(), c.rend());  // s -> zeta+
            for (size_t i = inf.size(); i-- > 0;) poly.push_back(inf[i]);  // zeta+ -> inf
            std::complex<double> far = poly.back();
            double Rf = 2 * std::abs(far), t0 = std::arg(far);
            for (int k = 0; k <= 64; ++k) poly.push_back(std::polar(Rf, t0 + (M_PI - t0) * k / 64));
            poly.push_back(std::complex<double>(-Rf, 0));
            power_poly_[s] = poly;
            cut_lines_[s] = {c, inf};
        }
    }

    bool in_power_region(const BigComplex& z, int s) const {
        std::complex<double> zd = to_double(z);
        ArcKind kinds[2] = {s > 0 ? ArcKind::GammaP1Plus : ArcKind::GammaM1Plus, ArcKind::GammaInfPlus};
        const auto& lines = cut_lines_.at(s);
        for (int i = 0; i < 2; ++i) {
            if (poly::nearest(lines[i], zd).distance < g_->near_threshold()) {
                auto lp = g_->local_phase(kinds[i], z);
                if (lp.distance < BigReal(g_->cut_tol())) throw CutAmbiguity("point lies on a cut of the fractional powers");
                return lp.side < 0;
            }
        }
        return poly::winding_number(power_poly_.at(s), zd) != 0;
    }

    void compute_delta() {
        const BranchPoints& bp = g_->branch();
        const BigReal pi = big_pi();
        const std::complex<double> zm = to_double(bp.zeta_minus);
        double d = opt_.delta_target_rel * std::abs(to_double(bp.zeta_plus - bp.zeta_minus));
        d = std::min(d, 0.5 * std::min(std::abs(zm - 1.0), std::abs(zm + 1.0)));
        // reference direction along gamma_inf^- (arc runs inf -> zeta-)
        const Arc& gm = g_->arc(ArcKind::GammaInfMinus);
        for (int attempt = 0; attempt <= opt_.delta_shrinks; ++attempt, d *= 0.7) {
            size_t i = gm.points.size() - 1;
            while (i > 0 && abs(gm.points[i] - bp.zeta_minus) < BigReal(0.5 * d)) --i;
            BigComplex zr = gm.points[i];
            BigComplex fr = f_raw(zr);
            if (!(fr.re > 0)) continue;
            BigComplex ar = a_of(zr);
            h_ref_ = h_of_nocheck(zr, fr);
            q_ref_ = pow(fr, BigReal(0.25)) / ar;
            // f'(zeta-) from the leading term of phi
            BigComplex D = sqrt(bp.zeta_minus - bp.zeta_plus) * bp.kappa / (bp.zeta_minus * bp.zeta_minus - BigReal(1));
            BigComplex D2 = D * D, guess = fr / (zr - bp.zeta_minus);
            BigComplex root = pow(D2, BigReal(1) / 3), best = root;
            for (int k = 1; k < 3; ++k) {
                BigComplex r = root * polar(BigReal(1), pi * 2 * k / 3);
                if (abs(r - guess) < abs(best - guess)) best = r;
            }
            fprime0_ = best;
            // univalence on the circle: simple image curve winding once around 0
            std::vector<std::complex<double>> img;
            bool ok = true;
            BigReal worst(0);
            for (int k = 0; k < opt_.delta_samples && ok; ++k) {
                BigComplex zk = bp.zeta_minus + polar(BigReal(d), BigReal(2) * pi * k / opt_.delta_samples + BigReal(0.01));
                BigComplex fk;
                try {
                    fk = f_raw(zk);
                } catch (const Error&) {
                    ok = false;
                    break;
                }
                img.push_back(to_double(fk));
                BigReal dev = abs(arg(h_of_nocheck(zk, fk) / h_ref_));
                if (dev > worst) worst = dev;
            }
            if (!ok || worst > pi * 3 / 4) continue;
            if (poly::winding_number(img, {0, 0}) != 1) continue;
            if (!simple_polygon(img)) continue;
            delta_ = d;
            return;
        }
        throw NoConverge("could not validate a conformal radius around zeta-");
    }

    BigComplex h_of_nocheck(const BigComplex& z, const BigComplex& f) const {
        const BranchPoints& bp = g_->branch();
        return (z - bp.zeta_plus) * f / (z - bp.zeta_minus);
    }

    static bool simple_polygon(const std::vector<std::complex<double>>& p) {
        const size_t n = p.size();
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 2; j < n; ++j) {
                if (i == 0 && j == n - 1) continue;
                if (poly::segment_crossing(p[i], p[(i + 1) % n], p[j], p[(j + 1) % n])) return false;
            }
        return true;
    }

    std::shared_ptr<const Phase> ph_;
    const Geometry* g_;
    AsymptoticsOptions opt_;
    ConstantC cinfo_;
    double delta_ = 0;
    BigComplex h_ref_, q_ref_, fprime0_;
    std::map<int, std::vector<std::complex<double>>> power_poly_;
    std::map<int, std::array<std::vector<std::complex<double>>, 2>> cut_lines_;
};

}  // namespace jrh

namespace jrh {

struct DomainPoint {
    Region region{};
    BigComplex z;
    double clearance = 0;  // distance to the nearest arc, pole or exclusion disk
};

/// One deterministic sample point per domain I..VI: the grid point with the
/// largest clearance from every traced arc, from +-1 and from the exclusion
/// disks around the branch points.
inline std::vector<DomainPoint> domain_sample_points(const Asymptotics& as, int grid = 41) {
    const Geometry& g = as.geometry();
    PrecisionGuard guard(g.bits());
    const auto zp = to_double(g.branch().zeta_plus), zm = to_double(g.branch().zeta_minus);
    double L = 1.25 * std::max({std::abs(static_cast<double>(g.xi(ArcKind::GammaL))),
                                std::abs(static_cast<double>(g.xi(ArcKind::GammaR))), std::abs(zp), 2.0});
    std::vector<std::vector<std::complex<double>>> lines;
    for (ArcKind k : g.arc_kinds()) lines.push_back(g.arc(k).extended_polyline());
    std::array<DomainPoint, 6> best;
    for (int r = 0; r < 6; ++r) {
        best[static_cast<size_t>(r)].region = static_cast<Region>(r + 1);
        best[static_cast<size_t>(r)].clearance = -1;
    }
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            // offset keeps the grid off the real axis and off symmetric lines
            std::complex<double> z(-L + 2 * L * (i + 0.37) / grid, -L + 2 * L * (j + 0.61) / grid);
            double c = std::min({std::abs(z - 1.0), std::abs(z + 1.0), std::abs(z - zp) - as.delta(),
                                 std::abs(z - zm) - as.delta()});
            for (auto& pl : lines) c = std::min(c, poly::nearest(pl, z).distance);
            if (c <= 0) continue;
            RegionLabel lab;
            try {
                lab = g.classify(from_double(z));
            } catch (const Error&) {
                continue;
            }
            auto& b = best[static_cast<size_t>(static_cast<int>(lab.region) - 1)];
            if (c > b.clearance) {
                b.clearance = c;
                b.z = from_double(z);
            }
        }
    std::vector<DomainPoint> out;
    for (auto& b : best) {
        if (b.clearance < 0) throw RouteFailed("no sample point found in domain " + region_name(b.region));
        out.push_back(b);
    }
    return out;
}

}  // namespace jrh
