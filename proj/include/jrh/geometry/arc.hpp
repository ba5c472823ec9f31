#pragma once
#include "jrh/numeric/complex.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace jrh {

enum class ArcKind {
    GammaL,
    GammaC,
    GammaR,
    GammaInfMinus,
    GammaInfPlus,
    GammaM1Minus,  // gamma_{-1}^-
    GammaM1Plus,
    GammaP1Minus,  // gamma_{1}^-
    GammaP1Plus,
    LevelOuter,    // Re phi = r > 0
    LevelM1,       // Re phi = r < 0 around -1
    LevelP1,       // Re phi = r < 0 around +1
};

enum class Anchor { ZetaPlus, ZetaMinus, PlusOne, MinusOne, Infinity, Closed };

/// Which primitive the stored phase samples hold.
enum class PhaseRef { Phi, PhiTilde };

inline std::string arc_name(ArcKind k) {
    switch (k) {
        case ArcKind::GammaL: return "Gamma_L";
        case ArcKind::GammaC: return "Gamma_C";
        case ArcKind::GammaR: return "Gamma_R";
        case ArcKind::GammaInfMinus: return "gamma_inf-";
        case ArcKind::GammaInfPlus: return "gamma_inf+";
        case ArcKind::GammaM1Minus: return "gamma_-1-";
        case ArcKind::GammaM1Plus: return "gamma_-1+";
        case ArcKind::GammaP1Minus: return "gamma_1-";
        case ArcKind::GammaP1Plus: return "gamma_1+";
        case ArcKind::LevelOuter: return "Gamma_r";
        case ArcKind::LevelM1: return "Gamma_r,-1";
        case ArcKind::LevelP1: return "Gamma_r,+1";
    }
    return "?";
}

inline std::string anchor_name(Anchor a) {
    switch (a) {
        case Anchor::ZetaPlus: return "zeta+";
        case Anchor::ZetaMinus: return "zeta-";
        case Anchor::PlusOne: return "+1";
        case Anchor::MinusOne: return "-1";
        case Anchor::Infinity: return "inf";
        case Anchor::Closed: return "closed";
    }
    return "?";
}

inline bool is_critical(ArcKind k) {
    return k == ArcKind::GammaL || k == ArcKind::GammaC || k == ArcKind::GammaR;
}
inline bool is_level(ArcKind k) {
    return k == ArcKind::LevelOuter || k == ArcKind::LevelM1 || k == ArcKind::LevelP1;
}

/// A traced trajectory, stored in its oriented order.
///
/// Orientation: Gamma_L and Gamma_C run zeta+ -> zeta-, Gamma_R runs zeta- -> zeta+.
/// gamma_{+-1}^{+} run zeta+ -> +-1 and gamma_inf^+ runs inf -> zeta+; the minus
/// arcs are their mirror images. The "+" side of every arc is its left side.
struct Arc {
    ArcKind kind{};
    std::vector<BigComplex> points;
    std::vector<BigComplex> phase;  // phi or phi~ at each point (NaN at a pole)
    std::vector<BigComplex> root;   // R at each point; R_+ on Gamma_C
    PhaseRef phase_ref = PhaseRef::Phi;
    Anchor start = Anchor::ZetaMinus;
    Anchor end = Anchor::ZetaPlus;
    BigReal level{0};       // value of the level function on the arc
    bool level_is_real = true;  // level function is Re(phase) (else Im)
    std::vector<std::complex<double>> tail;  // continuation beyond the box (unbounded arcs)

    bool closed() const { return start == Anchor::Closed; }
    std::vector<std::complex<double>> polyline() const {
        std::vector<std::complex<double>> out;
        out.reserve(points.size());
        for (const auto& p : points) out.push_back(to_double(p));
        return out;
    }
    /// Polyline including the far tail, ordered consistently with points.
    std::vector<std::complex<double>> extended_polyline() const {
        auto pl = polyline();
        if (tail.empty()) return pl;
        std::vector<std::complex<double>> out;
        if (start == Anchor::Infinity) {
            out.assign(tail.rbegin(), tail.rend());
            out.insert(out.end(), pl.begin(), pl.end());
        } else {
            out = pl;
            out.insert(out.end(), tail.begin(), tail.end());
        }
        return out;
    }
    void reverse() {
        std::reverse(points.begin(), points.end());
        std::reverse(phase.begin(), phase.end());
        std::reverse(root.begin(), root.end());
        std::swap(start, end);
    }
};

}  // namespace jrh
