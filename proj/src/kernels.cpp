#include "barea/kernels.hpp"

#include <cmath>
#include <numbers>

#include "barea/errors.hpp"

namespace barea::kernels {

using airy::AiryBundle;
using airy::Scaling;
using barea::detail::cdd;
using barea::detail::dd;
using exact::Rat;
using exact::SymConst;

namespace {

constexpr double kPi = std::numbers::pi;

void check_slit(Complex z) {
    // z = 0 is admitted; the kinds whose kernel is singular there surface a
    // pole error from the division instead.
    if (z.imag() == 0.0 && z.real() < 0.0)
        throw DomainError("kernel argument on the cut (-inf, 0)");
}

void check_sector(Complex z, double half_angle, const char* what) {
    check_slit(z);
    if (std::abs(std::arg(z)) >= half_angle)
        throw DomainError(std::string(what) + ": argument outside the kernel sector");
}

template <class C>
C div_checked(const C& num, const C& den) {
    if (abs2(den).hi == 0.0) throw DomainError("kernel denominator vanished");
    return num / den;
}

Complex div_checked(const Complex& num, const Complex& den) {
    if (den == Complex(0.0, 0.0)) throw DomainError("kernel denominator vanished");
    return num / den;
}

}  // namespace

const char* name(AreaKind kind) {
    switch (kind) {
        case AreaKind::Excursion: return "excursion";
        case AreaKind::Bridge: return "bridge";
        case AreaKind::Motion: return "motion";
        case AreaKind::Meander: return "meander";
        case AreaKind::DoubleMeander: return "double-meander";
        case AreaKind::BridgePositive: return "bridge-positive";
        case AreaKind::MotionPositive: return "motion-positive";
    }
    throw ConsistencyError("bad AreaKind");
}

AreaKind kind_from_name(const std::string& s) {
    for (AreaKind k : kAllKinds)
        if (s == name(k)) return k;
    // tolerant aliases used by the CLI
    if (s == "ex") return AreaKind::Excursion;
    if (s == "br") return AreaKind::Bridge;
    if (s == "bm") return AreaKind::Motion;
    if (s == "me") return AreaKind::Meander;
    if (s == "dm") return AreaKind::DoubleMeander;
    if (s == "brp") return AreaKind::BridgePositive;
    if (s == "bmp") return AreaKind::MotionPositive;
    throw DomainError("unknown area kind: " + s);
}

const AreaConstants& constants(AreaKind kind) {
    static const std::array<AreaConstants, 7> table = [] {
        auto make = [](long nu_num, long gamma_num, const SymConst& c, const Rat& p) {
            AreaConstants a;
            a.nu = Rat(nu_num) / 2;        // nu in halves: 1 -> 1/2, 2 -> 1
            a.gamma = Rat(gamma_num) / 3;  // gammas are 4/3 or 2/3
            a.rho = exact::pow_int(Rat(9) * a.gamma / Rat(4), 2);
            a.b = a.rho / Rat(3);
            a.s0 = Rat(2) * a.b / a.gamma;
            a.lead_const = c;
            a.lead_power = p;
            return a;
        };
        const SymConst sp(Rat(1), 0, 0, 1);  // sqrt(pi)
        std::array<AreaConstants, 7> t;
        t[0] = make(1, 4, SymConst(Rat(8)), Rat(1));            // excursion
        t[1] = make(1, 4, SymConst(Rat(2)), Rat(-1, 2));        // bridge
        t[2] = make(2, 2, sp * Rat(2), Rat(-1, 4));             // motion
        t[3] = make(1, 2, sp * Rat(2), Rat(1, 4));              // meander
        t[4] = make(2, 2, sp * Rat(4), Rat(-1, 4));             // double meander
        t[5] = make(1, 4, SymConst(Rat(1)), Rat(-1, 2));        // bridge, positive part
        t[6] = make(2, 2, sp, Rat(-1, 4));                      // motion, positive part
        return t;
    }();
    return table[static_cast<size_t>(kind)];
}

// ---------------------------------------------------------------------------
// Psi, generic over the complex type (double path and dd path share the
// formulas).

namespace {

struct PsiValsD {
    Complex ai, aip, aii;
    Complex z;
};

struct PsiValsDD {
    cdd ai, aip, aii;
    cdd z;
};

template <class V, class C>
C psi_formula(AreaKind kind, const V& v) {
    switch (kind) {
        case AreaKind::Bridge:
            return div_checked(-v.ai, v.aip);
        case AreaKind::Excursion: {
            C r = div_checked(v.aip, v.ai);
            return r * r * 2.0 - v.z * 2.0;
        }
        case AreaKind::Motion:
            return div_checked(-v.aii, v.aip);
        case AreaKind::Meander:
            return div_checked(v.aii, v.ai);
        case AreaKind::DoubleMeander: {
            C r = div_checked(v.aii, v.ai);
            return r * r;
        }
        case AreaKind::BridgePositive: {
            C rz = sqrt(v.z);
            return div_checked(v.ai * 2.0, rz * v.ai - v.aip);
        }
        case AreaKind::MotionPositive: {
            C rz = sqrt(v.z);
            return div_checked(div_checked(v.ai, rz) + v.aii, rz * v.ai - v.aip);
        }
    }
    throw ConsistencyError("bad AreaKind");
}

}  // namespace

namespace detail {

cdd psi_dd(AreaKind kind, const cdd& z) {
    auto b = airy::dd_eval::series_bundle(z);
    PsiValsDD v{b.ai, b.aip, b.aii, z};
    return psi_formula<PsiValsDD, cdd>(kind, v);
}

}  // namespace detail

Complex psi(AreaKind kind, Complex z) {
    check_slit(z);
    if (std::abs(z) <= airy::dd_series_radius()) {
        cdd r = detail::psi_dd(kind, cdd(z.real(), z.imag()));
        return {static_cast<double>(r.re), static_cast<double>(r.im)};
    }
    // Scaled values: Psi is a ratio of ai-family entries, so the e^{+zeta}
    // factors cancel and the evaluation never under/overflows.
    auto b = airy::airy_bundle(z, Scaling::ExpScaled);
    PsiValsD v{b.ai, b.ai_prime, b.ai_int, z};
    return psi_formula<PsiValsD, Complex>(kind, v);
}

Complex hx_definitional(AreaKind kind, Complex z) {
    check_sector(z, kPi / 3.0, "hx_definitional");
    const auto& ac = constants(kind);
    const bool nu_half = (ac.nu == Rat(1, 2));
    const double s32 = std::sqrt(3.0) / 2.0;
    if (std::abs(z) <= airy::dd_series_radius()) {
        const dd s3h = dd(0x1.bb67ae8584caap+0, 0x1.cec95d0b5c1e3p-54) * 0.5;  // sqrt(3)/2
        cdd zz(z.real(), z.imag());
        cdd omega{dd(-0.5), s3h};  // e^{2 pi i/3}
        cdd wp = zz * omega, wm = zz * conj(omega);
        cdd pp = detail::psi_dd(kind, wp), pm = detail::psi_dd(kind, wm);
        // phases e^{+-2 pi nu i/3}
        cdd php = nu_half ? cdd{dd(0.5), s3h} : omega;
        cdd phm = conj(php);
        cdd h = php * pp - phm * pm;
        return {static_cast<double>(h.re), static_cast<double>(h.im)};
    }
    Complex omega{-0.5, s32};
    Complex php = nu_half ? Complex{0.5, s32} : omega;
    return php * psi(kind, z * omega) - std::conj(php) * psi(kind, z * std::conj(omega));
}

Complex hx_closed(AreaKind kind, Complex z) {
    check_sector(z, kPi / 3.0, "hx_closed");
    auto b = airy::airy_bundle(z, Scaling::Unscaled);
    const Complex I{0.0, 1.0};
    const Complex ai = b.ai, aip = b.ai_prime, bi = b.bi, bip = b.bi_prime;
    const Complex aI = b.ai_int, bI = b.bi_int;
    switch (kind) {
        case AreaKind::Bridge:
            return (2.0 / kPi) * I / (aip * aip + bip * bip);
        case AreaKind::Excursion: {
            Complex d = ai * ai + bi * bi;
            return (8.0 / kPi) * I * (ai * aip + bi * bip) / (d * d);
        }
        case AreaKind::Motion:
            return 2.0 * I * (bip - aI * bip - aip * bI) / (aip * aip + bip * bip);
        case AreaKind::Meander:
            return 2.0 * I * (bi - aI * bi - ai * bI) / (ai * ai + bi * bi);
        case AreaKind::DoubleMeander: {
            Complex d = ai * ai + bi * bi;
            return 4.0 * I * ((1.0 - aI) * ai + bI * bi) * ((1.0 - aI) * bi - bI * ai) / (d * d);
        }
        case AreaKind::BridgePositive: {
            Complex rz = std::sqrt(z);
            Complex fa = rz * ai + aip, fb = rz * bi + bip;
            return (4.0 / kPi) * I / (fa * fa + fb * fb);
        }
        case AreaKind::MotionPositive: {
            Complex rz = std::sqrt(z);
            Complex fa = rz * ai + aip, fb = rz * bi + bip;
            return 2.0 * I * ((1.0 - aI) * fb - bI * fa + 1.0 / (rz * kPi)) /
                   (fa * fa + fb * fb);
        }
    }
    throw ConsistencyError("bad AreaKind");
}

Complex h_scaled(AreaKind kind, Complex z) {
    // valid throughout |arg z| < pi/3: Re zeta > 0 there, so every
    // correction factor still decays
    check_sector(z, kPi / 3.0 - 1e-9, "h_scaled");
    auto b = airy::airy_bundle(z, Scaling::ExpScaled);
    const Complex I{0.0, 1.0};
    // E1 = e^{-zeta}; Re zeta > 0 in the sector, so all powers decay and
    // underflow harmlessly at large |z|.
    const Complex E1 = std::exp(-b.zeta);
    const Complex E2 = E1 * E1, E3 = E2 * E1, E4 = E2 * E2;
    const Complex ai = b.ai, aip = b.ai_prime, bi = b.bi, bip = b.bi_prime;
    const Complex aI = b.ai_int, bI = b.bi_int;
    switch (kind) {
        case AreaKind::Bridge:
            return (2.0 / kPi) * I / (bip * bip + aip * aip * E4);
        case AreaKind::Excursion: {
            Complex d = bi * bi + ai * ai * E4;
            return (8.0 / kPi) * I * (bi * bip + ai * aip * E4) / (d * d);
        }
        case AreaKind::Motion:
            return 2.0 * I * (bip - E1 * (aI * bip + aip * bI)) / (bip * bip + aip * aip * E4);
        case AreaKind::Meander:
            return 2.0 * I * (bi - E1 * (aI * bi + ai * bI)) / (bi * bi + ai * ai * E4);
        case AreaKind::DoubleMeander: {
            Complex d = bi * bi + ai * ai * E4;
            return 4.0 * I * (bI * bi + ai * E3 - ai * aI * E4) *
                   (bi - (aI * bi + bI * ai) * E1) / (d * d);
        }
        case AreaKind::BridgePositive: {
            Complex rz = std::sqrt(z);
            Complex fa = rz * ai + aip, fb = rz * bi + bip;
            return (4.0 / kPi) * I / (fb * fb + fa * fa * E4);
        }
        case AreaKind::MotionPositive: {
            Complex rz = std::sqrt(z);
            Complex fa = rz * ai + aip, fb = rz * bi + bip;
            return 2.0 * I * (fb - (aI * fb + bI * fa) * E1 + E1 / (rz * kPi)) /
                   (fb * fb + fa * fa * E4);
        }
    }
    throw ConsistencyError("bad AreaKind");
}

exact::FormalSeries hhat_series(AreaKind kind, unsigned order) {
    using exact::BetaKind;
    auto b0 = exact::beta_series(BetaKind::Zero, order);
    auto b1 = exact::beta_series(BetaKind::One, order);
    switch (kind) {
        case AreaKind::Bridge:
            return exact::pow_int(b1, -2);
        case AreaKind::Excursion:
            return b1 * exact::pow_int(b0, -3);
        case AreaKind::Motion:
            return exact::inverse(b1);
        case AreaKind::Meander:
            return exact::inverse(b0);
        case AreaKind::DoubleMeander:
            return exact::beta_series(BetaKind::MinusOne, order) * exact::pow_int(b0, -2);
        case AreaKind::BridgePositive:
            return exact::pow_int((b0 + b1) * Rat(1, 2), -2);
        case AreaKind::MotionPositive:
            return exact::inverse((b0 + b1) * Rat(1, 2));
    }
    throw ConsistencyError("bad AreaKind");
}

}  // namespace barea::kernels
