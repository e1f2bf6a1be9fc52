#include "barea/airy.hpp"

#include <gmpxx.h>

#include <array>
#include <cmath>
#include <numbers>

#include "barea/errors.hpp"

namespace barea::airy {

using barea::detail::cdd;
using barea::detail::dd;

namespace {

// Maclaurin evaluation below kMaclaurinRadius, one-sided asymptotics above.
// The Maclaurin region is split: double-double arithmetic up to kDdRadius
// (cancellation e^{2|Re zeta|} <= e^36), GMP floats beyond.  The upper cut is
// set by the AI/BI asymptotic series, whose optimal truncation error is
// e^{-|zeta|}; at 12.7 that is below 1e-13.
constexpr double kDdRadius = 10.0;
constexpr double kMaclaurinRadius = 12.7;
constexpr double kPi = std::numbers::pi;

// Ai(0) and -Ai'(0); dd literals frozen from the 95-digit values below
// (asserted against the test oracle).
const dd kAi0{0x1.6b8c7962715b8p-2, 0x1.7a96d7bb04e65p-56};
const dd kMAip0{0x1.0907f42b70f8bp-2, -0x1.d1459035afde2p-56};
const dd kSqrt3{0x1.bb67ae8584caap+0, 0x1.cec95d0b5c1e3p-54};

const char* kAi0Str =
    "3.5502805388781723926006318600418317639797917419917724058332651030081004245012671295717424605404e-1";
const char* kMAip0Str =
    "2.5881940379280679840518356018920396347909113835493458221000181385610277267679028065419640582728e-1";

bool is_negative_real(Complex z) { return z.imag() == 0.0 && z.real() < 0.0; }

// Side-resolved principal argument.
double arg_with_side(Complex z, Side side) {
    if (is_negative_real(z)) {
        if (side == Side::None)
            throw BranchError("evaluation on the cut (-inf,0) requires a side flag");
        return side == Side::Above ? kPi : -kPi;
    }
    return std::arg(z);
}

}  // namespace

double series_radius() { return kMaclaurinRadius; }

double dd_series_radius() { return kDdRadius; }

Complex zeta(Complex z, Side side) {
    if (z == 0.0) return {0.0, 0.0};
    double t = arg_with_side(z, side);
    double m = std::pow(std::abs(z), 1.5) * (2.0 / 3.0);
    return {m * std::cos(1.5 * t), m * std::sin(1.5 * t)};
}

// ---------------------------------------------------------------------------
// Maclaurin regime.  With f, g the standard solution pair of w'' = z w
// (f = 1 + z^3/6 + ..., g = z + z^4/12 + ...):
//   Ai = c1 f - c2 g,  Bi = sqrt(3)(c1 f + c2 g),  c1 = Ai(0), c2 = -Ai'(0),
// derivatives and primitives term by term.  Generic over the complex type;
// divisors are exact small-integer products, so the working precision is not
// polluted by rounded reciprocals.

namespace {

struct SeriesSums {
    // f, g, f', g', int f, int g — as the instantiating complex type
    template <class C>
    struct Of {
        C f, g, fp, gp, F, G;
    };
};

template <class C>
SeriesSums::Of<C> maclaurin_sums(const C& z, const C& one, double eps_rel) {
    const C z3 = z * z * z;
    const double z3m = abs_est(z3);

    // Seed terms: k=0 for f, g, g', F, G; the f' series starts at k=1 (z^2/2).
    C f = one, g = z;
    C fp = z * z * 0.5, gp = one;
    C F = z, G = z * z * 0.5;

    SeriesSums::Of<C> s{f, g, fp, gp, F, G};
    double max_mag = std::max(1.0, abs_est(fp));

    for (int k = 1; k < 400; ++k) {
        double k3 = 3.0 * k;
        f = f * z3 / ((k3) * (k3 - 1.0));
        g = g * z3 / ((k3 + 1.0) * (k3));
        gp = gp * z3 / ((k3) * (k3 - 2.0));
        F = F * z3 * (k3 - 2.0) / ((k3 + 1.0) * (k3) * (k3 - 1.0));
        G = G * z3 * (k3 - 1.0) / ((k3 + 2.0) * (k3 + 1.0) * (k3));
        s.f += f;
        s.g += g;
        s.gp += gp;
        s.F += F;
        s.G += G;
        if (k >= 2) {
            fp = fp * z3 / ((k3 - 1.0) * (k3 - 3.0));
            s.fp += fp;
        }
        double t = std::max({abs_est(f), abs_est(g), abs_est(fp), abs_est(gp)});
        max_mag = std::max(max_mag, t);
        if (t < eps_rel * max_mag && (k3) * (k3 - 1.0) > z3m) break;
    }
    return s;
}

// GMP-float complex with the operator surface maclaurin_sums needs.
struct cmpf {
    mpf_class re, im;
    cmpf(mpf_class r, mpf_class i) : re(std::move(r)), im(std::move(i)) {}
};

cmpf operator*(const cmpf& a, const cmpf& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
cmpf operator*(const cmpf& a, double s) { return {a.re * s, a.im * s}; }
cmpf operator/(const cmpf& a, double s) { return {a.re / s, a.im / s}; }
cmpf& operator+=(cmpf& a, const cmpf& b) {
    a.re += b.re;
    a.im += b.im;
    return a;
}
cmpf operator-(const cmpf& a, const cmpf& b) { return {a.re - b.re, a.im - b.im}; }
cmpf operator+(const cmpf& a, const cmpf& b) { return {a.re + b.re, a.im + b.im}; }
double abs_est(const cmpf& a) { return std::abs(a.re.get_d()) + std::abs(a.im.get_d()); }

}  // namespace

namespace dd_eval {

BundleDD series_bundle(const cdd& z) {
    auto s = maclaurin_sums<cdd>(z, cdd{1.0}, 1e-36);
    BundleDD out;
    const dd c1 = kAi0, c2 = kMAip0;
    out.ai = c1 * s.f - c2 * s.g;
    out.aip = c1 * s.fp - c2 * s.gp;
    out.bi = kSqrt3 * (c1 * s.f + c2 * s.g);
    out.bip = kSqrt3 * (c1 * s.fp + c2 * s.gp);
    const dd third = dd(1.0) / dd(3.0);
    out.aii = cdd{third} - (c1 * s.F - c2 * s.G);
    out.bii = kSqrt3 * (c1 * s.F + c2 * s.G);
    return out;
}

}  // namespace dd_eval

namespace {

struct SixComplex {
    Complex ai, aip, bi, bip, aii, bii;
};

// Maclaurin window above the dd radius: GMP floats sized for the e^{2|zeta|}
// cancellation.
SixComplex series_bundle_mpf(Complex z) {
    const double az = std::abs(z);
    const auto prec = static_cast<unsigned long>(
        160 + 2.0 * (2.0 / 3.0) * std::pow(az, 1.5) * 1.4427);
    cmpf zz{mpf_class(z.real(), prec), mpf_class(z.imag(), prec)};
    cmpf one{mpf_class(1, prec), mpf_class(0, prec)};
    auto s = maclaurin_sums<cmpf>(zz, one, std::ldexp(1.0, -static_cast<int>(prec) + 8));

    mpf_class c1(0, prec), c2(0, prec), s3(0, prec);
    mpf_set_str(c1.get_mpf_t(), kAi0Str, 10);
    mpf_set_str(c2.get_mpf_t(), kMAip0Str, 10);
    mpf_sqrt_ui(s3.get_mpf_t(), 3);

    auto cd = [](const cmpf& v) { return Complex(v.re.get_d(), v.im.get_d()); };
    auto lin = [&](const cmpf& a, const cmpf& b, int sign) {
        return cmpf{c1 * a.re + sign * c2 * b.re, c1 * a.im + sign * c2 * b.im};
    };
    SixComplex out;
    out.ai = cd(lin(s.f, s.g, -1));
    out.aip = cd(lin(s.fp, s.gp, -1));
    cmpf bi = lin(s.f, s.g, +1), bip = lin(s.fp, s.gp, +1);
    out.bi = cd(cmpf{bi.re * s3, bi.im * s3});
    out.bip = cd(cmpf{bip.re * s3, bip.im * s3});
    cmpf aii = lin(s.F, s.G, -1);
    mpf_class third = mpf_class(1, prec) / 3;
    out.aii = cd(cmpf{third - aii.re, mpf_class(0, prec) - aii.im});
    cmpf bii = lin(s.F, s.G, +1);
    out.bii = cd(cmpf{bii.re * s3, bii.im * s3});
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Asymptotic regime.

namespace {

constexpr int kAsymTerms = 96;

struct AsymCoeffs {
    std::array<double, kAsymTerms + 1> c0;   // beta0 coefficients
    std::array<double, kAsymTerms + 1> c1;   // beta1
    std::array<double, kAsymTerms + 1> cm1;  // beta-1
};

const AsymCoeffs& asym_coeffs() {
    static const AsymCoeffs a = [] {
        AsymCoeffs out{};
        auto b0 = exact::beta_series(exact::BetaKind::Zero, kAsymTerms);
        auto b1 = exact::beta_series(exact::BetaKind::One, kAsymTerms);
        auto bm = exact::beta_series(exact::BetaKind::MinusOne, kAsymTerms);
        for (int k = 0; k <= kAsymTerms; ++k) {
            out.c0[k] = exact::to_double(b0[k]);
            out.c1[k] = exact::to_double(b1[k]);
            out.cm1[k] = exact::to_double(bm[k]);
        }
        return out;
    }();
    return a;
}

// One-sided scaled values at w, numerically reliable for |arg w| <= 2pi/3:
//   a  = Ai(w)  e^{+zeta(w)} = (1/(2 sqrt pi)) w^{-1/4} beta0(-t)
//   ap = Ai'(w) e^{+zeta(w)} = -(1/(2 sqrt pi)) w^{+1/4} beta1(-t)
//   aI = AI(w)  e^{+zeta(w)} = (1/(2 sqrt pi)) w^{-3/4} beta-1(-t)
// with t = w^{-3/2}; truncation at the smallest term.
struct ScaledA {
    Complex a, ap, aI;
};

ScaledA a_series(Complex w) {
    const auto& cf = asym_coeffs();
    Complex q = std::sqrt(w);
    Complex q4 = std::sqrt(q);
    Complex mt = -1.0 / (w * q);  // -t
    Complex p{1.0, 0.0};
    Complex s0{0.0, 0.0}, s1{0.0, 0.0}, sm{0.0, 0.0};
    double prev = 1e300;
    for (int k = 0; k <= kAsymTerms; ++k) {
        // The beta-1 coefficients grow fastest; they control both the
        // optimal-truncation break and the smallness break.
        double tm = std::abs(p) * std::abs(cf.cm1[k]);
        if (k > 4 && tm > prev) break;  // past optimal truncation
        s0 += cf.c0[k] * p;
        s1 += cf.c1[k] * p;
        sm += cf.cm1[k] * p;
        prev = tm;
        p *= mt;
        if (tm < 1e-18 * std::max(1.0, std::abs(sm))) break;
    }
    const double c = 0.5 / std::sqrt(kPi);
    ScaledA out;
    out.a = c * s0 / q4;
    out.ap = -c * s1 * q4;
    out.aI = c * sm * q4 / w;  // w^{-3/4}
    return out;
}

struct SixTuple {
    Complex ai, aip, aii, bi, bip, bii;
};

// Assemble the bundle for |z| > series radius, arg z = t in [0, pi].
//
// Zone t <= 2pi/3: the Ai-family one-sided series applies at z itself, and
//   Bi(z) = i Ai(z) + 2 e^{-i pi/6} Ai(z e^{-2pi i/3})
// (with the matching derivative/primitive forms) supplies the Bi-family from
// the two adjacent recessive directions; zeta(z e^{-2pi i/3}) = -zeta(z).
//
// Zone t > 2pi/3: both families from the pair of clean rotations,
//   Ai(z) = -e^{+2pi i/3} Ai(z e^{+2pi i/3}) - e^{-2pi i/3} Ai(z e^{-2pi i/3})
//   Bi(z) = e^{+i pi/6} Ai(z e^{+2pi i/3}) + e^{-i pi/6} Ai(z e^{-2pi i/3})
// with zeta(z e^{+2pi i/3}) = +zeta(z), zeta(z e^{-2pi i/3}) = -zeta(z).
SixTuple asym_tuple(Complex z, double t, Complex zt, Scaling scaling) {
    const Complex omega{-0.5, std::sqrt(3.0) / 2.0};  // e^{2pi i/3}
    const Complex e_ip6{std::sqrt(3.0) / 2.0, 0.5};   // e^{i pi/6}
    const Complex e_im6 = std::conj(e_ip6);
    const Complex e_i5p6{-std::sqrt(3.0) / 2.0, 0.5};
    const Complex e_im5p6 = std::conj(e_i5p6);
    const Complex I{0.0, 1.0};
    const bool scaled = (scaling == Scaling::ExpScaled);

    SixTuple o;
    if (t <= 2.0 * kPi / 3.0) {
        ScaledA Az = a_series(z);
        ScaledA Am = a_series(z * std::conj(omega));
        Complex Em = std::exp(-zt);
        if (scaled) {
            Complex E2 = Em * Em;
            o.ai = Az.a;
            o.aip = Az.ap;
            o.aii = Az.aI;
            o.bi = I * Az.a * E2 + 2.0 * e_im6 * Am.a;
            o.bip = I * Az.ap * E2 + 2.0 * e_im5p6 * Am.ap;
            o.bii = I * Em - I * Az.aI * E2 - 2.0 * I * Am.aI;
        } else {
            Complex Ep = std::exp(zt);
            Complex aiz = Az.a * Em, aipz = Az.ap * Em, aiiz = Az.aI * Em;
            o.ai = aiz;
            o.aip = aipz;
            o.aii = aiiz;
            o.bi = I * aiz + 2.0 * e_im6 * Am.a * Ep;
            o.bip = I * aipz + 2.0 * e_im5p6 * Am.ap * Ep;
            o.bii = I * (1.0 / 3.0 - aiiz) + 2.0 * I * (1.0 / 3.0 - Am.aI * Ep);
        }
    } else {
        ScaledA Ap = a_series(z * omega);
        ScaledA Am = a_series(z * std::conj(omega));
        Complex Em = std::exp(-zt);  // pairs with the w+ rotation
        Complex Ep = std::exp(zt);   // pairs with the w- rotation; |Ep| <= 1 here
        if (scaled) {
            Complex E2m = Em * Em, E2p = Ep * Ep;
            o.ai = -omega * Ap.a - std::conj(omega) * Am.a * E2p;
            o.aip = -std::conj(omega) * Ap.ap - omega * Am.ap * E2p;
            o.aii = Ep - Ap.aI - Am.aI * E2p;
            o.bi = e_ip6 * Ap.a * E2m + e_im6 * Am.a;
            o.bip = e_i5p6 * Ap.ap * E2m + e_im5p6 * Am.ap;
            o.bii = I * Ap.aI * E2m - I * Am.aI;
        } else {
            Complex ap_ = Ap.a * Em, app = Ap.ap * Em, apI = Ap.aI * Em;
            Complex am_ = Am.a * Ep, amp = Am.ap * Ep, amI = Am.aI * Ep;
            o.ai = -omega * ap_ - std::conj(omega) * am_;
            o.aip = -std::conj(omega) * app - omega * amp;
            o.aii = 1.0 - apI - amI;
            o.bi = e_ip6 * ap_ + e_im6 * am_;
            o.bip = e_i5p6 * app + e_im5p6 * amp;
            o.bii = I * (apI - amI);
        }
    }
    return o;
}

Complex cdd_to_complex(const cdd& v) {
    return {static_cast<double>(v.re), static_cast<double>(v.im)};
}

void check_finite(const AiryBundle& b) {
    auto bad = [](Complex v) { return !std::isfinite(v.real()) || !std::isfinite(v.imag()); };
    if (bad(b.ai) || bad(b.ai_prime) || bad(b.bi) || bad(b.bi_prime) || bad(b.ai_int) ||
        bad(b.bi_int))
        throw OverflowError("airy_bundle: value exceeded the floating-point range");
}

AiryBundle conj_bundle(const AiryBundle& b) {
    AiryBundle r = b;
    r.ai = std::conj(b.ai);
    r.ai_prime = std::conj(b.ai_prime);
    r.bi = std::conj(b.bi);
    r.bi_prime = std::conj(b.bi_prime);
    r.ai_int = std::conj(b.ai_int);
    r.bi_int = std::conj(b.bi_int);
    r.zeta = std::conj(b.zeta);
    return r;
}

void scrub_imag(AiryBundle& b) {
    for (Complex* v : {&b.ai, &b.ai_prime, &b.bi, &b.bi_prime, &b.ai_int, &b.bi_int})
        *v = Complex(v->real(), 0.0);
}

}  // namespace

AiryBundle airy_bundle(Complex z, Scaling scaling, Side side) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("airy_bundle: non-finite argument");

    if (z == 0.0) {
        AiryBundle b;
        b.ai = static_cast<double>(kAi0);
        b.ai_prime = -static_cast<double>(kMAip0);
        b.bi = static_cast<double>(kSqrt3 * kAi0);
        b.bi_prime = static_cast<double>(kSqrt3 * kMAip0);
        b.ai_int = 1.0 / 3.0;
        b.bi_int = 0.0;
        b.scaling = scaling;
        return b;
    }

    double t = arg_with_side(z, side);

    // Mirror the lower half-plane through the conjugation symmetry (all six
    // functions are real on the real axis).
    if (t < 0.0) {
        Side mside = (side == Side::Below) ? Side::Above : side;
        return conj_bundle(airy_bundle(std::conj(z), scaling, mside));
    }

    Complex zt = zeta(z, side);
    AiryBundle b;
    b.zeta = zt;
    b.scaling = scaling;
    const bool on_real_axis = (z.imag() == 0.0);

    const double az = std::abs(z);
    if (az <= kMaclaurinRadius) {
        if (az <= kDdRadius) {
            cdd zdd(z.real(), z.imag());
            auto s = dd_eval::series_bundle(zdd);
            b.ai = cdd_to_complex(s.ai);
            b.ai_prime = cdd_to_complex(s.aip);
            b.bi = cdd_to_complex(s.bi);
            b.bi_prime = cdd_to_complex(s.bip);
            b.ai_int = cdd_to_complex(s.aii);
            b.bi_int = cdd_to_complex(s.bii);
        } else {
            SixComplex s = series_bundle_mpf(z);
            b.ai = s.ai;
            b.ai_prime = s.aip;
            b.bi = s.bi;
            b.bi_prime = s.bip;
            b.ai_int = s.aii;
            b.bi_int = s.bii;
        }
        if (on_real_axis) scrub_imag(b);
        if (scaling == Scaling::ExpScaled) {
            Complex ep = std::exp(zt), em = std::exp(-zt);
            b.ai *= ep;
            b.ai_prime *= ep;
            b.ai_int *= ep;
            b.bi *= em;
            b.bi_prime *= em;
            b.bi_int *= em;
        }
        check_finite(b);
        return b;
    }

    SixTuple s = asym_tuple(z, t, zt, scaling);
    b.ai = s.ai;
    b.ai_prime = s.aip;
    b.ai_int = s.aii;
    b.bi = s.bi;
    b.bi_prime = s.bip;
    b.bi_int = s.bii;
    if (t > kPi / 3.0) b.degraded = true;  // outside the validated sector
    if (scaling == Scaling::Unscaled && on_real_axis) scrub_imag(b);
    check_finite(b);
    return b;
}

AiryBundle rescale(const AiryBundle& b, Scaling target) {
    if (b.scaling == target) return b;
    AiryBundle r = b;
    r.scaling = target;
    Complex ep = std::exp(b.zeta), em = std::exp(-b.zeta);
    Complex fa = (target == Scaling::ExpScaled) ? ep : em;  // ai-family factor
    Complex fb = (target == Scaling::ExpScaled) ? em : ep;
    r.ai = b.ai * fa;
    r.ai_prime = b.ai_prime * fa;
    r.ai_int = b.ai_int * fa;
    r.bi = b.bi * fb;
    r.bi_prime = b.bi_prime * fb;
    r.bi_int = b.bi_int * fb;
    check_finite(r);
    return r;
}

RotatedTriple connection_rotate(const AiryBundle& bundle, int direction) {
    if (bundle.scaling != Scaling::Unscaled)
        throw DomainError("connection_rotate: bundle must be Unscaled");
    if (direction != 1 && direction != -1)
        throw DomainError("connection_rotate: direction must be +1 or -1");
    const double s = static_cast<double>(direction);
    const Complex I{0.0, 1.0};
    const Complex e_p3{0.5, s * std::sqrt(3.0) / 2.0};  // e^{+- i pi/3}
    const Complex e_m3 = std::conj(e_p3);
    RotatedTriple r;
    r.ai = 0.5 * e_p3 * (bundle.ai - s * I * bundle.bi);
    r.ai_prime = 0.5 * e_m3 * (bundle.ai_prime - s * I * bundle.bi_prime);
    r.ai_int = 0.5 - 0.5 * bundle.ai_int - s * 0.5 * I * bundle.bi_int;
    return r;
}

}  // namespace barea::airy
