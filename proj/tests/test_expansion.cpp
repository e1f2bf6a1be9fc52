#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "barea/errors.hpp"
#include "barea/expansion.hpp"
#include "barea/gauss.hpp"

using namespace barea;
using exact::Rat;
using exact::SymConst;
using expansion::TailExpansion;
using kernels::AreaKind;

namespace {

struct Quad {
    AreaKind kind;
    SymConst lead;
    long alpha;
    Rat b;
    Rat c1, c2, c3;
};

SymConst sc(const Rat& q, long h2, long h3, long hpi) { return SymConst(q, h2, h3, hpi); }

void check_expansion(const TailExpansion& e, const Quad& q) {
    INFO(kernels::name(q.kind));
    CHECK(e.alpha == Rat(q.alpha));
    CHECK(e.b == q.b);
    CHECK(e.lead == q.lead);
    REQUIRE(e.corrections.size() == 4);
    CHECK(e.corrections[0] == Rat(1));
    CHECK(e.corrections[1] == q.c1);
    CHECK(e.corrections[2] == q.c2);
    CHECK(e.corrections[3] == q.c3);
}

}  // namespace

TEST_CASE("density expansions reproduce the published quadruples") {
    const Quad quads[] = {
        {AreaKind::Excursion, sc(Rat(72), 1, 1, -1), 2, Rat(6), Rat(-1, 9), Rat(-5, 1296),
         Rat(-25, 46656)},
        {AreaKind::Bridge, sc(Rat(2), 1, 1, -1), 0, Rat(6), Rat(1, 18), Rat(1, 432),
         Rat(25, 46656)},
        {AreaKind::Motion, sc(Rat(1), 1, 1, -1), 0, Rat(3, 2), Rat(1, 18), Rat(-1, 162),
         Rat(49, 5832)},
        {AreaKind::Meander, sc(Rat(3), 0, 1, 0), 1, Rat(3, 2), Rat(-1, 18), Rat(-1, 162),
         Rat(5, 5832)},
        {AreaKind::DoubleMeander, sc(Rat(2), 1, 1, -1), 0, Rat(3, 2), Rat(1, 6), Rat(1, 18),
         Rat(29, 648)},
        {AreaKind::BridgePositive, sc(Rat(1), 1, 1, -1), 0, Rat(6), Rat(1, 36), Rat(-7, 5184),
         Rat(17, 46656)},
        {AreaKind::MotionPositive, sc(Rat(1, 2), 1, 1, -1), 0, Rat(3, 2), Rat(1, 36),
         Rat(-5, 648), Rat(109, 15552)},
    };
    for (const auto& q : quads) check_expansion(expansion::density_expansion(q.kind, 3), q);
}

TEST_CASE("tail expansions reproduce the published quadruples") {
    const Quad quads[] = {
        {AreaKind::Excursion, sc(Rat(6), 1, 1, -1), 1, Rat(6), Rat(-1, 36), Rat(-1, 648),
         Rat(-7, 46656)},
        {AreaKind::Bridge, sc(Rat(1, 6), 1, 1, -1), -1, Rat(6), Rat(-1, 36), Rat(1, 108),
         Rat(-155, 46656)},
        {AreaKind::Motion, sc(Rat(1, 3), 1, 1, -1), -1, Rat(3, 2), Rat(-5, 18), Rat(22, 81),
         Rat(-2591, 5832)},
        {AreaKind::Meander, sc(Rat(1), 0, 1, 0), 0, Rat(3, 2), Rat(-1, 18), Rat(5, 162),
         Rat(-235, 5832)},
        {AreaKind::DoubleMeander, sc(Rat(2, 3), 1, 1, -1), -1, Rat(3, 2), Rat(-1, 6), Rat(2, 9),
         Rat(-211, 648)},
        {AreaKind::BridgePositive, sc(Rat(1, 12), 1, 1, -1), -1, Rat(6), Rat(-1, 18),
         Rat(65, 5184), Rat(-907, 186624)},
        {AreaKind::MotionPositive, sc(Rat(1, 6), 1, 1, -1), -1, Rat(3, 2), Rat(-11, 36),
         Rat(193, 648), Rat(-2537, 5184)},
    };
    for (const auto& q : quads)
        check_expansion(expansion::tail_expansion(expansion::density_expansion(q.kind, 3)), q);
}

TEST_CASE("scaled expansion: excursion leading terms and bridge constant") {
    auto ex = expansion::scaled_expansion(AreaKind::Excursion, 1);
    CHECK(ex.lead == sc(Rat(36), 0, 1, -1));  // 36 sqrt(3)/sqrt(pi)
    CHECK(ex.alpha == Rat(2));
    CHECK(ex.b == Rat(3));
    // 36 x^2 - 8 = 36 x^2 (1 - (2/9) x^{-2})
    CHECK(ex.corrections[1] == Rat(-2, 9));

    auto br = expansion::scaled_expansion(AreaKind::Bridge, 0);
    CHECK(br.lead == sc(Rat(2), 0, 1, -1));
    CHECK(br.alpha == Rat(0));
    CHECK(br.b == Rat(3));
}

TEST_CASE("sqrt2 conversion relates scaled and unscaled corrections") {
    for (AreaKind k : kernels::kAllKinds) {
        auto s = expansion::scaled_expansion(k, 3);
        auto d = expansion::density_expansion(k, 3);
        CHECK(d.alpha == s.alpha);
        CHECK(d.b == 2 * s.b);
        Rat two_k(1);
        for (size_t i = 0; i < s.corrections.size(); ++i) {
            CHECK(s.corrections[i] == d.corrections[i] * two_k);
            two_k *= 2;
        }
        CHECK(d.lead == s.lead * exact::sym_sqrt_pow(Rat(2), s.alpha.get_num().get_si() + 1));
    }
}

TEST_CASE("tail transfer round trip is exact") {
    for (AreaKind k : kernels::kAllKinds) {
        auto d = expansion::density_expansion(k, 4);
        auto t = expansion::tail_expansion(d);
        auto back = expansion::differentiate_tail(t);
        CHECK(back.alpha == d.alpha);
        CHECK(back.b == d.b);
        CHECK(back.lead == d.lead);
        REQUIRE(back.corrections.size() == d.corrections.size());
        for (size_t i = 0; i < d.corrections.size(); ++i)
            CHECK(back.corrections[i] == d.corrections[i]);
        // a0' = a0/(2b)
        CHECK(t.lead == d.lead * (Rat(1) / (2 * d.b)));
    }
}

TEST_CASE("positive-part leading halving and the tail-ratio coefficient") {
    auto br = expansion::density_expansion(AreaKind::Bridge, 3);
    auto brp = expansion::density_expansion(AreaKind::BridgePositive, 3);
    CHECK(brp.lead == br.lead * Rat(1, 2));
    auto bm = expansion::density_expansion(AreaKind::Motion, 3);
    auto bmp = expansion::density_expansion(AreaKind::MotionPositive, 3);
    CHECK(bmp.lead == bm.lead * Rat(1, 2));

    // P(B_br > x) / (2 P(B_brp > x)) = 1 + (1/36) x^{-2} + O(x^{-4}); the
    // 2 P(B_br > 2x) piece in the lower bound is beyond all orders.
    auto tbr = expansion::tail_expansion(br);
    auto tbrp = expansion::tail_expansion(brp);
    CHECK(tbr.lead == tbrp.lead * Rat(2));
    // series ratio in Q[[x^{-2}]]
    exact::FormalSeries num(exact::SeriesVar::InvX, 3), den(exact::SeriesVar::InvX, 3);
    for (unsigned i = 0; i <= 3; ++i) {
        num[i] = tbr.corrections[i];
        den[i] = tbrp.corrections[i];
    }
    auto ratio = num * exact::inverse(den);
    CHECK(ratio[0] == Rat(1));
    CHECK(ratio[1] == Rat(1, 36));
    // same first-order tightness for the motion pair
    auto tbm = expansion::tail_expansion(bm);
    auto tbmp = expansion::tail_expansion(bmp);
    exact::FormalSeries n2(exact::SeriesVar::InvX, 3), d2(exact::SeriesVar::InvX, 3);
    for (unsigned i = 0; i <= 3; ++i) {
        n2[i] = tbm.corrections[i];
        d2[i] = tbmp.corrections[i];
    }
    auto ratio2 = n2 * exact::inverse(d2);
    CHECK(ratio2[1] == Rat(1, 36));
}

TEST_CASE("phi1 series checks its saddle structure") {
    for (AreaKind k : kernels::kAllKinds) CHECK_NOTHROW(expansion::phi1_series(k, 6));
}

TEST_CASE("odd and imaginary parts vanish through order 6") {
    // collect_coefficients asserts both properties internally up to x^{-12}
    CHECK_NOTHROW(expansion::scaled_expansion(AreaKind::Excursion, 6));
    CHECK_NOTHROW(expansion::scaled_expansion(AreaKind::MotionPositive, 6));
}

TEST_CASE("gaussian moments: exact values and a quadrature oracle") {
    Rat b(3);
    auto m00 = expansion::gaussian_moment(0, 0, b);
    CHECK(m00.coeff == exact::GRat(Rat(1)));
    CHECK(m00.norm == sc(Rat(1, 3), 0, -1, 2));  // pi/(sqrt3 * 3)
    CHECK(expansion::gaussian_moment(1, 0, b).coeff == exact::GRat(Rat(0)));
    CHECK(expansion::gaussian_moment(0, 1, b).coeff == exact::GRat(Rat(0)));
    CHECK(expansion::gaussian_moment(2, 0, b).coeff == exact::GRat(Rat(1, 18)));
    CHECK(expansion::gaussian_moment(0, 2, b).coeff == exact::GRat(Rat(1, 9)));
    CHECK(expansion::gaussian_moment(1, 1, b).coeff == exact::GRat(Rat(0), Rat(1, 18)));

    // numeric oracle: complex 2-D quadrature of u^m v^n e^{-6u^2+6iuv-3v^2}
    auto numeric = [&](int m, int n) {
        auto inner = [&](double v) {
            return quad::gl_integrate(
                [&](double u) {
                    std::complex<double> w =
                        std::exp(std::complex<double>(-6.0 * u * u - 3.0 * v * v, 6.0 * u * v));
                    return (std::pow(u, m) * std::pow(v, n) * w).real();
                },
                -4.0, 4.0, 120);
        };
        return quad::gl_integrate(inner, -4.0, 4.0, 120);
    };
    double norm = numeric(0, 0);
    CHECK(std::abs(norm - m00.norm.value()) < 1e-12);
    auto m20 = expansion::gaussian_moment(2, 0, b);
    CHECK(std::abs(numeric(2, 0) / norm - exact::to_double(m20.coeff.re)) < 1e-12);
    auto m22 = expansion::gaussian_moment(2, 2, b);
    CHECK(std::abs(numeric(2, 2) / norm - exact::to_double(m22.coeff.re)) < 1e-12);
    auto m40 = expansion::gaussian_moment(4, 0, b);
    CHECK(std::abs(numeric(4, 0) / norm - exact::to_double(m40.coeff.re)) < 1e-12);
}

TEST_CASE("prefactor rendering") {
    auto t = expansion::tail_expansion(expansion::density_expansion(AreaKind::Excursion, 3));
    CHECK(expansion::prefactor_string(t) == "6*sqrt(6)/sqrt(pi)*x*exp(-6*x^2)");
    auto d = expansion::density_expansion(AreaKind::Motion, 3);
    CHECK(expansion::prefactor_string(d) == "1*sqrt(6)/sqrt(pi)*exp(-3/2*x^2)");
}

TEST_CASE("expansion evaluation is positive and finite far out") {
    double v = expansion::eval_expansion(
        expansion::density_expansion(AreaKind::Excursion, 3), 10.0);
    CHECK(v > 0.0);
    CHECK(v < 1e-250);
    CHECK(std::isfinite(v));
}
