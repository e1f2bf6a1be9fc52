#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "barea/airy.hpp"
#include "barea/errors.hpp"
#include "barea/gauss.hpp"
#include "support/oracle_airy.hpp"

using namespace barea;
using airy::AiryBundle;
using airy::Complex;
using airy::Scaling;
using airy::Side;
using barea::testing::oracle_bundle;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(Complex got, Complex want) {
    double scale = std::max(std::abs(want), 1e-300);
    return std::abs(got - want) / scale;
}

double bundle_vs_oracle(Complex z, Side side = Side::None) {
    auto b = airy::airy_bundle(z, Scaling::Unscaled, side);
    auto o = oracle_bundle(z);
    double m = 0.0;
    m = std::max(m, rel(b.ai, o.ai));
    m = std::max(m, rel(b.ai_prime, o.aip));
    m = std::max(m, rel(b.bi, o.bi));
    m = std::max(m, rel(b.bi_prime, o.bip));
    m = std::max(m, rel(b.ai_int, o.aii));
    m = std::max(m, rel(b.bi_int, o.bii));
    return m;
}

}  // namespace

TEST_CASE("values at the origin") {
    auto b = airy::airy_bundle({0.0, 0.0}, Scaling::Unscaled);
    CHECK(b.ai.real() == doctest::Approx(0.35502805388781724).epsilon(1e-15));
    CHECK(b.bi.real() == doctest::Approx(0.61492662744600073).epsilon(1e-15));
    CHECK(b.ai_int.real() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(b.bi_int == Complex(0.0, 0.0));
    // frozen dd constants against the oracle decimal strings
    auto s = barea::testing::oracle_ai0_string(25);
    CHECK(std::abs(b.ai.real() - std::stod(s)) < 1e-16);
    auto sp = barea::testing::oracle_aip0_string(25);
    CHECK(std::abs(b.ai_prime.real() - std::stod(sp)) < 1e-16);
}

TEST_CASE("zeta principal branch and cut sides") {
    CHECK(airy::zeta({1.0, 0.0}).real() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(std::abs(airy::zeta({0.0, 0.0})) == 0.0);
    Complex w = std::polar(1.0, 2.0 * kPi / 3.0);
    CHECK(std::abs(airy::zeta(w) - Complex(-2.0 / 3.0, 0.0)) < 1e-14);
    CHECK_THROWS_AS(airy::zeta({-1.0, 0.0}), BranchError);
    // side limits: zeta(-r -i0) = +i (2/3) r^{3/2}
    Complex zb = airy::zeta({-4.0, 0.0}, Side::Below);
    CHECK(zb.imag() == doctest::Approx((2.0 / 3.0) * 8.0).epsilon(1e-14));
    Complex za = airy::zeta({-4.0, 0.0}, Side::Above);
    CHECK(za.imag() == doctest::Approx(-(2.0 / 3.0) * 8.0).epsilon(1e-14));
}

TEST_CASE("bundle matches the oracle across regimes and sectors") {
    const double radii[] = {0.05, 0.4, 1.0, 2.7, 5.0, 8.3, 8.95, 9.05, 10.5, 14.0, 22.0, 30.0};
    const double args[] = {0.0,          kPi / 12,      kPi / 6,  kPi / 3,       0.55 * kPi,
                           2 * kPi / 3 - 0.02, 2 * kPi / 3 + 0.02, 5 * kPi / 6, kPi - 0.01, -kPi / 5,
                           -0.8 * kPi};
    for (double r : radii) {
        for (double a : args) {
            Complex z = std::polar(r, a);
            double tol = (std::abs(a) <= kPi / 3 + 1e-9) ? 1e-12 : 1e-10;
            INFO("r=", r, " arg/pi=", a / kPi);
            CHECK(bundle_vs_oracle(z) < tol);
        }
    }
}

TEST_CASE("negative real axis via side flags") {
    for (double r : {0.5, 2.0, 6.0, 12.0, 25.0}) {
        Complex z{-r, 0.0};
        INFO("r=", r);
        CHECK(bundle_vs_oracle(z, Side::Above) < 1e-11);
        CHECK(bundle_vs_oracle(z, Side::Below) < 1e-11);
        CHECK_THROWS_AS(airy::airy_bundle(z, Scaling::Unscaled), BranchError);
    }
}

TEST_CASE("Wronskian on the sector grid, scaled evaluation") {
    // Ai Bi' - Ai' Bi = 1/pi; in scaled form the exponential factors cancel.
    for (double r = 0.1; r <= 30.0; r *= 1.45) {
        for (double th = -kPi / 3; th <= kPi / 3 + 1e-12; th += kPi / 12) {
            Complex z = std::polar(r, th);
            auto b = airy::airy_bundle(z, Scaling::ExpScaled);
            Complex w = b.ai * b.bi_prime - b.ai_prime * b.bi;
            INFO("r=", r, " th=", th);
            CHECK(std::abs(w - 1.0 / kPi) < 1e-12);
        }
    }
}

TEST_CASE("connection formulas vs direct evaluation") {
    // In the sector |arg z| <= pi/3 the rotated value is never recessive
    // relative to the inputs, so a plain relative residual is meaningful.
    for (double r : {0.3, 1.0, 3.0, 7.0, 10.0}) {
        for (double th : {0.0, 0.4, 1.0, -0.8}) {
            Complex z = std::polar(r, th);
            auto b = airy::airy_bundle(z, Scaling::Unscaled);
            for (int dir : {+1, -1}) {
                auto rot = airy::connection_rotate(b, dir);
                Complex zr = z * std::polar(1.0, dir * 2.0 * kPi / 3.0);
                auto d = airy::airy_bundle(zr, Scaling::Unscaled);
                INFO("r=", r, " th=", th, " dir=", dir);
                CHECK(rel(rot.ai, d.ai) < 1e-11);
                CHECK(rel(rot.ai_prime, d.ai_prime) < 1e-11);
                CHECK(rel(rot.ai_int, d.ai_int) < 1e-11);
            }
        }
    }
    // Wide angles rotate into the recessive direction; the combination then
    // cancels almost completely and only a backward residual (relative to
    // the input magnitudes) is attainable in doubles.
    for (double r : {3.0, 7.0, 10.0}) {
        Complex z = std::polar(r, 2.6);
        auto b = airy::airy_bundle(z, Scaling::Unscaled);
        auto rot = airy::connection_rotate(b, -1);
        auto d = airy::airy_bundle(z * std::polar(1.0, -2.0 * kPi / 3.0), Scaling::Unscaled);
        double scale = std::max({std::abs(b.ai), std::abs(b.bi), 1.0});
        INFO("r=", r);
        CHECK(std::abs(rot.ai - d.ai) / scale < 1e-13);
    }
}

TEST_CASE("connection rotation fixes the origin") {
    auto b = airy::airy_bundle({0.0, 0.0}, Scaling::Unscaled);
    auto rot = airy::connection_rotate(b, +1);
    CHECK(std::abs(rot.ai - b.ai) < 1e-15);
    CHECK(std::abs(rot.ai_int - Complex(1.0 / 3.0, 0.0)) < 1e-15);
}

TEST_CASE("regime agreement on the overlap annulus") {
    // The dd Maclaurin series still converges past the switch radius; compare
    // it against the asymptotic assembly used there.
    for (double r : {9.05, 9.2, 9.4}) {
        for (double a : {0.0, kPi / 6, kPi / 2, 0.9 * kPi}) {
            Complex z = std::polar(r, a);
            auto pub = airy::airy_bundle(z, Scaling::Unscaled);
            auto dd = airy::dd_eval::series_bundle({z.real(), z.imag()});
            auto cv = [](barea::detail::cdd v) {
                return Complex(static_cast<double>(v.re), static_cast<double>(v.im));
            };
            INFO("r=", r, " a=", a);
            CHECK(rel(pub.ai, cv(dd.ai)) < 1e-12);
            CHECK(rel(pub.bi, cv(dd.bi)) < 1e-12);
            CHECK(rel(pub.ai_prime, cv(dd.aip)) < 1e-12);
            CHECK(rel(pub.bi_prime, cv(dd.bip)) < 1e-12);
            CHECK(rel(pub.ai_int, cv(dd.aii)) < 1e-12);
            CHECK(rel(pub.bi_int, cv(dd.bii)) < 1e-12);
        }
    }
}

TEST_CASE("Bi asymptotic partial sums bound the truncation") {
    auto b0 = exact::beta_series(exact::BetaKind::Zero, 5);
    for (double z = 8.0; z <= 30.0; z += 2.0) {
        auto b = airy::airy_bundle({z, 0.0}, Scaling::ExpScaled);
        double t = std::pow(z, -1.5);
        double partial = 0.0;
        for (unsigned k = 0; k <= 4; ++k) partial += exact::to_double(b0[k]) * std::pow(t, k);
        double lhs = std::abs(b.bi.real() * std::sqrt(kPi) * std::pow(z, 0.25) - partial);
        double first_omitted = std::abs(exact::to_double(b0[5])) * std::pow(t, 5);
        INFO("z=", z);
        CHECK(lhs <= 2.0 * first_omitted);
    }
}

TEST_CASE("AI(z) + int_0^z Ai = 1/3 via independent quadrature") {
    for (double z : {0.5, 1.5, 3.0, 5.0}) {
        double integral = quad::gl_integrate(
            [](double x) {
                return airy::airy_bundle({x, 0.0}, Scaling::Unscaled).ai.real();
            },
            0.0, z, 40);
        auto b = airy::airy_bundle({z, 0.0}, Scaling::Unscaled);
        INFO("z=", z);
        CHECK(std::abs(b.ai_int.real() + integral - 1.0 / 3.0) < 1e-10);
    }
}

TEST_CASE("scaling round trip") {
    Complex z{3.0, 1.2};
    auto u = airy::airy_bundle(z, Scaling::Unscaled);
    auto s = airy::airy_bundle(z, Scaling::ExpScaled);
    auto back = airy::rescale(s, Scaling::Unscaled);
    CHECK(rel(back.ai, u.ai) < 1e-14);
    CHECK(rel(back.bi_int, u.bi_int) < 1e-14);
    auto fwd = airy::rescale(u, Scaling::ExpScaled);
    CHECK(rel(fwd.bi_prime, s.bi_prime) < 1e-14);
}

TEST_CASE("unscaled overflow raises, scaled succeeds") {
    Complex z{120.0, 0.0};
    CHECK_THROWS_AS(airy::airy_bundle(z, Scaling::Unscaled), OverflowError);
    auto s = airy::airy_bundle(z, Scaling::ExpScaled);
    CHECK(std::isfinite(s.ai.real()));
    CHECK(std::isfinite(s.bi_prime.real()));
}

TEST_CASE("beta series printed coefficients") {
    auto b0 = exact::beta_series(exact::BetaKind::Zero, 2);
    CHECK(b0[0] == exact::Rat(1));
    CHECK(b0[1] == exact::Rat(5, 48));
    CHECK(b0[2] == exact::Rat(385, 4608));
    auto b1 = exact::beta_series(exact::BetaKind::One, 2);
    CHECK(b1[1] == exact::Rat(-7, 48));
    CHECK(b1[2] == exact::Rat(-455, 4608));
    auto bm = exact::beta_series(exact::BetaKind::MinusOne, 2);
    CHECK(bm[1] == exact::Rat(41, 48));
    CHECK(bm[2] == exact::Rat(9241, 4608));
}
