#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "barea/errors.hpp"
#include "barea/kernels.hpp"
#include "support/oracle_airy.hpp"

using namespace barea;
using kernels::AreaKind;
using kernels::Complex;
using exact::Rat;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(Complex got, Complex want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace

TEST_CASE("exact constants per area") {
    auto ex = kernels::constants(AreaKind::Excursion);
    CHECK(ex.nu == Rat(1, 2));
    CHECK(ex.gamma == Rat(4, 3));
    CHECK(ex.rho == Rat(9));
    CHECK(ex.b == Rat(3));
    CHECK(ex.s0 == Rat(9, 2));
    auto bm = kernels::constants(AreaKind::Motion);
    CHECK(bm.nu == Rat(1));
    CHECK(bm.gamma == Rat(2, 3));
    CHECK(bm.rho == Rat(9, 4));
    CHECK(bm.b == Rat(3, 4));
    CHECK(bm.s0 == Rat(9, 4));
    for (AreaKind k : kernels::kAllKinds) {
        auto c = kernels::constants(k);
        CHECK(c.rho - Rat(3) * c.b == 0);
        CHECK(c.rho == exact::pow_int(Rat(9) * c.gamma / 4, 2));
        // rho^{3/4} gamma^{1/2} = 2b, squared to stay rational
        CHECK(exact::pow_int(c.rho, 3) * exact::pow_int(c.gamma, 2) ==
              exact::pow_int(Rat(2) * c.b, 4));
        CHECK(c.s0 == Rat(2) * c.b / c.gamma);
    }
}

TEST_CASE("psi values at the origin and the cut") {
    auto o = barea::testing::oracle_bundle({0.0, 0.0});
    Complex want_br = -o.ai / o.aip;
    CHECK(rel(kernels::psi(AreaKind::Bridge, {0.0, 0.0}), want_br) < 1e-14);
    CHECK(std::abs(want_br.real() - 1.37172) < 1e-4);
    Complex q = o.aip / o.ai;
    CHECK(rel(kernels::psi(AreaKind::Excursion, {0.0, 0.0}), 2.0 * q * q) < 1e-14);
    CHECK_THROWS_AS(kernels::psi(AreaKind::Bridge, {-1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(kernels::psi(AreaKind::MotionPositive, {0.0, 0.0}), DomainError);
}

TEST_CASE("psi(x) x^nu -> 1 on the positive axis") {
    for (AreaKind k : kernels::kAllKinds) {
        double nu = exact::to_double(kernels::constants(k).nu);
        double x = 400.0;
        Complex v = kernels::psi(k, {x, 0.0});
        INFO(kernels::name(k));
        CHECK(std::abs(v.real() * std::pow(x, nu) - 1.0) < 0.02);
        CHECK(std::abs(v.imag()) < 1e-12);
    }
}

TEST_CASE("dual route: definitional vs closed H") {
    // acceptance grid: r in {0.5,1,2,4,8}, theta in {0, +-pi/12, +-pi/6}
    for (AreaKind k : kernels::kAllKinds) {
        for (double r : {0.5, 1.0, 2.0, 4.0, 8.0}) {
            for (double th : {0.0, kPi / 12, -kPi / 12, kPi / 6, -kPi / 6}) {
                Complex z = std::polar(r, th);
                Complex hd = kernels::hx_definitional(k, z);
                Complex hc = kernels::hx_closed(k, z);
                INFO(kernels::name(k), " r=", r, " th=", th);
                CHECK(rel(hd, hc) < 1e-9);
            }
        }
    }
}

TEST_CASE("closed H at spot values from the oracle") {
    auto o0 = barea::testing::oracle_bundle({0.0, 0.0});
    Complex want{0.0, 2.0 / (kPi * (std::norm(o0.aip) + std::norm(o0.bip)))};
    CHECK(rel(kernels::hx_closed(AreaKind::Bridge, {0.0, 0.0}), want) < 1e-13);

    auto o1 = barea::testing::oracle_bundle({1.0, 0.0});
    Complex num = o1.bip - o1.aii * o1.bip - o1.aip * o1.bii;
    Complex wm = 2.0 * Complex(0.0, 1.0) * num / (o1.aip * o1.aip + o1.bip * o1.bip);
    CHECK(rel(kernels::hx_closed(AreaKind::Motion, {1.0, 0.0}), wm) < 1e-13);
}

TEST_CASE("H purely imaginary on the positive axis") {
    for (AreaKind k : kernels::kAllKinds) {
        for (double x : {0.3, 1.0, 2.5, 6.0}) {
            Complex h = kernels::hx_closed(k, {x, 0.0});
            INFO(kernels::name(k), " x=", x);
            CHECK(std::abs(h.real()) <= 1e-12 * std::abs(h));
            Complex hs = kernels::h_scaled(k, {x, 0.0});
            CHECK(std::abs(hs.real()) <= 1e-12 * std::abs(hs));
        }
    }
}

TEST_CASE("h_scaled approaches its leading form") {
    auto lead = [](AreaKind k, Complex z) {
        const auto& c = kernels::constants(k);
        return Complex(0.0, 1.0) * c.lead_const.value() *
               std::pow(z, exact::to_double(c.lead_power));
    };
    for (AreaKind k : kernels::kAllKinds) {
        for (double x : {1e3, 1e4}) {
            Complex ratio = kernels::h_scaled(k, {x, 0.0}) / lead(k, {x, 0.0});
            // first correction is ~ t = x^{-3/2}
            INFO(kernels::name(k), " x=", x);
            CHECK(std::abs(ratio - 1.0) < 2.0 * std::pow(x, -1.5));
        }
    }
    // sector evaluation with a complex argument
    Complex z = std::polar(50.0, kPi / 7);
    Complex ratio = kernels::h_scaled(AreaKind::Excursion, z) / lead(AreaKind::Excursion, z);
    CHECK(std::abs(ratio - 1.0) < 2.0 * std::pow(50.0, -1.5));
}

TEST_CASE("h_scaled equals H e^{gamma z^{3/2}} where both are computable") {
    for (AreaKind k : kernels::kAllKinds) {
        for (double r : {1.0, 3.0, 6.0}) {
            Complex z = std::polar(r, kPi / 12);
            double g = exact::to_double(kernels::constants(k).gamma);
            Complex grown = kernels::hx_closed(k, z) * std::exp(g * std::pow(z, 1.5));
            INFO(kernels::name(k), " r=", r);
            CHECK(rel(kernels::h_scaled(k, z), grown) < 1e-11);
        }
    }
}

TEST_CASE("superexponential decay envelope on [4,10]") {
    for (AreaKind k : kernels::kAllKinds) {
        const auto& c = kernels::constants(k);
        for (double x = 4.0; x <= 10.0; x += 1.5) {
            double gz = exact::to_double(c.gamma) * std::pow(x, 1.5);
            double H = std::abs(kernels::hx_closed(k, {x, 0.0}));
            double envelope = c.lead_const.value() * std::pow(x, exact::to_double(c.lead_power)) *
                              std::exp(-gz);
            double eps = 5.0 * std::pow(x, -1.5);
            INFO(kernels::name(k), " x=", x);
            CHECK(H / envelope > 1.0 - eps);
            CHECK(H / envelope < 1.0 + eps);
        }
    }
}

TEST_CASE("hhat series printed first-order terms") {
    auto first = [](AreaKind k) { return kernels::hhat_series(k, 3)[1]; };
    CHECK(first(AreaKind::Bridge) == Rat(7, 24));
    CHECK(first(AreaKind::Excursion) == Rat(-11, 24));
    CHECK(first(AreaKind::Motion) == Rat(7, 48));
    CHECK(first(AreaKind::Meander) == Rat(-5, 48));
    CHECK(first(AreaKind::DoubleMeander) == Rat(31, 48));
    CHECK(first(AreaKind::BridgePositive) == Rat(1, 24));
    CHECK(first(AreaKind::MotionPositive) == Rat(1, 48));
    // constant terms are all 1
    for (AreaKind k : kernels::kAllKinds) CHECK(kernels::hhat_series(k, 2)[0] == Rat(1));
}

TEST_CASE("positive-part second-order differences") {
    auto d1 = kernels::hhat_series(AreaKind::BridgePositive, 4) -
              kernels::hhat_series(AreaKind::Bridge, 4);
    CHECK(d1[0] == 0);
    CHECK(d1[1] == Rat(-1, 4));
    auto d2 = kernels::hhat_series(AreaKind::MotionPositive, 4) -
              kernels::hhat_series(AreaKind::Motion, 4);
    CHECK(d2[0] == 0);
    CHECK(d2[1] == Rat(-1, 8));
}

TEST_CASE("h_scaled matches the exact correction series at large x") {
    for (AreaKind k : kernels::kAllKinds) {
        const auto& c = kernels::constants(k);
        auto ser = kernels::hhat_series(k, 4);
        auto ser5 = kernels::hhat_series(k, 5);
        for (double x : {30.0, 80.0}) {
            double t = std::pow(x, -1.5);
            Complex leadv = Complex(0.0, 1.0) * c.lead_const.value() *
                            std::pow(x, exact::to_double(c.lead_power));
            Complex want = leadv * exact::eval(ser, t);
            Complex got = kernels::h_scaled(k, {x, 0.0});
            INFO(kernels::name(k), " x=", x);
            // agreement to the first omitted correction
            double bound = 3.0 * std::abs(exact::to_double(ser5[5])) * std::pow(t, 5) + 1e-13;
            CHECK(rel(got, want) < bound);
        }
    }
}

TEST_CASE("sector preconditions") {
    CHECK_THROWS_AS(kernels::hx_closed(AreaKind::Bridge, std::polar(2.0, 1.2)), DomainError);
    CHECK_THROWS_AS(kernels::h_scaled(AreaKind::Bridge, std::polar(2.0, 0.7)), DomainError);
    CHECK_THROWS_AS(kernels::hx_definitional(AreaKind::Bridge, std::polar(2.0, 1.1)),
                    DomainError);
}
