#include "barea/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "barea/errors.hpp"
#include "barea/expansion.hpp"
#include "barea/gauss.hpp"

namespace barea::inversion {

using Complex = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;
// The saddle quadrature needs enough Gaussian decay x^2 b across the theta
// window; below these the parabolic-contour route (whose cancellation is only
// e^{b x^2}) is both cheaper and more accurate.
constexpr double kSaddleSwitchNuHalf = 0.9;  // b = 3 kinds
constexpr double kSaddleSwitchNuOne = 3.0;   // b = 3/4 kinds
constexpr double kExpansionSwitch = 3.0;

struct Consts {
    double nu, gamma, rho, b, s0;
    bool nu_half;
};

Consts consts_of(AreaKind kind) {
    const auto& a = kernels::constants(kind);
    Consts c;
    c.nu = exact::to_double(a.nu);
    c.gamma = exact::to_double(a.gamma);
    c.rho = exact::to_double(a.rho);
    c.b = exact::to_double(a.b);
    c.s0 = exact::to_double(a.s0);
    c.nu_half = (a.nu == exact::Rat(1, 2));
    return c;
}

double effective_tol(double x, const QuadratureConfig& cfg) {
    // below the validated window the attainable accuracy is limited; relax
    double t = std::max(cfg.target_rel_tol, 1e-12);
    if (x < 0.8) t = std::max(t, 1e-5);
    return t;
}

// ---------------------------------------------------------------------------
// Saddle-point quadrature of the (s, theta) integral.
//
// fhat(x) = C_nu x^W e^{x^2 M} * I,   I = II F1 e^{x^2(phi1 - M)} ds dtheta,
// with M = max Re phi1 = rho_t - 2 rho_t^{3/4} gamma^{1/2} (= -b at the
// saddle choice rho_t = rho).  Re(phi1 - M) <= 0 everywhere, so the reduced
// integrand never overflows.

// Chebyshev surrogate for h_scaled on the (log r, arg) window of one
// density evaluation.  The kernel is analytic in both coordinates, so a
// small tensor grid reproduces it to ~1e-11 and removes the per-node Airy
// cost from the quadrature loops.
struct HSurrogate {
    double lr_lo{0}, lr_hi{1}, a_lo{0}, a_hi{1};
    int mr{0}, ma{0};
    std::vector<Complex> v;          // values at tensor nodes, [ir + ia*mr]
    std::vector<double> xr, xa, wr, wa;
    bool ok{false};

    static std::vector<double> cheb_nodes(int m) {
        std::vector<double> x(m);
        for (int j = 0; j < m; ++j) x[j] = std::cos(kPi * j / (m - 1));
        return x;
    }
    static std::vector<double> cheb_weights(int m) {
        std::vector<double> w(m);
        for (int j = 0; j < m; ++j) w[j] = (j % 2 == 0) ? 1.0 : -1.0;
        w[0] *= 0.5;
        w[m - 1] *= 0.5;
        return w;
    }

    Complex eval(double logr, double a) const {
        double xi = 2.0 * (logr - lr_lo) / (lr_hi - lr_lo) - 1.0;
        double eta = (a_hi > a_lo) ? 2.0 * (a - a_lo) / (a_hi - a_lo) - 1.0 : 0.0;
        // barycentric along r for each a-row, then along a
        thread_local std::vector<Complex> row;
        row.assign(static_cast<size_t>(ma), Complex{});
        for (int ia = 0; ia < ma; ++ia) {
            Complex num{0.0, 0.0};
            double den = 0.0;
            bool hit = false;
            for (int ir = 0; ir < mr; ++ir) {
                double d = xi - xr[static_cast<size_t>(ir)];
                if (std::abs(d) < 1e-14) {
                    row[static_cast<size_t>(ia)] = v[static_cast<size_t>(ir + ia * mr)];
                    hit = true;
                    break;
                }
                double c = wr[static_cast<size_t>(ir)] / d;
                num += c * v[static_cast<size_t>(ir + ia * mr)];
                den += c;
            }
            if (!hit) row[static_cast<size_t>(ia)] = num / den;
        }
        if (ma == 1) return row[0];
        Complex num{0.0, 0.0};
        double den = 0.0;
        for (int ia = 0; ia < ma; ++ia) {
            double d = eta - xa[static_cast<size_t>(ia)];
            if (std::abs(d) < 1e-14) return row[static_cast<size_t>(ia)];
            double c = wa[static_cast<size_t>(ia)] / d;
            num += c * row[static_cast<size_t>(ia)];
            den += c;
        }
        return num / den;
    }
};

HSurrogate build_h_surrogate(AreaKind kind, double lr_lo, double lr_hi, double a_lo,
                             double a_hi, long& evals, int boost = 0) {
    HSurrogate h;
    h.lr_lo = lr_lo;
    h.lr_hi = lr_hi;
    h.a_lo = a_lo;
    h.a_hi = a_hi;
    double range = lr_hi - lr_lo;
    h.mr = std::clamp(static_cast<int>(20 + 7.0 * range) + boost, 26, 72);
    h.ma = 10 + boost / 4;
    h.xr = HSurrogate::cheb_nodes(h.mr);
    h.xa = HSurrogate::cheb_nodes(h.ma);
    h.wr = HSurrogate::cheb_weights(h.mr);
    h.wa = HSurrogate::cheb_weights(h.ma);
    h.v.resize(static_cast<size_t>(h.mr * h.ma));
    for (int ia = 0; ia < h.ma; ++ia) {
        double a = a_lo + 0.5 * (h.xa[static_cast<size_t>(ia)] + 1.0) * (a_hi - a_lo);
        for (int ir = 0; ir < h.mr; ++ir) {
            double lr = lr_lo + 0.5 * (h.xr[static_cast<size_t>(ir)] + 1.0) * (lr_hi - lr_lo);
            Complex z = std::polar(std::exp(lr), a);
            h.v[static_cast<size_t>(ir + ia * h.mr)] = kernels::h_scaled(kind, z);
            ++evals;
        }
    }
    // validate at off-grid points; fall back to direct evaluation on failure
    double worst = 0.0;
    for (double fx : {0.23, 0.61, 0.87}) {
        double lr = lr_lo + fx * (lr_hi - lr_lo);
        double a = a_lo + (1.0 - fx) * (a_hi - a_lo);
        Complex direct = kernels::h_scaled(kind, std::polar(std::exp(lr), a));
        Complex fit = h.eval(lr, a);
        worst = std::max(worst, std::abs(fit - direct) / std::max(std::abs(direct), 1e-300));
        evals += 1;
    }
    h.ok = worst < 1e-9;
    return h;
}

struct SaddleParams {
    Consts c;
    double rho_t;       // possibly scaled by the debug xi factor
    double M;
    double x;
    AreaKind kind;
    const HSurrogate* hsur{nullptr};
};

Complex integrand_G(const SaddleParams& sp, double s, double th) {
    const auto& c = sp.c;
    double sec = 1.0 / std::cos(th);
    Complex eith = std::polar(1.0, th);
    Complex ei2 = std::polar(1.0, 0.5 * th);
    Complex phi1 = sp.rho_t * Complex(1.0, std::tan(th)) -
                   std::pow(sp.rho_t, 1.5) * std::pow(sec, 1.5) / s * eith -
                   c.gamma * s * ei2;
    Complex e = std::exp(sp.x * sp.x * (phi1 - sp.M));
    double lr = (4.0 / 3.0) * std::log(sp.x) + (2.0 / 3.0) * std::log(s);
    double a = th / 3.0;
    Complex h;
    if (sp.hsur && sp.hsur->ok && lr >= sp.hsur->lr_lo && lr <= sp.hsur->lr_hi &&
        a >= sp.hsur->a_lo && a <= sp.hsur->a_hi) {
        h = sp.hsur->eval(lr, a);
    } else {
        h = kernels::h_scaled(sp.kind, std::polar(std::exp(lr), a));
    }
    Complex amp = c.nu_half
                      ? std::polar(1.0, 2.0 * th / 3.0) * (sec * sec * sec) *
                            std::pow(s, -5.0 / 3.0)
                      : std::polar(1.0, th / 3.0) * std::pow(sec, 2.5) *
                            std::pow(s, -4.0 / 3.0);
    return amp * h * e;
}

// Inner s-integral along s = s_star e^t; the panel count follows both the
// window size and the accumulated phase of Im phi1 (which is bounded by
// L * angle factor across the significant window).
Complex s_integral(const SaddleParams& sp, double th, double L, int gl_n, int layout_n,
                   long& evals) {
    double A = std::pow(sp.rho_t, 1.5) * std::pow(std::cos(th), -0.5);
    double B = sp.c.gamma * std::cos(0.5 * th);
    double s_star = std::sqrt(A / B);
    double x2 = sp.x * sp.x;
    double root = 2.0 * std::sqrt(A * B);
    double t_max = std::acosh(1.0 + L / (root * x2)) * 1.12 + 0.25;
    double phase =
        (L + root * x2) * (std::abs(std::sin(th)) + std::sin(0.5 * std::abs(th))) + 1.0;
    // a GL-n panel resolves ~0.8 n radians of phase
    int panels = std::max(static_cast<int>(std::ceil(2.0 * t_max / 0.8)),
                          static_cast<int>(std::ceil(phase / (0.8 * layout_n))));
    panels = std::min(panels, 40);
    const auto& rule = quad::gauss_legendre(gl_n);
    Complex acc{0.0, 0.0};
    double lo = -t_max;
    double dw = 2.0 * t_max / panels;
    for (int p = 0; p < panels; ++p) {
        double a = lo + p * dw, bb = a + dw;
        double mid = 0.5 * (a + bb), half = 0.5 * (bb - a);
        for (size_t i = 0; i < rule.x.size(); ++i) {
            double t = mid + half * rule.x[i];
            double s = s_star * std::exp(t);
            acc += rule.w[i] * half * s * integrand_G(sp, s, th);
            ++evals;
        }
    }
    return acc;
}

struct QuadOut {
    Complex I;
    long evals{0};
    double theta_max{0};
    int theta_panels{0};
    double real_residual{0};
};

QuadOut saddle_quadrature(const SaddleParams& sp, double tol, int gl_n, int layout_n,
                          const QuadratureConfig& cfg) {
    const double x2 = sp.x * sp.x;
    const double L = std::log(1.0 / tol) + 10.0;

    // theta cutoff: the best achievable exponent at theta must be L below M
    auto peak = [&](double th) {
        double A = std::pow(sp.rho_t, 1.5) * std::pow(std::cos(th), -0.5);
        double B = sp.c.gamma * std::cos(0.5 * th);
        return sp.rho_t - 2.0 * std::sqrt(A * B);
    };
    double th_hi = std::min(cfg.theta_cutoff, kPi / 2 - 1e-9);
    double th_max = th_hi;
    if (x2 * (peak(th_hi) - sp.M) < -(L + 10.0)) {
        double lo = 0.0, hi = th_hi;
        for (int it = 0; it < 80; ++it) {
            double mid = 0.5 * (lo + hi);
            (x2 * (peak(mid) - sp.M) < -(L + 10.0) ? hi : lo) = mid;
        }
        th_max = hi;
    }

    // geometric panels towards 0 (width ~ 1/x near the saddle), subdivided
    // wherever the theta phase x^2 rho sec^2(theta) outruns the node density
    std::vector<double> edges{0.0};
    double w0 = std::min(0.6 / std::max(sp.x, 1.0), th_max / 4);
    double e = w0;
    while (e < th_max && static_cast<int>(edges.size()) < 2 * cfg.theta_panels) {
        edges.push_back(e);
        e *= 1.9;
    }
    edges.push_back(th_max);
    // phase of the s-saddle value of x^2 phi1 along theta; its variation
    // sets the oscillation the theta quadrature must resolve
    const double root0 = 2.0 * std::pow(sp.rho_t, 0.75) * std::sqrt(sp.c.gamma);
    auto sphase = [&](double th) {
        return x2 * (sp.rho_t * std::tan(th) -
                     root0 * std::pow(std::cos(th), -0.25) * std::sin(0.75 * th));
    };
    std::vector<double> fine{0.0};
    for (size_t p = 0; p + 1 < edges.size(); ++p) {
        double a = edges[p], bb = edges[p + 1];
        double dphase = std::abs(sphase(bb) - sphase(a)) +
                        0.3 * x2 * sp.rho_t * (std::tan(bb) - std::tan(a)) + 0.5;
        double suppressed = std::max(0.0, -(x2 * (peak(a) - sp.M)));
        double allow = 0.8 * layout_n * (1.0 + suppressed / 24.0);
        int sub = std::max(1, static_cast<int>(std::ceil(dphase / allow)));
        sub = std::min(sub, 512);
        // tan-equidistant edges give each sub-panel an equal phase share
        double ta = std::tan(a), tb = std::tan(bb);
        for (int k = 1; k <= sub; ++k)
            fine.push_back(k == sub ? bb : std::atan(ta + (tb - ta) * k / sub));
    }

    const auto& rule = quad::gauss_legendre(gl_n);
    QuadOut out;
    out.theta_max = th_max;
    out.theta_panels = static_cast<int>(fine.size()) - 1;
    // Conjugate symmetry in theta: the integrand at -theta is minus the
    // conjugate of the integrand at +theta (H flips sign under conjugation),
    // so the full range equals 2i Im of the half-range integral.  Panels are
    // walked outward and the tail is dropped once it stops contributing.
    Complex half_acc{0.0, 0.0};
    double scale = 0.0;
    int quiet = 0;
    for (size_t p = 0; p + 1 < fine.size(); ++p) {
        double a = fine[p], bb = fine[p + 1];
        double mid = 0.5 * (a + bb), half = 0.5 * (bb - a);
        Complex panel{0.0, 0.0};
        for (size_t i = 0; i < rule.x.size(); ++i) {
            double th = mid + half * rule.x[i];
            panel += rule.w[i] * half * s_integral(sp, th, L, gl_n, layout_n, out.evals);
        }
        half_acc += panel;
        scale = std::max(scale, std::abs(half_acc));
        // conservative tail bound: the remaining panels are narrower and
        // decaying, so |panel| * remaining bounds what is dropped
        double remaining = static_cast<double>(fine.size() - 2 - p);
        if (std::abs(panel) * std::max(remaining, 1.0) < 0.1 * tol * scale) {
            if (++quiet >= 2) {
                out.theta_max = bb;
                break;
            }
        } else {
            quiet = 0;
        }
    }
    out.I = Complex(0.0, 2.0 * half_acc.imag());
    // kernel-phase diagnostic: the theta = 0 slice must be purely imaginary
    Complex w0s = s_integral(sp, 0.0, L, gl_n, layout_n, out.evals);
    out.real_residual = std::abs(w0s.real()) / std::max(std::abs(w0s), 1e-300);
    return out;
}

DensityResult saddle_density_reduced(AreaKind kind, double x, double xi_factor,
                                     const QuadratureConfig& cfg) {
    SaddleParams sp;
    sp.c = consts_of(kind);
    sp.kind = kind;
    sp.x = x;
    sp.rho_t = sp.c.rho * xi_factor;
    sp.M = sp.rho_t - 2.0 * std::pow(sp.rho_t, 0.75) * std::sqrt(sp.c.gamma);

    const double tol = effective_tol(x, cfg);
    int n = cfg.r_points_per_panel;

    // Kernel surrogate spanning the whole (s, theta) window of this call.
    const double L0 = std::log(1.0 / tol) + 10.0;
    double root0 = 2.0 * std::pow(sp.rho_t, 0.75) * std::sqrt(sp.c.gamma);
    double tmax0 = std::acosh(1.0 + L0 / (root0 * x * x)) * 1.12 + 0.25;
    QuadOut probe;  // only for theta_max
    probe = [&] {
        QuadOut o;
        auto peak = [&](double th) {
            double A = std::pow(sp.rho_t, 1.5) * std::pow(std::cos(th), -0.5);
            double B = sp.c.gamma * std::cos(0.5 * th);
            return sp.rho_t - 2.0 * std::sqrt(A * B);
        };
        double hi = std::min(cfg.theta_cutoff, kPi / 2 - 1e-9);
        o.theta_max = hi;
        if (x * x * (peak(hi) - sp.M) < -(L0 + 10.0)) {
            double lo = 0.0;
            for (int it = 0; it < 80; ++it) {
                double mid = 0.5 * (lo + hi);
                (x * x * (peak(mid) - sp.M) < -(L0 + 10.0) ? hi : lo) = mid;
            }
            o.theta_max = hi;
        }
        return o;
    }();
    double s_star0 = std::pow(sp.rho_t, 0.75) / std::sqrt(sp.c.gamma);
    double A1 = std::pow(sp.rho_t, 1.5) * std::pow(std::cos(probe.theta_max), -0.5);
    double B1 = sp.c.gamma * std::cos(0.5 * probe.theta_max);
    double s_hi = std::sqrt(A1 / B1) * std::exp(tmax0) * 1.05;
    double s_lo = s_star0 * std::exp(-tmax0) * 0.95;
    double lrx = (4.0 / 3.0) * std::log(x);
    long sur_evals = 0;
    double lr_lo = lrx + (2.0 / 3.0) * std::log(s_lo);
    double lr_hi = lrx + (2.0 / 3.0) * std::log(s_hi);
    double a_hi = std::min(probe.theta_max / 3.0 + 1e-9, kPi / 6.0 - 1e-6);
    HSurrogate hsur = build_h_surrogate(kind, lr_lo, lr_hi, 0.0, a_hi, sur_evals);
    if (!hsur.ok) hsur = build_h_surrogate(kind, lr_lo, lr_hi, 0.0, a_hi, sur_evals, 16);
    sp.hsur = std::getenv("BAREA_NO_SURROGATE") ? nullptr : &hsur;

    const bool dbg = std::getenv("BAREA_DEBUG_LEVELS") != nullptr;
    QuadOut q1 = saddle_quadrature(sp, tol, n, n, cfg);
    QuadOut q2 = saddle_quadrature(sp, tol, n + 6, n, cfg);
    double est = std::abs(q2.I - q1.I) / std::max(std::abs(q2.I), 1e-300);
    QuadOut* best = &q2;
    QuadOut q3;
    if (est > tol) {
        q3 = saddle_quadrature(sp, tol, n + 14, n, cfg);
        est = std::abs(q3.I - q2.I) / std::max(std::abs(q3.I), 1e-300);
        best = &q3;
    }
    if (dbg) {
        std::fprintf(stderr,
                     "[levels] x=%g q1=(%.15e) q2=(%.15e) q3=(%.15e) thmax=%g/%g/%g "
                     "panels=%d/%d/%d\n",
                     x, q1.I.imag(), q2.I.imag(), q3.I.imag(), q1.theta_max, q2.theta_max,
                     q3.theta_max, q1.theta_panels, q2.theta_panels, q3.theta_panels);
    }

    const Consts& c = sp.c;
    double K = c.nu_half ? 1.0 / (4.0 * std::pow(kPi, 1.5)) : 1.0 / (4.0 * kPi * kPi);
    double W = c.nu_half ? 8.0 / 3.0 : 7.0 / 3.0;
    double pref = std::pow(sp.rho_t, 2.5 - c.nu) * std::pow(x, W) * K;
    // value = pref * Re[ I / i ] * e^{x^2 (M + b)};  I/i = -i I
    double re_part = best->I.imag();
    double im_resid = best->real_residual;
    double reduced = pref * re_part * std::exp(x * x * (sp.M + c.b));

    DensityResult r;
    r.value = reduced;
    r.est_error = std::abs(reduced) * est;
    r.method = Method::Quadrature;
    r.diagnostics["imag_residual"] = im_resid;
    r.diagnostics["surrogate"] = hsur.ok ? 1.0 : 0.0;
    r.diagnostics["kernel_evals"] = static_cast<double>(best->evals + q1.evals + sur_evals);
    r.diagnostics["theta_max"] = best->theta_max;
    r.diagnostics["theta_panels"] = best->theta_panels;
    r.diagnostics["saddle_s"] = c.s0;
    r.diagnostics["xi_factor"] = xi_factor;
    r.diagnostics["route"] = 1.0;
    if (est > 5.0 * tol)
        throw ToleranceError("density quadrature did not reach the target tolerance", est);
    return r;
}

// ---------------------------------------------------------------------------
// Single-integral g along a rotated ray.

Complex g_complex_impl(AreaKind kind, Complex w, double phi, double tol, int gl_n,
                       long* evals_out) {
    const Consts c = consts_of(kind);
    // the paper states the rotated form for |phi| < pi/6 (all it needs); the
    // same contour argument holds for |phi| < pi/3, where H still decays.
    // Stay clear of the kernel pole rays at arg z = +-pi/3.
    if (std::abs(phi) > kPi / 3.0 - 0.12)
        throw DomainError("g contour angle too close to the kernel pole rays");
    Complex rot = std::polar(1.0, -1.5 * phi);
    Complex wr = w * rot;  // e^{-3 i phi/2} w
    if (wr.real() <= 0.0)
        throw DomainError("g contour: Re(e^{-3i phi/2} w) must be positive");

    // |integrand| ~ exp(-P r^{-3/2} - Q r^{3/2}) with the saddle at
    // r* = (P/Q)^{1/3}; integrate r = r* e^tau over the window where the
    // exponent is within L of its peak -2 sqrt(PQ).
    const double L = std::log(1.0 / tol) + 8.0;
    const double P = wr.real();
    const double Q = c.gamma * std::cos(1.5 * phi);
    const double r_star = std::pow(P / Q, 1.0 / 3.0);
    const double peak = 2.0 * std::sqrt(P * Q);
    const double tau_max =
        (2.0 / 3.0) * std::acosh(1.0 + L / std::max(peak, 1e-9)) * 1.1 + 0.15;
    int panels = std::max(3, static_cast<int>(std::ceil(2.0 * tau_max / 0.5)));
    double osc = std::abs(wr.imag()) / std::max(P, 1e-30);
    if (osc > 1.0) panels = static_cast<int>(panels * std::min(40.0, 1.0 + osc));
    panels = std::min(panels, 300);
    const auto& rule = quad::gauss_legendre(gl_n);
    Complex acc{0.0, 0.0};
    const double dw = 2.0 * tau_max / panels;
    const Complex eiphi = std::polar(1.0, phi);
    for (int p = 0; p < panels; ++p) {
        double a = -tau_max + p * dw;
        double mid = a + 0.5 * dw, half = 0.5 * dw;
        for (size_t i = 0; i < rule.x.size(); ++i) {
            double r = r_star * std::exp(mid + half * rule.x[i]);
            Complex zr = r * eiphi;
            Complex zeta32 = c.gamma * std::pow(zr, 1.5);
            Complex H = kernels::h_scaled(kind, zr) * std::exp(-zeta32);
            // r^{nu-5/2} and the log-r Jacobian r combine to r^{nu-3/2}
            Complex val = std::exp(-wr * std::pow(r, -1.5)) * std::pow(r, c.nu - 1.5) * H;
            acc += rule.w[i] * half * val;
            if (evals_out) ++(*evals_out);
        }
    }
    // g = 3/(4 pi i) e^{(nu-3/2) i phi} * acc
    Complex pref = std::polar(3.0 / (4.0 * kPi), (c.nu - 1.5) * phi) / Complex(0.0, 1.0);
    return pref * acc;
}

// ---------------------------------------------------------------------------
// Small-x inversion: parabolic contour in the outer Laplace variable.
//
//   fhat(x) = s^{5/2-nu} phif(s),  s = x^{-3/2},
//   phif(s) = Gamma(nu)/pi * Im int_0^inf e^{s y} y^{3/2-nu} g(y^{2/3}) y'(u) du
// on y(u) = mu (1 + i u)^2, using conjugate symmetry for u < 0.

double gamma_of_nu(double nu) { return (std::abs(nu - 0.5) < 1e-12) ? std::sqrt(kPi) : 1.0; }

double contour_density(AreaKind kind, double x, double tol, int N, long& evals) {
    const Consts c = consts_of(kind);
    const double s = std::pow(x, -1.5);
    // Tilted-power contour y(u) = mu (1+iu)^{4/3 - eps}: asymptotic angle
    // just under 2pi/3, which keeps arg(y^{3/2}) inside the slit plane where
    // the rotated single-integral continuation of g is available, while
    // Re y -> -inf gives the arms genuine exponential decay.
    const double pw = 1.18;
    const double mu = static_cast<double>(N) / (6.0 * s);
    const auto& rule = quad::gauss_legendre(12);
    const double tol_inner = std::min(1e-10, tol * 1e-2);

    double acc = 0.0;
    double acc_scale = 0.0;
    const double panel_w = 0.5;
    int quiet = 0;
    const int max_panels = 3 * N;
    for (int p = 0; p < max_panels; ++p) {
        double a = p * panel_w, bb = a + panel_w;
        double mid = 0.5 * (a + bb), half = 0.5 * (bb - a);
        double panel = 0.0;
        for (size_t i = 0; i < rule.x.size(); ++i) {
            double u = mid + half * rule.x[i];
            Complex base{1.0, u};
            Complex y = mu * std::pow(base, pw);
            Complex dy = pw * mu * std::pow(base, pw - 1.0) * Complex(0.0, 1.0);
            Complex w = std::pow(y, 1.5);
            // keep the inner ray 0.15 rad clear of the kernel pole rays at
            // arg z = +-pi/3 (the rotated Airy zeros)
            double phi = std::clamp(std::arg(w) * (2.0 / 3.0), -(kPi / 3 - 0.15),
                                    kPi / 3 - 0.15);
            // nodes already suppressed by e^{s Re(y - mu)} need less from g
            double suppress = std::exp(std::min(0.0, s * (y.real() - mu)));
            double tol_node = std::min(1e-3, tol_inner / std::max(suppress, 1e-280));
            Complex g = g_complex_impl(kind, w, phi, tol_node, 12, &evals);
            Complex val = std::exp(s * y) * std::pow(y, 1.5 - c.nu) * g * dy;
            panel += rule.w[i] * half * val.imag();
        }
        acc += panel;
        acc_scale = std::max(acc_scale, std::abs(acc));
        double remaining = static_cast<double>(max_panels - 1 - p);
        if (p >= 3 &&
            std::abs(panel) * std::max(remaining, 1.0) < 0.05 * tol * std::max(acc_scale, 1e-300)) {
            if (++quiet >= 2) break;
        } else {
            quiet = 0;
        }
    }
    double phif = gamma_of_nu(c.nu) / kPi * acc;
    return std::pow(s, 2.5 - c.nu) * phif;
}

DensityResult contour_density_result(AreaKind kind, double x, const QuadratureConfig& cfg) {
    double tol = effective_tol(x, cfg);
    long evals = 0;
    int N = 36;
    double v1 = contour_density(kind, x, tol, N, evals);
    double v2 = contour_density(kind, x, tol, N + N / 2, evals);
    double est = std::abs(v2 - v1) / std::max(std::abs(v2), 1e-300);
    DensityResult r;
    r.value = v2;
    r.est_error = std::abs(v2) * est;
    r.method = Method::Quadrature;
    r.diagnostics["kernel_evals"] = static_cast<double>(evals);
    r.diagnostics["route"] = 0.0;
    r.diagnostics["imag_residual"] = 0.0;
    // deep in the left tail only absolute accuracy is attainable; report the
    // floor rather than failing
    r.diagnostics["abs_floor"] = 1e-11;
    if (r.value < 0.0 && -r.value < 1e-11) {
        r.value = 0.0;
        r.est_error = std::max(r.est_error, 1e-11);
    }
    return r;
}

// ---------------------------------------------------------------------------

DensityResult expansion_density_scaled(AreaKind kind, double x) {
    auto e = expansion::scaled_expansion(kind, 4);
    DensityResult r;
    r.method = Method::Expansion;
    double series4 = 0.0;
    double ix2 = 1.0 / (x * x);
    for (int k = 3; k >= 0; --k)
        series4 = series4 * ix2 + exact::to_double(e.corrections[static_cast<size_t>(k)]);
    double lead = e.lead.value() * std::pow(x, exact::to_double(e.alpha)) *
                  std::exp(-exact::to_double(e.b) * x * x);
    r.value = lead * series4;
    // remainder scale: the first omitted correction
    r.est_error = std::abs(lead) * std::abs(exact::to_double(e.corrections[4])) *
                  std::pow(ix2, 4);
    r.diagnostics["route"] = 2.0;
    return r;
}

}  // namespace

namespace detail {

DensityResult density_scaled_reduced(AreaKind kind, double x, const QuadratureConfig& cfg) {
    if (!(x > 0.0)) throw DomainError("density: x must be positive");
    const Consts c = consts_of(kind);
    const bool expansion_ok = cfg.mode != QuadratureConfig::Mode::ForceQuadrature;
    const bool quad_ok = cfg.mode != QuadratureConfig::Mode::ForceExpansion;
    DensityResult r;
    if ((cfg.mode == QuadratureConfig::Mode::ForceExpansion) ||
        (expansion_ok && x >= kExpansionSwitch)) {
        r = expansion_density_scaled(kind, x);
        double blow = std::exp(c.b * x * x);
        r.value *= blow;
        r.est_error *= blow;
        return r;
    }
    if (!quad_ok) throw DomainError("density: no admissible evaluation mode");
    const double saddle_from = c.nu_half ? kSaddleSwitchNuHalf : kSaddleSwitchNuOne;
    if (x < saddle_from || std::getenv("BAREA_FORCE_CONTOUR")) {
        r = contour_density_result(kind, x, cfg);
        double blow = std::exp(c.b * x * x);  // b x^2 <= 27/4 here
        r.value *= blow;
        r.est_error *= blow;
        return r;
    }
    return saddle_density_reduced(kind, x, 1.0, cfg);
}

DensityResult density_scaled_xi(AreaKind kind, double x, double xi_factor,
                                const QuadratureConfig& cfg) {
    if (!(x > 0.0)) throw DomainError("density: x must be positive");
    if (!(xi_factor > 0.0)) throw DomainError("xi factor must be positive");
    DensityResult r = saddle_density_reduced(kind, x, xi_factor, cfg);
    const Consts c = consts_of(kind);
    double damp = std::exp(-c.b * x * x);
    r.value *= damp;
    r.est_error *= damp;
    return r;
}

std::complex<double> g_complex(AreaKind kind, std::complex<double> w, double phi,
                               const QuadratureConfig& cfg) {
    long evals = 0;
    return g_complex_impl(kind, w, phi, std::min(cfg.target_rel_tol, 1e-9),
                          cfg.r_points_per_panel, &evals);
}

}  // namespace detail

DensityResult density_scaled(AreaKind kind, double x, const QuadratureConfig& cfg) {
    DensityResult r = detail::density_scaled_reduced(kind, x, cfg);
    const Consts c = consts_of(kind);
    double damp = std::exp(-c.b * x * x);
    r.value *= damp;
    r.est_error *= damp;
    return r;
}

DensityResult density(AreaKind kind, double x, const QuadratureConfig& cfg) {
    if (!(x > 0.0)) throw DomainError("density: x must be positive");
    const double rt2 = std::sqrt(2.0);
    DensityResult r = density_scaled(kind, rt2 * x, cfg);
    r.value *= rt2;
    r.est_error *= rt2;
    return r;
}

DensityResult tail_probability(AreaKind kind, double x, const QuadratureConfig& cfg) {
    if (!(x > 0.0)) throw DomainError("tail: x must be positive");
    const double rt2 = std::sqrt(2.0);
    const double y0 = rt2 * x;
    const Consts c = consts_of(kind);
    const bool use_expansion = (cfg.mode == QuadratureConfig::Mode::ForceExpansion) ||
                               (cfg.mode == QuadratureConfig::Mode::Auto &&
                                y0 >= kExpansionSwitch);
    DensityResult r;
    if (use_expansion) {
        auto t = expansion::tail_expansion(expansion::density_expansion(kind, 4));
        double ix2 = 1.0 / (x * x);
        double series4 = 0.0;
        for (int k = 3; k >= 0; --k)
            series4 = series4 * ix2 + exact::to_double(t.corrections[static_cast<size_t>(k)]);
        double lead = t.lead.value() * std::pow(x, exact::to_double(t.alpha)) *
                      std::exp(-exact::to_double(t.b) * x * x);
        r.value = lead * series4;
        r.est_error = std::abs(lead * exact::to_double(t.corrections[4])) * std::pow(ix2, 4);
        r.method = Method::Expansion;
        return r;
    }
    // P(B > x) = Phat(y0) = e^{-b y0^2}/(2b) int_0^inf red(y(w)) e^{-w} / y(w) dw,
    // w = b (y^2 - y0^2)
    QuadratureConfig inner = cfg;
    inner.target_rel_tol = std::max(cfg.target_rel_tol * 0.3, 1e-9);
    const double W = std::log(1.0 / effective_tol(y0, cfg)) + 8.0;
    const auto& rule = quad::gauss_legendre(cfg.r_points_per_panel);
    int panels = 5;
    double acc = 0.0, err_acc = 0.0;
    double edges0 = 0.0, dw = W / panels;
    for (int p = 0; p < panels; ++p) {
        double a = edges0 + p * dw, bb = a + dw;
        double mid = 0.5 * (a + bb), half = 0.5 * (bb - a);
        for (size_t i = 0; i < rule.x.size(); ++i) {
            double w = mid + half * rule.x[i];
            double y = std::sqrt(y0 * y0 + w / c.b);
            DensityResult red = detail::density_scaled_reduced(kind, y, inner);
            acc += rule.w[i] * half * red.value * std::exp(-w) / y;
            err_acc += rule.w[i] * half * red.est_error * std::exp(-w) / y;
        }
    }
    double pref = std::exp(-c.b * y0 * y0) / (2.0 * c.b);
    r.value = pref * acc;
    r.est_error = pref * err_acc + std::abs(r.value) * 1e-8;
    r.method = Method::Quadrature;
    return r;
}

double g_mixture(AreaKind kind, double x, const QuadratureConfig& cfg) {
    if (!(x > 0.0)) throw DomainError("g_mixture: x must be positive");
    long evals = 0;
    double tol = std::min(cfg.target_rel_tol, 1e-9);
    Complex g1 = g_complex_impl(kind, {x, 0.0}, 0.0, tol, cfg.r_points_per_panel, &evals);
    Complex g2 = g_complex_impl(kind, {x, 0.0}, 0.0, tol, cfg.r_points_per_panel + 6, &evals);
    if (std::abs(g2 - g1) > 100 * tol * std::abs(g2))
        throw ToleranceError("g_mixture did not converge",
                             std::abs(g2 - g1) / std::abs(g2));
    return g2.real();
}

double g_mixture_rotated(AreaKind kind, double x, double phi, const QuadratureConfig& cfg) {
    if (!(x > 0.0)) throw DomainError("g_mixture: x must be positive");
    long evals = 0;
    double tol = std::min(cfg.target_rel_tol, 1e-9);
    Complex g = g_complex_impl(kind, {x, 0.0}, phi, tol, cfg.r_points_per_panel + 6, &evals);
    return g.real();
}

}  // namespace barea::inversion
