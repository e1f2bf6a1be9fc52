#pragma once

// Numerical evaluation of the double-Laplace inversion: densities and tail
// probabilities of the seven Brownian areas, plus the single-integral
// Gamma-mixture density used as an independent cross-check.
//
// Three regimes for the scaled density:
//   - saddle-point quadrature of the (s, theta) double integral (the scaled
//     integrand peaks at (s0, 0) with Gaussian width ~ 1/x); used for
//     0.9 <= x < 3 and under ForceQuadrature above 3;
//   - a parabolic complex contour in the outer Laplace variable with the
//     rotated single-integral g as the inner evaluation, for x < 0.9 where
//     the saddle-scaled integrand oscillates beyond any quadrature;
//   - the 4-term asymptotic expansion for x >= 3 (Auto), where its remainder
//     is below the quadrature tolerance.

#include <complex>
#include <map>
#include <string>

#include "barea/kernels.hpp"

namespace barea::inversion {

using kernels::AreaKind;

struct QuadratureConfig {
    int theta_panels = 12;         // cap on geometric theta panels per half-range
    int r_points_per_panel = 14;   // Gauss-Legendre nodes per panel
    double theta_cutoff = 1.5707963267948966;  // hard bound on |theta|
    double s_window_halfwidth = 8.0;           // multiplier on log x (s window cap)
    double target_rel_tol = 1e-8;
    enum class Mode { Auto, ForceQuadrature, ForceExpansion } mode = Mode::Auto;
};

enum class Method { Quadrature, Expansion };

struct DensityResult {
    double value{0.0};
    double est_error{0.0};
    Method method{Method::Quadrature};
    std::map<std::string, double> diagnostics;
};

// Density of sqrt(2) B at x > 0.
DensityResult density_scaled(AreaKind kind, double x, const QuadratureConfig& cfg = {});

// Density of the unscaled area B at x > 0: f(x) = sqrt2 fhat(sqrt2 x).
DensityResult density(AreaKind kind, double x, const QuadratureConfig& cfg = {});

// P(B > x).
DensityResult tail_probability(AreaKind kind, double x, const QuadratureConfig& cfg = {});

// Density of X_T = T^{2/3} X at x, X = sqrt2 B, T ~ Gamma(nu), by the
// absolutely convergent single integral (contour angle phi = 0).
double g_mixture(AreaKind kind, double x, const QuadratureConfig& cfg = {});

// Same along the rotated ray (|phi| < pi/6); analytic continuation makes the
// value phi-independent.
double g_mixture_rotated(AreaKind kind, double x, double phi,
                         const QuadratureConfig& cfg = {});

namespace detail {

// fhat(x) * e^{+b x^2}: the density with its Gaussian factor removed, for
// tail integration without underflow.
DensityResult density_scaled_reduced(AreaKind kind, double x, const QuadratureConfig& cfg);

// Debug entry: the inversion formula holds for any xi > 0; this evaluates
// with xi = xi_factor * rho * x^{8/3} (saddle-quadrature route only).
DensityResult density_scaled_xi(AreaKind kind, double x, double xi_factor,
                                const QuadratureConfig& cfg);

// The g value at a complex argument via the rotated contour; used by the
// small-x inversion and exposed for tests.
std::complex<double> g_complex(AreaKind kind, std::complex<double> w, double phi,
                               const QuadratureConfig& cfg);

}  // namespace detail

}  // namespace barea::inversion
