#pragma once

// The seven Brownian-area Laplace kernels Psi and their rotated combinations
//   H(z) = e^{2 pi nu i/3} Psi(e^{2 pi i/3} z) - e^{-2 pi nu i/3} Psi(e^{-2 pi i/3} z),
// in definitional and closed form, the overflow-free factor
// h(z) = H(z) e^{+gamma z^{3/2}}, and the exact correction series hhat.
// All kernels are for the sqrt(2)-scaled variables; the density layer owns
// the conversion.

#include <array>
#include <complex>
#include <string>

#include "barea/airy.hpp"
#include "barea/dd.hpp"
#include "barea/exact.hpp"

namespace barea::kernels {

using Complex = std::complex<double>;

enum class AreaKind {
    Excursion,
    Bridge,
    Motion,
    Meander,
    DoubleMeander,
    BridgePositive,
    MotionPositive,
};

inline constexpr std::array<AreaKind, 7> kAllKinds = {
    AreaKind::Excursion,      AreaKind::Bridge,         AreaKind::Motion,
    AreaKind::Meander,        AreaKind::DoubleMeander,  AreaKind::BridgePositive,
    AreaKind::MotionPositive,
};

const char* name(AreaKind kind);
AreaKind kind_from_name(const std::string& s);  // throws DomainError

struct AreaConstants {
    exact::Rat nu;          // 1/2 or 1
    exact::Rat gamma;       // decay rate in H = h e^{-gamma z^{3/2}}
    exact::Rat rho;         // saddle scale, (9 gamma/4)^2
    exact::Rat b;           // Gaussian rate, rho/3
    exact::Rat s0;          // saddle location, 2b/gamma
    exact::Rat lead_power;  // p in h(z) ~ c i z^p
    exact::SymConst lead_const;
};

const AreaConstants& constants(AreaKind kind);

// The Laplace-transform kernel Psi for the sqrt(2)-scaled area; analytic in
// the slit plane.
Complex psi(AreaKind kind, Complex z);

// H by literal rotation of Psi (|arg z| < pi/3).  Evaluated in double-double
// below the dd series radius: the rotation difference cancels almost
// completely, so plain doubles would lose the value entirely by |z| ~ 8.
Complex hx_definitional(AreaKind kind, Complex z);

// H from the printed closed form, one Airy bundle at z, no rotations.
Complex hx_closed(AreaKind kind, Complex z);

// h(z) = H(z) e^{+gamma z^{3/2}} from exponentially scaled Airy values;
// overflow-free for |arg z| <= pi/6 at any radius the bundle supports.
Complex h_scaled(AreaKind kind, Complex z);

// Exact correction series of h: h(z) ~ i hhat_lead(z) * series(t), t = z^{-3/2}.
exact::FormalSeries hhat_series(AreaKind kind, unsigned order);

namespace detail {
// Psi in double-double (unscaled bundle path, |z| <= airy dd radius).
barea::detail::cdd psi_dd(AreaKind kind, const barea::detail::cdd& z);
}  // namespace detail

}  // namespace barea::kernels
