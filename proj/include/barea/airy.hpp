#pragma once

// Complex Airy evaluation: Ai, Ai', Bi, Bi', and the primitives
// AI(z) = int_z^inf Ai, BI(z) = int_0^z Bi, on the slit plane with explicit
// side selection on the negative real axis, in unscaled or exponentially
// scaled form (ai-family * e^{+zeta}, bi-family * e^{-zeta},
// zeta = (2/3) z^{3/2}).
//
// Two regimes: Maclaurin series in double-double below |z| = 9 (the series
// cancellation is ~e^{2 Re zeta}, absorbed by the wide significand), and
// one-sided asymptotic series combined through exact rotation identities
// above.  The regimes agree to better than 1e-12 on the overlap annulus.

#include <complex>

#include "barea/dd.hpp"
#include "barea/exact.hpp"

namespace barea::airy {

using Complex = std::complex<double>;

enum class Scaling { Unscaled, ExpScaled };

// Boundary-value selection on the cut (-inf, 0): Above = limit from +i0.
enum class Side { None, Above, Below };

struct AiryBundle {
    Complex ai, ai_prime, bi, bi_prime, ai_int, bi_int;
    Scaling scaling{Scaling::Unscaled};
    Complex zeta{0.0, 0.0};   // zeta(z) backing the scaling factors
    bool degraded{false};     // set outside the validated sector heuristics
};

// Principal (2/3) z^{3/2}; on the negative axis the side flag picks the
// boundary limit.  Throws BranchError for z < 0 without a side.
Complex zeta(Complex z, Side side = Side::None);

AiryBundle airy_bundle(Complex z, Scaling scaling, Side side = Side::None);

// Re-express a bundle in the other scaling using its stored zeta.
AiryBundle rescale(const AiryBundle& b, Scaling target);

// Ai, Ai', AI at z*e^{+-2pi i/3} from unscaled values at z via the rotation
// connection formulas.  direction = +1 or -1.
struct RotatedTriple {
    Complex ai, ai_prime, ai_int;
};
RotatedTriple connection_rotate(const AiryBundle& bundle, int direction);

using exact::BetaKind;
inline exact::FormalSeries beta_series(BetaKind kind, unsigned order) {
    return exact::beta_series(kind, order);
}

// Radius of the Maclaurin/asymptotic switch.
double series_radius();

// Radius up to which the double-double Maclaurin path applies.
double dd_series_radius();

namespace dd_eval {

// Unscaled six-tuple in double-double; valid for |z| <= series_radius().
struct BundleDD {
    barea::detail::cdd ai, aip, bi, bip, aii, bii;
};

BundleDD series_bundle(const barea::detail::cdd& z);

}  // namespace dd_eval

}  // namespace barea::airy
