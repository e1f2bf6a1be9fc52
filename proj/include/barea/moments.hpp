#pragma once

// Moment machinery: the exact excursion-moment recursion (Takacs' K_n),
// closed-form moment asymptotics for all seven areas from their tail
// prefactors, the refined excursion correction, and numeric moments from the
// quadrature densities.

#include <optional>
#include <vector>

#include "barea/exact.hpp"
#include "barea/expansion.hpp"
#include "barea/inversion.hpp"
#include "barea/kernels.hpp"

namespace barea::moments {

using kernels::AreaKind;

// K_0 = -1/2, K_n = ((3n-4)/4) K_{n-1} + sum_{j=1}^{n-1} K_j K_{n-j}.
exact::Rat takacs_k(unsigned n);

// E B_ex^n = 4 sqrt(pi) 2^{-n/2} n! / Gamma((3n-1)/2) * K_n, exact in the
// constant ring (Gamma at half-integers contributes sqrt(pi) multiples).
exact::SymConst excursion_moment_exact(unsigned n);
double excursion_moment(unsigned n);

// Leading moment asymptotic a sqrt(pi) (2b)^{-(alpha+1)/2} n^{alpha/2}
// (n/(2eb))^{n/2}; refined (excursion only) multiplies by (1 - 5/(12n)).
double moment_asymptotic(AreaKind kind, unsigned n, bool refined = false);

// The constant a sqrt(pi) (2b)^{-(alpha+1)/2} of the corollary, exact.
exact::SymConst moment_asymptotic_constant(AreaKind kind);

// Numeric moment from the quadrature density over [0.05, 6].
struct NumericMoment {
    double value;
    double est_error;
};
NumericMoment moment_from_density(AreaKind kind, unsigned n,
                                  const inversion::QuadratureConfig& cfg = {});

struct MomentRecord {
    AreaKind kind;
    unsigned n;
    std::optional<exact::SymConst> exact;  // excursion only
    double asymptotic;
    std::optional<double> refined;         // excursion only
    std::optional<NumericMoment> numeric;
};

MomentRecord moment_record(AreaKind kind, unsigned n, bool with_numeric,
                           const inversion::QuadratureConfig& cfg = {});

}  // namespace barea::moments
