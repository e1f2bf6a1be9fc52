#pragma once

// Exact regeneration of the right-tail asymptotic expansions: Taylor-expand
// the saddle-scaled phase and amplitude around (s0, 0) in the variables
// s = s0 (1 + u/x), theta = 2v/x, exponentiate the cubic-and-higher phase
// remainder, integrate monomials against the complex Gaussian weight
// e^{-2bu^2 + 2ibuv - bv^2}, and collect powers of 1/x.  All arithmetic is
// in Q[i]; prefactors live in the ring Q * 2^{j/2} * 3^{k/2} * pi^{l/2}.

#include <vector>

#include "barea/exact.hpp"
#include "barea/kernels.hpp"

namespace barea::expansion {

using kernels::AreaKind;

// Bivariate polynomial in (u, v) over Q[i].
class BivarPoly {
public:
    BivarPoly() : du_(0), dv_(0), c_(1) {}
    BivarPoly(int du, int dv) : du_(du), dv_(dv), c_((du + 1) * (dv + 1)) {}

    static BivarPoly constant(const exact::GRat& g);
    static BivarPoly monomial(const exact::GRat& g, int i, int j);

    int deg_u() const { return du_; }
    int deg_v() const { return dv_; }
    const exact::GRat& at(int i, int j) const { return c_[i + j * (du_ + 1)]; }
    exact::GRat& at(int i, int j) { return c_[i + j * (du_ + 1)]; }
    bool is_zero() const;

    friend BivarPoly operator+(const BivarPoly& a, const BivarPoly& b);
    friend BivarPoly operator-(const BivarPoly& a, const BivarPoly& b);
    friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
    BivarPoly scaled(const exact::GRat& s) const;

private:
    int du_, dv_;
    std::vector<exact::GRat> c_;
};

// Truncated series in X = 1/x with BivarPoly coefficients.
struct BivariateSeries {
    unsigned order{0};
    std::vector<BivarPoly> c;  // c[j] multiplies X^j; size order+1

    explicit BivariateSeries(unsigned ord = 0) : order(ord), c(ord + 1) {}
};

BivariateSeries operator+(const BivariateSeries& a, const BivariateSeries& b);
BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b);
BivariateSeries scaled(const BivariateSeries& a, const exact::GRat& s);

// exp of a series with zero constant coefficient.
BivariateSeries exp_series(const BivariateSeries& a);

// Taylor expansion of the saddle-scaled phase phi1(s0(1+u/x), 2v/x) in X.
// Checks the structural identities: X^0 coefficient -b, X^1 zero, X^2 equal
// to -2b u^2 + 2i b u v - b v^2.
BivariateSeries phi1_series(AreaKind kind, unsigned order);

// Exact normalized Gaussian moment: E[u^m v^n] under the weight
// e^{-2bu^2+2ibuv-bv^2}, together with the normalization pi/(sqrt(3) b).
struct GaussianMoment {
    exact::GRat coeff;      // E[u^m v^n]
    exact::SymConst norm;   // integral of the bare weight
};
GaussianMoment gaussian_moment(unsigned m, unsigned n, const exact::Rat& b);

// Prefactor triple + exact corrections:  lead * x^alpha * e^{-b x^2} *
// (corrections[0] + corrections[1] x^{-2} + ...), corrections[0] = 1.
struct TailExpansion {
    exact::Rat alpha;
    exact::Rat b;
    exact::SymConst lead;
    std::vector<exact::Rat> corrections;
};

// Expansion of the density of the sqrt(2)-scaled variable, n_corr correction
// terms beyond the leading 1.
TailExpansion scaled_expansion(AreaKind kind, unsigned n_corr);

// Expansion of the density of the unscaled area B (f(x) = sqrt2 fhat(sqrt2 x)).
TailExpansion density_expansion(AreaKind kind, unsigned n_corr);

// Density -> upper-tail transfer by repeated integration by parts.
TailExpansion tail_expansion(const TailExpansion& density);

// Formal differentiation of a tail expansion; inverse of tail_expansion.
TailExpansion differentiate_tail(const TailExpansion& tail);

// Numerics and rendering.
double eval_expansion(const TailExpansion& e, double x);
// The series factor alone (sum of corrections * x^{-2k}).
double eval_correction_series(const TailExpansion& e, double x);
std::string prefactor_string(const TailExpansion& e);

}  // namespace barea::expansion
