#pragma once

// Exact arithmetic building blocks: rationals (GMP), Gaussian rationals
// Q[i], the prefactor constant ring Q * 2^{j/2} * 3^{k/2} * pi^{l/2}, and
// truncated formal power series with exact coefficients.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "barea/errors.hpp"

namespace barea::exact {

using Rat = mpq_class;

inline double to_double(const Rat& q) { return q.get_d(); }
inline std::string to_string(const Rat& q) { return q.get_str(); }

inline Rat rat(long n, long d = 1) { return Rat(n, d); }

// n-th power with integer exponent (negative allowed).
Rat pow_int(const Rat& q, long e);

// Generalized binomial coefficient binom(q, k) for rational q, integer k>=0.
Rat binom(const Rat& q, unsigned k);

Rat factorial(unsigned n);

// ---------------------------------------------------------------------------
// Gaussian rationals.

struct GRat {
    Rat re, im;

    GRat() : re(0), im(0) {}
    GRat(const Rat& r) : re(r), im(0) {}
    GRat(long r) : re(r), im(0) {}
    GRat(const Rat& r, const Rat& i) : re(r), im(i) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
};

inline GRat operator+(const GRat& a, const GRat& b) { return {a.re + b.re, a.im + b.im}; }
inline GRat operator-(const GRat& a, const GRat& b) { return {a.re - b.re, a.im - b.im}; }
inline GRat operator-(const GRat& a) { return {-a.re, -a.im}; }
inline GRat operator*(const GRat& a, const GRat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline GRat operator*(const GRat& a, const Rat& s) { return {a.re * s, a.im * s}; }
inline GRat operator*(const Rat& s, const GRat& a) { return a * s; }
inline GRat& operator+=(GRat& a, const GRat& b) { return a = a + b; }
inline GRat& operator-=(GRat& a, const GRat& b) { return a = a - b; }
inline GRat& operator*=(GRat& a, const GRat& b) { return a = a * b; }
inline bool operator==(const GRat& a, const GRat& b) { return a.re == b.re && a.im == b.im; }

GRat div(const GRat& a, const GRat& b);
GRat pow_int(const GRat& a, long e);

// i^k
inline GRat i_pow(long k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return GRat(Rat(1));
        case 1: return GRat(Rat(0), Rat(1));
        case 2: return GRat(Rat(-1));
        default: return GRat(Rat(0), Rat(-1));
    }
}

// ---------------------------------------------------------------------------
// The constant ring closing all seven tail prefactors:
//     q * 2^{h2/2} * 3^{h3/2} * pi^{hpi/2},
// with q rational and h2, h3, hpi integers.  Normalized so h2, h3 are 0 or 1
// (even halves are folded into q); pi exponents are kept verbatim.

struct SymConst {
    Rat q;
    long h2{0}, h3{0}, hpi{0};

    SymConst() : q(0) {}
    SymConst(const Rat& q_) : q(q_) {}
    SymConst(const Rat& q_, long h2_, long h3_, long hpi_) : q(q_), h2(h2_), h3(h3_), hpi(hpi_) {
        normalize();
    }

    void normalize();
    bool is_zero() const { return q == 0; }
    double value() const;
    std::string str() const;  // e.g. "6*sqrt(6)/sqrt(pi)"
};

SymConst operator*(const SymConst& a, const SymConst& b);
SymConst operator*(const SymConst& a, const Rat& s);
bool operator==(const SymConst& a, const SymConst& b);

// (a)^{e/2} for rational a > 0 that factors as 2^x 3^y q^2 ... ; supported
// bases are products of powers of 2 and 3 times a rational square.  Covers
// (2b)^{-(alpha+1)/2} for every area.
SymConst sym_sqrt_pow(const Rat& base, long half_exponent);

// ---------------------------------------------------------------------------
// Truncated univariate power series with exact rational coefficients.
// The variable is identified by a tag carried along for interface clarity.

enum class SeriesVar {
    TInvZ32,  // t = z^{-3/2}
    InvX,     // x^{-1}
};

struct FormalSeries {
    SeriesVar var{SeriesVar::TInvZ32};
    std::vector<Rat> c;  // c[k] multiplies var^k; size = order + 1

    FormalSeries() = default;
    FormalSeries(SeriesVar v, unsigned order) : var(v), c(order + 1, Rat(0)) {}

    unsigned order() const { return static_cast<unsigned>(c.size()) - 1; }
    const Rat& operator[](unsigned k) const { return c[k]; }
    Rat& operator[](unsigned k) { return c[k]; }
};

FormalSeries operator+(const FormalSeries& a, const FormalSeries& b);
FormalSeries operator-(const FormalSeries& a, const FormalSeries& b);
FormalSeries operator*(const FormalSeries& a, const FormalSeries& b);
FormalSeries operator*(const FormalSeries& a, const Rat& s);

// Reciprocal of a series with nonzero constant term, truncated like `a`.
FormalSeries inverse(const FormalSeries& a);

// Integer power (negative via inverse).
FormalSeries pow_int(const FormalSeries& a, long e);

double eval(const FormalSeries& s, double tval);

// ---------------------------------------------------------------------------
// Asymptotic coefficient families for the Airy functions, in t = z^{-3/2}:
//   beta0  : Bi  ~ pi^{-1/2} z^{-1/4} e^{+zeta} beta0(t)
//   beta1  : Bi' ~ pi^{-1/2} z^{+1/4} e^{+zeta} beta1(t)
//   beta-1 : BI  ~ pi^{-1/2} z^{-3/4} e^{+zeta} beta-1(t)
// The Ai-side series are the same coefficients with alternating signs.

enum class BetaKind { MinusOne, Zero, One };

FormalSeries beta_series(BetaKind kind, unsigned order);

}  // namespace barea::exact
