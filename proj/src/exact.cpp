#include "barea/exact.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace barea::exact {

Rat pow_int(const Rat& q, long e) {
    if (e == 0) return Rat(1);
    if (e < 0) {
        if (q == 0) throw ConsistencyError("pow_int: zero to negative power");
        return Rat(1) / pow_int(q, -e);
    }
    Rat r(1), base = q;
    long n = e;
    while (n > 0) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

Rat binom(const Rat& q, unsigned k) {
    Rat r(1);
    for (unsigned j = 0; j < k; ++j) {
        r *= (q - Rat(static_cast<long>(j)));
        r /= Rat(static_cast<long>(j) + 1);
    }
    return r;
}

Rat factorial(unsigned n) {
    Rat r(1);
    for (unsigned j = 2; j <= n; ++j) r *= Rat(static_cast<long>(j));
    return r;
}

GRat div(const GRat& a, const GRat& b) {
    Rat d = b.re * b.re + b.im * b.im;
    if (d == 0) throw ConsistencyError("GRat division by zero");
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

GRat pow_int(const GRat& a, long e) {
    if (e < 0) return div(GRat(Rat(1)), pow_int(a, -e));
    GRat r{Rat(1)};
    GRat base = a;
    long n = e;
    while (n > 0) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

// ---------------------------------------------------------------------------

void SymConst::normalize() {
    if (q == 0) {
        h2 = h3 = hpi = 0;
        return;
    }
    auto fold = [this](long& h, long p) {
        // Keep h in {0, 1}, folding even halves into q.
        long shift = (h >= 0) ? h / 2 : -((-h + 1) / 2);
        if (shift != 0) q *= pow_int(Rat(p), shift);
        h -= 2 * shift;
    };
    fold(h2, 2);
    fold(h3, 3);
}

double SymConst::value() const {
    double v = to_double(q);
    if (h2) v *= std::sqrt(2.0);
    if (h3) v *= std::sqrt(3.0);
    v *= std::pow(std::numbers::pi, 0.5 * static_cast<double>(hpi));
    return v;
}

std::string SymConst::str() const {
    if (q == 0) return "0";
    // Merge the 2/3 surds into a single sqrt(m), m in {1,2,3,6}.
    long m = 1;
    if (h2) m *= 2;
    if (h3) m *= 3;
    std::ostringstream os;
    os << q.get_str();
    if (m != 1) os << "*sqrt(" << m << ")";
    if (hpi != 0) {
        long ip = hpi / 2;    // integer pi power
        long hp = hpi % 2;    // leftover half
        if (ip > 0)
            for (long j = 0; j < ip; ++j) os << "*pi";
        if (ip < 0)
            for (long j = 0; j < -ip; ++j) os << "/pi";
        if (hp == 1) os << "*sqrt(pi)";
        if (hp == -1) os << "/sqrt(pi)";
    }
    return os.str();
}

SymConst operator*(const SymConst& a, const SymConst& b) {
    SymConst r;
    r.q = a.q * b.q;
    r.h2 = a.h2 + b.h2;
    r.h3 = a.h3 + b.h3;
    r.hpi = a.hpi + b.hpi;
    r.normalize();
    return r;
}

SymConst operator*(const SymConst& a, const Rat& s) {
    SymConst r = a;
    r.q *= s;
    r.normalize();
    return r;
}

bool operator==(const SymConst& a, const SymConst& b) {
    if (a.q == 0 && b.q == 0) return true;
    return a.q == b.q && a.h2 == b.h2 && a.h3 == b.h3 && a.hpi == b.hpi;
}

SymConst sym_sqrt_pow(const Rat& base, long half_exponent) {
    // base = 2^x 3^y r^2 with r rational; peel 2s and 3s off numerator and
    // denominator, then require the leftover to be a perfect rational square.
    if (base <= 0) throw ConsistencyError("sym_sqrt_pow: base must be positive");
    mpz_class num = base.get_num(), den = base.get_den();
    long x = 0, y = 0;
    auto peel = [](mpz_class& n, unsigned long p, long sign, long& cnt) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
            cnt += sign;
        }
    };
    peel(num, 2, +1, x);
    peel(den, 2, -1, x);
    peel(num, 3, +1, y);
    peel(den, 3, -1, y);
    mpz_class sn, sd;
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        throw ConsistencyError("sym_sqrt_pow: base not in the 2^x 3^y square ring");
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    Rat r(sn, sd);
    // base^{he/2} = r^{he} * 2^{x*he/2} * 3^{y*he/2}
    SymConst out(pow_int(r, half_exponent), x * half_exponent, y * half_exponent, 0);
    return out;
}

// ---------------------------------------------------------------------------

static void check_same(const FormalSeries& a, const FormalSeries& b) {
    if (a.var != b.var || a.c.size() != b.c.size())
        throw ConsistencyError("FormalSeries: mismatched variable or truncation order");
}

FormalSeries operator+(const FormalSeries& a, const FormalSeries& b) {
    check_same(a, b);
    FormalSeries r = a;
    for (size_t k = 0; k < r.c.size(); ++k) r.c[k] += b.c[k];
    return r;
}

FormalSeries operator-(const FormalSeries& a, const FormalSeries& b) {
    check_same(a, b);
    FormalSeries r = a;
    for (size_t k = 0; k < r.c.size(); ++k) r.c[k] -= b.c[k];
    return r;
}

FormalSeries operator*(const FormalSeries& a, const FormalSeries& b) {
    check_same(a, b);
    FormalSeries r(a.var, a.order());
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; i + j < r.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    return r;
}

FormalSeries operator*(const FormalSeries& a, const Rat& s) {
    FormalSeries r = a;
    for (auto& ck : r.c) ck *= s;
    return r;
}

FormalSeries inverse(const FormalSeries& a) {
    if (a.c[0] == 0) throw ConsistencyError("FormalSeries inverse: zero constant term");
    FormalSeries r(a.var, a.order());
    r.c[0] = Rat(1) / a.c[0];
    for (size_t k = 1; k < r.c.size(); ++k) {
        Rat acc(0);
        for (size_t j = 1; j <= k; ++j) acc += a.c[j] * r.c[k - j];
        r.c[k] = -acc / a.c[0];
    }
    return r;
}

FormalSeries pow_int(const FormalSeries& a, long e) {
    FormalSeries base = (e < 0) ? inverse(a) : a;
    long n = (e < 0) ? -e : e;
    FormalSeries r(a.var, a.order());
    r.c[0] = Rat(1);
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

double eval(const FormalSeries& s, double tval) {
    double acc = 0.0;
    for (size_t k = s.c.size(); k-- > 0;) acc = acc * tval + to_double(s.c[k]);
    return acc;
}

FormalSeries beta_series(BetaKind kind, unsigned order) {
    // beta0 coefficients from the classical closed form
    //   u_k = Gamma(3k+1/2) / (54^k k! Gamma(k+1/2)),  c_k = (3/2)^k u_k,
    // generated by the exact ratio recurrence; beta1 via the (6k+1)/(6k-1)
    // sign-flip rule; beta-1 by the recurrence forced by term-by-term
    // differentiation of the BI expansion (see docs/series-notes.md).
    FormalSeries c0(SeriesVar::TInvZ32, order);
    c0.c[0] = Rat(1);
    for (unsigned k = 1; k <= order; ++k) {
        long kk = static_cast<long>(k);
        Rat ratio = Rat(3, 2) * Rat(6 * kk - 1, 2) * Rat(6 * kk - 3, 2) * Rat(6 * kk - 5, 2) /
                    (Rat(54) * Rat(kk) * Rat(2 * kk - 1, 2));
        c0.c[k] = c0.c[k - 1] * ratio;
    }
    switch (kind) {
        case BetaKind::Zero:
            return c0;
        case BetaKind::One: {
            FormalSeries d = c0;
            for (unsigned k = 1; k <= order; ++k) {
                long kk = static_cast<long>(k);
                d.c[k] *= -Rat(6 * kk + 1, 6 * kk - 1);
            }
            return d;
        }
        case BetaKind::MinusOne: {
            FormalSeries e(SeriesVar::TInvZ32, order);
            e.c[0] = Rat(1);
            for (unsigned m = 1; m <= order; ++m) {
                long mm = static_cast<long>(m);
                e.c[m] = c0.c[m] + Rat(6 * mm - 3, 4) * e.c[m - 1];
            }
            return e;
        }
    }
    throw ConsistencyError("beta_series: bad kind");
}

}  // namespace barea::exact
