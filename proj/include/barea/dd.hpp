#pragma once

// Double-double arithmetic: an unevaluated sum of two doubles giving ~32
// significant digits.  Used by the Airy Maclaurin evaluator, where the series
// cancellation grows like e^{2|zeta|} and plain doubles lose too many digits,
// and by the rotated-kernel route, which subtracts nearly equal Psi values.
// Algorithms are the classical error-free transforms (Dekker/Knuth); no FMA
// requirement.

#include <cmath>

namespace barea::detail {

struct dd {
    double hi{0.0}, lo{0.0};

    dd() = default;
    constexpr dd(double h) : hi(h), lo(0.0) {}
    constexpr dd(double h, double l) : hi(h), lo(l) {}

    explicit operator double() const { return hi + lo; }
};

inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline void split(double a, double& h, double& l) {
    constexpr double splitter = 134217729.0;  // 2^27 + 1
    double t = splitter * a;
    h = t - (t - a);
    l = a - h;
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    double ah, al, bh, bl;
    split(a, ah, al);
    split(b, bh, bl);
    double e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    return {p, e};
}

inline dd operator+(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    dd t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline dd operator+(dd a, double b) {
    dd s = two_sum(a.hi, b);
    s.lo += a.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline dd operator+(double a, dd b) { return b + a; }

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }
inline dd operator-(dd a, dd b) { return a + (-b); }
inline dd operator-(dd a, double b) { return a + (-b); }
inline dd operator-(double a, dd b) { return (-b) + a; }

inline dd operator*(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline dd operator*(dd a, double b) {
    dd p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

inline dd operator*(double a, dd b) { return b * a; }

inline dd operator/(dd a, dd b) {
    double q1 = a.hi / b.hi;
    dd r = a - b * q1;
    double q2 = r.hi / b.hi;
    r = r - b * q2;
    double q3 = r.hi / b.hi;
    dd q = quick_two_sum(q1, q2);
    return q + q3;
}

inline dd operator/(dd a, double b) { return a / dd(b); }
inline dd operator/(double a, dd b) { return dd(a) / b; }

inline dd& operator+=(dd& a, dd b) { return a = a + b; }
inline dd& operator-=(dd& a, dd b) { return a = a - b; }
inline dd& operator*=(dd& a, dd b) { return a = a * b; }
inline dd& operator/=(dd& a, dd b) { return a = a / b; }

inline bool operator<(dd a, dd b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(dd a, dd b) { return b < a; }

inline dd fabs(dd a) { return a.hi < 0.0 ? -a : a; }

inline dd sqrt(dd a) {
    if (a.hi == 0.0) return {0.0, 0.0};
    // One Newton step on x = sqrt(a) from the double estimate is enough for
    // full dd accuracy: x1 = x0 + (a - x0^2) / (2 x0).
    double x0 = std::sqrt(a.hi);
    dd x0d(x0);
    dd r = (a - x0d * x0d) / (2.0 * x0);
    return x0d + r;
}

// Complex double-double.
struct cdd {
    dd re, im;

    cdd() = default;
    cdd(dd r) : re(r), im(0.0) {}
    cdd(dd r, dd i) : re(r), im(i) {}
    cdd(double r, double i = 0.0) : re(r), im(i) {}
};

inline cdd operator+(const cdd& a, const cdd& b) { return {a.re + b.re, a.im + b.im}; }
inline cdd operator-(const cdd& a, const cdd& b) { return {a.re - b.re, a.im - b.im}; }
inline cdd operator-(const cdd& a) { return {-a.re, -a.im}; }

inline cdd operator*(const cdd& a, const cdd& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline cdd operator*(const cdd& a, dd s) { return {a.re * s, a.im * s}; }
inline cdd operator*(dd s, const cdd& a) { return a * s; }
inline cdd operator*(const cdd& a, double s) { return {a.re * s, a.im * s}; }
inline cdd operator*(double s, const cdd& a) { return a * s; }

inline cdd operator/(const cdd& a, const cdd& b) {
    dd d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

inline cdd operator/(const cdd& a, dd s) { return {a.re / s, a.im / s}; }
inline cdd operator/(const cdd& a, double s) { return {a.re / dd(s), a.im / dd(s)}; }

inline cdd& operator+=(cdd& a, const cdd& b) { return a = a + b; }
inline cdd& operator-=(cdd& a, const cdd& b) { return a = a - b; }
inline cdd& operator*=(cdd& a, const cdd& b) { return a = a * b; }

inline cdd conj(const cdd& a) { return {a.re, -a.im}; }
inline dd abs2(const cdd& a) { return a.re * a.re + a.im * a.im; }

// Magnitude estimate; full dd accuracy is not needed where this is used.
inline double abs_est(const cdd& a) { return std::hypot(a.re.hi, a.im.hi); }

// Principal complex square root in dd.
inline cdd sqrt(const cdd& z) {
    if (z.re.hi == 0.0 && z.re.lo == 0.0 && z.im.hi == 0.0 && z.im.lo == 0.0) return {0.0, 0.0};
    dd m = sqrt(abs2(z));      // |z|^... actually |z|^2 -> sqrt gives |z|
    dd u = sqrt((m + fabs(z.re)) * 0.5);
    dd v = fabs(z.im) / (2.0 * u);
    bool im_neg = z.im.hi < 0.0 || (z.im.hi == 0.0 && z.im.lo < 0.0);
    if (z.re.hi >= 0.0) {
        return {u, im_neg ? -v : v};
    }
    // Re z < 0: the root has |Im| >= |Re|; sign of Im follows Im z.
    // For Im z == +-0 the branch-cut side comes from the signed zero.
    if (z.im.hi == 0.0 && z.im.lo == 0.0) {
        im_neg = std::signbit(z.im.hi);
    }
    return {v, im_neg ? -u : u};
}

}  // namespace barea::detail
