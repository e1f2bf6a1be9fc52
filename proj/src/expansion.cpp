#include "barea/expansion.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "barea/errors.hpp"

namespace barea::expansion {

using exact::GRat;
using exact::Rat;
using exact::SymConst;

// ---------------------------------------------------------------------------
// BivarPoly

BivarPoly BivarPoly::constant(const GRat& g) {
    BivarPoly p(0, 0);
    p.at(0, 0) = g;
    return p;
}

BivarPoly BivarPoly::monomial(const GRat& g, int i, int j) {
    BivarPoly p(i, j);
    p.at(i, j) = g;
    return p;
}

bool BivarPoly::is_zero() const {
    for (const auto& g : c_)
        if (!g.is_zero()) return false;
    return true;
}

BivarPoly operator+(const BivarPoly& a, const BivarPoly& b) {
    BivarPoly r(std::max(a.du_, b.du_), std::max(a.dv_, b.dv_));
    for (int j = 0; j <= a.dv_; ++j)
        for (int i = 0; i <= a.du_; ++i) r.at(i, j) += a.at(i, j);
    for (int j = 0; j <= b.dv_; ++j)
        for (int i = 0; i <= b.du_; ++i) r.at(i, j) += b.at(i, j);
    return r;
}

BivarPoly operator-(const BivarPoly& a, const BivarPoly& b) {
    return a + b.scaled(GRat(Rat(-1)));
}

BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
    BivarPoly r(a.du_ + b.du_, a.dv_ + b.dv_);
    for (int j = 0; j <= a.dv_; ++j)
        for (int i = 0; i <= a.du_; ++i) {
            const GRat& ac = a.at(i, j);
            if (ac.is_zero()) continue;
            for (int l = 0; l <= b.dv_; ++l)
                for (int k = 0; k <= b.du_; ++k) {
                    const GRat& bc = b.at(k, l);
                    if (bc.is_zero()) continue;
                    r.at(i + k, j + l) += ac * bc;
                }
        }
    return r;
}

BivarPoly BivarPoly::scaled(const GRat& s) const {
    BivarPoly r = *this;
    for (auto& g : r.c_) g *= s;
    return r;
}

// ---------------------------------------------------------------------------
// BivariateSeries

static void check_orders(const BivariateSeries& a, const BivariateSeries& b) {
    if (a.order != b.order) throw ConsistencyError("BivariateSeries order mismatch");
}

BivariateSeries operator+(const BivariateSeries& a, const BivariateSeries& b) {
    check_orders(a, b);
    BivariateSeries r(a.order);
    for (unsigned j = 0; j <= a.order; ++j) r.c[j] = a.c[j] + b.c[j];
    return r;
}

BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b) {
    check_orders(a, b);
    BivariateSeries r(a.order);
    for (unsigned i = 0; i <= a.order; ++i) {
        if (a.c[i].is_zero()) continue;
        for (unsigned j = 0; i + j <= a.order; ++j) {
            if (b.c[j].is_zero()) continue;
            r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
        }
    }
    return r;
}

BivariateSeries scaled(const BivariateSeries& a, const GRat& s) {
    BivariateSeries r(a.order);
    for (unsigned j = 0; j <= a.order; ++j) r.c[j] = a.c[j].scaled(s);
    return r;
}

BivariateSeries exp_series(const BivariateSeries& a) {
    if (!a.c[0].is_zero()) throw ConsistencyError("exp_series: nonzero constant term");
    BivariateSeries e(a.order);
    e.c[0] = BivarPoly::constant(GRat(Rat(1)));
    for (unsigned j = 1; j <= a.order; ++j) {
        BivarPoly acc;
        for (unsigned m = 1; m <= j; ++m) {
            if (a.c[m].is_zero()) continue;
            acc = acc + (a.c[m] * e.c[j - m]).scaled(GRat(Rat(static_cast<long>(m))));
        }
        e.c[j] = acc.scaled(GRat(Rat(1, static_cast<long>(j))));
    }
    return e;
}

// ---------------------------------------------------------------------------
// Elementary series builders.  Variables: u enters only through (1 + u X)
// powers, v only through theta = 2 v X.

namespace {

enum class Var { U, V };

BivariateSeries one_series(unsigned J) {
    BivariateSeries s(J);
    s.c[0] = BivarPoly::constant(GRat(Rat(1)));
    return s;
}

// (1 + u X)^q, q rational.
BivariateSeries binom_1u(const Rat& q, unsigned J) {
    BivariateSeries s(J);
    for (unsigned j = 0; j <= J; ++j)
        s.c[j] = BivarPoly::monomial(GRat(exact::binom(q, j)), static_cast<int>(j), 0);
    return s;
}

// exp(i c theta) with theta = 2 v X: sum (2ci)^j / j! v^j X^j.
BivariateSeries exp_itheta(const Rat& c, unsigned J) {
    BivariateSeries s(J);
    Rat pw(1);
    for (unsigned j = 0; j <= J; ++j) {
        GRat coef = exact::i_pow(static_cast<long>(j)) * pw;
        s.c[j] = BivarPoly::monomial(coef, 0, static_cast<int>(j));
        pw *= Rat(2) * c / Rat(static_cast<long>(j) + 1);
    }
    return s;
}

BivariateSeries cos_theta(unsigned J) {
    BivariateSeries s(J);
    Rat term(1);
    for (unsigned m = 0; 2 * m <= J; ++m) {
        s.c[2 * m] = BivarPoly::monomial(GRat(term), 0, static_cast<int>(2 * m));
        term *= Rat(-4) / Rat(static_cast<long>((2 * m + 1)) * (2 * m + 2));
    }
    return s;
}

BivariateSeries sin_theta(unsigned J) {
    BivariateSeries s(J);
    Rat term(2);
    for (unsigned m = 0; 2 * m + 1 <= J; ++m) {
        s.c[2 * m + 1] = BivarPoly::monomial(GRat(term), 0, static_cast<int>(2 * m + 1));
        term *= Rat(-4) / Rat(static_cast<long>((2 * m + 2)) * (2 * m + 3));
    }
    return s;
}

// Reciprocal of a series whose constant coefficient is the scalar 1.
BivariateSeries inverse_unit(const BivariateSeries& a) {
    BivariateSeries r(a.order);
    r.c[0] = BivarPoly::constant(GRat(Rat(1)));
    for (unsigned j = 1; j <= a.order; ++j) {
        BivarPoly acc;
        for (unsigned m = 1; m <= j; ++m) acc = acc + a.c[m] * r.c[j - m];
        r.c[j] = acc.scaled(GRat(Rat(-1)));
    }
    return r;
}

// (cos theta)^q via the binomial series in (cos theta - 1).
BivariateSeries cos_theta_pow(const Rat& q, unsigned J) {
    BivariateSeries s = cos_theta(J);
    s.c[0] = BivarPoly();  // cos - 1
    BivariateSeries acc = one_series(J);
    BivariateSeries pw = one_series(J);
    for (unsigned k = 1; 2 * k <= J; ++k) {
        pw = pw * s;
        BivariateSeries term = ::barea::expansion::scaled(pw, GRat(exact::binom(q, k)));
        acc = acc + term;
    }
    return acc;
}

BivariateSeries tan_theta(unsigned J) { return sin_theta(J) * inverse_unit(cos_theta(J)); }

}  // namespace

BivariateSeries phi1_series(AreaKind kind, unsigned order) {
    const auto& ac = kernels::constants(kind);
    const unsigned J = order;
    const Rat rho = ac.rho, s0 = ac.s0, gamma = ac.gamma, b = ac.b;
    const Rat rho32_num = rho * rho * rho;  // rho^{3/2} = sqrt(rho^3), exact for rho in {9, 9/4}
    mpz_class rn = rho32_num.get_num(), rd = rho32_num.get_den();
    if (!mpz_perfect_square_p(rn.get_mpz_t()) || !mpz_perfect_square_p(rd.get_mpz_t()))
        throw ConsistencyError("phi1_series: rho^{3/2} not rational");
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), rn.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), rd.get_mpz_t());
    const Rat rho32(sn, sd);

    // rho (1 + i tan theta)
    BivariateSeries t1 = ::barea::expansion::scaled(tan_theta(J), GRat(Rat(0), rho));
    t1.c[0] = t1.c[0] + BivarPoly::constant(GRat(rho));
    // -rho^{3/2} s0^{-1} (1+uX)^{-1} e^{i theta} (cos theta)^{-3/2}
    BivariateSeries t2 = binom_1u(Rat(-1), J) * exp_itheta(Rat(1), J) *
                         cos_theta_pow(Rat(-3, 2), J);
    t2 = ::barea::expansion::scaled(t2, GRat(-rho32 / s0));
    // -gamma s0 (1+uX) e^{i theta/2}
    BivariateSeries t3 = binom_1u(Rat(1), J) * exp_itheta(Rat(1, 2), J);
    t3 = ::barea::expansion::scaled(t3, GRat(-gamma * s0));

    BivariateSeries phi = t1 + t2 + t3;

    // structural checks: constant -b, no X^1 term, the printed quadratic at X^2
    BivarPoly c0 = phi.c[0] - BivarPoly::constant(GRat(-b));
    if (!c0.is_zero()) throw ConsistencyError("phi1_series: constant term is not -b");
    if (order >= 1 && !phi.c[1].is_zero())
        throw ConsistencyError("phi1_series: nonzero X^1 coefficient");
    if (order >= 2) {
        BivarPoly q = BivarPoly::monomial(GRat(Rat(-2) * b), 2, 0) +
                      BivarPoly::monomial(GRat(Rat(0), Rat(2) * b), 1, 1) +
                      BivarPoly::monomial(GRat(-b), 0, 2);
        if (!(phi.c[2] - q).is_zero())
            throw ConsistencyError("phi1_series: X^2 coefficient differs from the saddle quadratic");
    }
    return phi;
}

// ---------------------------------------------------------------------------
// Gaussian moments via the Wick recursion with covariance
//   E[u^2] = 1/(6b), E[uv] = i/(6b), E[v^2] = 1/(3b).

namespace {

struct MomentTable {
    Rat b;
    std::map<std::pair<unsigned, unsigned>, GRat> memo;

    GRat get(unsigned m, unsigned n) {
        if ((m + n) % 2 == 1) return GRat();
        if (m == 0 && n == 0) return GRat(Rat(1));
        auto key = std::make_pair(m, n);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        const GRat cuu{Rat(1) / (Rat(6) * b)};
        const GRat cuv{Rat(0), Rat(1) / (Rat(6) * b)};
        const GRat cvv{Rat(1) / (Rat(3) * b)};
        GRat r;
        if (m >= 1) {
            if (m >= 2) r += cuu * Rat(static_cast<long>(m - 1)) * get(m - 2, n);
            if (n >= 1) r += cuv * Rat(static_cast<long>(n)) * get(m - 1, n - 1);
        } else {
            if (n >= 2) r += cvv * Rat(static_cast<long>(n - 1)) * get(0, n - 2);
        }
        memo.emplace(key, r);
        return r;
    }
};

GRat integrate_poly(const BivarPoly& p, MomentTable& mt) {
    GRat acc;
    for (int j = 0; j <= p.deg_v(); ++j)
        for (int i = 0; i <= p.deg_u(); ++i) {
            const GRat& c = p.at(i, j);
            if (c.is_zero()) continue;
            acc += c * mt.get(static_cast<unsigned>(i), static_cast<unsigned>(j));
        }
    return acc;
}

}  // namespace

GaussianMoment gaussian_moment(unsigned m, unsigned n, const Rat& b) {
    if (b <= 0) throw DomainError("gaussian_moment: b must be positive");
    MomentTable mt{b, {}};
    GaussianMoment out;
    out.coeff = mt.get(m, n);
    out.norm = SymConst(Rat(1) / b, 0, -1, 2);  // pi / (sqrt(3) b)
    return out;
}

// ---------------------------------------------------------------------------
// The expansion pipeline.

namespace {

// Collected normalized coefficients g_j of x^{-j} (g_0 = 1 scale divided out
// in the prefactor); odd and imaginary parts must vanish exactly.
std::vector<Rat> collect_coefficients(AreaKind kind, unsigned J) {
    const auto& ac = kernels::constants(kind);
    const bool nu_half = (ac.nu == Rat(1, 2));

    BivariateSeries phi = phi1_series(kind, J + 2);
    BivariateSeries rem(J);
    for (unsigned m = 1; m <= J; ++m) rem.c[m] = phi.c[m + 2];
    BivariateSeries expser = exp_series(rem);

    // amplitude: e^{i c_th theta} (cos theta)^{-pw} (1+uX)^{q} *
    //            sum_k d_k s0^{-k} X^{2k} (1+uX)^{-k} e^{-i k theta/2}
    const Rat p = ac.lead_power;
    const Rat q = nu_half ? (Rat(2) * p - 5) / 3 : (Rat(2) * p - 4) / 3;
    // theta phase: e^{(1-2nu/3) i theta} from F1 plus e^{i p theta/3} from z^p
    const Rat cth = (nu_half ? Rat(2, 3) : Rat(1, 3)) + p / 3;
    const Rat secpw = nu_half ? Rat(3) : Rat(5, 2);

    BivariateSeries amp = exp_itheta(cth, J) * cos_theta_pow(-secpw, J) * binom_1u(q, J);

    auto hh = kernels::hhat_series(kind, J / 2 + 1);
    BivariateSeries hs(J);
    Rat s0k(1);
    for (unsigned k = 0; 2 * k <= J; ++k) {
        BivariateSeries term = binom_1u(Rat(-static_cast<long>(k)), J) *
                               exp_itheta(-Rat(static_cast<long>(k)) / 2, J);
        term = ::barea::expansion::scaled(term, GRat(hh[k] * s0k));
        // shift by X^{2k}
        BivariateSeries shifted(J);
        for (unsigned j = 0; j + 2 * k <= J; ++j) shifted.c[j + 2 * k] = term.c[j];
        hs = hs + shifted;
        s0k /= ac.s0;
    }
    amp = amp * hs * expser;

    MomentTable mt{ac.b, {}};
    std::vector<Rat> out(J + 1);
    for (unsigned j = 0; j <= J; ++j) {
        GRat g = integrate_poly(amp.c[j], mt);
        if (j % 2 == 1) {
            if (!g.is_zero())
                throw ConsistencyError("expansion: odd-power coefficient did not vanish");
            continue;
        }
        if (!(g.im == 0))
            throw ConsistencyError("expansion: imaginary part of a coefficient did not vanish");
        out[j] = g.re;
    }
    if (!(out[0] == Rat(1))) throw ConsistencyError("expansion: leading coefficient is not 1");
    return out;
}

}  // namespace

TailExpansion scaled_expansion(AreaKind kind, unsigned n_corr) {
    const auto& ac = kernels::constants(kind);
    const bool nu_half = (ac.nu == Rat(1, 2));
    const unsigned J = 2 * n_corr;

    auto g = collect_coefficients(kind, J);

    TailExpansion e;
    e.b = ac.b;
    // x power: (9-2nu)/3 - 2 + 4p/3 (integer for all seven kinds)
    Rat W = (Rat(9) - 2 * ac.nu) / 3 - 2 + Rat(4) * ac.lead_power / 3;
    if (W.get_den() != 1) throw ConsistencyError("scaled_expansion: non-integer x power");
    e.alpha = W;

    // prefactor: rho^{5/2-nu} * 2 s0 * K_nu * c * s0^{q} * pi/(sqrt3 b)
    const Rat q = nu_half ? (Rat(2) * ac.lead_power - 5) / 3 : (Rat(2) * ac.lead_power - 4) / 3;
    Rat twoq = 2 * q;
    if (twoq.get_den() != 1) throw ConsistencyError("scaled_expansion: bad s0 power");
    // rho^{5/2-nu}: the half-exponent is 4 for nu=1/2, 3 for nu=1
    SymConst pref = exact::sym_sqrt_pow(ac.rho, nu_half ? 4 : 3);
    pref = pref * SymConst(Rat(2) * ac.s0);
    pref = pref * (nu_half ? SymConst(Rat(1, 4), 0, 0, -3) : SymConst(Rat(1, 4), 0, 0, -4));
    pref = pref * ac.lead_const;
    pref = pref * exact::sym_sqrt_pow(ac.s0, twoq.get_num().get_si());
    pref = pref * SymConst(Rat(1) / ac.b, 0, -1, 2);
    e.lead = pref;

    e.corrections.resize(n_corr + 1);
    for (unsigned k = 0; k <= n_corr; ++k) e.corrections[k] = g[2 * k];
    return e;
}

TailExpansion density_expansion(AreaKind kind, unsigned n_corr) {
    TailExpansion s = scaled_expansion(kind, n_corr);
    // f(x) = sqrt2 fhat(sqrt2 x): alpha unchanged, b doubles, the prefactor
    // gains sqrt2^{alpha+1}, the k-th correction gains 2^{-k}.
    TailExpansion e;
    e.alpha = s.alpha;
    e.b = 2 * s.b;
    e.lead = s.lead * exact::sym_sqrt_pow(Rat(2), s.alpha.get_num().get_si() + 1);
    e.corrections.resize(s.corrections.size());
    Rat sc(1);
    for (size_t k = 0; k < s.corrections.size(); ++k) {
        e.corrections[k] = s.corrections[k] * sc;
        sc /= 2;
    }
    return e;
}

TailExpansion tail_expansion(const TailExpansion& d) {
    if (d.b <= 0) throw DomainError("tail_expansion: b must be positive");
    TailExpansion t;
    t.alpha = d.alpha - 1;
    t.b = d.b;
    t.lead = d.lead * (Rat(1) / (2 * d.b));
    // Normalized transfer: B_k = A_k + (alpha+1-2k) B_{k-1} / (2b).
    t.corrections.resize(d.corrections.size());
    const Rat inv2b = Rat(1) / (2 * d.b);
    t.corrections[0] = Rat(1);
    for (size_t k = 1; k < d.corrections.size(); ++k) {
        t.corrections[k] =
            d.corrections[k] +
            (d.alpha + 1 - Rat(2 * static_cast<long>(k))) * t.corrections[k - 1] * inv2b;
    }
    return t;
}

TailExpansion differentiate_tail(const TailExpansion& t) {
    TailExpansion d;
    d.alpha = t.alpha + 1;
    d.b = t.b;
    d.lead = t.lead * (2 * t.b);
    d.corrections.resize(t.corrections.size());
    for (size_t k = 0; k < t.corrections.size(); ++k) {
        Rat ak = t.corrections[k];
        if (k >= 1)
            ak -= (d.alpha + 1 - Rat(2 * static_cast<long>(k))) * t.corrections[k - 1] /
                  (2 * t.b);
        d.corrections[k] = ak;
    }
    return d;
}

double eval_correction_series(const TailExpansion& e, double x) {
    double acc = 0.0;
    double ix2 = 1.0 / (x * x);
    for (size_t k = e.corrections.size(); k-- > 0;)
        acc = acc * ix2 + exact::to_double(e.corrections[k]);
    return acc;
}

double eval_expansion(const TailExpansion& e, double x) {
    if (x <= 0) throw DomainError("eval_expansion: x must be positive");
    double lead = e.lead.value() * std::pow(x, exact::to_double(e.alpha)) *
                  std::exp(-exact::to_double(e.b) * x * x);
    return lead * eval_correction_series(e, x);
}

std::string prefactor_string(const TailExpansion& e) {
    std::ostringstream os;
    os << e.lead.str();
    if (e.alpha == Rat(1)) {
        os << "*x";
    } else if (!(e.alpha == Rat(0))) {
        os << "*x^" << e.alpha.get_str();
    }
    os << "*exp(-" << e.b.get_str() << "*x^2)";
    return os.str();
}

}  // namespace barea::expansion
