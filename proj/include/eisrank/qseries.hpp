// Truncated q-expansions with exact coefficients: Eisenstein families with
// nebentypus and (N+, N-, N0) level structure, theta operator, p-depletion,
// stabilization operators, Delta, level-1 cusp forms, congruence tests.
#pragma once

#include "eisrank/bernoulli.hpp"

#include <algorithm>

namespace eisrank {

// Element of Z/m for use as a series coefficient ring.
struct ResidueElem {
    Integer v, m;
    ResidueElem() : v(0), m(2) {}
    ResidueElem(const Integer& v_, const Integer& m_) : v(mod(v_, m_)), m(m_) {}
    ResidueElem operator+(const ResidueElem& o) const { check(o); return {v + o.v, m}; }
    ResidueElem operator-(const ResidueElem& o) const { check(o); return {v - o.v, m}; }
    ResidueElem operator*(const ResidueElem& o) const { check(o); return {v * o.v, m}; }
    ResidueElem& operator+=(const ResidueElem& o) { return *this = *this + o; }
    bool operator==(const ResidueElem& o) const { return v == o.v && m == o.m; }
    void check(const ResidueElem& o) const {
        if (m != o.m) throw std::invalid_argument("ResidueElem: modulus mismatch");
    }
};

struct SeriesMeta {
    long weight = 0;
    Integer level = 1;
    QuadChar nebentypus{};
    bool formal_only = false; // weight-2 level-1 Eisenstein series
};

template <class R>
struct QExpansion {
    std::vector<R> c; // indexed 0..prec
    SeriesMeta meta;

    QExpansion() = default;
    explicit QExpansion(long prec, const R& zero = R()) : c(static_cast<size_t>(prec) + 1, zero) {}
    long prec() const { return static_cast<long>(c.size()) - 1; }
    const R& coeff(long n) const { return c.at(static_cast<size_t>(n)); }
    QExpansion truncated(long p) const {
        if (p >= prec()) return *this;
        QExpansion out = *this;
        out.c.resize(static_cast<size_t>(p) + 1);
        return out;
    }
};

// ring helpers -------------------------------------------------------------
inline bool is_zero(const Integer& x) { return x == 0; }
inline bool is_zero(const Rational& x) { return x == 0; }
inline bool is_zero(const ResidueElem& x) { return x.v == 0; }

inline Integer zero_like(const QExpansion<Integer>&) { return 0; }
inline Rational zero_like(const QExpansion<Rational>&) { return 0; }
inline ResidueElem zero_like(const QExpansion<ResidueElem>& f) {
    return f.c.empty() ? ResidueElem() : ResidueElem(0, f.c[0].m);
}

inline Integer ring_from_int(const Integer& n, const Integer&) { return n; }
inline Rational ring_from_int(const Integer& n, const Rational&) { return Rational(n); }
inline ResidueElem ring_from_int(const Integer& n, const ResidueElem& like) { return {n, like.m}; }

inline Rational ring_from_scalar(const Rational& s, const Rational&) { return s; }
inline Integer ring_from_scalar(const Rational& s, const Integer&) {
    if (den(s) != 1) throw std::invalid_argument("integer series: non-integral scalar");
    return num(s);
}
inline ResidueElem ring_from_scalar(const Rational& s, const ResidueElem& like) {
    return {rational_mod(s, like.m), like.m};
}

inline Integer coeff_mod(const Integer& x, const Integer& m) { return mod(x, m); }
inline Integer coeff_mod(const Rational& x, const Integer& m) { return rational_mod(x, m); }
inline Integer coeff_mod(const ResidueElem& x, const Integer& m) {
    if (x.m % m != 0) throw std::invalid_argument("coeff_mod: incompatible residue modulus");
    return mod(x.v, m);
}

// arithmetic ----------------------------------------------------------------

template <class R>
QExpansion<R> add(const QExpansion<R>& f, const QExpansion<R>& g) {
    long p = std::min(f.prec(), g.prec());
    QExpansion<R> out = f.truncated(p);
    for (long n = 0; n <= p; ++n) out.c[n] = f.c[n] + g.c[n];
    out.meta.level = lcm(f.meta.level, g.meta.level);
    return out;
}

template <class R>
QExpansion<R> multiply(const QExpansion<R>& f, const QExpansion<R>& g) {
    long p = std::min(f.prec(), g.prec());
    QExpansion<R> out(p, zero_like(f));
    out.meta.weight = f.meta.weight + g.meta.weight;
    out.meta.level = lcm(f.meta.level, g.meta.level);
    for (long i = 0; i <= p; ++i) {
        if (is_zero(f.c[i])) continue;
        for (long j = 0; i + j <= p; ++j) out.c[i + j] += f.c[i] * g.c[j];
    }
    return out;
}

// operators ------------------------------------------------------------------

// theta = q d/dq applied j times: a_n -> n^j a_n.
template <class R>
QExpansion<R> theta(const QExpansion<R>& f, unsigned j) {
    if (j == 0) return f;
    QExpansion<R> out = f;
    for (long n = 0; n <= out.prec(); ++n) {
        Integer nj = 1;
        for (unsigned i = 0; i < j; ++i) nj *= n;
        out.c[n] = f.c[n] * ring_from_int(nj, f.c[n]);
    }
    out.meta.weight += 2 * static_cast<long>(j);
    return out;
}

// p-depletion: zero every a_n with p | n (including n = 0).
template <class R>
QExpansion<R> p_deplete(const QExpansion<R>& f, const Integer& p) {
    QExpansion<R> out = f;
    for (long n = 0; n <= out.prec(); ++n)
        if (Integer(n) % p == 0) out.c[n] = zero_like(f);
    return out;
}

enum class StabSign { plus, minus, zero };

// Stabilization: (+) F - beta F(q^l); (-) F - alpha F(q^l);
// (0) F - a F(q^l) + eps(l) l^{k-1} F(q^{l^2}).
template <class R>
QExpansion<R> stabilize(const QExpansion<R>& f, const Integer& ell, StabSign sign,
                        const Rational& alpha, const Rational& beta,
                        const Rational& a, const Rational& eps, long k) {
    if (f.meta.level % ell == 0)
        throw std::invalid_argument("stabilize: ell divides the level");
    Rational lk = 1;
    for (long i = 1; i < k; ++i) lk *= Rational(ell);
    if (alpha + beta != a || alpha * beta != lk * eps)
        throw std::invalid_argument("stabilize: (alpha, beta) fail the symmetric-function constraints");
    QExpansion<R> out = f;
    long lell = static_cast<long>(ell);
    auto accumulate_scaled = [&](const Rational& s, long long step, int sgn) {
        R scale = ring_from_scalar(s, zero_like(f));
        for (long long n = 0; n * step <= out.prec(); ++n) {
            R term = f.c[static_cast<size_t>(n)] * scale;
            long idx = static_cast<long>(n * step);
            out.c[idx] = (sgn > 0) ? out.c[idx] + term : out.c[idx] - term;
        }
    };
    switch (sign) {
        case StabSign::plus:
            accumulate_scaled(beta, lell, -1);
            out.meta.level = f.meta.level * ell;
            break;
        case StabSign::minus:
            accumulate_scaled(alpha, lell, -1);
            out.meta.level = f.meta.level * ell;
            break;
        case StabSign::zero:
            accumulate_scaled(a, lell, -1);
            accumulate_scaled(eps * lk, static_cast<long long>(lell) * lell, +1);
            out.meta.level = f.meta.level * ell * ell;
            break;
    }
    return out;
}

// Reduce a series mod m (denominators must be invertible).
template <class R>
QExpansion<ResidueElem> reduce_mod(const QExpansion<R>& f, const Integer& m) {
    QExpansion<ResidueElem> out(f.prec(), ResidueElem(0, m));
    out.meta = f.meta;
    for (long n = 0; n <= f.prec(); ++n) out.c[n] = ResidueElem(coeff_mod(f.c[n], m), m);
    return out;
}

// a_n(f) = a_n(g) mod m for all n0 <= n <= min prec.
template <class R1, class R2>
bool congruent_from(const QExpansion<R1>& f, const QExpansion<R2>& g, const Integer& m, long n0) {
    long p = std::min(f.prec(), g.prec());
    for (long n = n0; n <= p; ++n)
        if (coeff_mod(f.c[n], m) != coeff_mod(g.c[n], m)) return false;
    return true;
}

// Eisenstein series -----------------------------------------------------------

// sigma_{k-1}^{psi1,psi2,(N)}(n) = sum over 0<d|n with (d,N+)=1, (n/d,N-)=1,
// (n,N0)=1 of psi1(n/d) psi2(d) d^{k-1}; constant term per the level-(N)
// Euler-factor product (nonzero only for trivial psi1).
inline QExpansion<Rational> eisenstein(const QuadChar& psi1, const QuadChar& psi2, long k,
                                       const Integer& Np, const Integer& Nm, const Integer& N0,
                                       long prec) {
    if (k < 2) throw std::invalid_argument("eisenstein: weight must be >= 2");
    int parity = psi1.parity() * psi2.parity();
    if (parity != (k % 2 == 0 ? 1 : -1))
        throw std::invalid_argument("eisenstein: parity violation (psi1 psi2)(-1) != (-1)^k");
    if (gcd(Np, Nm) != 1 || gcd(Np, N0) != 1 || gcd(Nm, N0) != 1)
        throw std::invalid_argument("eisenstein: N+, N-, N0 must be pairwise coprime");
    if (squarefree_part(Np * Nm) != Np * Nm)
        throw std::invalid_argument("eisenstein: N+ N- must be squarefree");
    for (const Integer& ell : prime_divisors(N0))
        if (N0 % (ell * ell) != 0)
            throw std::invalid_argument("eisenstein: N0 must be squarefull");

    QExpansion<Rational> out(prec);
    out.meta.weight = k;
    out.meta.level = Np * Nm * N0 * psi1.conductor() * psi2.conductor();
    out.meta.nebentypus = char_product(psi1, psi2);
    out.meta.formal_only = (k == 2 && Np * Nm * N0 == 1 && psi1.trivial() && psi2.trivial());

    // constant term
    if (psi1.trivial()) {
        Rational c0 = -gen_bernoulli(psi1, static_cast<unsigned>(k)) / Rational(2 * k);
        for (const Integer& ell : prime_divisors(Np * N0)) {
            Integer lk1 = 1;
            for (long i = 1; i < k; ++i) lk1 *= ell;
            c0 *= Rational(1) - Rational(char_eval(psi1, ell)) * Rational(lk1);
        }
        for (const Integer& ell : prime_divisors(Nm * N0))
            c0 *= Rational(1) - Rational(char_eval(psi2, ell));
        out.c[0] = c0;
    }

    // divisor-sum coefficients by sieve
    std::vector<Integer> dpow(static_cast<size_t>(prec) + 1);
    for (long d = 1; d <= prec; ++d) {
        Integer v = 1;
        for (long i = 1; i < k; ++i) v *= d;
        dpow[d] = v;
    }
    for (long d = 1; d <= prec; ++d) {
        if (gcd(Integer(d), Np) != 1) continue;
        int x2 = char_eval(psi2, d);
        if (x2 == 0) continue;
        for (long m = 1; m * d <= prec; ++m) {
            long n = m * d;
            if (gcd(Integer(m), Nm) != 1) continue;
            if (gcd(Integer(n), N0) != 1) continue;
            int x1 = char_eval(psi1, m);
            if (x1 == 0) continue;
            out.c[n] += Rational(x1 * x2) * Rational(dpow[d]);
        }
    }
    return out;
}

// Delta and level-1 cusp forms ------------------------------------------------

// Euler product Prod (1 - q^n) via the pentagonal number theorem.
inline QExpansion<Integer> euler_product(long prec) {
    QExpansion<Integer> e(prec);
    for (long kk = 0;; ++kk) {
        long n1 = kk * (3 * kk - 1) / 2;
        long n2 = kk * (3 * kk + 1) / 2;
        if (n1 > prec && n2 > prec) break;
        Integer s = (kk % 2 == 0) ? 1 : -1;
        if (n1 <= prec) e.c[n1] += s;
        if (kk > 0 && n2 <= prec) e.c[n2] += s;
    }
    return e;
}

inline QExpansion<Integer> delta(long prec) {
    if (prec < 1) throw std::invalid_argument("delta: prec >= 1 required");
    QExpansion<Integer> e = euler_product(prec - 1);
    // e^24 by repeated squaring: ((e^3)^2)^2)^2
    QExpansion<Integer> p = multiply(e, multiply(e, e));
    p = multiply(p, p);
    p = multiply(p, p);
    p = multiply(p, p);
    QExpansion<Integer> out(prec);
    for (long n = 0; n <= prec - 1; ++n) out.c[n + 1] = p.c[n];
    out.meta.weight = 12;
    out.meta.level = 1;
    return out;
}

// Normalized G4 = 1 + 240 sum sigma_3(n) q^n, G6 = 1 - 504 sum sigma_5(n) q^n.
inline QExpansion<Integer> eisenstein_G(long k, long prec) {
    if (k != 4 && k != 6) throw std::invalid_argument("eisenstein_G: k must be 4 or 6");
    QExpansion<Integer> out(prec);
    out.c[0] = 1;
    Integer scale = (k == 4) ? 240 : -504;
    for (long d = 1; d <= prec; ++d) {
        Integer v = 1;
        for (long i = 1; i < k; ++i) v *= d;
        for (long n = d; n <= prec; n += d) out.c[n] += scale * v;
    }
    out.meta.weight = k;
    out.meta.level = 1;
    return out;
}

// The unique normalized cusp form of level 1 in weights 12,16,18,20,22,26.
inline QExpansion<Integer> level1_cuspform(long k, long prec) {
    QExpansion<Integer> f = delta(prec);
    switch (k) {
        case 12: break;
        case 16: f = multiply(f, eisenstein_G(4, prec)); break;
        case 18: f = multiply(f, eisenstein_G(6, prec)); break;
        case 20: f = multiply(f, multiply(eisenstein_G(4, prec), eisenstein_G(4, prec))); break;
        case 22: f = multiply(f, multiply(eisenstein_G(4, prec), eisenstein_G(6, prec))); break;
        case 26: f = multiply(multiply(f, eisenstein_G(6, prec)),
                              multiply(eisenstein_G(4, prec), eisenstein_G(4, prec))); break;
        default: throw std::invalid_argument("level1_cuspform: space not 1-dimensional at k=" + std::to_string(k));
    }
    f.meta.weight = k;
    f.meta.level = 1;
    return f;
}

} // namespace eisrank
