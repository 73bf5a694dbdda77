// Elliptic curves over Q: point counting, reduction types, quadratic twists,
// rational 3-torsion, and Eisenstein-descent verification against either a
// curve or a q-expansion coefficient source.
#pragma once

#include "eisrank/qseries.hpp"
#include "eisrank/quadfield.hpp"

namespace eisrank {

struct CurveQ {
    Integer a1, a2, a3, a4, a6;
    Integer N; // conductor, caller-supplied
    std::string label;

    Integer b2() const { return a1 * a1 + 4 * a2; }
    Integer b4() const { return 2 * a4 + a1 * a3; }
    Integer b6() const { return a3 * a3 + 4 * a6; }
    Integer b8() const {
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    }
    Integer discriminant() const {
        Integer B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
        return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
    }
    bool semistable() const {
        for (const Integer& ell : prime_divisors(N))
            if (N % (ell * ell) == 0) return false;
        return true;
    }
};

namespace detail {

// Legendre symbol table for F_ell (odd ell): qr[x] = 1 if x is a nonzero
// square, -1 if a nonsquare, 0 at x = 0.
inline std::vector<int> legendre_table(long ell) {
    std::vector<int> t(static_cast<size_t>(ell), -1);
    t[0] = 0;
    for (long x = 1; x <= (ell - 1) / 2; ++x) t[static_cast<size_t>((x * x) % ell)] = 1;
    return t;
}

inline long to_long_mod(const Integer& a, long m) {
    return static_cast<long>(mod(a, m));
}

// Affine solution count over F_ell for ell in {2, 3} on the long model.
inline long brute_affine_count(const CurveQ& E, long ell) {
    long count = 0;
    long a1 = to_long_mod(E.a1, ell), a2 = to_long_mod(E.a2, ell), a3 = to_long_mod(E.a3, ell);
    long a4 = to_long_mod(E.a4, ell), a6 = to_long_mod(E.a6, ell);
    for (long x = 0; x < ell; ++x)
        for (long y = 0; y < ell; ++y) {
            long lhs = (y * y + a1 * x * y + a3 * y) % ell;
            long rhs = (x * x * x + a2 * x * x + a4 * x + a6) % ell;
            if ((lhs - rhs) % ell == 0) ++count;
        }
    return count;
}

} // namespace detail

// Trace of Frobenius at a good prime ell: ell + 1 - #E(F_ell).
inline Integer ap_good(const CurveQ& E, const Integer& ell_) {
    if (E.N % ell_ == 0) throw std::invalid_argument("ap_good: ell | N (use reduction_type)");
    if (ell_ > 1000000) throw std::invalid_argument("ap_good: ell beyond naive-count budget");
    long ell = static_cast<long>(ell_);
    if (E.discriminant() % ell_ == 0)
        throw std::invalid_argument("ap_good: model singular at good ell (not minimal)");
    if (ell <= 3) {
        long pts = detail::brute_affine_count(E, ell) + 1;
        return Integer(ell) + 1 - pts;
    }
    // complete the square: #E(F_ell) = ell + 1 + sum_x leg(4x^3+b2x^2+2b4x+b6)
    auto qr = detail::legendre_table(ell);
    long b2 = detail::to_long_mod(E.b2(), ell), b4 = detail::to_long_mod(E.b4(), ell);
    long b6 = detail::to_long_mod(E.b6(), ell);
    long long s = 0;
    for (long x = 0; x < ell; ++x) {
        long long fx = (4 * x + b2) % ell;
        fx = (fx * x % ell + (2 * b4) % ell) % ell;
        fx = (fx * x % ell + b6) % ell;
        s += qr[static_cast<size_t>(fx)];
    }
    Integer a = -Integer(s);
    if (a * a > 4 * ell_) throw std::runtime_error("ap_good: Hasse bound violated (bad model data)");
    return a;
}

enum class ReductionType { split_mult, nonsplit_mult, additive };

inline const char* reduction_type_name(ReductionType t) {
    switch (t) {
        case ReductionType::split_mult: return "split-mult";
        case ReductionType::nonsplit_mult: return "nonsplit-mult";
        default: return "additive";
    }
}

// Classification at ell | N: additive iff ell^2 | N (conductor authoritative);
// for ell || N, count smooth points: ell-1 -> split, ell+1 -> nonsplit.
inline ReductionType reduction_type(const CurveQ& E, const Integer& ell_) {
    if (E.N % ell_ != 0) throw std::invalid_argument("reduction_type: ell does not divide N");
    if (E.N % (ell_ * ell_) == 0) return ReductionType::additive;
    long ell = static_cast<long>(ell_);
    long smooth = 1; // point at infinity
    if (ell <= 3) {
        long a1 = detail::to_long_mod(E.a1, ell), a2 = detail::to_long_mod(E.a2, ell);
        long a3 = detail::to_long_mod(E.a3, ell), a4 = detail::to_long_mod(E.a4, ell);
        long a6 = detail::to_long_mod(E.a6, ell);
        for (long x = 0; x < ell; ++x)
            for (long y = 0; y < ell; ++y) {
                long F = ((y * y + a1 * x * y + a3 * y) - (x * x * x + a2 * x * x + a4 * x + a6)) % ell;
                if (mod(Integer(F), ell) != 0) continue;
                long Fx = mod(Integer(a1 * y - 3 * x * x - 2 * a2 * x - a4), ell) == 0 ? 0 : 1;
                long Fy = mod(Integer(2 * y + a1 * x + a3), ell) == 0 ? 0 : 1;
                if (Fx || Fy) ++smooth;
            }
    } else {
        auto qr = detail::legendre_table(ell);
        long b2 = detail::to_long_mod(E.b2(), ell), b4 = detail::to_long_mod(E.b4(), ell);
        long b6 = detail::to_long_mod(E.b6(), ell);
        for (long x = 0; x < ell; ++x) {
            long long fx = (4 * x + b2) % ell;
            fx = (fx * x % ell + (2 * b4) % ell) % ell;
            long long fval = (fx * x % ell + b6) % ell;
            long long fder = ((12 * x % ell) * x % ell + (2 * b2) * x % ell + 2 * b4) % ell;
            if (fval != 0) smooth += 1 + qr[static_cast<size_t>(fval)];
            else if (fder % ell != 0) smooth += 1; // simple zero: one smooth point
        }
    }
    if (smooth == ell - 1) return ReductionType::split_mult;
    if (smooth == ell + 1) return ReductionType::nonsplit_mult;
    throw std::runtime_error("reduction_type: smooth count " + std::to_string(smooth) +
                             " at ell=" + std::to_string(ell) + " (model not minimal?)");
}

// a_ell for ell || N from the reduction type.
inline Integer ap_multiplicative(const CurveQ& E, const Integer& ell) {
    switch (reduction_type(E, ell)) {
        case ReductionType::split_mult: return 1;
        case ReductionType::nonsplit_mult: return -1;
        default: return 0;
    }
}

// Quadratic twist by a fundamental discriminant D. For odd D the integral
// model with u = 1 is used (preserves reduction at 2); for even D the scaled
// short model (2 is bad for the twist). Conductor N*D^2 when gcd(D,N)=1.
inline CurveQ quadratic_twist(const CurveQ& E, const Integer& D,
                              const Integer& conductor_override = 0) {
    if (!is_fundamental_disc(D)) throw std::invalid_argument("quadratic_twist: D not fundamental");
    if (D == 1) return E;
    Integer Nout = conductor_override;
    if (Nout == 0) {
        if (gcd(D, E.N) != 1)
            throw std::invalid_argument("quadratic_twist: gcd(D,N) > 1 requires a caller-supplied conductor");
        Nout = E.N * D * D;
    }
    CurveQ out;
    out.label = E.label + "x" + D.str();
    out.N = Nout;
    if (mod(D, 2) == 1) {
        out.a1 = E.a1;
        out.a3 = E.a3;
        out.a2 = E.a2 + E.b2() * (D - 1) / 4;
        out.a4 = E.a4 + E.b4() * (D * D - 1) / 2;
        out.a6 = E.a6 + E.b6() * (D * D * D - 1) / 4;
    } else {
        Integer d = squarefree_part(D);
        out.a1 = 0;
        out.a3 = 0;
        out.a2 = E.b2() * d;
        out.a4 = 8 * E.b4() * d * d;
        out.a6 = 16 * E.b6() * d * d * d;
    }
    return out;
}

// Rational roots of the 3-division polynomial 3x^4+b2x^3+3b4x^2+3b6x+b8 with
// rational y on the curve.
inline bool has_rational_3_torsion(const CurveQ& E) {
    Integer B2 = E.b2(), B4 = E.b4(), B6 = E.b6(), B8 = E.b8();
    auto psi3 = [&](const Rational& x) {
        return Rational(3) * x * x * x * x + Rational(B2) * x * x * x + Rational(3 * B4) * x * x +
               Rational(3 * B6) * x + Rational(B8);
    };
    auto is_square = [](const Rational& r) {
        if (r < 0) return false;
        Integer n = num(r), d = den(r);
        Integer sn = isqrt(n), sd = isqrt(d);
        return sn * sn == n && sd * sd == d;
    };
    auto check_root = [&](const Rational& x) {
        if (psi3(x) != 0) return false;
        // y exists over Q iff 4x^3 + b2 x^2 + 2 b4 x + b6 is a square
        Rational f = Rational(4) * x * x * x + Rational(B2) * x * x + Rational(2 * B4) * x + Rational(B6);
        return is_square(f);
    };
    std::vector<Rational> candidates;
    if (B8 == 0) candidates.emplace_back(0);
    else {
        std::vector<Integer> divs{1};
        for (auto& [p, e] : factorize(abs(B8))) {
            std::vector<Integer> next;
            Integer pe = 1;
            for (int i = 0; i <= e; ++i) {
                for (const Integer& d : divs) next.push_back(d * pe);
                pe *= p;
            }
            divs = next;
        }
        for (const Integer& u : divs)
            for (int s : {1, -1})
                for (int v : {1, 3})
                    candidates.emplace_back(Rational(s * u, v));
    }
    for (const Rational& x : candidates)
        if (check_root(x)) return true;
    return false;
}

// Eisenstein descent -----------------------------------------------------------

struct DescentType {
    QuadChar psi1, psi2;
    Integer Np = 1, Nm = 1, N0 = 1;
};

struct DescentReport {
    DescentType type;
    Integer p;
    long weight = 2;
    std::vector<Integer> checked_primes;
    std::vector<std::string> failures;
    bool full = false;           // condition (5): constant-term product = 0 mod p
    Rational constant_product;   // the exact condition-(5) value
    std::string certification;   // "checked to bound" vs torsion-certified
    bool passed() const { return failures.empty(); }
};

namespace detail {

// delta_{psi1=1} * (B_{1,psi2} B_{k,psi1} / k) * Euler products; condition (5).
inline Rational descent_constant(const DescentType& t, long k) {
    if (!t.psi1.trivial()) return 0;
    Rational c = gen_bernoulli(t.psi2, 1) * gen_bernoulli(t.psi1, static_cast<unsigned>(k)) / Rational(k);
    for (const Integer& ell : prime_divisors(t.Np * t.N0)) {
        Integer lk1 = 1;
        for (long i = 1; i < k; ++i) lk1 *= ell;
        c *= Rational(1) - Rational(char_eval(t.psi1, ell)) * Rational(lk1);
    }
    for (const Integer& ell : prime_divisors(t.Nm * t.N0))
        c *= Rational(1) - Rational(char_eval(t.psi2, ell));
    return c;
}

inline void check_descent_coefficient(const Integer& a_ell, const Integer& ell, long k,
                                      const DescentType& t, const Integer& p,
                                      DescentReport& report) {
    Integer N = t.Np * t.Nm * t.N0;
    Integer expected;
    const char* where;
    if (N % ell != 0) {
        Integer lk1 = modpow(ell, k - 1, p).value;
        expected = mod(char_eval(t.psi1, ell) + char_eval(t.psi2, ell) * lk1, p);
        where = "good";
    } else if (t.Np % ell == 0) {
        expected = mod(Integer(char_eval(t.psi1, ell)), p);
        where = "N+";
    } else if (t.Nm % ell == 0) {
        expected = mod(char_eval(t.psi2, ell) * modpow(ell, k - 1, p).value, p);
        where = "N-";
    } else {
        expected = 0;
        where = "N0";
    }
    if (mod(a_ell, p) != expected)
        report.failures.push_back("a_" + ell.str() + " (" + where + "): got " +
                                  mod(a_ell, p).str() + ", expected " + expected.str() + " mod " + p.str());
    report.checked_primes.push_back(ell);
}

inline void finish_descent(DescentReport& report, long k) {
    report.constant_product = descent_constant(report.type, k);
    report.full = report.passed() &&
                  (report.constant_product == 0 || v_p(report.constant_product, report.p) >= 1);
}

} // namespace detail

inline void validate_decomposition(const DescentType& t, const Integer& N) {
    if (t.Np * t.Nm * t.N0 != N)
        throw std::invalid_argument("descent: N+ N- N0 != N");
    if (gcd(t.Np, t.Nm) != 1 || gcd(t.Np, t.N0) != 1 || gcd(t.Nm, t.N0) != 1)
        throw std::invalid_argument("descent: decomposition not pairwise coprime");
    if (squarefree_part(t.Np * t.Nm) != t.Np * t.Nm)
        throw std::invalid_argument("descent: N+ N- not squarefree");
    for (const Integer& ell : prime_divisors(t.N0))
        if (t.N0 % (ell * ell) != 0)
            throw std::invalid_argument("descent: N0 not squarefull");
}

// Descent check for a curve source (weight 2).
inline DescentReport verify_descent(const CurveQ& E, const Integer& p, const DescentType& t,
                                    const Integer& prime_bound) {
    validate_decomposition(t, E.N);
    DescentReport report;
    report.type = t;
    report.p = p;
    report.weight = 2;
    report.certification = "checked to bound " + prime_bound.str();
    for (Integer ell = 2; ell <= prime_bound; ++ell) {
        if (!is_prime(ell)) continue;
        if (ell == p) continue;
        Integer a = (E.N % ell == 0) ? ap_multiplicative(E, ell) : ap_good(E, ell);
        detail::check_descent_coefficient(a, ell, 2, t, p, report);
    }
    detail::finish_descent(report, 2);
    return report;
}

// Descent check for a q-expansion coefficient source of weight k = meta.weight.
template <class R>
DescentReport verify_descent(const QExpansion<R>& f, const Integer& p, const DescentType& t,
                             const Integer& prime_bound) {
    Integer N = t.Np * t.Nm * t.N0;
    validate_decomposition(t, N);
    DescentReport report;
    report.type = t;
    report.p = p;
    report.weight = f.meta.weight;
    report.certification = "checked to bound " + prime_bound.str();
    for (Integer ell = 2; ell <= prime_bound && ell <= f.prec(); ++ell) {
        if (!is_prime(ell) || ell == p) continue;
        Integer a = coeff_mod(f.coeff(static_cast<long>(ell)), p);
        detail::check_descent_coefficient(a, ell, f.meta.weight, t, p, report);
    }
    detail::finish_descent(report, f.meta.weight);
    return report;
}

} // namespace eisrank
