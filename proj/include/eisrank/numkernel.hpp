// Exact integer/rational kernel: big integers, residues, Kronecker symbol,
// CRT, modular exponentiation, factorization, totient, squarefree parts.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eisrank {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }
inline Integer lcm(const Integer& a, const Integer& b) { return boost::multiprecision::lcm(a, b); }
inline Integer abs(const Integer& a) { return boost::multiprecision::abs(a); }
inline Integer isqrt(const Integer& a) { return boost::multiprecision::sqrt(a); }

// Least nonnegative representative.
inline Integer mod(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += abs(m);
    return r;
}

struct Residue {
    Integer value;   // in [0, modulus)
    Integer modulus; // >= 2

    Residue() : value(0), modulus(2) {}
    Residue(const Integer& v, const Integer& m) : value(mod(v, m)), modulus(m) {
        if (m < 2) throw std::invalid_argument("Residue: modulus must be >= 2");
    }
    bool operator==(const Residue& o) const { return value == o.value && modulus == o.modulus; }
};

// Extended gcd: returns g, sets x,y with a*x + b*y = g.
inline Integer ext_gcd(const Integer& a, const Integer& b, Integer& x, Integer& y) {
    if (b == 0) { x = (a < 0 ? -1 : 1); y = 0; return abs(a); }
    Integer x1, y1;
    Integer g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

inline Integer inv_mod(const Integer& a, const Integer& m) {
    Integer x, y;
    Integer g = ext_gcd(mod(a, m), m, x, y);
    if (g != 1) throw std::domain_error("inv_mod: not invertible mod " + m.str());
    return mod(x, m);
}

inline Residue modpow(const Integer& base, const Integer& exp, const Integer& modulus) {
    if (exp < 0) throw std::invalid_argument("modpow: exponent must be >= 0");
    if (modulus < 2) throw std::invalid_argument("modpow: modulus must be >= 2");
    return Residue(boost::multiprecision::powm(mod(base, modulus), exp, modulus), modulus);
}

// Fully extended Kronecker symbol (a/n); n may be 0, negative or even.
inline int kronecker(Integer a, Integer n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int sign = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) sign = -sign;
    }
    if (n % 2 == 0) {
        if (a % 2 == 0) return 0;
        // (a/2) = 0,1,-1 by a mod 8
        Integer a8 = mod(a, 8);
        int k2 = (a8 == 1 || a8 == 7) ? 1 : -1;
        while (n % 2 == 0) { n /= 2; sign *= k2; }
    }
    // Jacobi symbol (a/n), n odd positive.
    a = mod(a, n);
    int result = sign;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            Integer n8 = n % 8;
            if (n8 == 3 || n8 == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a = a % n;
    }
    return n == 1 ? result : 0;
}

struct CrtInconsistent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Merge congruences x = r_i mod m_i. Non-coprime moduli allowed when
// consistent; inconsistent overlap throws CrtInconsistent.
inline Residue crt(const std::vector<std::pair<Integer, Integer>>& congruences) {
    Integer r = 0, m = 1;
    for (const auto& [ri, mi] : congruences) {
        if (mi < 1) throw std::invalid_argument("crt: modulus must be >= 1");
        Integer g = gcd(m, mi);
        Integer diff = mod(ri, mi) - mod(r, mi);
        if (mod(diff, g) != 0)
            throw CrtInconsistent("crt: inconsistent congruences modulo " + g.str());
        Integer m2 = mi / g; // coprime to m/g by construction
        Integer step = 0;
        if (m2 > 1) step = mod((diff / g) * inv_mod(mod(m / g, m2), m2), m2);
        r = r + m * step;
        m = lcm(m, mi);
        r = mod(r, m);
    }
    if (m == 1) return Residue(0, 2); // degenerate: everything satisfies it
    return Residue(r, m);
}

namespace detail {

inline bool miller_rabin_witness(const Integer& n, const Integer& a, const Integer& d, int s) {
    Integer x = boost::multiprecision::powm(a % n, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return false;
    }
    return true;
}

} // namespace detail

inline bool is_prime(const Integer& n) {
    if (n < 2) return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Integer d = n - 1;
    int s = 0;
    while (d % 2 == 0) { d /= 2; ++s; }
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (detail::miller_rabin_witness(n, a, d, s)) return false;
    return true; // deterministic far beyond the 2^64 scope of this kernel
}

namespace detail {

inline Integer pollard_rho(const Integer& n) {
    if (n % 2 == 0) return 2;
    for (Integer c = 1;; ++c) {
        Integer x = 2, y = 2, d = 1;
        auto f = [&](const Integer& v) { return (v * v + c) % n; };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = gcd(abs(x - y), n);
        }
        if (d != n) return d;
    }
}

inline void factor_rec(Integer n, std::map<Integer, int>& out) {
    if (n == 1) return;
    if (is_prime(n)) { ++out[n]; return; }
    Integer d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

} // namespace detail

// Prime factorization, primes strictly increasing. Trial division to 10^6,
// Pollard rho beyond.
inline std::vector<std::pair<Integer, int>> factorize(const Integer& n) {
    if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
    std::map<Integer, int> fac;
    Integer m = n;
    for (Integer p = 2; p <= 1000000 && p * p <= m; p += (p == 2 ? 1 : 2))
        while (m % p == 0) { m /= p; ++fac[p]; }
    if (m > 1) detail::factor_rec(m, fac);
    return {fac.begin(), fac.end()};
}

inline std::vector<Integer> prime_divisors(const Integer& n) {
    std::vector<Integer> out;
    for (auto& [p, e] : factorize(abs(n) == 0 ? Integer(1) : abs(n))) out.push_back(p);
    return out;
}

inline Integer euler_phi(const Integer& n) {
    if (n < 1) throw std::invalid_argument("euler_phi: n must be >= 1");
    Integer phi = 1;
    for (auto& [p, e] : factorize(n)) {
        Integer pe = 1;
        for (int i = 1; i < e; ++i) pe *= p;
        phi *= pe * (p - 1);
    }
    return phi;
}

// Signed squarefree part: n = squarefree_part(n) * square.
inline Integer squarefree_part(const Integer& n) {
    if (n == 0) throw std::invalid_argument("squarefree_part: n must be nonzero");
    Integer s = (n < 0) ? -1 : 1;
    for (auto& [p, e] : factorize(abs(n)))
        if (e % 2 == 1) s *= p;
    return s;
}

// p-adic valuation of a nonzero rational.
inline long v_p(const Rational& r, const Integer& p) {
    if (r == 0) throw std::invalid_argument("v_p: zero has infinite valuation");
    long v = 0;
    Integer n = num(r), d = den(r);
    while (n % p == 0) { n /= p; ++v; }
    while (d % p == 0) { d /= p; --v; }
    return v;
}

// Reduce a rational mod m (denominator must be invertible).
inline Integer rational_mod(const Rational& r, const Integer& m) {
    return mod(num(r) * inv_mod(den(r), m), m);
}

} // namespace eisrank
