// Bernoulli numbers and polynomials, generalized Bernoulli numbers B_{n,chi}
// for quadratic chi, and mod-p values of B_{1, psi*omega^j} via the
// Teichmuller p^2-sum (with the Kummer shortcut as a cross-check).
#pragma once

#include "eisrank/dirichlet.hpp"

#include <mutex>

namespace eisrank {

namespace detail {

inline std::vector<Rational>& bernoulli_cache() {
    static std::vector<Rational> cache{Rational(1), Rational(-1, 2)};
    return cache;
}
inline std::mutex& bernoulli_mutex() {
    static std::mutex m;
    return m;
}

} // namespace detail

inline Rational binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    Rational r = 1;
    for (unsigned i = 0; i < k; ++i) r *= Rational(n - i, i + 1);
    return r;
}

// B_0 = 1, B_1 = -1/2; recurrence sum_{i<=n} C(n+1,i) B_i = 0.
inline Rational bernoulli(unsigned n) {
    std::lock_guard<std::mutex> lock(detail::bernoulli_mutex());
    auto& cache = detail::bernoulli_cache();
    while (cache.size() <= n) {
        unsigned m = static_cast<unsigned>(cache.size());
        if (m % 2 == 1) { cache.push_back(0); continue; }
        Rational s = 0;
        for (unsigned i = 0; i < m; ++i) s += binomial(m + 1, i) * cache[i];
        cache.push_back(-s / Rational(m + 1));
    }
    return cache[n];
}

// B_n(x) = sum C(n,i) B_i x^{n-i}
inline Rational bernoulli_poly(unsigned n, const Rational& x) {
    Rational s = 0, xp = 1;
    for (int i = static_cast<int>(n); i >= 0; --i) {
        s += binomial(n, static_cast<unsigned>(i)) * bernoulli(static_cast<unsigned>(i)) * xp;
        xp *= x;
    }
    return s;
}

// B_{n,chi} = f^{n-1} sum_{a=1..f} chi(a) B_n(a/f).  For trivial chi this is
// B_n(1), i.e. the usual B_n except B_{1,1} = +1/2.
inline Rational gen_bernoulli(const QuadChar& chi, unsigned n) {
    if (n < 1) throw std::invalid_argument("gen_bernoulli: n >= 1 required");
    Integer f = chi.conductor();
    Rational fr(f);
    Rational s = 0;
    for (Integer a = 1; a <= f; ++a) {
        int c = char_eval(chi, a);
        if (c != 0) s += Rational(c) * bernoulli_poly(n, Rational(a) / fr);
    }
    Rational scale = 1;
    for (unsigned i = 1; i < n; ++i) scale *= fr;
    return scale * s;
}

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}
inline std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, b, m);
        b = mulmod_u64(b, b, m);
        e >>= 1;
    }
    return r;
}

} // namespace detail

// B_{1, psi * omega^{[j]}} mod p via S = sum psi(a) a^{p[j]} a mod p^2,
// using omega(a) = a^p mod p^2; requires psi*omega^{[j]} nontrivial and
// != omega^{-1}.  [j] = 0 with nontrivial psi routes through the exact
// rational value (no omega twist present).
inline Residue b1_teichmuller_mod_p(const QuadChar& psi, const Integer& j, const Integer& p) {
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("b1_teichmuller_mod_p: p must be an odd prime");
    if (psi.disc % p == 0) throw std::invalid_argument("b1_teichmuller_mod_p: p | disc(psi)");
    Integer e = mod(j, p - 1);
    if (psi.trivial() && e == 0)
        throw std::domain_error("b1_teichmuller_mod_p: trivial character");
    if (psi.trivial() && e == p - 2)
        throw std::domain_error("b1_teichmuller_mod_p: character omega^{-1}");
    if (e == 0) // nontrivial psi, no omega twist: exact rational path
        return Residue(rational_mod(gen_bernoulli(psi, 1), p), p);

    if (p > Integer(0x7fffffff))
        throw std::domain_error("b1_teichmuller_mod_p: p out of the p^2 < 2^63 fast-path range");
    std::uint64_t pu = static_cast<std::uint64_t>(p);
    std::uint64_t m = pu * pu;
    std::uint64_t f = static_cast<std::uint64_t>(psi.conductor());
    std::uint64_t fp = f * pu;
    std::uint64_t expnt = pu * static_cast<std::uint64_t>(e) + 1; // a^{p e} * a
    std::uint64_t S = 0;
    bool trivial_psi = psi.trivial();
    std::vector<int> chi_table;
    if (!trivial_psi) {
        chi_table.resize(f);
        for (std::uint64_t a = 0; a < f; ++a) chi_table[a] = kronecker(psi.disc, Integer(a));
    }
    for (std::uint64_t a = 1; a < fp; ++a) {
        if (a % pu == 0) continue;
        int c = trivial_psi ? 1 : chi_table[a % f];
        if (c == 0) continue;
        std::uint64_t t = detail::powmod_u64(a, expnt, m);
        S = c > 0 ? (S + t) % m : (S + m - t) % m;
    }
    if (S % pu != 0)
        throw std::runtime_error("b1_teichmuller_mod_p: internal consistency failure (p does not divide S)");
    Integer result = mod(Integer(S / pu) * inv_mod(Integer(f), p), p);
    return Residue(result, p);
}

// Kummer shortcut B_{1, omega^{[j]}} = B_{[j]+1} / ([j]+1) mod p, valid for
// 2 <= [j] <= p-4; used as an independent oracle for the sum above.
inline Residue b1_kummer_mod_p(const Integer& j, const Integer& p) {
    Integer e = mod(j, p - 1);
    if (e < 2 || e > p - 4) throw std::invalid_argument("b1_kummer_mod_p: need 2 <= [j] <= p-4");
    Rational v = bernoulli(static_cast<unsigned>(e + 1)) / Rational(e + 1);
    return Residue(rational_mod(v, p), p);
}

// -(1 - chi*omega^{-1}(p)) * B_{1, chi*omega^{-1}} mod p for chi = psi*omega^j;
// the Euler factor is 1 whenever p divides the conductor of chi*omega^{-1}.
inline Residue kubota_leopoldt_special_mod_p(const QuadChar& psi, const Integer& j, const Integer& p) {
    Integer e = mod(j - 1, p - 1); // chi * omega^{-1} = psi * omega^{j-1}
    if (psi.trivial() && e == 0)
        throw std::domain_error("kubota_leopoldt_special_mod_p: trivial character (log_p branch, out of numeric scope)");
    if (e == 0) { // chi*omega^{-1} = psi, conductor prime to p
        Integer euler = mod(Integer(1) - char_eval(psi, p), p);
        Integer b1 = rational_mod(gen_bernoulli(psi, 1), p);
        return Residue(mod(-euler * b1, p), p);
    }
    // p | conductor, Euler factor 1
    Residue b1 = b1_teichmuller_mod_p(psi, e, p);
    return Residue(mod(-b1.value, p), p);
}

} // namespace eisrank
