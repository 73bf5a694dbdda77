// Quadratic Dirichlet characters indexed by fundamental discriminants,
// products, the even normalization psi_0, and Teichmuller-twisted evaluation.
#pragma once

#include "eisrank/numkernel.hpp"

namespace eisrank {

inline bool is_fundamental_disc(const Integer& d) {
    if (d == 1) return true;
    if (d == 0) return false;
    if (mod(d, 4) == 1) return squarefree_part(d) == d;
    if (mod(d, 4) == 0) {
        Integer q = d / 4;
        Integer q4 = mod(q, 4);
        return (q4 == 2 || q4 == 3) && squarefree_part(q) == q;
    }
    return false;
}

// disc = 1 is the trivial character; otherwise a fundamental discriminant.
struct QuadChar {
    Integer disc;

    QuadChar() : disc(1) {}
    explicit QuadChar(const Integer& d) : disc(d) {
        if (!is_fundamental_disc(d))
            throw std::invalid_argument("QuadChar: " + d.str() + " is not a fundamental discriminant");
    }
    bool trivial() const { return disc == 1; }
    Integer conductor() const { return abs(disc); }
    int parity() const { return disc > 0 ? 1 : -1; } // value at -1
    bool operator==(const QuadChar& o) const { return disc == o.disc; }
};

inline int char_eval(const QuadChar& chi, const Integer& n) {
    return kronecker(chi.disc, n);
}

// Fundamental discriminant of a nonzero integer (1 for perfect squares).
inline Integer fundamental_discriminant(const Integer& d) {
    if (d == 0) throw std::invalid_argument("fundamental_discriminant: d = 0");
    Integer s = squarefree_part(d);
    if (s == 1) return 1;
    Integer s4 = mod(s, 4);
    return s4 == 1 ? s : 4 * s;
}

inline QuadChar char_product(const QuadChar& a, const QuadChar& b) {
    return QuadChar(fundamental_discriminant(a.disc * b.disc));
}

// psi if even, psi * eps_K if odd; always even.
inline QuadChar psi_zero(const QuadChar& psi, const QuadChar& eps_K) {
    if (eps_K.disc >= 0) throw std::invalid_argument("psi_zero: eps_K must be imaginary");
    return psi.parity() == 1 ? psi : char_product(psi, eps_K);
}

// (psi * omega^j)(n) mod p, with omega(n) = n mod p; 0 on gcd(n, p*f) > 1.
inline Residue teich_char_eval_mod_p(const QuadChar& psi, const Integer& j,
                                     const Integer& n, const Integer& p) {
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("teich_char_eval_mod_p: p must be an odd prime");
    if (psi.disc % p == 0) throw std::invalid_argument("teich_char_eval_mod_p: p | disc(psi)");
    if (gcd(n, p * psi.conductor()) != 1) return Residue(0, p);
    Integer e = mod(j, p - 1);
    Integer v = mod(char_eval(psi, n) * modpow(n, e, p).value, p);
    return Residue(v, p);
}

} // namespace eisrank
