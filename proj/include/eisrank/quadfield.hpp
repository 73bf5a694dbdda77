// Quadratic fields: fundamental discriminants, splitting of primes,
// imaginary class numbers by reduced-form enumeration, composita, and the
// Heegner hypothesis test.
#pragma once

#include "eisrank/dirichlet.hpp"

namespace eisrank {

struct QuadField {
    Integer disc; // fundamental discriminant != 1

    QuadField() : disc(-3) {}
    explicit QuadField(const Integer& d) : disc(d) {
        if (d == 1 || !is_fundamental_disc(d))
            throw std::invalid_argument("QuadField: " + d.str() + " is not a fundamental field discriminant");
    }
    bool imaginary() const { return disc < 0; }
    bool operator==(const QuadField& o) const { return disc == o.disc; }
};

enum class Splitting { split, inert, ramified };

inline Splitting splitting(const QuadField& K, const Integer& ell) {
    int k = kronecker(K.disc, ell);
    return k == 1 ? Splitting::split : (k == 0 ? Splitting::ramified : Splitting::inert);
}

inline const char* splitting_name(Splitting s) {
    switch (s) {
        case Splitting::split: return "split";
        case Splitting::inert: return "inert";
        default: return "ramified";
    }
}

// Unit count of O_K for imaginary K.
inline int unit_count(const Integer& D) {
    if (D == -3) return 6;
    if (D == -4) return 4;
    return 2;
}

// Class number of the imaginary quadratic field of fundamental discriminant
// D < 0, by counting reduced primitive positive-definite forms (a,b,c):
// b^2 - 4ac = D, |b| <= a <= c, with b >= 0 when |b| = a or a = c.
inline Integer class_number_imag(const Integer& D) {
    if (D >= 0 || !is_fundamental_disc(D))
        throw std::invalid_argument("class_number_imag: D must be a fundamental discriminant < 0");
    Integer count = 0;
    Integer amax = isqrt(-D / 3);
    for (Integer a = 1; a <= amax; ++a) {
        for (Integer b = -a + 1; b <= a; ++b) {
            Integer t = b * b - D;
            if (t % (4 * a) != 0) continue;
            Integer c = t / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            if (gcd(gcd(a, abs(b)), c) != 1) continue;
            ++count;
        }
    }
    return count;
}

// Analytic oracle: h = -w/(2|D|) * sum_{a=1..|D|} (D/a) a.
inline Integer class_number_analytic(const Integer& D) {
    if (D >= 0 || !is_fundamental_disc(D))
        throw std::invalid_argument("class_number_analytic: D must be a fundamental discriminant < 0");
    Integer s = 0;
    for (Integer a = 1; a < -D; ++a) s += kronecker(D, a) * a;
    Integer w = unit_count(D);
    Integer numerator = -w * s;
    Integer denominator = 2 * (-D);
    if (numerator % denominator != 0)
        throw std::runtime_error("class_number_analytic: non-integral character sum");
    return numerator / denominator;
}

inline QuadField compose(const QuadField& K1, const QuadField& K2) {
    if (K1.disc == K2.disc)
        throw std::invalid_argument("compose: degenerate compositum K*K");
    return QuadField(fundamental_discriminant(K1.disc * K2.disc));
}

// Every prime dividing N splits in K.
inline bool heegner_hypothesis(const QuadField& K, const Integer& N) {
    for (const Integer& ell : prime_divisors(N))
        if (splitting(K, ell) != Splitting::split) return false;
    return true;
}

} // namespace eisrank
