#include "eisrank/bernoulli.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace eisrank;

TEST_CASE("classical Bernoulli numbers") {
    CHECK(bernoulli(0) == 1);
    CHECK(bernoulli(1) == Rational(-1, 2));
    CHECK(bernoulli(2) == Rational(1, 6));
    CHECK(bernoulli(12) == Rational(-691, 2730));
    CHECK(bernoulli(18) == Rational(43867, 798));
    for (unsigned n = 3; n <= 40; n += 2) CHECK(bernoulli(n) == 0);
}

TEST_CASE("von Staudt-Clausen: denominator of B_n is prod of p with (p-1)|n") {
    for (unsigned n = 2; n <= 60; n += 2) {
        Integer d = 1;
        for (Integer p = 2; p <= n + 1; ++p)
            if (is_prime(p) && n % (p - 1) == 0) d *= p;
        CHECK(den(bernoulli(n)) == d);
        // p*B_n = -1 mod p for each such p
        for (Integer p = 2; p <= n + 1; ++p)
            if (is_prime(p) && static_cast<unsigned>(n) % static_cast<unsigned>(p - 1) == 0)
                CHECK(mod(rational_mod(bernoulli(n) * Rational(p), p) + 1, p) == 0);
    }
}

TEST_CASE("generalized Bernoulli numbers") {
    QuadChar triv(1);
    CHECK(gen_bernoulli(triv, 1) == Rational(1, 2)); // B_1(1) convention
    for (unsigned n = 2; n <= 20; ++n) CHECK(gen_bernoulli(triv, n) == bernoulli(n));

    CHECK(gen_bernoulli(QuadChar(-20), 9) == Rational(Integer("-5444415378")));
    CHECK(rational_mod(gen_bernoulli(QuadChar(-20), 9), 43867) == 5726);

    // B_{1,chi} = -2h/w for imaginary quadratic characters (spot values)
    CHECK(gen_bernoulli(QuadChar(-23), 1) == -3);   // h = 3, w = 2
    CHECK(gen_bernoulli(QuadChar(-7), 1) == -1);    // h = 1
    CHECK(gen_bernoulli(QuadChar(-123), 1) == -2);  // h = 2
    CHECK(gen_bernoulli(QuadChar(-328), 1) == -4);  // h = 4
    CHECK(gen_bernoulli(QuadChar(-3), 1) == Rational(-1, 3));  // w = 6
    // even characters have vanishing B_1
    CHECK(gen_bernoulli(QuadChar(5), 1) == 0);
    CHECK(gen_bernoulli(QuadChar(41), 1) == 0);
}

TEST_CASE("Bernoulli polynomials") {
    CHECK(bernoulli_poly(1, Rational(1)) == Rational(1, 2));
    CHECK(bernoulli_poly(3, Rational(1, 2)) == 0);
    for (unsigned n = 0; n <= 12; ++n)
        CHECK(bernoulli_poly(n, Rational(0)) == bernoulli(n));
}

TEST_CASE("Teichmuller-twisted B_1 values mod p") {
    CHECK(b1_teichmuller_mod_p(QuadChar(1), -9, 43867).value == 11867);
    // Kummer congruence cross-check for small primes, all admissible exponents
    for (Integer p : {Integer(5), Integer(7), Integer(11), Integer(13), Integer(37)}) {
        for (Integer e = 2; e <= p - 4; ++e) {
            Residue lhs = b1_teichmuller_mod_p(QuadChar(1), e, p);
            Residue rhs = b1_kummer_mod_p(e, p);
            CHECK(lhs.value == rhs.value);
        }
    }
    // exponent 0 with a nontrivial character routes to the exact value
    CHECK(b1_teichmuller_mod_p(QuadChar(-7), 0, 5).value == rational_mod(gen_bernoulli(QuadChar(-7), 1), 5));
    CHECK_THROWS(b1_teichmuller_mod_p(QuadChar(1), 0, 7));   // trivial twisted character
    CHECK_THROWS(b1_teichmuller_mod_p(QuadChar(1), -1, 7));  // omega^{-1} pole
}

TEST_CASE("Kubota-Leopoldt special values mod p") {
    // j = 1 branch: -(1 - psi(p)) B_{1,psi}
    QuadChar psi(-7);
    Integer p = 5;
    Residue v = kubota_leopoldt_special_mod_p(psi, 1, p);
    Integer expect = mod(-(1 - char_eval(psi, p)) * rational_mod(gen_bernoulli(psi, 1), p), p);
    CHECK(v.value == expect);
    // j != 1 mod (p-1): matches the Teichmuller-sum route
    Residue w = kubota_leopoldt_special_mod_p(psi, 3, 11);
    Residue w2 = b1_teichmuller_mod_p(psi, 2, 11);
    CHECK(w.value == mod(-w2.value, 11));
}
