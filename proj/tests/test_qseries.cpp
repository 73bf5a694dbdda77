#include "eisrank/qseries.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace eisrank;

namespace {

// stabilization data for an Eisenstein series of type (psi1, psi2, k) at ell
struct StabData {
    Integer alpha, beta, a, eps;
};

StabData eis_stab(const QuadChar& psi1, const QuadChar& psi2, long k, const Integer& ell) {
    Integer lk1 = 1;
    for (long i = 1; i < k; ++i) lk1 *= ell;
    Integer alpha = char_eval(psi1, ell);
    Integer beta = char_eval(psi2, ell) * lk1;
    return {alpha, beta, alpha + beta, Integer(char_eval(psi1, ell) * char_eval(psi2, ell))};
}

} // namespace

TEST_CASE("delta expansion and tau values") {
    auto d = delta(30);
    CHECK(d.meta.weight == 12);
    CHECK(d.coeff(0) == 0);
    CHECK(d.coeff(1) == 1);
    CHECK(d.coeff(2) == -24);
    CHECK(d.coeff(3) == 252);
    CHECK(d.coeff(4) == -1472);
    CHECK(d.coeff(5) == 4830);
    CHECK(d.coeff(11) == 534612);
    // Hecke relations: tau multiplicative, tau(p^2) = tau(p)^2 - p^11
    CHECK(d.coeff(6) == d.coeff(2) * d.coeff(3));
    CHECK(d.coeff(9) == d.coeff(3) * d.coeff(3) - Integer(177147));
    CHECK(d.coeff(24) == (d.coeff(2) * d.coeff(4) - Integer(2048) * d.coeff(2)) * d.coeff(3));
}

TEST_CASE("G4^3 - G6^2 = 1728 delta") {
    long prec = 50;
    auto g4 = eisenstein_G(4, prec);
    auto g6 = eisenstein_G(6, prec);
    auto lhs = multiply(multiply(g4, g4), g4);
    auto rhs = multiply(g6, g6);
    auto d = delta(prec);
    for (long n = 0; n < prec; ++n) CHECK(lhs.coeff(n) - rhs.coeff(n) == 1728 * d.coeff(n));
}

TEST_CASE("eisenstein series coefficients and constant terms") {
    auto e4 = eisenstein(QuadChar(1), QuadChar(1), 4, 1, 1, 1, 12);
    CHECK(e4.coeff(0) == Rational(1, 240)); // -B_4/8
    CHECK(e4.coeff(1) == 1);
    CHECK(e4.coeff(6) == 1 + 8 + 27 + 216);

    // nontrivial psi1 kills the constant term
    auto f = eisenstein(QuadChar(5), QuadChar(1), 3, 1, 1, 1, 10);
    CHECK(f.coeff(0) == 0);
    CHECK(f.coeff(1) == 1);

    // level sieve: (d, N+) = 1 and (n/d, N-) = 1 and (n, N0) = 1
    auto g = eisenstein(QuadChar(1), QuadChar(1), 4, 7, 1, 1, 15);
    CHECK(g.coeff(7) == 1);              // only d = 1 survives (7 | N+ kills d = 7)
    CHECK(g.coeff(14) == 1 + 8);         // d in {1, 2}
    auto h = eisenstein(QuadChar(1), QuadChar(1), 4, 1, 7, 1, 15);
    CHECK(h.coeff(7) == Integer(343));   // n/d coprime to 7 forces d = 7
    auto h0 = eisenstein(QuadChar(1), QuadChar(1), 4, 1, 1, 49, 15);
    CHECK(h0.coeff(7) == 0);
    CHECK(h0.coeff(14) == 0);
    CHECK(h0.coeff(6) == 1 + 8 + 27 + 216);

    CHECK_THROWS(eisenstein(QuadChar(-3), QuadChar(1), 4, 1, 1, 1, 10)); // parity mismatch
    CHECK_THROWS(eisenstein(QuadChar(1), QuadChar(1), 4, 6, 6, 1, 10));  // not coprime
}

TEST_CASE("theta operator and p-depletion") {
    auto d = delta(20);
    auto td = theta(d, 2);
    for (long n = 0; n < 20; ++n) CHECK(td.coeff(n) == Integer(n) * n * d.coeff(n));
    auto dep = p_deplete(d, 3);
    for (long n = 0; n < 20; ++n)
        CHECK(dep.coeff(n) == (n % 3 == 0 ? Integer(0) : d.coeff(n)));
}

TEST_CASE("p-depletion equals the ((p^2)^0)-stabilization") {
    long prec = 300;
    struct Params { Integer psi1, psi2; long k; Integer Np, Nm, N0, p; };
    std::vector<Params> cases{
        {1, 1, 4, 1, 1, 1, 5},
        {1, 1, 6, 7, 1, 1, 5},
        {5, 5, 4, 1, 1, 1, 7},
        {-8, 1, 3, 1, 1, 1, 5},
        {1, 1, 12, 1, 11, 1, 7},
    };
    for (const auto& c : cases) {
        QuadChar psi1(c.psi1), psi2(c.psi2);
        auto f = eisenstein(psi1, psi2, c.k, c.Np, c.Nm, c.N0, prec);
        auto s = eis_stab(psi1, psi2, c.k, c.p);
        // f flat = f - a_p f|V_p + eps(p) p^{k-1} f|V_p^2 (both roots removed)
        auto dep = p_deplete(f, c.p);
        auto st = stabilize(f, c.p, StabSign::zero, s.alpha, s.beta, s.a, s.eps, c.k);
        for (long n = 0; n < prec; ++n) CHECK(dep.coeff(n) == st.coeff(n));
    }
}

TEST_CASE("stabilizations at distinct primes commute") {
    long prec = 100;
    auto f = eisenstein(QuadChar(1), QuadChar(1), 12, 1, 1, 1, prec);
    auto s5 = eis_stab(QuadChar(1), QuadChar(1), 12, 5);
    auto s7 = eis_stab(QuadChar(1), QuadChar(1), 12, 7);
    auto a = stabilize(stabilize(f, 5, StabSign::plus, s5.alpha, s5.beta, s5.a, s5.eps, 12),
                       7, StabSign::plus, s7.alpha, s7.beta, s7.a, s7.eps, 12);
    auto b = stabilize(stabilize(f, 7, StabSign::plus, s7.alpha, s7.beta, s7.a, s7.eps, 12),
                       5, StabSign::plus, s5.alpha, s5.beta, s5.a, s5.eps, 12);
    for (long n = 0; n < prec; ++n) CHECK(a.coeff(n) == b.coeff(n));
    CHECK(a.meta.level == b.meta.level);
}

TEST_CASE("stabilize validates the Hecke parameters") {
    auto f = eisenstein(QuadChar(1), QuadChar(1), 4, 1, 1, 1, 20);
    CHECK_THROWS(stabilize(f, 5, StabSign::plus, 2, 125, 127, 1, 4));   // alpha+beta ok, alpha*beta != 5^3
    CHECK_THROWS(stabilize(f, 5, StabSign::plus, 1, 125, 127, 1, 4));   // alpha+beta != a
    auto g = eisenstein(QuadChar(1), QuadChar(1), 4, 5, 1, 1, 20);
    CHECK_THROWS(stabilize(g, 5, StabSign::plus, 1, 125, 126, 1, 4));   // ell | level
}

TEST_CASE("level-1 cusp forms and the two flagship congruences") {
    auto f16 = level1_cuspform(16, 10);
    CHECK(f16.coeff(1) == 1);
    CHECK(f16.coeff(2) == 216);
    auto f18 = level1_cuspform(18, 201);
    CHECK(f18.coeff(1) == 1);
    CHECK(f18.coeff(2) == -528);
    CHECK_THROWS(level1_cuspform(14, 10));

    auto e18 = eisenstein(QuadChar(1), QuadChar(1), 18, 1, 1, 1, 201);
    CHECK(congruent_from(reduce_mod(f18, 43867), reduce_mod(e18, 43867), 43867, 1));

    auto d = delta(501);
    auto e12 = eisenstein(QuadChar(1), QuadChar(1), 12, 1, 1, 1, 501);
    CHECK(congruent_from(reduce_mod(d, 691), reduce_mod(e12, 691), 691, 1));
    CHECK_FALSE(congruent_from(reduce_mod(d, 691), reduce_mod(e12, 691), 691, 0)); // constants differ
}

TEST_CASE("reduce_mod and arithmetic on residue coefficients") {
    auto d = delta(30);
    auto dm = reduce_mod(d, 691);
    for (long n = 0; n < 30; ++n) CHECK(dm.coeff(n).v == mod(d.coeff(n), 691));
    auto sq = multiply(dm, dm);
    auto sq2 = reduce_mod(multiply(d, d), 691);
    for (long n = 0; n < 30; ++n) CHECK(sq.coeff(n).v == sq2.coeff(n).v);
    CHECK(sq.meta.weight == 24);
}
