#include "eisrank/curvedata.hpp"
#include "eisrank/heegner.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <random>

using namespace eisrank;

TEST_CASE("Xi Euler factors mod p") {
    CHECK(xi_mod_p(QuadChar(1), 18, 7, 1, 1, 43867).value == 25644); // 1 - 7^8
    CHECK(xi_mod_p(QuadChar(1), 4, 1, 1, 1, 7).value == 1);          // empty product
    CHECK(xi_mod_p(QuadChar(1), 2, 19, 1, 1, 3).value == 0);         // 1 - 19^0 = 0
    CHECK_THROWS(xi_mod_p(QuadChar(1), 2, 21, 1, 1, 3));             // p | N
    CHECK_THROWS(xi_mod_p(QuadChar(1), 3, 7, 1, 1, 5));              // odd k
}

TEST_CASE("Xi vanishes for trivial psi at k=2 when some ell = 1 mod p") {
    for (Integer p : {Integer(3), Integer(5), Integer(7)})
        for (Integer ell = 2; ell < 100; ++ell) {
            if (!is_prime(ell) || mod(ell - 1, p) != 0) continue;
            CHECK(xi_mod_p(QuadChar(1), 2, ell, 1, 1, p).value == 0);
        }
}

TEST_CASE("Xi is multiplicative over coprime decompositions") {
    std::mt19937_64 rng(41);
    std::vector<Integer> primes{7, 11, 13, 17, 23, 29};
    for (int trial = 0; trial < 50; ++trial) {
        Integer Np1 = 1, Np2 = 1, Nm1 = 1, Nm2 = 1;
        for (const Integer& q : primes) {
            switch (rng() % 5) {
                case 0: Np1 *= q; break;
                case 1: Np2 *= q; break;
                case 2: Nm1 *= q; break;
                case 3: Nm2 *= q; break;
                default: break;
            }
        }
        QuadChar psi(rng() % 2 ? Integer(5) : Integer(-8));
        Integer p = 19;
        long k = 4;
        Integer combined = xi_mod_p(psi, k, Np1 * Np2, Nm1 * Nm2, 1, p).value;
        Integer split = mod(xi_mod_p(psi, k, Np1, Nm1, 1, p).value *
                                xi_mod_p(psi, k, Np2, Nm2, 1, p).value,
                            p);
        CHECK(combined == split);
    }
}

TEST_CASE("flagship criterion: 19a1 twisted by 41 over Q(sqrt(-2))") {
    CurveQ E = lookup_curve("19a1");
    auto rep = heegner_criterion(E, 3, QuadChar(41), QuadField(-8));
    CHECK(rep.verdict == "non-torsion-rank-1");
    CHECK(rep.passed());
    CHECK(rep.twisted_conductor == Integer(19) * 41 * 41);
    // the class numbers the verdict rests on
    CHECK(class_number_imag(-123) == 2);
    CHECK(class_number_imag(-328) == 4);

    auto rk = root_number_ranks(E, QuadChar(41), QuadField(-8), true);
    CHECK(rk.rank_EQ == 1);
    CHECK(rk.rank_EKQ == 0);
}

TEST_CASE("flagship criterion: 19a1 twisted by -7 over Q(sqrt(-2))") {
    CurveQ E = lookup_curve("19a1");
    auto rep = heegner_criterion(E, 3, QuadChar(-7), QuadField(-8));
    CHECK(rep.verdict == "non-torsion-rank-1");
    CHECK(class_number_imag(-7) == 1);
    CHECK(class_number_imag(-168) == 4);

    auto rk = root_number_ranks(E, QuadChar(-7), QuadField(-8), true);
    CHECK(rk.rank_EQ == 0);
    CHECK(rk.rank_EKQ == 1);
}

TEST_CASE("criterion failures are named") {
    CurveQ E = lookup_curve("19a1");
    // 19 is inert in Q(sqrt(-7)): Heegner hypothesis fails
    auto rep = heegner_criterion(E, 3, QuadChar(41), QuadField(-7));
    CHECK_FALSE(rep.passed());
    CHECK(rep.verdict.find("C5") != std::string::npos);

    // psi(p) = 1 fails C1: kronecker(13, 3) = 1
    auto r2 = heegner_criterion(E, 3, QuadChar(13), QuadField(-8));
    bool c1_failed = false;
    for (const auto& c : r2.conditions)
        if (c.name.rfind("C1", 0) == 0 && !c.pass) c1_failed = true;
    CHECK(c1_failed);
    CHECK(r2.verdict.rfind("inconclusive", 0) == 0);

    // split multiplicative prime on the twist fails C2: kronecker(17,19)=1 keeps 19 split
    REQUIRE(kronecker(17, 19) == 1);
    auto r3 = heegner_criterion(E, 3, QuadChar(17), QuadField(-8));
    bool c2_failed = false;
    for (const auto& c : r3.conditions)
        if (c.name.rfind("C2", 0) == 0 && !c.pass) c2_failed = true;
    CHECK(c2_failed);

    // D_K = -4 fails C6
    auto r4 = heegner_criterion(E, 3, QuadChar(41), QuadField(-4));
    bool c6_failed = false;
    for (const auto& c : r4.conditions)
        if (c.name.rfind("C6", 0) == 0 && !c.pass) c6_failed = true;
    CHECK(c6_failed);
}

TEST_CASE("verdict equals conjunction of conditions") {
    CurveQ E = lookup_curve("19a1");
    for (Integer psi : {Integer(41), Integer(-7), Integer(13), Integer(17), Integer(5), Integer(-20)})
        for (Integer DK : {Integer(-8), Integer(-7), Integer(-4), Integer(-23), Integer(-40)}) {
            auto rep = heegner_criterion(E, 3, QuadChar(psi), QuadField(DK));
            CHECK((rep.verdict == "non-torsion-rank-1") == rep.passed());
        }
}

TEST_CASE("reducibility certification is required") {
    CurveQ E37{0, 0, 1, -1, 0, 37, "37a1"}; // no rational 3-torsion
    CHECK_THROWS(heegner_criterion(E37, 3, QuadChar(41), QuadField(-8)));
    // caller-asserted certification is accepted
    auto rep = heegner_criterion(E37, 3, QuadChar(41), QuadField(-8), true);
    CHECK_FALSE(rep.conditions.empty());
    // p = 5 needs caller assertion even with 3-torsion present
    CurveQ E = lookup_curve("19a1");
    CHECK_THROWS(heegner_criterion(E, 5, QuadChar(41), QuadField(-8)));
}

TEST_CASE("root number rank split degenerate cases") {
    CurveQ E = lookup_curve("19a1");
    CHECK_THROWS(root_number_ranks(E, QuadChar(1), QuadField(-8), true));
    CHECK_THROWS(root_number_ranks(E, QuadChar(41), QuadField(-8), false));
    // rank_EQ + rank_EKQ = 1 whenever emitted
    for (Integer psi : {Integer(41), Integer(-7), Integer(5), Integer(-8), Integer(12), Integer(-20)}) {
        auto rk = root_number_ranks(E, QuadChar(psi), QuadField(-8), true);
        CHECK(rk.rank_EQ + rk.rank_EKQ == 1);
        CHECK(rk.rank_EQ == (char_eval(QuadChar(psi), -1) == 1 ? 1 : 0));
    }
    // branch (1) applies for p >= 5 regardless of semistability data
    auto rk = root_number_ranks(E, QuadChar(41), QuadField(-8), true, 5);
    CHECK(rk.branch.rfind("branch(1)", 0) == 0);
}
