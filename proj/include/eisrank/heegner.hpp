// Rank-criterion engine: Xi Euler factors mod p, the Heegner-point
// non-torsion criterion, and root-number rank conclusions.
#pragma once

#include "eisrank/bernoulli.hpp"
#include "eisrank/ellcurve.hpp"

#include <map>
#include <optional>

namespace eisrank {

// Xi(psi, k, N+, N-, N0) in F_p: product over ell | N+ of (1 - psi(ell) ell^{k/2-1}),
// over ell | N- of (1 - psi(ell) ell^{-k/2}), over ell | N0 of both.
inline Residue xi_mod_p(const QuadChar& psi, long k, const Integer& Np, const Integer& Nm,
                        const Integer& N0, const Integer& p) {
    if (k <= 0 || k % 2 != 0) throw std::invalid_argument("xi_mod_p: k must be a positive even integer");
    if (Np % p == 0 || Nm % p == 0 || N0 % p == 0)
        throw std::invalid_argument("xi_mod_p: p | N rejected");
    Integer acc = 1;
    auto plus_factor = [&](const Integer& ell) {
        Integer lk = modpow(ell, k / 2 - 1, p).value;
        acc = mod(acc * (1 - char_eval(psi, ell) * lk), p);
    };
    auto minus_factor = [&](const Integer& ell) {
        Integer linv = inv_mod(modpow(ell, k / 2, p).value, p);
        acc = mod(acc * (1 - char_eval(psi, ell) * linv), p);
    };
    for (const Integer& ell : prime_divisors(Np)) plus_factor(ell);
    for (const Integer& ell : prime_divisors(Nm)) minus_factor(ell);
    for (const Integer& ell : prime_divisors(N0)) {
        plus_factor(ell);
        minus_factor(ell);
    }
    return Residue{acc, p};
}

struct Condition {
    std::string name;
    bool pass;
    std::string witness;
};

struct CriterionReport {
    std::vector<Condition> conditions;
    std::map<std::string, Integer> bernoulli_values_mod_p;
    Residue xi;
    std::string verdict; // "non-torsion-rank-1" or "inconclusive(...)"
    std::optional<Integer> rank_EQ, rank_EKQ;
    std::vector<std::string> notes;
    Integer twisted_conductor = 1;
    bool passed() const {
        for (const auto& c : conditions)
            if (!c.pass) return false;
        return true;
    }
};

namespace detail {

inline void set_verdict(CriterionReport& r) {
    if (r.passed()) {
        r.verdict = "non-torsion-rank-1";
        return;
    }
    std::string failing;
    for (const auto& c : r.conditions)
        if (!c.pass) failing += (failing.empty() ? "" : ",") + c.name;
    r.verdict = "inconclusive(" + failing + ")";
}

} // namespace detail

// Non-torsion criterion for the Heegner point of E tensor psi over K. The
// twist is consumed as (base curve, psi); mod-p reducibility is certified by
// rational 3-torsion of the base curve when p = 3, otherwise it must be
// asserted by the caller.
inline CriterionReport heegner_criterion(const CurveQ& base, const Integer& p,
                                         const QuadChar& psi, const QuadField& K,
                                         bool assert_reducible = false) {
    if (p <= 2 || !is_prime(p)) throw std::invalid_argument("heegner_criterion: p must be an odd prime");
    Integer f = psi.conductor();
    if (gcd(f, base.N) != 1)
        throw std::invalid_argument("heegner_criterion: gcd(f(psi), N_base) > 1 unsupported");
    if (base.N % p == 0) throw std::invalid_argument("heegner_criterion: p | N rejected");

    CriterionReport r;
    if (p == 3 && has_rational_3_torsion(base)) {
        r.notes.push_back("reducibility certified: rational 3-torsion on " + base.label);
    } else if (assert_reducible) {
        r.notes.push_back("reducibility caller-asserted for p=" + p.str());
    } else {
        throw std::invalid_argument("heegner_criterion: E[p] reducibility not certified; "
                                    "pass assert_reducible with type data");
    }
    if (psi.trivial() && p > 3)
        r.notes.push_back("warning: psi = 1 with p > 3 makes the criterion vacuous (Xi vanishes)");

    // decompose N(E tensor psi) = N_base * f^2 by reduction type of the twist
    Integer Nsplit = 1, Nnonsplit = 1, Nadd = 1;
    for (const Integer& ell : prime_divisors(base.N)) {
        if (base.N % (ell * ell) == 0) {
            Integer q = 1;
            Integer rest = base.N;
            while (rest % ell == 0) { q *= ell; rest /= ell; }
            Nadd *= q;
            continue;
        }
        Integer a = ap_multiplicative(base, ell) * char_eval(psi, ell);
        if (a == 1) Nsplit *= ell;
        else Nnonsplit *= ell;
    }
    for (auto& [ell, e] : factorize(f)) {
        Integer q = 1;
        for (int i = 0; i < 2 * e; ++i) q *= ell;
        Nadd *= q;
    }
    r.twisted_conductor = Nsplit * Nnonsplit * Nadd;
    r.xi = xi_mod_p(psi, 2, Nsplit, Nnonsplit, Nadd, p);

    // (C1) psi(p) != 1
    int psip = char_eval(psi, p);
    r.conditions.push_back({"C1 psi(p) != 1", psip != 1,
                            "psi(" + p.str() + ") = " + std::to_string(psip)});

    // (C2) no primes of split multiplicative reduction on the twist
    r.conditions.push_back({"C2 N_split = 1", Nsplit == 1, "N_split = " + Nsplit.str()});

    // (C3) every ell | N_add: psi(ell) = 0, or psi(ell) != 1 and ell != -1 mod p
    {
        bool ok = true;
        std::string w;
        for (const Integer& ell : prime_divisors(Nadd)) {
            int pe = char_eval(psi, ell);
            bool this_ok = pe == 0 || (pe != 1 && mod(ell + 1, p) != 0);
            if (!this_ok) ok = false;
            w += (w.empty() ? "" : "; ") + ("ell=" + ell.str() + ": psi(ell)=" + std::to_string(pe) +
                                            ", ell mod p=" + mod(ell, p).str());
        }
        if (w.empty()) w = "N_add = 1";
        r.conditions.push_back({"C3 additive primes admissible", ok, w});
    }

    // (C4) p splits in K
    {
        Splitting s = splitting(K, p);
        r.conditions.push_back({"C4 p splits in K", s == Splitting::split,
                                "p is " + std::string(splitting_name(s)) + " in K"});
    }

    // (C5) Heegner hypothesis for K against the twisted conductor, gated on the
    // primes prime to f(psi); splitting at ell | f(psi) is recorded but does
    // not gate (the flagship rank computations require this scope).
    {
        bool ok = true;
        std::string w;
        for (const Integer& ell : prime_divisors(r.twisted_conductor)) {
            Splitting s = splitting(K, ell);
            bool gate = f % ell != 0;
            if (gate && s != Splitting::split) ok = false;
            w += (w.empty() ? "" : "; ") + ("ell=" + ell.str() + " " + splitting_name(s) +
                                            (gate ? "" : " (conductor of psi; not gating)"));
            if (!gate && s != Splitting::split)
                r.notes.push_back("C5 witness: ell=" + ell.str() + " | f(psi) is " +
                                  splitting_name(s) + " in K");
        }
        r.conditions.push_back({"C5 Heegner hypothesis", ok, w});
    }

    // (C6) D_K < -4; even D_K is admitted with a scope note
    {
        bool ok = K.disc < -4;
        r.conditions.push_back({"C6 D_K < -4", ok, "D_K = " + K.disc.str()});
        if (ok && mod(K.disc, 2) == 0)
            r.notes.push_back("C6 scope: D_K even; odd-discriminant convention relaxed");
    }

    // (C7) p does not divide B_{1,psi0 eps_K} * B_{1,psi0 omega^{-1}}
    {
        QuadChar eps_K(K.disc);
        QuadChar psi0 = psi_zero(psi, eps_K);
        QuadChar chi1 = char_product(psi0, eps_K);
        Rational B1 = gen_bernoulli(chi1, 1);
        bool ok1 = B1 != 0 && v_p(B1, p) <= 0;
        r.bernoulli_values_mod_p["B_{1,psi0*eps_K}"] = ok1 ? rational_mod(B1, p) : Integer(0);
        if (chi1.disc < -4) {
            Integer h = class_number_imag(chi1.disc);
            r.notes.push_back("h(" + chi1.disc.str() + ") = " + h.str());
        }
        bool ok2;
        if (p == 3) {
            // omega = quadratic character of discriminant -3; route through the
            // composite class number
            QuadChar chi2 = char_product(psi0, QuadChar(-3));
            Rational B2 = gen_bernoulli(chi2, 1);
            ok2 = B2 != 0 && v_p(B2, p) <= 0;
            r.bernoulli_values_mod_p["B_{1,psi0*omega^-1}"] = ok2 ? rational_mod(B2, p) : Integer(0);
            if (chi2.disc < -4) {
                Integer h = class_number_imag(chi2.disc);
                r.notes.push_back("h(" + chi2.disc.str() + ") = " + h.str());
            }
        } else {
            Residue b = b1_teichmuller_mod_p(psi0, -1, p);
            ok2 = b.value != 0;
            r.bernoulli_values_mod_p["B_{1,psi0*omega^-1}"] = b.value;
        }
        r.conditions.push_back({"C7 p inert to both Bernoulli factors", ok1 && ok2,
                                "v_p checks: first " + std::string(ok1 ? "nonzero" : "zero") +
                                    ", second " + std::string(ok2 ? "nonzero" : "zero") + " mod p"});
    }

    detail::set_verdict(r);
    return r;
}

struct RankConclusion {
    Integer rank_EQ, rank_EKQ;
    std::string branch;
};

// w(E tensor psi) = -psi(-1) under either proposition branch; rank split
// ((1+psi(-1))/2, (1-psi(-1))/2) once the criterion has certified rank 1 over K.
inline RankConclusion root_number_ranks(const CurveQ& E_base, const QuadChar& psi,
                                        const QuadField& K, bool criterion_passed,
                                        const Integer& p = 3) {
    (void)K;
    if (psi.trivial())
        throw std::invalid_argument("root_number_ranks: psi = 1 is degenerate (refused)");
    if (!criterion_passed)
        throw std::invalid_argument("root_number_ranks: criterion must have passed");
    std::string branch;
    if (p >= 5) branch = "branch(1): p >= 5";
    else if (E_base.semistable() && gcd(psi.conductor(), E_base.N) == 1)
        branch = "branch(2): E = E' tensor psi, E' semistable, coprime conductor";
    else
        throw std::invalid_argument("root_number_ranks: no proposition branch applies");
    int s = char_eval(psi, -1);
    return RankConclusion{Integer((1 + s) / 2), Integer((1 - s) / 2), branch};
}

} // namespace eisrank
