// Positive-proportion machinery: CRT residue-class enumeration, the
// Horie-Nakagawa density constant with its hypothesis checker, the explicit
// lower-bound formulas, and concrete twist scanning.
#pragma once

#include "eisrank/heegner.hpp"

namespace eisrank {

// If 2 does not divide lcm(N, extra) return it; if 2 exactly divides, lcm with
// 8; if 4 divides, lcm with 16.
inline Integer m_prime(const Integer& N, const Integer& extra = 1) {
    if (N < 1) throw std::invalid_argument("m_prime: N must be >= 1");
    Integer M = lcm(N, extra);
    if (M % 2 != 0) return M;
    if (M % 4 != 0) return lcm(M, Integer(8));
    return lcm(M, Integer(16));
}

enum class Side { real_L, imaginary_L };

inline const char* side_name(Side s) { return s == Side::real_L ? "real-L" : "imaginary-L"; }

struct DensityBound {
    Rational value;
    std::vector<std::pair<std::string, Rational>> formula_terms;
    void push(const std::string& label, const Rational& r) {
        formula_terms.emplace_back(label, r);
        value *= r;
    }
};

namespace detail {

// q/(ell+1) over ell | 3M', with q = 4 at ell = 2 and q = ell otherwise.
inline void push_local_densities(DensityBound& b, const Integer& threeMp) {
    for (const Integer& ell : prime_divisors(threeMp)) {
        Rational q = (ell == 2) ? Rational(4) : Rational(ell);
        b.push("q/(ell+1) at ell=" + ell.str(), q / Rational(ell + 1));
    }
}

} // namespace detail

// Lower bound on the proportion of twists handled by the rank-0/1 theorem for
// a curve of type (N_split, N_nonsplit, N_add) at p = 3.
inline DensityBound real_twist_bound(const Integer& Ns, const Integer& Nns, const Integer& Na,
                                     Side side) {
    Integer N = Ns * Nns * Na;
    Integer Mp = m_prime(N);
    DensityBound b;
    b.value = 1;
    Rational pre = (side == Side::real_L) ? Rational(1, 12) : Rational(1, 4);
    b.push(side == Side::real_L ? "1/12" : "1/4", pre);
    b.push("1/phi(M')", Rational(1) / Rational(euler_phi(Mp)));
    for (const Integer& ell : prime_divisors(Ns * Nns))
        if (ell != 2) b.push("(ell-1)/2 at ell=" + ell.str(), Rational(ell - 1, 2));
    for (const Integer& ell : prime_divisors(Na)) {
        if (ell == 2) continue;
        if (mod(ell, 3) == 1)
            b.push("(ell+2)(ell-1)/2 at ell=" + ell.str(), Rational((ell + 2) * (ell - 1), 2));
        else
            b.push("(ell-1) at ell=" + ell.str(), Rational(ell - 1));
    }
    if (Na % 4 == 0) b.push("2 at ell=2", Rational(2));
    detail::push_local_densities(b, 3 * Mp);
    return b;
}

// Lower bound for the twisted-curve variant with an auxiliary fundamental
// discriminant D_L (prefactors swap relative to real_twist_bound).
inline DensityBound twist_theorem_bound(const Integer& Ns, const Integer& Nns, const Integer& Na,
                                        const Integer& DL) {
    if (!is_fundamental_disc(DL) || DL == 1)
        throw std::invalid_argument("twist_theorem_bound: D_L must be a nontrivial fundamental discriminant");
    Integer N = Ns * Nns * Na;
    for (const Integer& ell : prime_divisors(N))
        if (ell != 2 && DL % ell == 0)
            throw std::invalid_argument("twist_theorem_bound: D_L shares an odd prime with N");
    Integer Mp = m_prime(N, DL * DL);
    DensityBound b;
    b.value = 1;
    Rational pre = (DL > 0) ? Rational(1, 4) : Rational(1, 12);
    b.push(DL > 0 ? "1/4" : "1/12", pre);
    b.push("1/phi(M')", Rational(1) / Rational(euler_phi(Mp)));
    for (const Integer& ell : prime_divisors(Ns * Nns))
        if (ell != 2 && DL % ell != 0) b.push("(ell-1)/2 at ell=" + ell.str(), Rational(ell - 1, 2));
    for (const Integer& ell : prime_divisors(Na))
        if (ell != 2 && DL % ell != 0)
            b.push("ell(ell-1)/2 at ell=" + ell.str(), Rational(ell * (ell - 1), 2));
    for (const Integer& ell : prime_divisors(DL))
        if (ell != 2) b.push("(ell-1)/2 at ell|D_L, ell=" + ell.str(), Rational(ell - 1, 2));
    detail::push_local_densities(b, 3 * Mp);
    return b;
}

struct ResidueFamily {
    Integer M;
    std::vector<Integer> classes;
    Side side;
    std::string provenance;
};

namespace detail {

struct LocalClasses {
    Integer modulus;
    std::vector<Integer> residues;
};

inline std::vector<Integer> unit_residues(const Integer& ell, bool want_square) {
    // nonzero residues mod ell that are (non)squares
    long l = static_cast<long>(ell);
    std::vector<int> qr(static_cast<size_t>(l), 0);
    for (long x = 1; x < l; ++x) qr[static_cast<size_t>((x * x) % l)] = 1;
    std::vector<Integer> out;
    for (long u = 1; u < l; ++u)
        if ((qr[static_cast<size_t>(u)] == 1) == want_square) out.emplace_back(u);
    return out;
}

} // namespace detail

// CRT residue-class family from the proof's local condition lists; classes are
// residues mod M = 9 * M'(N).
inline ResidueFamily enumerate_residue_family(const Integer& Ns, const Integer& Nns,
                                              const Integer& Na, Side side) {
    Integer N = Ns * Nns * Na;
    if (N % 3 == 0) throw std::invalid_argument("enumerate_residue_family: 3 | N unsupported");
    Integer Mp = m_prime(N);
    ResidueFamily fam;
    fam.M = 9 * Mp;
    fam.side = side;
    fam.provenance = (side == Side::real_L) ? "real-side condition list (1)-(8)"
                                            : "imaginary-side condition list";
    bool real = side == Side::real_L;

    std::vector<detail::LocalClasses> locals;
    // 3-adic condition
    if (real) locals.push_back({9, {3}});
    else locals.push_back({9, {2, 5, 8}});
    // multiplicative primes: one class per (non)residue unit, scaled by -3 on
    // the real side
    auto mult_local = [&](const Integer& ell, bool want_square) {
        std::vector<Integer> cls;
        for (const Integer& u : detail::unit_residues(ell, want_square))
            cls.push_back(real ? mod(-3 * u, ell) : u);
        locals.push_back({ell, cls});
    };
    for (const Integer& ell : prime_divisors(Ns))
        if (ell != 2) mult_local(ell, /*want_square=*/false);
    for (const Integer& ell : prime_divisors(Nns))
        if (ell != 2) mult_local(ell, /*want_square=*/true);
    // additive primes: conditions mod ell^2
    for (const Integer& ell : prime_divisors(Na)) {
        if (ell == 2) continue;
        std::vector<Integer> cls;
        if (mod(ell, 3) == 1) {
            for (const Integer& u : detail::unit_residues(ell, false)) {
                Integer base = real ? mod(-3 * u, ell) : u;
                for (Integer t = 0; t < ell; ++t) cls.push_back(base + t * ell); // all lifts
            }
            for (Integer c = 1; c < ell; ++c) cls.push_back(c * ell);
        } else {
            for (Integer c = 1; c < ell; ++c) cls.push_back(c * ell);
        }
        locals.push_back({ell * ell, cls});
    }
    // 2-adic conditions
    if (Na % 4 == 0) locals.push_back({16, {8, 12}});
    else if (Ns % 2 == 0) locals.push_back({8, {real ? Integer(1) : Integer(5)}});
    else if (Nns % 2 == 0) locals.push_back({8, {real ? Integer(5) : Integer(1)}});

    // CRT all combinations
    std::vector<Integer> acc{0};
    Integer accmod = 1;
    for (const auto& loc : locals) {
        std::vector<Integer> next;
        for (const Integer& a : acc)
            for (const Integer& r : loc.residues)
                next.push_back(crt({{a, accmod}, {r, loc.modulus}}).value);
        acc = std::move(next);
        accmod = lcm(accmod, loc.modulus);
    }
    // lift to mod M if the local moduli do not exhaust it (e.g. 2 || N gives
    // M' containing 8 already covered; odd part always exhausted)
    if (accmod != fam.M) {
        Integer step = fam.M / accmod;
        throw std::runtime_error("enumerate_residue_family: local moduli cover " + accmod.str() +
                                 " but M = " + fam.M.str() + " (step " + step.str() + ")");
    }
    std::sort(acc.begin(), acc.end());
    fam.classes = std::move(acc);
    return fam;
}

// Hypothesis checker for the (m, M) pairs the asymptotic count accepts.
inline void hn_check_hypotheses(const Integer& m, const Integer& M) {
    for (const Integer& ell : prime_divisors(gcd(m, M))) {
        if (ell == 2) continue;
        if (M % (ell * ell) != 0)
            throw std::invalid_argument("hn hypotheses: ell=" + ell.str() +
                                        " divides (m,M) but ell^2 does not divide M");
        if (m % (ell * ell) == 0)
            throw std::invalid_argument("hn hypotheses: ell=" + ell.str() +
                                        " has ell^2 | m");
    }
    if (M % 2 == 0) {
        bool case1 = M % 4 == 0 && mod(m, 4) == 1;
        Integer m16 = mod(m, 16);
        bool case2 = M % 16 == 0 && (m16 == 8 || m16 == 12);
        if (!case1 && !case2)
            throw std::invalid_argument("hn hypotheses: even M requires (4|M, m=1 mod 4) "
                                        "or (16|M, m=8,12 mod 16)");
    }
}

// Leading coefficient 3/phi(M) * prod_{ell|M} q/(ell+1) of the imaginary
// quadratic field count in either sign class.
inline Rational hn_density_constant(const Integer& m, const Integer& M, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("hn_density_constant: sign must be +-1");
    hn_check_hypotheses(m, M);
    Rational c = Rational(3) / Rational(euler_phi(M));
    for (const Integer& ell : prime_divisors(M)) {
        Rational q = (ell == 2) ? Rational(4) : Rational(ell);
        c *= q / Rational(ell + 1);
    }
    return c;
}

// Unconditional lower-bound constants (coefficients of x/pi^2) for the
// 3-indivisibility counts, exposed alongside the asymptotic constant.
inline std::pair<Rational, Rational> taya_lower_bounds(const Integer& M) {
    Rational prod = 1;
    for (const Integer& ell : prime_divisors(M)) {
        Rational q = (ell == 2) ? Rational(4) : Rational(ell);
        prod *= q / Rational(ell + 1);
    }
    return {Rational(5, 6) / Rational(euler_phi(M)) * prod,
            Rational(1, 2) / Rational(euler_phi(M)) * prod};
}

struct TwistScanReport {
    std::string curve;
    Side branch;
    Integer X;
    DensityBound bound;
    std::vector<Integer> verified;
    Integer scanned = 0; // fundamental discriminants examined on the branch
    Rational empirical() const {
        return scanned == 0 ? Rational(0) : Rational(Integer(verified.size()), scanned);
    }
};

// Scan fundamental discriminants |D| <= X on one branch and verify the
// theorem's conditions (splitting, 3 inert, class-number 3-indivisibility,
// 2-adic rule) for the given curve type at p = 3.
inline TwistScanReport twist_scan(const CurveQ& E, const Integer& Ns, const Integer& Nns,
                                  const Integer& Na, const Integer& X, Side branch) {
    if (!(E.N == Ns * Nns * Na))
        throw std::invalid_argument("twist_scan: decomposition does not match conductor");
    TwistScanReport rep;
    rep.curve = E.label;
    rep.branch = branch;
    rep.X = X;
    rep.bound = real_twist_bound(Ns, Nns, Na, branch);
    bool real = branch == Side::real_L;
    for (Integer a = 2; a <= X; ++a) {
        Integer D = real ? a : -a;
        if (!is_fundamental_disc(D)) continue;
        ++rep.scanned;
        // (1) 3 inert in L
        if (kronecker(D, 3) != -1) continue;
        // (3) ell | N_split inert in L
        bool ok = true;
        for (const Integer& ell : prime_divisors(Ns))
            if (kronecker(D, ell) != -1) { ok = false; break; }
        if (!ok) continue;
        // (4) ell | N_nonsplit split in L
        for (const Integer& ell : prime_divisors(Nns))
            if (kronecker(D, ell) != 1) { ok = false; break; }
        if (!ok) continue;
        // (5) ell | N_add inert with ell != 2 mod 3, or ramified
        for (const Integer& ell : prime_divisors(Na)) {
            if (ell == 2) continue;
            int kr = kronecker(D, ell);
            if (!((kr == -1 && mod(ell, 3) != 2) || kr == 0)) { ok = false; break; }
        }
        if (!ok) continue;
        // (6) 2-adic rule when 4 | N
        if (E.N % 4 == 0) {
            Integer d16 = mod(D, 16);
            if (d16 != 8 && d16 != 12) continue;
        }
        // class-number condition: 3 does not divide h of the governing
        // imaginary field (composite with -3 on the real branch)
        Integer hdisc = real ? fundamental_discriminant(-3 * D) : D;
        if (hdisc >= 0 || class_number_imag(hdisc) % 3 == 0) continue;
        rep.verified.push_back(D);
    }
    return rep;
}

} // namespace eisrank
