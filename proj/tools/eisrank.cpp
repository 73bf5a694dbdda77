// Command-line surface for the eisrank library.
#include "eisrank/curvedata.hpp"
#include "eisrank/density.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

using namespace eisrank;
using nlohmann::json;

namespace {

json rational_json(const Rational& r) {
    return json{{"num", num(r).str()}, {"den", den(r).str()}};
}

std::string rational_str(const Rational& r) {
    return den(r) == 1 ? num(r).str() : num(r).str() + "/" + den(r).str();
}

json bound_json(const DensityBound& b) {
    json terms = json::array();
    for (const auto& [label, r] : b.formula_terms)
        terms.push_back({{"factor", label}, {"value", rational_str(r)}});
    return json{{"num", num(b.value).str()}, {"den", den(b.value).str()}, {"terms", terms}};
}

json criterion_json(const CriterionReport& r) {
    json conds = json::array();
    for (const auto& c : r.conditions)
        conds.push_back({{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
    json bern = json::object();
    for (const auto& [k, v] : r.bernoulli_values_mod_p) bern[k] = v.str();
    json out{{"conditions", conds},
             {"bernoulli_values_mod_p", bern},
             {"xi_mod_p", r.xi.value.str()},
             {"verdict", r.verdict},
             {"twisted_conductor", r.twisted_conductor.str()},
             {"notes", r.notes}};
    if (r.rank_EQ) out["rank_EQ"] = r.rank_EQ->str();
    if (r.rank_EKQ) out["rank_EKQ"] = r.rank_EKQ->str();
    return out;
}

void print_criterion(const CriterionReport& r) {
    for (const auto& c : r.conditions)
        std::cout << (c.pass ? "[pass] " : "[FAIL] ") << c.name << "  (" << c.witness << ")\n";
    for (const auto& [k, v] : r.bernoulli_values_mod_p)
        std::cout << k << " = " << v << " mod p\n";
    std::cout << "Xi mod p = " << r.xi.value << "\n";
    std::cout << "twisted conductor = " << r.twisted_conductor << "\n";
    for (const auto& n : r.notes) std::cout << "note: " << n << "\n";
    std::cout << "verdict: " << r.verdict << "\n";
    if (r.rank_EQ) std::cout << "rank over Q = " << *r.rank_EQ
                             << ", rank increment over K = " << *r.rank_EKQ << "\n";
}

// paper-examples: the full regression table. Returns true iff all rows pass.
bool run_examples(std::ostream& os) {
    struct Row {
        std::string name;
        bool pass;
        std::string detail;
    };
    std::vector<Row> rows;
    auto add = [&](const std::string& name, bool pass, const std::string& detail) {
        rows.push_back({name, pass, detail});
    };

    {
        Rational b18 = bernoulli(18);
        QuadChar eps(-20);
        Rational b9 = gen_bernoulli(eps, 9);
        bool ok = b18 == Rational(43867, 798) && b9 == Rational(Integer("-5444415378")) &&
                  rational_mod(b9, 43867) == 5726;
        add("classical and twisted Bernoulli values", ok,
            "B_18 = " + rational_str(b18) + ", B_{9,eps_-20} = " + rational_str(b9) +
                " = " + rational_mod(b9, 43867).str() + " mod 43867");
    }
    {
        Residue b = b1_teichmuller_mod_p(QuadChar(1), -9, 43867);
        add("Teichmuller-twisted B_1 at 43867", b.value == 11867,
            "B_{1,omega^-9} = " + b.value.str() + " mod 43867");
    }
    {
        Residue xi = xi_mod_p(QuadChar(1), 18, 7, 1, 1, 43867);
        add("Xi(1,1,7,1,1) at k=18", xi.value == 25644, "Xi = " + xi.value.str() + " mod 43867");
    }
    {
        auto d = delta(501);
        auto sigma11 = eisenstein(QuadChar(1), QuadChar(1), 12, 1, 1, 1, 501);
        bool ok = true;
        for (long n = 1; n <= 500 && ok; ++n)
            ok = mod(coeff_mod(d.coeff(n), 691) - coeff_mod(sigma11.coeff(n), 691), 691) == 0;
        add("tau(n) = sigma_11(n) mod 691, n <= 500", ok, "coefficient congruence verified");
        auto f18 = level1_cuspform(18, 201);
        auto e18 = eisenstein(QuadChar(1), QuadChar(1), 18, 1, 1, 1, 201);
        bool ok2 = true;
        for (long n = 1; n <= 200 && ok2; ++n)
            ok2 = mod(coeff_mod(f18.coeff(n), 43867) - coeff_mod(e18.coeff(n), 43867), 43867) == 0;
        add("weight-18 cusp form congruence mod 43867, n <= 200", ok2, "coefficient congruence verified");
    }
    {
        struct TRow { Integer psi, DK, expect; };
        std::vector<TRow> trows{{12, -23, 583}, {12, -95, 126}, {13, -40, 583}, {-7, -40, 176}};
        bool ok = true;
        std::string detail;
        for (auto& tr : trows) {
            QuadChar psi0 = psi_zero(QuadChar(tr.psi), QuadChar(tr.DK));
            QuadChar chi = char_product(psi0, QuadChar(tr.DK));
            Integer v = mod(rational_mod(gen_bernoulli(psi0, 6), 691) *
                                b1_teichmuller_mod_p(chi, -6, 691).value,
                            691);
            if (v != tr.expect) ok = false;
            detail += (detail.empty() ? "" : ", ") + v.str();
        }
        add("mod-691 product table (4 rows)", ok, detail + " vs expected 583, 126, 583, 176");
    }
    {
        auto E = lookup_curve("19a1");
        DescentType t{QuadChar(1), QuadChar(1), 19, 1, 1};
        auto rep = verify_descent(E, 3, t, 200);
        bool ok = rep.passed() && rep.full && rep.constant_product == Rational(-3, 4);
        add("19a1 descent at p=3", ok,
            "primes to 200 pass, constant term " + rational_str(rep.constant_product));

        auto c1 = heegner_criterion(E, 3, QuadChar(41), QuadField(-8));
        auto r1 = c1.passed() ? root_number_ranks(E, QuadChar(41), QuadField(-8), true)
                              : RankConclusion{-1, -1, ""};
        auto c2 = heegner_criterion(E, 3, QuadChar(-7), QuadField(-8));
        auto r2 = c2.passed() ? root_number_ranks(E, QuadChar(-7), QuadField(-8), true)
                              : RankConclusion{-1, -1, ""};
        bool ok2 = c1.verdict == "non-torsion-rank-1" && r1.rank_EQ == 1 && r1.rank_EKQ == 0 &&
                   c2.verdict == "non-torsion-rank-1" && r2.rank_EQ == 0 && r2.rank_EKQ == 1 &&
                   class_number_imag(-123) == 2 && class_number_imag(-328) == 4 &&
                   class_number_imag(-7) == 1 && class_number_imag(-168) == 4;
        add("19a1 twisted rank conclusions over Q(sqrt(-2))", ok2,
            "twist by 41: ranks (" + r1.rank_EQ.str() + "," + r1.rank_EKQ.str() +
                "); twist by -7: ranks (" + r2.rank_EQ.str() + "," + r2.rank_EKQ.str() +
                "); h(-123)=2, h(-328)=4, h(-7)=1, h(-168)=4");
    }
    {
        auto d1 = real_twist_bound(19, 1, 1, Side::real_L);
        auto d2 = real_twist_bound(19, 1, 1, Side::imaginary_L);
        auto d3 = twist_theorem_bound(19, 1, 1, 41);
        auto d4 = twist_theorem_bound(19, 1, 1, -7);
        bool ok = d1.value == Rational(19, 640) && d2.value == Rational(57, 640) &&
                  d3.value == Rational(19, 17920) && d4.value == Rational(19, 10240) &&
                  d1.value + d4.value == Rational(323, 10240) &&
                  d2.value + d3.value == Rational(323, 3584);
        add("19a1 density lower bounds", ok,
            rational_str(d1.value) + ", " + rational_str(d2.value) + ", " + rational_str(d3.value) +
                ", " + rational_str(d4.value) + "; sums " + rational_str(d1.value + d4.value) +
                ", " + rational_str(d2.value + d3.value));
    }
    {
        auto E = lookup_curve("19a1");
        auto sc = twist_scan(E, 19, 1, 1, 200, Side::real_L);
        bool found = std::find(sc.verified.begin(), sc.verified.end(), Integer(41)) != sc.verified.end();
        auto sc2 = twist_scan(E, 19, 1, 1, 200, Side::imaginary_L);
        bool found2 = std::find(sc2.verified.begin(), sc2.verified.end(), Integer(-7)) != sc2.verified.end();
        add("twist scan recovers flagship discriminants", found && found2,
            "41 in real-branch list, -7 in imaginary-branch list (X=200)");
    }

    bool all = true;
    for (const auto& r : rows) {
        os << (r.pass ? "[pass] " : "[FAIL] ") << r.name << " -- " << r.detail << "\n";
        if (!r.pass) all = false;
    }
    os << (all ? "all examples pass" : "EXAMPLE FAILURES PRESENT") << "\n";
    return all;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"eisrank: exact-arithmetic toolkit for Eisenstein congruences and rank criteria"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit JSON instead of plain text");
    std::string data_path;
    app.add_option("--data", data_path, "curve dataset CSV (overrides EISRANK_DATA)");

    // bernoulli
    auto* c_bern = app.add_subcommand("bernoulli", "Bernoulli numbers, generalized and Teichmuller-twisted");
    long bn = 0;
    Integer b_chi = 1, b_mod = 0, b_teich = 0;
    bool b_has_teich = false;
    c_bern->add_option("--n", bn, "index n")->required();
    c_bern->add_option("--chi", b_chi, "quadratic character by fundamental discriminant (default trivial)");
    c_bern->add_option("--mod", b_mod, "reduce mod a prime p");
    c_bern->add_option("--teich", b_teich, "Teichmuller power j for B_{1,chi*omega^j} mod p (requires --mod, --n 1)")
        ->each([&](const std::string&) { b_has_teich = true; });

    // classnum
    auto* c_cls = app.add_subcommand("classnum", "imaginary quadratic class numbers");
    Integer cls_D = 0;
    bool cls_analytic = false;
    c_cls->add_option("--D", cls_D, "fundamental discriminant < 0")->required();
    c_cls->add_flag("--analytic", cls_analytic, "cross-check with the character-sum formula");

    // eisenstein
    auto* c_eis = app.add_subcommand("eisenstein", "Eisenstein series q-expansion");
    Integer e_psi1 = 1, e_psi2 = 1, e_Np = 1, e_Nm = 1, e_N0 = 1;
    long e_k = 2, e_prec = 500;
    Integer e_mod = 0;
    c_eis->add_option("--psi1", e_psi1, "first character (fundamental discriminant)");
    c_eis->add_option("--psi2", e_psi2, "second character (fundamental discriminant)");
    c_eis->add_option("--k", e_k, "weight")->required();
    c_eis->add_option("--Np", e_Np, "N+ part");
    c_eis->add_option("--Nm", e_Nm, "N- part");
    c_eis->add_option("--N0", e_N0, "N0 part (squarefull)");
    c_eis->add_option("--prec", e_prec, "number of coefficients");
    c_eis->add_option("--mod", e_mod, "reduce coefficients mod m");

    // cuspform
    auto* c_cusp = app.add_subcommand("cuspform", "level-1 cusp form q-expansion");
    long cu_k = 12, cu_prec = 500;
    c_cusp->add_option("--k", cu_k, "weight in {12,16,18,20,22,26}");
    c_cusp->add_option("--prec", cu_prec, "number of coefficients");

    // tau-check
    auto* c_tau = app.add_subcommand("tau-check", "verify tau(n) = sigma_11(n) mod 691");
    long tau_bound = 500;
    c_tau->add_option("--bound", tau_bound, "check n up to this bound");

    // descent
    auto* c_desc = app.add_subcommand("descent", "verify an Eisenstein congruence for a curve");
    std::string d_curve = "19a1";
    Integer d_p = 3, d_psi1 = 1, d_psi2 = 1, d_Np = 0, d_Nm = 1, d_N0 = 1, d_bound = 200;
    c_desc->add_option("--curve", d_curve, "curve label");
    c_desc->add_option("--p", d_p, "congruence prime")->required();
    c_desc->add_option("--psi1", d_psi1, "first type character");
    c_desc->add_option("--psi2", d_psi2, "second type character");
    c_desc->add_option("--Np", d_Np, "N+ (default: full conductor)");
    c_desc->add_option("--Nm", d_Nm, "N-");
    c_desc->add_option("--N0", d_N0, "N0");
    c_desc->add_option("--bound", d_bound, "check primes up to this bound");

    // heegner
    auto* c_heeg = app.add_subcommand("heegner", "Heegner-point non-torsion criterion");
    std::string h_curve = "19a1";
    Integer h_p = 3, h_psi = 1, h_K = 0;
    std::string h_assert;
    c_heeg->add_option("--curve", h_curve, "base curve label");
    c_heeg->add_option("--p", h_p, "prime");
    c_heeg->add_option("--psi", h_psi, "twist character (fundamental discriminant)");
    c_heeg->add_option("--K", h_K, "imaginary quadratic field discriminant")->required();
    c_heeg->add_option("--assert-reducible", h_assert, "caller-asserted reducibility type data");

    // ramanujan-table
    auto* c_ram = app.add_subcommand("ramanujan-table", "reproduce the 4-row mod-691 product table");

    // density-bound
    auto* c_den = app.add_subcommand("density-bound", "exact twist-density lower bounds");
    Integer dn_Ns = 1, dn_Nns = 1, dn_Na = 1, dn_DL = 0;
    std::string dn_side = "real";
    c_den->add_option("--Ns", dn_Ns, "split part");
    c_den->add_option("--Nns", dn_Nns, "nonsplit part");
    c_den->add_option("--Na", dn_Na, "additive part");
    c_den->add_option("--side", dn_side, "real | imaginary");
    c_den->add_option("--DL", dn_DL, "auxiliary fundamental discriminant (twisted-theorem variant)");

    // twist-scan
    auto* c_scan = app.add_subcommand("twist-scan", "scan fundamental discriminants for verified twists");
    std::string s_curve = "19a1", s_branch = "real", s_out;
    Integer s_X = 200;
    bool s_assert = false;
    c_scan->add_option("--curve", s_curve, "curve label");
    c_scan->add_option("--X", s_X, "discriminant bound");
    c_scan->add_option("--branch", s_branch, "real | imaginary");
    c_scan->add_option("--out", s_out, "write JSON report to this path");
    c_scan->add_flag("--assert-reducible", s_assert, "skip the 3-torsion certificate");

    // paper-examples
    app.add_subcommand("paper-examples", "run the full worked-example regression suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_bern->parsed()) {
            if (b_has_teich || b_teich != 0) {
                if (b_mod == 0 || bn != 1) {
                    std::cerr << "--teich requires --mod and --n 1\n";
                    return 2;
                }
                Residue r = b1_teichmuller_mod_p(QuadChar(b_chi), b_teich, b_mod);
                if (as_json) std::cout << json{{"value_mod_p", r.value.str()}, {"p", b_mod.str()}} << "\n";
                else std::cout << r.value << " mod " << b_mod << "\n";
                return 0;
            }
            Rational v = gen_bernoulli(QuadChar(b_chi), static_cast<unsigned>(bn));
            if (as_json) {
                json out{{"value", rational_json(v)}};
                if (b_mod != 0) out["value_mod_p"] = rational_mod(v, b_mod).str();
                std::cout << out << "\n";
            } else {
                std::cout << rational_str(v);
                if (b_mod != 0) std::cout << " = " << rational_mod(v, b_mod) << " mod " << b_mod;
                std::cout << "\n";
            }
            return 0;
        }
        if (c_cls->parsed()) {
            Integer h = class_number_imag(cls_D);
            if (cls_analytic && class_number_analytic(cls_D) != h) {
                std::cerr << "analytic cross-check mismatch\n";
                return 1;
            }
            if (as_json) std::cout << json{{"D", cls_D.str()}, {"h", h.str()}} << "\n";
            else std::cout << "h(" << cls_D << ") = " << h << "\n";
            return 0;
        }
        if (c_eis->parsed()) {
            auto f = eisenstein(QuadChar(e_psi1), QuadChar(e_psi2), e_k, e_Np, e_Nm, e_N0, e_prec);
            if (as_json) {
                json coeffs = json::array();
                for (long n = 0; n < f.prec(); ++n) {
                    if (e_mod != 0) coeffs.push_back(coeff_mod(f.coeff(n), e_mod).str());
                    else coeffs.push_back(rational_str(f.coeff(n)));
                }
                std::cout << json{{"weight", f.meta.weight}, {"level", f.meta.level.str()},
                                  {"coefficients", coeffs}} << "\n";
            } else {
                for (long n = 0; n < f.prec(); ++n) {
                    if (e_mod != 0) std::cout << "a(" << n << ") = " << coeff_mod(f.coeff(n), e_mod) << "\n";
                    else std::cout << "a(" << n << ") = " << rational_str(f.coeff(n)) << "\n";
                }
            }
            return 0;
        }
        if (c_cusp->parsed()) {
            auto f = level1_cuspform(cu_k, cu_prec);
            if (as_json) {
                json coeffs = json::array();
                for (long n = 0; n < f.prec(); ++n) coeffs.push_back(f.coeff(n).str());
                std::cout << json{{"weight", f.meta.weight}, {"coefficients", coeffs}} << "\n";
            } else {
                for (long n = 0; n < f.prec(); ++n) std::cout << "a(" << n << ") = " << f.coeff(n) << "\n";
            }
            return 0;
        }
        if (c_tau->parsed()) {
            auto d = delta(tau_bound + 1);
            auto e = eisenstein(QuadChar(1), QuadChar(1), 12, 1, 1, 1, tau_bound + 1);
            for (long n = 1; n <= tau_bound; ++n)
                if (mod(coeff_mod(d.coeff(n), 691) - coeff_mod(e.coeff(n), 691), 691) != 0) {
                    std::cerr << "congruence FAILS at n = " << n << "\n";
                    return 1;
                }
            std::cout << "tau(n) = sigma_11(n) mod 691 for all n <= " << tau_bound << "\n";
            return 0;
        }
        if (c_desc->parsed()) {
            CurveQ E = lookup_curve(d_curve, data_path);
            if (d_Np == 0) d_Np = E.N / (d_Nm * d_N0);
            DescentType t{QuadChar(d_psi1), QuadChar(d_psi2), d_Np, d_Nm, d_N0};
            auto rep = verify_descent(E, d_p, t, d_bound);
            if (as_json) {
                std::cout << json{{"curve", d_curve}, {"p", d_p.str()},
                                  {"checked", rep.checked_primes.size()},
                                  {"failures", rep.failures},
                                  {"constant_term", rational_str(rep.constant_product)},
                                  {"full", rep.full}} << "\n";
            } else {
                std::cout << "checked " << rep.checked_primes.size() << " primes up to " << d_bound << "\n";
                for (const auto& f : rep.failures) std::cout << "FAIL: " << f << "\n";
                std::cout << "constant-term product = " << rational_str(rep.constant_product)
                          << (rep.full ? " (vanishes mod p: full congruence)" : "") << "\n";
            }
            return rep.passed() ? 0 : 1;
        }
        if (c_heeg->parsed()) {
            CurveQ E = lookup_curve(h_curve, data_path);
            auto rep = heegner_criterion(E, h_p, QuadChar(h_psi), QuadField(h_K), !h_assert.empty());
            if (rep.passed() && h_psi != 1) {
                try {
                    auto rk = root_number_ranks(E, QuadChar(h_psi), QuadField(h_K), true, h_p);
                    rep.rank_EQ = rk.rank_EQ;
                    rep.rank_EKQ = rk.rank_EKQ;
                    rep.notes.push_back(rk.branch);
                } catch (const std::invalid_argument& e) {
                    rep.notes.push_back(std::string("rank split unavailable: ") + e.what());
                }
            }
            if (as_json) std::cout << criterion_json(rep) << "\n";
            else print_criterion(rep);
            return 0;
        }
        if (c_ram->parsed()) {
            struct TRow { Integer psi, DK, expect; };
            std::vector<TRow> trows{{12, -23, 583}, {12, -95, 126}, {13, -40, 583}, {-7, -40, 176}};
            bool all = true;
            json jrows = json::array();
            for (auto& tr : trows) {
                QuadChar psi0 = psi_zero(QuadChar(tr.psi), QuadChar(tr.DK));
                QuadChar chi = char_product(psi0, QuadChar(tr.DK));
                Integer v = mod(rational_mod(gen_bernoulli(psi0, 6), 691) *
                                    b1_teichmuller_mod_p(chi, -6, 691).value,
                                691);
                bool ok = v == tr.expect;
                all = all && ok;
                if (as_json)
                    jrows.push_back({{"psi", tr.psi.str()}, {"D_K", tr.DK.str()},
                                     {"value", v.str()}, {"expected", tr.expect.str()}});
                else
                    std::cout << "psi disc " << tr.psi << ", D_K " << tr.DK << ": " << v
                              << " (expected " << tr.expect << ")" << (ok ? "" : "  MISMATCH") << "\n";
            }
            if (as_json) std::cout << jrows << "\n";
            return all ? 0 : 1;
        }
        if (c_den->parsed()) {
            DensityBound b;
            if (dn_DL != 0) {
                b = twist_theorem_bound(dn_Ns, dn_Nns, dn_Na, dn_DL);
            } else {
                Side side = dn_side == "imaginary" ? Side::imaginary_L : Side::real_L;
                b = real_twist_bound(dn_Ns, dn_Nns, dn_Na, side);
            }
            if (as_json) std::cout << bound_json(b) << "\n";
            else {
                for (const auto& [label, r] : b.formula_terms)
                    std::cout << label << " = " << rational_str(r) << "\n";
                std::cout << "bound = " << rational_str(b.value) << "\n";
            }
            return 0;
        }
        if (c_scan->parsed()) {
            CurveQ E = lookup_curve(s_curve, data_path);
            if (!s_assert && !has_rational_3_torsion(E)) {
                std::cerr << "curve lacks a rational 3-torsion certificate; pass --assert-reducible\n";
                return 2;
            }
            Integer Ns = 1, Nns = 1, Na = 1;
            for (const Integer& ell : prime_divisors(E.N)) {
                if (E.N % (ell * ell) == 0) {
                    Integer q = 1, rest = E.N;
                    while (rest % ell == 0) { q *= ell; rest /= ell; }
                    Na *= q;
                } else if (reduction_type(E, ell) == ReductionType::split_mult) Ns *= ell;
                else Nns *= ell;
            }
            Side branch = s_branch == "imaginary" ? Side::imaginary_L : Side::real_L;
            auto rep = twist_scan(E, Ns, Nns, Na, s_X, branch);
            json out{{"curve", rep.curve}, {"branch", side_name(rep.branch)}, {"X", rep.X.str()},
                     {"bound", {{"num", num(rep.bound.value).str()}, {"den", den(rep.bound.value).str()}}},
                     {"verified", json::array()},
                     {"empirical", {{"num", num(rep.empirical()).str()}, {"den", den(rep.empirical()).str()}}}};
            for (const Integer& D : rep.verified) out["verified"].push_back(D.str());
            if (!s_out.empty()) {
                std::ofstream f(s_out);
                f << out.dump(2) << "\n";
            }
            if (as_json) std::cout << out << "\n";
            else {
                std::cout << "verified discriminants (" << rep.verified.size() << " of "
                          << rep.scanned << " scanned):";
                for (const Integer& D : rep.verified) std::cout << " " << D;
                std::cout << "\nbound = " << rational_str(rep.bound.value)
                          << ", empirical = " << rational_str(rep.empirical()) << "\n";
            }
            return 0;
        }
        // paper-examples
        return run_examples(std::cout) ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
