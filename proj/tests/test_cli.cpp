#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct RunResult {
    int code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(EISRANK_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    while (fgets(buf.data(), static_cast<int>(buf.size()), p)) out += buf.data();
    int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

} // namespace

TEST_CASE("bernoulli subcommand") {
    auto r = run_cli("bernoulli --n 18");
    CHECK(r.code == 0);
    CHECK(r.out.find("43867/798") != std::string::npos);
    auto r2 = run_cli("bernoulli --n 9 --chi -20 --mod 43867");
    CHECK(r2.code == 0);
    CHECK(r2.out.find("5726") != std::string::npos);
    auto r3 = run_cli("bernoulli --n 1 --mod 43867 --teich -9");
    CHECK(r3.code == 0);
    CHECK(r3.out.find("11867") != std::string::npos);
    auto bad = run_cli("bernoulli --n 2 --teich -9"); // --teich without --mod / --n 1
    CHECK(bad.code == 2);
}

TEST_CASE("classnum subcommand with JSON output") {
    auto r = run_cli("--json classnum --D -123 --analytic");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["h"] == "2");
    CHECK(j["D"] == "-123");
    // round trip
    CHECK(nlohmann::json::parse(j.dump()) == j);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("no-such-subcommand").code == 2);
    CHECK(run_cli("classnum").code == 2);             // missing required --D
    CHECK(run_cli("classnum --D -23 --bogus").code == 2);
    CHECK(run_cli("heegner --curve nope --K -8").code == 2);
}

TEST_CASE("tau-check and ramanujan-table verify and exit 0") {
    auto r = run_cli("tau-check --bound 60");
    CHECK(r.code == 0);
    auto t = run_cli("ramanujan-table");
    CHECK(t.code == 0);
    for (const char* v : {"583", "126", "176"}) CHECK(t.out.find(v) != std::string::npos);
}

TEST_CASE("descent subcommand") {
    auto r = run_cli("descent --curve 19a1 --p 3 --Np 19 --bound 100");
    CHECK(r.code == 0);
    CHECK(r.out.find("-3/4") != std::string::npos);
    auto bad = run_cli("descent --curve 19a1 --p 3 --Np 1 --Nm 19 --bound 100");
    CHECK(bad.code == 1); // wrong decomposition: verification failure
}

TEST_CASE("heegner subcommand emits the criterion report") {
    auto r = run_cli("--json heegner --curve 19a1 --p 3 --psi 41 --K -8");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["verdict"] == "non-torsion-rank-1");
    CHECK(j["rank_EQ"] == "1");
    CHECK(j["rank_EKQ"] == "0");
    CHECK(j["conditions"].size() == 7);
    CHECK(nlohmann::json::parse(j.dump()) == j);

    auto r2 = run_cli("--json heegner --curve 19a1 --p 3 --psi -7 --K -8");
    auto j2 = nlohmann::json::parse(r2.out);
    CHECK(j2["verdict"] == "non-torsion-rank-1");
    CHECK(j2["rank_EQ"] == "0");
    CHECK(j2["rank_EKQ"] == "1");

    auto r3 = run_cli("--json heegner --curve 19a1 --p 3 --psi 41 --K -7");
    auto j3 = nlohmann::json::parse(r3.out);
    CHECK(std::string(j3["verdict"]).rfind("inconclusive", 0) == 0);
}

TEST_CASE("density-bound and twist-scan") {
    auto r = run_cli("density-bound --Ns 19 --side real");
    CHECK(r.code == 0);
    CHECK(r.out.find("19/640") != std::string::npos);
    auto r2 = run_cli("--json density-bound --Ns 19 --DL -7");
    auto j2 = nlohmann::json::parse(r2.out);
    CHECK(j2["num"] == "19");
    CHECK(j2["den"] == "10240");

    auto s = run_cli("--json twist-scan --curve 19a1 --X 200 --branch real");
    auto js = nlohmann::json::parse(s.out);
    CHECK(js["curve"] == "19a1");
    bool has41 = false;
    for (const auto& v : js["verified"]) has41 = has41 || v == "41";
    CHECK(has41);
    CHECK(nlohmann::json::parse(js.dump()) == js);
}

TEST_CASE("eisenstein and cuspform subcommands") {
    auto r = run_cli("eisenstein --k 4 --prec 8");
    CHECK(r.code == 0);
    CHECK(r.out.find("1/240") != std::string::npos);
    CHECK(r.out.find("a(6) = 252") != std::string::npos);
    auto c = run_cli("cuspform --k 12 --prec 5");
    CHECK(c.code == 0);
    CHECK(c.out.find("a(2) = -24") != std::string::npos);
    CHECK(run_cli("cuspform --k 14 --prec 5").code == 2);
}

TEST_CASE("paper-examples aggregate run is deterministic") {
    auto r1 = run_cli("paper-examples");
    CHECK(r1.code == 0);
    CHECK(r1.out.find("all examples pass") != std::string::npos);
    CHECK(r1.out.find("[FAIL]") == std::string::npos);
    auto r2 = run_cli("paper-examples");
    CHECK(r2.out == r1.out);
}
