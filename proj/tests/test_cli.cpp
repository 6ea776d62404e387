#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hasse/cli.hpp"
#include "hasse/elliptic.hpp"

using namespace hasse;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    ::setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
    std::ostringstream out, err;
    const int code = cli::dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

std::string curves() { return HASSE_DATA_DIR "/curves.csv"; }

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "hasse_cli_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("sha-scan at p = 3 over all subgroups") {
    const auto r = run({"sha-scan", "--p", "3", "--scope", "all"});
    REQUIRE(r.code == cli::kExitPass);
    const auto j = json::parse(r.out);
    CHECK(j["schema"] == 1);
    CHECK(j["summary"]["groups"] == 55);
    CHECK(j["results"].size() == 55 * 5);
    for (const auto& row : j["results"]) CHECK(row["sha"] == 0);
}

TEST_CASE("sha-scan families at p = 5") {
    const auto r = run({"sha-scan", "--p", "5", "--scope", "families", "--modules", "ad,sym2"});
    REQUIRE(r.code == cli::kExitPass);
    const auto j = json::parse(r.out);
    CHECK(j["parameters"]["modules"] == json::array({"sym2", "ad"}));
    for (const auto& row : j["results"]) CHECK(row["sha"] == 0);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({"sha-scan", "--p", "7"}).code == cli::kExitUsage);
    CHECK(run({"sha-scan", "--p", "5", "--scope", "all"}).code == cli::kExitUsage);
    CHECK(run({"sha-scan", "--p", "3", "--scope", "random:x"}).code == cli::kExitUsage);
    CHECK(run({"sha-scan", "--p", "3", "--modules", "W"}).code == cli::kExitUsage);
    CHECK(run({"bogus"}).code == cli::kExitUsage);
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"prime-scan", "--curves", curves(), "--bound", "2"}).code == cli::kExitUsage);
    CHECK(run({"prime-scan", "--curves", "/nonexistent.csv"}).code == cli::kExitUsage);
    CHECK(run({"classify", "--p", "3", "--gens", "2,0,0,1"}).code == cli::kExitUsage);
    const auto bad = run({"approximate", "--curves", curves(), "--label", "11a1", "--p", "11"});
    CHECK(bad.code == cli::kExitUsage);
    CHECK(bad.err.find("BadReduction") != std::string::npos);
}

TEST_CASE("serre-check") {
    const auto all = run({"serre-check", "--p", "3"});
    REQUIRE(all.code == cli::kExitPass);
    const auto j = json::parse(all.out);
    CHECK(j["results"].size() == 5);
    CHECK(j["summary"]["all_injective"] == true);
    const auto ad = json::parse(run({"serre-check", "--p", "5", "--modules", "ad"}).out);
    CHECK(ad["results"][0]["injective"] == true);
    const auto empty = run({"serre-check", "--p", "5", "--modules", ""});
    CHECK(empty.code == cli::kExitPass);
    CHECK(json::parse(empty.out)["results"].empty());
}

TEST_CASE("classify and cohomology") {
    const auto c = json::parse(run({"classify", "--p", "3", "--gens", "1,1,0,1", "--gens", "0,2,1,0"}).out);
    CHECK(c["results"]["kind"] == "contains-SL2");
    const auto b = json::parse(run({"classify", "--p", "5", "--gens", "1,1,0,1", "--gens", "2,0,0,1"}).out);
    CHECK(b["results"]["kind"] == "borel-conjugate");
    CHECK(b["results"]["witness_verified"] == true);
    const auto h = run({"cohomology", "--p", "5", "--gens", "1,1,0,1", "--modules", "VxV"});
    REQUIRE(h.code == cli::kExitPass);
    const auto row = json::parse(h.out)["results"][0];
    CHECK(row["h1"] == 2);
    CHECK(row["h2"].is_number());
}

TEST_CASE("prime-scan") {
    const auto r = run({"prime-scan", "--curves", curves(), "--bound", "100"});
    REQUIRE(r.code == cli::kExitPass);
    const auto j = json::parse(r.out);
    bool saw_37 = false;
    for (const auto& curve : j["results"]) {
        CHECK(curve["excluded"][0]["reason"] == "SMALL-PRIME-NOT-COVERED");
        for (const auto& v : curve["verdicts"]) {
            if (v["reduction"] == "good-ordinary" && v["p"].get<int>() >= 5) CHECK(v["eliminated"] == true);
            if (curve["label"] == "37a1" && v["p"] == 37) saw_37 = v["reason"] == "BAD";
        }
    }
    CHECK(saw_37);
    const auto three = json::parse(run({"prime-scan", "--curves", curves(), "--bound", "3"}).out);
    for (const auto& curve : three["results"]) {
        REQUIRE(curve["verdicts"].size() == 1);
        CHECK(curve["verdicts"][0]["p"] == 3);
    }
    const auto deg = json::parse(run({"prime-scan", "--curves", curves(), "--bound", "20", "--degree", "4"}).out);
    CHECK(deg["metadata"]["unchecked_assumptions"].size() == 1);
}

TEST_CASE("approximate is deterministic and verifies") {
    const std::vector<std::string> args{"approximate", "--curves", curves(), "--label", "x3+x+1",
                                        "--p",         "5",        "--seed",  "99"};
    const auto a = run(args), b = run(args);
    REQUIRE(a.code == cli::kExitPass);
    CHECK(a.out == b.out);
    const auto j = json::parse(a.out);
    CHECK(j["results"]["certificates"][0]["verified"] == true);
    CHECK(j["input_digest"].get<std::string>().size() == 64);

    const auto ss = run({"approximate", "--curves", curves(), "--label", "x3+x+1", "--p", "7"});
    const auto e = ell::find_curve(ell::load_curves(curves()), "x3+x+1");
    if (ell::reduction_type(e, 7) == ell::Reduction::GoodSupersingular) CHECK(ss.code == cli::kExitUsage);
    CHECK(run({"approximate", "--curves", curves(), "--label", "x3+x+1", "--p", "5", "--seed", "100"}).out != a.out);
}

TEST_CASE("verify round trip and tampering") {
    const auto path = scratch("report.json").string();
    REQUIRE(run({"approximate", "--curves", curves(), "--label", "11a1", "--p", "3", "--pair",
                 "--out", path}).code == cli::kExitPass);
    CHECK(run({"verify", path}).code == cli::kExitPass);

    json j;
    std::ifstream(path) >> j;
    j["results"]["certificates"][1]["x"] = "1/7";
    const auto tampered = scratch("tampered.json").string();
    std::ofstream(tampered) << j.dump();
    CHECK(run({"verify", tampered}).code == cli::kExitCheckFailed);

    const auto sha = scratch("sha.json").string();
    REQUIRE(run({"sha-scan", "--p", "3", "--scope", "random:5", "--out", sha}).code == cli::kExitPass);
    std::ifstream(sha) >> j;
    CHECK(run({"verify", sha}).code == cli::kExitPass);
    j["results"][0]["h1"] = 7;
    std::ofstream(tampered) << j.dump();
    CHECK(run({"verify", tampered}).code == cli::kExitCheckFailed);

    std::ofstream(tampered) << "{not json";
    CHECK(run({"verify", tampered}).code == cli::kExitUsage);
}

TEST_CASE("sha256") {
    CHECK(cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
