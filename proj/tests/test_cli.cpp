#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(LOGFANO_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int st = pclose(p);
    return {WEXITSTATUS(st), out};
}

} // namespace

TEST_CASE("thresholds subcommand: reduced round case") {
    auto r = run("thresholds --curve '{\"weights\":[]}' --n 5 --reduced");
    CHECK(r.exit_code == 0);
    auto j = json::parse(r.out);
    CHECK(j.at("value") == "2/1");
}

TEST_CASE("thresholds subcommand: oracle emits a witness") {
    auto r = run("thresholds --curve '{\"weights\":[\"3/4\",\"3/4\"]}' --n 9 --reduced --oracle");
    CHECK(r.exit_code == 0);
    auto j = json::parse(r.out);
    CHECK(j.at("value") == "8/3");
    CHECK(j.at("witness").at("family") == "marked");
    CHECK(j.at("witness").at("codim") == 4);
}

TEST_CASE("validation failures exit with code 2 and say why") {
    auto r = run("thresholds --curve '{\"weights\":[]}' --n 1");
    CHECK(r.exit_code == 2);
    std::string cmd = std::string(LOGFANO_CLI_PATH) +
                      " thresholds --curve '{\"weights\":[]}' --n 1 2>&1 >/dev/null";
    std::array<char, 4096> buf{};
    std::string err;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) err.append(buf.data(), n);
    pclose(p);
    CHECK(err.find(">= 2") != std::string::npos);
}

TEST_CASE("converge emits the CSV contract") {
    auto r = run("converge --schedule symmetric --n 100,200");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("N,logZ_over_N,target,error\n", 0) == 0);
    int lines = 0;
    for (char c : r.out)
        if (c == '\n') ++lines;
    CHECK(lines == 3);
}

TEST_CASE("classify output round-trips and exact runs are byte-stable") {
    std::string args = "classify --curve '{\"weights\":[\"1/2\",\"1/2\"]}'";
    auto a = run(args);
    auto b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    auto j = json::parse(a.out);
    CHECK(j.at("classification").at("k_class") == "KPolystableNontrivialAut");
    CHECK(j.at("classification").at("aut_group") == "CStar");
    CHECK(j.at("gibbs").at("polystable") == true);
    CHECK(j.at("asymptotic").at("delta_a_reduced") == "2/1");
    // curve echo parses back
    CHECK(j.at("curve").at("weights")[0] == "1/2");
}

TEST_CASE("hypersimplex and semistable subcommands") {
    auto h = run("hypersimplex --n 3");
    CHECK(h.exit_code == 0);
    auto jh = json::parse(h.out);
    CHECK(jh.at("count") == 6);
    CHECK(jh.at("distortion_extremum") == "1/3");

    auto s = run("semistable --config '{\"points\":[\"0\",\"0\",\"1\",\"2\"]}' --group pgl2");
    CHECK(json::parse(s.out).at("semistable") == true);
    auto s2 = run("semistable --config '{\"points\":[\"0\",\"0\",\"0\",\"2\"]}' --group cstar");
    CHECK(json::parse(s2.out).at("semistable") == false);
}

TEST_CASE("selberg and arith-z subcommands") {
    auto r = run("selberg --w 0.5,0.5,0.5 --n 100");
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.out).contains("logZ"));

    auto a = run("arith-z --n 7 --model p1z");
    CHECK(a.exit_code == 0);

    auto bad = run("selberg --w 0.3,0.3,0.3 --n 2");
    CHECK(bad.exit_code == 3); // numeric-domain rejection
}

TEST_CASE("stochastic subcommands are byte-stable per seed") {
    std::string args = "sample --n 8 --beta -0.5 --w 0 --steps 5000 --burnin 1000 --seed 7";
    auto a = run(args);
    auto b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    auto j = json::parse(a.out);
    CHECK(j.at("observables").at("acceptance_rate").get<double>() > 0.0);
}

TEST_CASE("toric-ray and ding-ray emit CSV with slope trailers") {
    auto r = run("toric-ray --ray absval --gamma 3 --v 2 --t 4,6,8,10");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("t,E,D,F,Ding\n", 0) == 0);
    CHECK(r.out.find("# slope,F,") != std::string::npos);
    auto d = run("ding-ray --gamma 2 --t 5,10,15");
    CHECK(d.exit_code == 0);
    CHECK(d.out.find("# slope,Ding,") != std::string::npos);
}
