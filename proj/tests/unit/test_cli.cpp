#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(MUMFORD_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string tempFile(const std::string& name, const std::string& content) {
    auto path = std::filesystem::temp_directory_path() / ("mumford_cli_" + name);
    std::ofstream(path) << content;
    return path.string();
}

const char* kBanana = R"({"vertices": [0, 1], "edges": [
  {"id": 0, "src": 0, "dst": 1}, {"id": 1, "src": 1, "dst": 0}, {"id": 2, "src": 0, "dst": 1}]})";

} // namespace

TEST_CASE("euler json") {
    Run r = run("euler --mode split --q 2 --g 1 --l 1 --s 2");
    CHECK(r.status == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["pass"] == true);
    CHECK(j["rows"][0]["det"] == "0.75+0j");
    Run bad = run("euler --mode split --q 2 --g 1 --l 1 --s 2 --tol 0");
    CHECK(bad.status == 3);
}

TEST_CASE("extend matrix") {
    std::string m = tempFile("banana.csv", "0,1,0\n1,0,1\n0,1,0\n");
    Run r = run("extend --e 2 --f 1 --matrix " + m);
    CHECK(r.status == 0);
    CHECK(r.out ==
          "0,1,0,0,0,0\n0,0,1,0,0,0\n0,0,0,1,0,0\n1,0,0,0,1,0\n0,0,0,0,0,1\n0,0,1,0,0,0\n");
    Run u = run("extend --e 1 --f 1 --matrix " + m);
    CHECK(u.status == 0);
    CHECK(u.out == "0,1,0\n1,0,1\n0,1,0\n");
}

TEST_CASE("sft counts") {
    std::string g = tempFile("banana.json", kBanana);
    Run r = run("sft --graph " + g + " --nmax 2 --alphabet paths");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("n,theta,rank_F,theta_diff_plus_one,rank_Gr,kernel_delta\n", 0) == 0);
    CHECK(r.out.find("\n0,3,") != std::string::npos);
    CHECK(r.out.find("\n1,4,") != std::string::npos);
    CHECK(r.out.find("\n2,6,") != std::string::npos);
}

TEST_CASE("ck and measure") {
    std::string g = tempFile("banana_ck.json", kBanana);
    Run r = run("ck --graph " + g + " --N 3 --alphabet paths");
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.is_object());
    Run m = run("measure --p 2 --radius 3 --word 1 0 2");
    CHECK(m.status == 0);
    CHECK(m.out.find("1/16") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run("bogus").status == 64);
    CHECK(run("euler --mode nope --q 2 --g 1 --s 2").status != 0);
    CHECK(run("sft --graph /nonexistent/graph.json").status == 2);
    std::string broken = tempFile("broken.json", R"({"vertices": [0], "edges": [{"id": 0, "src": 0, "dst": 5}]})");
    CHECK(run("sft --graph " + broken).status == 2);
}

TEST_CASE("output is deterministic") {
    std::string g = tempFile("banana_det.json", kBanana);
    for (const std::string& args : {std::string("tree --p 3 --radius 2"), "sft --graph " + g + " --nmax 3",
                                    std::string("euler --mode split --q 3 --g 2 --l 1 --s-grid 0.5,1,2")}) {
        Run a = run(args), b = run(args);
        CHECK(a.status == 0);
        CHECK(a.out == b.out);
        CHECK_FALSE(a.out.empty());
    }
}
