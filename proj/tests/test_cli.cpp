#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " \"" SMFAIR_CLI "\" " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() /
              ("smfair_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
        std::ofstream(dir / "ex5.soc") << "5\n1: 2,4,5,1,3\n2: 3,2,4,1,5\n3: 1,5,4,3,2\n4: 4,2,3,1,5\n5: 2,3,5,1,4\n"
                                          "--\n1: 4,2,1,5,3\n2: 2,4,1,5,3\n3: 4,2,1,3,5\n4: 2,1,4,5,3\n5: 1,4,2,3,5\n";
    }
    void TearDown() override { fs::remove_all(dir); }
    std::string path(const char* name) const { return (dir / name).string(); }
    fs::path dir;
};

}  // namespace

TEST_F(Cli, SolveBothSidesAndAuto) {
    auto r = run("solve --in " + path("ex5.soc") + " --side men");
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["matching"], nlohmann::json({2, 3, 1, 4, 5}));
    EXPECT_EQ(j["s_m"], 7);
    EXPECT_EQ(j["s_w"], 18);

    r = run("solve --in " + path("ex5.soc") + " --side women");
    j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["matching"], nlohmann::json({4, 2, 5, 3, 1}));
    EXPECT_EQ(j["cost"], 1);

    r = run("solve --in " + path("ex5.soc") + " --side auto --phi-m 0.5 --phi-w 0.7");
    EXPECT_EQ(nlohmann::json::parse(r.out)["side_used"], "men");
}

TEST_F(Cli, ExitCodes) {
    std::ofstream(dir / "bad.json") << "{\"n\": 2, \"men_prefs\": [[1, 1]]}";
    EXPECT_EQ(run("solve --in " + path("bad.json")).code, 2);
    EXPECT_EQ(run("solve --in " + path("missing.json")).code, 2);
    EXPECT_EQ(run("solve --bogus").code, 2);
    EXPECT_EQ(run("generate --n 5 --phi-m 2").code, 2);

    std::ofstream(dir / "one.json") << "{\"n\": 1, \"men_prefs\": [[1]], \"women_prefs\": [[1]]}";
    EXPECT_EQ(run("solve --in " + path("one.json") + " --side auto").code, 3);

    EXPECT_EQ(run("generate --n 80 --phi-m 1 --phi-w 1 --seed 3 --out-dir " + path("big")).code, 0);
    EXPECT_EQ(run("lattice --in " + path("big/instance_1.json") + " --max-matchings 2 --out " + path("l.json")).code, 4);
    EXPECT_EQ(nlohmann::json::parse(slurp(dir / "l.json"))["stats"]["censored"], true);
    EXPECT_EQ(run("lattice --in " + path("big/instance_1.json") + " --out " + path("l.json"),
                  "SMFAIR_MAX_MATCHINGS=2")
                  .code,
              4);
    EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, GenerateIsDeterministicAndRoundTrips) {
    ASSERT_EQ(run("generate --n 150 --phi-m 0.5 --phi-w 0.5 --count 2 --seed 7 --out-dir " + path("a")).code, 0);
    ASSERT_EQ(run("generate --n 150 --phi-m 0.5 --phi-w 0.5 --count 2 --seed 7 --out-dir " + path("b")).code, 0);
    const auto a1 = slurp(dir / "a/instance_1.json");
    EXPECT_EQ(a1, slurp(dir / "b/instance_1.json"));
    EXPECT_NE(a1, slurp(dir / "a/instance_2.json"));

    ASSERT_EQ(run("generate --n 5 --phi-m 0 --phi-w 0 --seed 1 --format soc --out-dir " + path("c")).code, 0);
    const auto soc = slurp(dir / "c/instance_1.soc");
    EXPECT_NE(soc.find("1: 1,2,3,4,5"), std::string::npos);
    EXPECT_NE(soc.find("5: 1,2,3,4,5"), std::string::npos);
}

TEST_F(Cli, LatticeExport) {
    auto r = run("lattice --in " + path("ex5.soc") + " --dot " + path("ex5.dot"));
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["stats"]["size"], 6);
    EXPECT_EQ(j["stats"]["r"], 3);
    EXPECT_EQ(j["stats"]["downset_check"], true);
    EXPECT_EQ(j["matchings"].size(), 6u);
    EXPECT_EQ(slurp(dir / "ex5.dot").rfind("digraph", 0), 0u);

    ASSERT_EQ(run("generate --n 5 --phi-m 0 --phi-w 0 --out-dir " + path("id")).code, 0);
    const auto id = nlohmann::json::parse(run("lattice --in " + path("id/instance_1.json")).out);
    EXPECT_EQ(id["stats"]["size"], 1);
    EXPECT_EQ(id["stats"]["r"], 0);
}

TEST_F(Cli, FairMethods) {
    for (const char* method : {"exhaustive", "ibils", "da-star"}) {
        const auto r = run("fair --in " + path("ex5.soc") + " --method " + method);
        ASSERT_EQ(r.code, 0) << method;
        EXPECT_EQ(nlohmann::json::parse(r.out)["cost"], 1) << method;
    }
    EXPECT_EQ(nlohmann::json::parse(run("fair --in " + path("ex5.soc")).out)["optimal"], true);
}

TEST_F(Cli, ExperimentDeterministicAcrossWorkers) {
    std::ofstream(dir / "cfg.json")
        << R"({"n_values":[20],"phi_grid":[[0.5,0.5],[0.3,0.7]],"instances_per_cell":10,"master_seed":4,
              "measurements":["LatticeSize","SexEqualLocation","DaCosts"]})";
    ASSERT_EQ(run("experiment --quiet --config " + path("cfg.json") + " --out " + path("w1") + " --workers 1").code, 0);
    ASSERT_EQ(run("experiment --quiet --plots --config " + path("cfg.json") + " --out " + path("w8") + " --workers 8")
                  .code,
              0);
    EXPECT_EQ(slurp(dir / "w1/records.csv"), slurp(dir / "w8/records.csv"));
    EXPECT_EQ(slurp(dir / "w1/summary.csv"), slurp(dir / "w8/summary.csv"));
    EXPECT_TRUE(fs::exists(dir / "w8/plots/lattice_size_disparity.svg"));

    std::ofstream(dir / "empty.json") << R"({"n_values":[20],"phi_grid":[],"measurements":["LatticeSize"]})";
    EXPECT_EQ(run("experiment --config " + path("empty.json") + " --out " + path("e")).code, 2);
    EXPECT_FALSE(fs::exists(dir / "e"));
}
