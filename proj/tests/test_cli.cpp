#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const std::string kCli = PMSD_CLI_PATH;
const fs::path kData = PMSD_DATA_DIR;

fs::path scratch() {
    const fs::path dir = fs::temp_directory_path() / "pmsd_cli_test";
    fs::create_directories(dir);
    return dir;
}

struct Outcome {
    int code;
    std::string out;
};

Outcome run(const std::string& args) {
    const fs::path log = scratch() / "stdout.txt";
    const std::string cmd = kCli + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(log);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WEXITSTATUS(status), ss.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::string sample = (kData / "sample_6x2.json").string();

}  // namespace

TEST(Cli, MbhgOnSample) {
    const auto r = run("solve --instance " + sample + " --algo mbhg --dump-schedule");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("best total tardiness: 65"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("total: 65"), std::string::npos) << r.out;
}

TEST(Cli, SolveIsReproducible) {
    const fs::path a = scratch() / "a.json", b = scratch() / "b.json";
    for (const auto& out : {a, b})
        ASSERT_EQ(run("--seed 5 solve --instance " + sample + " --algo hdcs --tmax 30 --tnip 10 --no-timing --out " +
                      out.string())
                      .code,
                  0);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_NE(slurp(a).find("\"best_value\": 65"), std::string::npos);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run("solve --instance " + sample + " --algo ga").code, 1);
    EXPECT_EQ(run("solve --instance /no/such/file.json").code, 1);
    EXPECT_EQ(run("").code, 1);
    EXPECT_EQ(run("solve --instance " + sample + " --rho 1.5").code, 1);
}

TEST(Cli, MalformedInstanceIsReported) {
    const fs::path bad = scratch() / "bad.json";
    std::ofstream(bad) << "{\"n\": 2, \"m\": 1, \"jobs\": [}";
    const auto r = run("solve --instance " + bad.string());
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("bad.json"), std::string::npos) << r.out;
}

TEST(Cli, GenerateExactExport) {
    const fs::path inst = scratch() / "gen.json", lp = scratch() / "gen.lp";
    ASSERT_EQ(run("--seed 3 generate --n 7 --m 2 --interval H2 --out " + inst.string()).code, 0);
    const std::string first = slurp(inst);
    ASSERT_EQ(run("--seed 3 generate --n 7 --m 2 --interval H2 --out " + inst.string()).code, 0);
    EXPECT_EQ(slurp(inst), first);

    const auto ex = run("exact --instance " + inst.string() + " --time-limit 30");
    EXPECT_EQ(ex.code, 0) << ex.out;
    EXPECT_NE(ex.out.find("proven optimal: yes"), std::string::npos) << ex.out;

    ASSERT_EQ(run("export-lp --instance " + inst.string() + " --out " + lp.string()).code, 0);
    const std::string text = slurp(lp);
    EXPECT_NE(text.find("Binaries"), std::string::npos);
    EXPECT_NE(text.find("End"), std::string::npos);
}

TEST(Cli, BenchAndReport) {
    const fs::path plan = scratch() / "plan.json";
    std::ofstream(plan) << R"({"combos": [[6, 2]], "intervals": ["H1"], "algorithms": ["hdcs", "mbhg"],
        "replicates": 2, "runs": 2, "params": {"tmax": 10, "tnip": 5}})";
    const fs::path o1 = scratch() / "bench1", o2 = scratch() / "bench2";
    fs::remove_all(o1);
    fs::remove_all(o2);
    const auto r1 = run("--seed 1 bench --plan " + plan.string() + " --out " + o1.string() + " --no-timing");
    ASSERT_EQ(r1.code, 0) << r1.out;
    ASSERT_EQ(run("--seed 1 bench --plan " + plan.string() + " --out " + o2.string() + " --no-timing --workers 2").code, 0);
    EXPECT_EQ(slurp(o1 / "results.csv"), slurp(o2 / "results.csv"));
    EXPECT_EQ(slurp(o1 / "runs.jsonl"), slurp(o2 / "runs.jsonl"));

    const auto rep = run("report --csv " + (o1 / "results.csv").string());
    EXPECT_EQ(rep.code, 0);
    EXPECT_NE(rep.out.find("H1,hdcs,"), std::string::npos) << rep.out;
    EXPECT_NE(rep.out.find("H1,mbhg,"), std::string::npos) << rep.out;
}
