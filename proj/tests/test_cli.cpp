#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kCli = ETTKIT_CLI_PATH;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("ettkit_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int& counter() {
        static int n = 0;
        return n;
    }
    fs::path operator/(const std::string& name) const { return path / name; }
};

int run(const std::string& args) {
    const std::string cmd = kCli + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out << content;
}

std::string synth_small(const TempDir& dir) {
    const fs::path out = dir / "synth";
    REQUIRE(run("synth --out " + out.string() +
                " --seed 3 --regular 150 --diffuse 8 --planted 5 --extreme-count 60") == 0);
    REQUIRE(fs::exists(out / "posts.jsonl"));
    REQUIRE(fs::exists(out / "ground_truth.csv"));
    REQUIRE(fs::exists(out / "manifest.json"));
    return (out / "posts.jsonl").string();
}

}  // namespace

TEST_CASE("synth is reproducible byte for byte") {
    TempDir dir;
    const fs::path a = dir / "a", b = dir / "b";
    REQUIRE(run("synth --out " + a.string() + " --seed 11") == 0);
    REQUIRE(run("synth --out " + b.string() + " --seed 11") == 0);
    CHECK(slurp(a / "posts.jsonl") == slurp(b / "posts.jsonl"));
    CHECK(slurp(a / "ground_truth.csv") == slurp(b / "ground_truth.csv"));
}

TEST_CASE("detect recovers the planted users end to end") {
    TempDir dir;
    const std::string posts = synth_small(dir);
    const fs::path out = dir / "detect";
    REQUIRE(run("detect --input " + posts + " --out " + out.string() +
                " --window-start 0 --window-end 3628800 --delta 1.5 --lambda 1") == 0);

    const std::string report = slurp(out / "report.csv");
    std::istringstream lines(report);
    std::string line;
    std::getline(lines, line);  // header
    int anomalous = 0;
    while (std::getline(lines, line)) {
        const bool flagged = line.size() > 2 && line.substr(line.size() - 2) == ",1";
        if (!flagged) continue;
        ++anomalous;
        CHECK(line.substr(0, 1) == "a");  // planted ids start with 'a'
    }
    CHECK(anomalous == 5);
    CHECK(fs::exists(out / "summary.txt"));
    CHECK(slurp(out / "summary.txt").find("method=EM") != std::string::npos);
}

TEST_CASE("identical manifests reproduce identical outputs") {
    TempDir dir;
    const std::string posts = synth_small(dir);
    const std::string args = " --input " + posts +
                             " --window-start 0 --window-end 3628800 --seed 42"
                             " --matrix-budget 100";  // force the randomized path
    const fs::path out1 = dir / "r1", out2 = dir / "r2";
    REQUIRE(run("detect" + args + " --out " + out1.string()) == 0);
    REQUIRE(run("detect" + args + " --out " + out2.string()) == 0);
    CHECK(slurp(out1 / "report.csv") == slurp(out2 / "report.csv"));
    CHECK(slurp(out1 / "summary.txt") == slurp(out2 / "summary.txt"));
    CHECK(slurp(out1 / "manifest.json") == slurp(out2 / "manifest.json"));
}

TEST_CASE("empty input is a success with a notice") {
    TempDir dir;
    spit(dir / "empty.jsonl", "");
    const fs::path out = dir / "out";
    CHECK(run("detect --input " + (dir / "empty.jsonl").string() + " --out " + out.string() +
              " --window-start 0 --window-end 10") == 0);
    CHECK(slurp(out / "report.csv") ==
          "user_id,tweets,distinct_words,narrowness,is_ett,is_anomalous\n");
    CHECK(slurp(out / "summary.txt").find("notice=no posts in period") != std::string::npos);
}

TEST_CASE("bad invocations exit non-zero") {
    TempDir dir;
    CHECK(run("frobnicate") != 0);
    CHECK(run("detect") != 0);  // missing required flags
    CHECK(run("detect --input /nonexistent.jsonl --out " + (dir / "x").string() +
              " --window-start 0 --window-end 10") != 0);
    CHECK(run("detect --input /nonexistent.jsonl --out " + (dir / "y").string() +
              " --window-start 10 --window-end 0") != 0);
    // Failed runs leave no partial artifacts behind.
    CHECK_FALSE(fs::exists(dir / "x" / "report.csv"));
    CHECK_FALSE(fs::exists(dir / "x" / "manifest.json"));
}

TEST_CASE("ett subcommand emits interval summaries") {
    TempDir dir;
    std::ostringstream jsonl;
    for (int i = 0; i < 12; ++i)
        jsonl << R"({"user_id":"busy","text":"w)" << i << R"(","timestamp":)" << i << "}\n";
    jsonl << R"({"user_id":"quiet","text":"hi","timestamp":1})" << "\n";
    spit(dir / "posts.jsonl", jsonl.str());

    const fs::path out = dir / "ett";
    REQUIRE(run("ett --input " + (dir / "posts.jsonl").string() + " --out " + out.string() +
                " --window-start 0 --window-end 12 --mai 6 --delta 0.5") == 0);
    const std::string csv = slurp(out / "ett.csv");
    CHECK(csv.find("user_id,tetti,letti,flags") == 0);
    CHECK(csv.find("busy,2,2,11") != std::string::npos);
    CHECK(csv.find("quiet,0,0,00") != std::string::npos);
}

TEST_CASE("group golden fixtures through the edges mode") {
    TempDir dir;
    const std::string labels3 =
        "user_id,label\nm1,anomalous\nm2,anomalous\nm3,anomalous\nu1,ett\nu2,ett\nu3,ett\n"
        "u4,ett\nu5,ett\nu6,ett\n";

    SUBCASE("pattern 1") {
        spit(dir / "edges.txt", "m1 m2\nm1 m3\nm2 m3\nu1 m1\nu1 m2\nu1 m3\n");
        spit(dir / "labels.csv", "user_id,label\nm1,anomalous\nm2,anomalous\nm3,anomalous\nu1,ett\n");
        const fs::path out = dir / "g1";
        REQUIRE(run("group --edges " + (dir / "edges.txt").string() + " --labels " +
                    (dir / "labels.csv").string() + " --out " + out.string()) == 0);
        CHECK(slurp(out / "group.csv") ==
              "period,coreness1,coreness2,cnr,dr\nedges,2,3,1,0.3333333333333333\n");
    }
    SUBCASE("pattern 2") {
        std::string edges = "m1 m2\nm1 m3\nm2 m3\n";
        for (int i = 1; i <= 6; ++i)
            for (const char* m : {"m1", "m2", "m3"})
                edges += "u" + std::to_string(i) + " " + m + "\n";
        spit(dir / "edges.txt", edges);
        spit(dir / "labels.csv", labels3);
        const fs::path out = dir / "g2";
        REQUIRE(run("group --edges " + (dir / "edges.txt").string() + " --labels " +
                    (dir / "labels.csv").string() + " --out " + out.string()) == 0);
        CHECK(slurp(out / "group.csv") == "period,coreness1,coreness2,cnr,dr\nedges,2,3,1,2\n");
    }
    SUBCASE("pattern 3") {
        std::string edges = "m1 m2\nm1 m3\nm2 m3\n";
        for (int i = 1; i <= 6; ++i)
            edges += "u" + std::to_string(i) + " u" + std::to_string(i % 6 + 1) + "\n";
        edges += "u1 m1\nu2 m1\nu3 m2\nu4 m2\nu5 m3\nu6 m3\n";
        spit(dir / "edges.txt", edges);
        spit(dir / "labels.csv", labels3);
        const fs::path out = dir / "g3";
        REQUIRE(run("group --edges " + (dir / "edges.txt").string() + " --labels " +
                    (dir / "labels.csv").string() + " --out " + out.string()) == 0);
        CHECK(slurp(out / "group.csv") ==
              "period,coreness1,coreness2,cnr,dr\nedges,2,3,0.3333333333333333,2\n");
    }
}

TEST_CASE("config file applies under the subcommand section, flags win") {
    TempDir dir;
    const std::string posts = synth_small(dir);
    spit(dir / "run.ini", "[detect]\ndelta=0.5\nlambda=0\n");
    const std::string common = " --input " + posts +
                               " --window-start 0 --window-end 3628800 --config " +
                               (dir / "run.ini").string();

    REQUIRE(run("detect" + common + " --out " + (dir / "c1").string()) == 0);
    std::string manifest = slurp(dir / "c1" / "manifest.json");
    CHECK(manifest.find("\"delta\": 0.5") != std::string::npos);
    CHECK(manifest.find("\"lambda\": 0.0") != std::string::npos);

    REQUIRE(run("detect" + common + " --delta 2.5 --out " + (dir / "c2").string()) == 0);
    manifest = slurp(dir / "c2" / "manifest.json");
    CHECK(manifest.find("\"delta\": 2.5") != std::string::npos);
    CHECK(manifest.find("\"lambda\": 0.0") != std::string::npos);
}

TEST_CASE("group pipeline mode emits one row per period") {
    TempDir dir;
    const std::string posts = synth_small(dir);
    const fs::path out = dir / "group";
    REQUIRE(run("group --input " + posts + " --out " + out.string() +
                " --window-start 0 --window-end 3628800 --periods 2") == 0);
    const std::string csv = slurp(out / "group.csv");
    CHECK(csv.find("period,coreness1,coreness2,cnr,dr\n") == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);  // header + 2 periods
    CHECK(csv.find("0-1814400,") != std::string::npos);
    CHECK(csv.find("1814400-3628800,") != std::string::npos);
}

TEST_CASE("graph subcommand exports per-pattern artifacts") {
    TempDir dir;
    const std::string posts = synth_small(dir);
    const fs::path out = dir / "graph";
    REQUIRE(run("graph --input " + posts + " --out " + out.string() +
                " --window-start 0 --window-end 3628800") == 0);
    for (const char* name :
         {"mention_edges.txt", "node_labels.csv", "pattern1_coreness.csv",
          "pattern1_ccdf.csv", "pattern2_coreness.csv", "pattern2_ccdf.csv",
          "pattern3_coreness.csv", "pattern3_ccdf.csv", "manifest.json"})
        CHECK(fs::exists(out / name));
    const std::string ccdf = slurp(out / "pattern1_ccdf.csv");
    CHECK(ccdf.find("k,fraction\n0,1\n") == 0);
}

TEST_CASE("report subcommand writes the table set") {
    TempDir dir;
    const std::string posts = synth_small(dir);
    const fs::path out = dir / "report";
    REQUIRE(run("report --input " + posts + " --out " + out.string() +
                " --window-start 0 --window-end 3628800 --periods 2") == 0);
    for (const char* name : {"summary.csv", "null_text.csv", "hashtag_stats.csv",
                             "narrowness_hist_p0.csv", "narrowness_hist_p1.csv",
                             "manifest.json"})
        CHECK(fs::exists(out / name));
    const std::string summary = slurp(out / "summary.csv");
    CHECK(summary.find("period,users,ett_pct_of_users,au_pct_of_ett\n") == 0);
    CHECK(std::count(summary.begin(), summary.end(), '\n') == 3);
}
