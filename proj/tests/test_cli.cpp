// Runs the built seqenrich binary as a subprocess.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <nlohmann/json.hpp>
#include <set>
#include <string>

#include "doctest.h"
#include "seqenrich/digest.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = SEQENRICH_CLI;
const std::string kFixtures = SEQENRICH_FIXTURES;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// A scratch directory per test case, used as the working directory.
struct Sandbox {
    fs::path dir;

    explicit Sandbox(const std::string& name) : dir(fs::current_path() / "cli_scratch" / name) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }

    // Exit status of `seqenrich <args>`; stderr lands in dir/stderr.txt.
    int run(const std::string& args) const {
        const std::string cmd = "cd '" + dir.string() + "' && '" + kCli + "' " + args + " > stdout.txt 2> stderr.txt";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string err() const { return slurp(dir / "stderr.txt"); }
    std::string file(const std::string& rel) const { return slurp(dir / rel); }

    std::set<std::string> entries() const {
        std::set<std::string> out;
        for (const auto& e : fs::directory_iterator(dir)) out.insert(e.path().filename().string());
        return out;
    }
};

std::string fx(const std::string& name) { return "'" + kFixtures + "/" + name + "'"; }

}  // namespace

TEST_CASE("usage errors exit 2") {
    Sandbox s("usage");
    CHECK(s.run("") == 2);
    CHECK(s.run("frobnicate --out x") == 2);
    CHECK(s.run("synth") == 2);
    CHECK(s.run("synth --out x --set bogus.key=1") == 2);
    CHECK(s.err().find("ConfigError") != std::string::npos);
    CHECK(s.run("synth --out x --seed notanumber") == 2);
    CHECK(s.run("build --out x") == 2);
}

TEST_CASE("build on an invalid record") {
    Sandbox s("invalid");
    CHECK(s.run("build --cohort " + fx("invalid_record.json") + " --out out") == 1);
    const auto err = s.err();
    CHECK(err.find("S003") != std::string::npos);
    CHECK(err.find("cognitive[0].earned") != std::string::npos);
    auto j = nlohmann::json::parse(err.substr(0, err.find('\n')));
    CHECK(j["error"] == "ValidationError");
}

TEST_CASE("missing input file is a data error") {
    Sandbox s("missing_input");
    CHECK(s.run("validate --cohort does_not_exist.json --out out") == 1);
}

TEST_CASE("eval on fixtures") {
    Sandbox s("eval");
    REQUIRE(s.run("eval --predictions " + fx("predictions.jsonl") + " --references " + fx("references.jsonl") +
                  " --out out") == 0);
    auto j = nlohmann::json::parse(s.file("out/eval.json"));
    CHECK(j["accuracy"].get<double>() == doctest::Approx(0.75));
    CHECK(j["correct"] == 3);
}

TEST_CASE("tabular build") {
    Sandbox s("tabular");
    REQUIRE(s.run("build --scores " + fx("scores.csv") + " --responses " + fx("responses.csv") + " --background " +
                  fx("background.csv") + " --out out") == 0);
    const auto data = s.file("out/dataset.jsonl");
    std::size_t lines = 0;
    for (char c : data) lines += c == '\n';
    CHECK(lines == 2);
    auto first = nlohmann::json::parse(data.substr(0, data.find('\n')));
    for (auto key : {"id", "student_id", "input", "output", "label", "provenance", "split"}) CHECK(first.contains(key));
}

TEST_CASE("matrix with the modality by horizon axes") {
    Sandbox s("matrix");
    REQUIRE(s.run("matrix --students 48 --modality-sets 'NC;C;B;NC+C;NC+C+B' --horizons '2;3;4' --n-seeds 1 --out out") ==
            0);
    const auto csv = s.file("out/report.csv");
    std::size_t lines = 0;
    for (char c : csv) lines += c == '\n';
    CHECK(lines == 16);
}

TEST_CASE("outputs stay under --out and are hashed") {
    Sandbox s("confined");
    REQUIRE(s.run("demo --seed 2 --out nested/run") == 0);
    CHECK(s.entries() == std::set<std::string>{"nested", "stderr.txt", "stdout.txt"});
    auto manifest = nlohmann::json::parse(s.file("nested/run/manifest.json"));
    CHECK(manifest["seed"] == 2);
    std::set<std::string> listed;
    for (const auto& o : manifest["outputs"]) {
        const std::string rel = o["path"];
        listed.insert(rel);
        CHECK(seqenrich::sha256_hex(s.file("nested/run/" + rel)) == o["sha256"].get<std::string>());
    }
    for (const auto& e : fs::recursive_directory_iterator(s.dir / "nested/run")) {
        if (!e.is_regular_file()) continue;
        const auto rel = fs::relative(e.path(), s.dir / "nested/run").generic_string();
        if (rel != "manifest.json") CHECK(listed.count(rel) == 1);
    }
}

TEST_CASE("config file, then flags") {
    Sandbox s("precedence");
    REQUIRE(s.run("synth --config " + fx("small.conf") + " --seed 9 --set synth.trend=0.25 --out out") == 0);
    const auto resolved = s.file("out/resolved_config.txt");
    CHECK(resolved.find("seed = 9\n") != std::string::npos);
    CHECK(resolved.find("synth.n_students = 8\n") != std::string::npos);
    CHECK(resolved.find("synth.trend = 0.25\n") != std::string::npos);
    auto manifest = nlohmann::json::parse(s.file("out/manifest.json"));
    REQUIRE(manifest["inputs"].size() == 1);
    CHECK(manifest["inputs"][0]["role"] == "config");
}

TEST_CASE("rerun from the resolved config") {
    Sandbox s("rerun");
    REQUIRE(s.run("synth --seed 4 --students 12 --labels 3,3,3,3 --out a") == 0);
    REQUIRE(s.run("synth --config a/resolved_config.txt --out b") == 0);
    CHECK(s.file("a/cohort.json") == s.file("b/cohort.json"));
}

TEST_CASE("split and augment chain") {
    Sandbox s("chain");
    REQUIRE(s.run("synth --seed 1 --out c") == 0);
    REQUIRE(s.run("build --cohort c/cohort.json --out b") == 0);
    REQUIRE(s.run("augment --dataset b/dataset.jsonl --out a") == 0);
    REQUIRE(s.run("split --dataset a/augmented.jsonl --out s") == 0);
    std::size_t train = 0, test = 0;
    for (char c : s.file("s/train.jsonl")) train += c == '\n';
    for (char c : s.file("s/test.jsonl")) test += c == '\n';
    CHECK(train == 101);
    CHECK(test == 43);
}
