// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <sstream>

#include "coi/cli.hpp"
#include "coi/dataset.hpp"
#include "coi/errors.hpp"
#include "coi/io.hpp"
#include "support.hpp"

using namespace coi;
using coi::testing::TempDir;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return Result{code, out.str(), err.str()};
}

std::string mini_conf() { return testing::fixture("mini/pipeline.conf").string(); }

Result pipeline_step(const std::string& cmd, const std::filesystem::path& dir) {
    return run({cmd, "--config", mini_conf(), "--output-dir", dir.string()});
}

}  // namespace

TEST_CASE("help, version and bad flags") {
    CHECK(run({"--help"}).code == 0);
    const auto v = run({"--version"});
    CHECK(v.code == 0);
    CHECK(v.out.find(COI_VERSION) != std::string::npos);
    CHECK(run({"stats", "--no-such-flag"}).code == 1);
    CHECK(run({}).code == 1);
}

TEST_CASE("config parsing") {
    TempDir dir;
    io::write_file(dir / "c.conf", "# comment\nseed = 9\nseed_corpus = corpus.jsonl\nvariants = concise, irrelevant\n");
    cli::PipelineConfig cfg;
    cfg.load_file(dir / "c.conf");
    CHECK(cfg.seed == 9);
    CHECK(cfg.seed_corpus == dir / "corpus.jsonl");
    CHECK(cfg.variants == std::vector<std::string>{"concise", "irrelevant"});
    CHECK_THROWS_AS(cfg.set("no_such_key", "1", {}), ConfigError);
    CHECK_THROWS_AS(cfg.set("seed", "abc", {}), ConfigError);
    CHECK_THROWS_AS(cfg.set("variants", "fancy", {}), ConfigError);

    // paths do not enter the canonical form
    cli::PipelineConfig other = cfg;
    other.output_dir = "/elsewhere";
    other.seed_corpus = "/x.jsonl";
    CHECK(other.canonical() == cfg.canonical());
    other.seed = 10;
    CHECK(other.canonical() != cfg.canonical());
}

TEST_CASE("stats on the shipped fixture") {
    const auto r = run({"stats", "--dataset", testing::fixture("stats/dataset.jsonl").string()});
    CHECK(r.code == 0);
    const auto expected = Json::parse(io::read_file(testing::fixture("stats/expected_counts.json")));
    CHECK(r.out.find("all") != std::string::npos);
    const std::string all_row = "all";
    std::istringstream lines(r.out);
    std::string line;
    std::size_t rows = 0;
    while (std::getline(lines, line)) {
        std::istringstream cols(line);
        std::string k;
        std::size_t train = 0, test = 0;
        cols >> k >> train >> test;
        if (!expected["counts"].contains(k)) continue;
        ++rows;
        CHECK(train == expected["counts"][k]["train"].get<std::size_t>());
        CHECK(test == expected["counts"][k]["test"].get<std::size_t>());
    }
    CHECK(rows == expected["counts"].size());
}

TEST_CASE("missing inputs") {
    TempDir dir;
    const auto r = run({"compose", "--output-dir", dir.path().string(), "--provider", "mock", "--mock-table",
                        testing::fixture("mini/mock_table.json").string(), "--rules", "/nonexistent/rules.txt"});
    CHECK(r.code == 1);
    const auto missing = run({"stats", "--dataset", "/nonexistent/ds.jsonl"});
    CHECK(missing.code == 1);
    CHECK(missing.err.find("/nonexistent/ds.jsonl") != std::string::npos);
}

TEST_CASE("compose names a missing rules file") {
    TempDir dir;
    REQUIRE(pipeline_step("ingest", dir.path()).code == 0);
    REQUIRE(pipeline_step("summarize", dir.path()).code == 0);
    const auto r = run({"compose", "--config", mini_conf(), "--output-dir", dir.path().string(), "--rules",
                        "/nonexistent/rules.txt"});
    CHECK(r.code == 1);
    CHECK(r.err.find("/nonexistent/rules.txt") != std::string::npos);
}

TEST_CASE("remote provider without a key fails before any request") {
    TempDir dir;
#ifndef _WIN32
    unsetenv("COI_API_KEY");
#endif
    io::write_file(dir / "corpus.jsonl", io::read_file(testing::fixture("mini/corpus.jsonl")));
    REQUIRE(run({"ingest", "--corpus", (dir / "corpus.jsonl").string(), "--output-dir", dir.path().string()}).code == 0);
    const auto r = run({"summarize", "--provider", "remote", "--output-dir", dir.path().string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("COI_API_KEY") != std::string::npos);
}

TEST_CASE("pipeline artifacts and evaluation commands") {
    TempDir dir;
    for (const char* cmd : {"ingest", "summarize", "compose", "extend", "build", "stats"}) {
        const auto r = pipeline_step(cmd, dir.path());
        INFO(cmd << ": " << r.err);
        REQUIRE(r.code == 0);
    }
    for (const char* f : {"corpus.jsonl", "summaries.jsonl", "chains_2.jsonl", "chains_3.jsonl", "chains_4.jsonl",
                          "dataset.jsonl", "dataset_concise.jsonl", "dataset_irrelevant.jsonl", "mixture_coi12.jsonl",
                          "report.json", "manifest.json"}) {
        CHECK_MESSAGE(std::filesystem::exists(dir / f), f);
    }
    const auto manifest = Json::parse(io::read_file(dir / "manifest.json"));
    CHECK(manifest["runs"].contains("build"));
    CHECK(manifest["files"].contains("dataset.jsonl"));
    CHECK(manifest["files"]["dataset.jsonl"] == io::sha256_file(dir / "dataset.jsonl"));

    // gold targets as predictions score 100 in every mode that needs no model
    const auto ds = load_dataset(dir / "dataset.jsonl");
    std::string preds;
    for (const auto& e : ds) preds += Json{{"example_id", e.example_id}, {"output", e.target}}.dump() + "\n";
    io::write_file(dir / "preds.jsonl", preds);
    for (const char* mode : {"whole", "subtask-marker"}) {
        const auto r = run({"eval", "--dataset", (dir / "dataset.jsonl").string(), "--predictions",
                            (dir / "preds.jsonl").string(), "--mode", mode, "--output-dir", (dir / "eval").string()});
        INFO(r.err);
        REQUIRE(r.code == 0);
        const auto report = Json::parse(io::read_file(dir / "eval" / (std::string("eval_") + mode + ".json")));
        CHECK(report["tokenizer"] == "coi-rouge-tok-v1");
    }

    const auto judge = run({"judge", "--cases", testing::fixture("judge/cases.jsonl").string(), "--provider", "mock",
                            "--mock-table", testing::fixture("judge/judge_table.json").string(), "--judge-seed", "3",
                            "--output-dir", (dir / "judge").string()});
    CHECK(judge.code == 0);
    CHECK(judge.out.find("A: 55.00%") != std::string::npos);
}

TEST_CASE("downstream command") {
    TempDir dir;
    std::string preds, refs;
    io::for_each_jsonl(testing::fixture("bilingual.jsonl"), [&](const Json& row, std::size_t line) {
        const std::string id = "b" + std::to_string(line);
        preds += Json{{"example_id", id}, {"output", row["output"]}}.dump() + "\n";
        refs += Json{{"example_id", id}, {"src_ref", row["src_span"]}, {"tgt_ref", row["tgt_span"]},
                     {"src_lang", row["src_lang"]}, {"tgt_lang", row["tgt_lang"]}}.dump() + "\n";
    });
    io::write_file(dir / "p.jsonl", preds);
    io::write_file(dir / "r.jsonl", refs);
    const auto r = run({"downstream", "--predictions", (dir / "p.jsonl").string(), "--references",
                        (dir / "r.jsonl").string(), "--method", "language_id", "--label", "baseline", "--output-dir",
                        (dir / "out").string()});
    INFO(r.err);
    CHECK(r.code == 0);
    const auto report = Json::parse(io::read_file(dir / "out/downstream_language_id.json"));
    CHECK(report["total"] == 50);
    CHECK(report["valid_src"].get<int>() >= 48);
}
