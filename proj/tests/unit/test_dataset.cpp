// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <set>

#include "coi/dataset.hpp"
#include "coi/errors.hpp"
#include "coi/io.hpp"
#include "coi/scaffold.hpp"
#include "support.hpp"

using namespace coi;

namespace {

CoiExample ex(const std::string& id, int k, std::vector<std::string> path) {
    CoiExample e;
    e.example_id = id;
    e.instruction = "do it";
    e.input = "in";
    std::vector<std::string> hops;
    for (int i = 0; i < k; ++i) hops.push_back("h" + std::to_string(i));
    e.target = render_target(hops);
    e.chain_length = k;
    e.category_path = std::move(path);
    return e;
}

Dataset many(std::size_t n, int k, const std::vector<std::string>& path, const std::string& prefix) {
    Dataset d;
    for (std::size_t i = 0; i < n; ++i) d.push_back(ex(prefix + std::to_string(i), k, path));
    return d;
}

std::size_t count_test(const Dataset& d) {
    return static_cast<std::size_t>(std::count_if(d.begin(), d.end(), [](const CoiExample& e) { return e.split == Split::Test; }));
}

}  // namespace

TEST_CASE("example from chain") {
    ComposedChain c;
    c.hops = {{"a", "Do a"}, {"b", "Do b"}};
    c.categories = {"A", "B"};
    c.hop_outputs = {"x", "y"};
    c.input = "in";
    c.joined_instruction = "Do a and then Do b";
    c.instance_index = 4;
    auto e = example_from_chain(c);
    CHECK(e.example_id == "coi2:a>b#4");
    CHECK(e.target == "Task 1 output and task 2 input: x Task 2 output: y");
    CHECK(e.category_path == std::vector<std::string>{"A", "B"});
    c.variant = Variant::Concise;
    CHECK(example_from_chain(c).example_id == "coi2:a>b#4+concise");
    CHECK(example_from_chain(c).variant == "concise");
}

TEST_CASE("single instruction examples") {
    SeedTask t{"t", "C", "Long text", "en", "en", {{"i0", "o0"}, {"i1", "o1"}, {"i2", "o2"}}, 0};
    const auto d = single_instruction_examples({SummarizedTask{t, "Short"}}, 2, 3);
    REQUIRE(d.size() == 2);
    CHECK(d[0].instruction == "Short");
    CHECK(d[0].chain_length == 1);
    CHECK(d[0].example_id.rfind("coi1:t#", 0) == 0);
    CHECK(d[0].target == "o" + d[0].input.substr(1));
}

TEST_CASE("per category cap") {
    const auto five = many(5, 2, {"A", "B"}, "x");
    const auto capped = limit_per_category(five, 3, 1);
    CHECK(capped.size() == 3);
    CHECK(capped == limit_per_category(five, 3, 1));
    CHECK(limit_per_category(five, 10, 1) == five);
    CHECK_THROWS_AS(limit_per_category(five, 0, 1), ValidationError);
    // kept examples stay in original order
    std::vector<std::string> ids;
    for (const auto& e : capped) ids.push_back(e.example_id);
    CHECK(std::is_sorted(ids.begin(), ids.end()));
}

TEST_CASE("train test split") {
    Dataset d = many(40, 2, {"A", "B"}, "p");
    auto more = many(35, 2, {"B", "C"}, "q");
    auto rest = many(25, 2, {"C", "A"}, "r");
    d.insert(d.end(), more.begin(), more.end());
    d.insert(d.end(), rest.begin(), rest.end());
    REQUIRE(d.size() == 100);

    CHECK(count_test(split_train_test(d, 0.0, 7)) == 0);
    CHECK(count_test(split_train_test(d, 1.0, 7)) == 100);
    CHECK_THROWS_AS(split_train_test(d, 1.5, 7), ValidationError);

    const auto s = split_train_test(d, 0.2, 7);
    CHECK(count_test(s) == 20);
    CHECK(s == split_train_test(d, 0.2, 7));
    // stratified: each path gets its share
    std::map<std::string, std::size_t> per_path;
    for (const auto& e : s) per_path[e.category_path[0]] += e.split == Split::Test;
    CHECK(per_path["A"] == 8);
    CHECK(per_path["B"] == 7);
    CHECK(per_path["C"] == 5);
    // ids are preserved, so train and test are disjoint by construction
    std::set<std::string> ids;
    for (const auto& e : s) ids.insert(e.example_id);
    CHECK(ids.size() == 100);
}

TEST_CASE("split policy by length") {
    Dataset d = many(10, 1, {"A"}, "a");
    auto two = many(10, 2, {"A", "B"}, "b");
    auto four = many(3, 4, {"A", "B", "C", "D"}, "d");
    d.insert(d.end(), two.begin(), two.end());
    d.insert(d.end(), four.begin(), four.end());
    const auto s = assign_splits(d, SplitPolicy{}, 1);
    for (const auto& e : s) {
        if (e.chain_length == 1) CHECK(e.split == Split::Train);
        if (e.chain_length == 4) CHECK(e.split == Split::Test);
    }
    CHECK(count_test(s) == 2 + 3);
}

TEST_CASE("mixtures") {
    const auto one = many(3, 1, {"A"}, "one");
    const auto two = many(2, 2, {"A", "B"}, "two");
    const auto mix = build_mixture({{"coi1", &one, {}, std::nullopt}, {"coi2", &two, {}, std::nullopt}});
    CHECK(mix.size() == 5);
    CHECK(mix.front().source == std::optional<std::string>("coi1"));
    CHECK(build_mixture({}).empty());
    CHECK_THROWS_AS(build_mixture({{"x", &one, {}, std::nullopt}, {"y", &one, {}, std::nullopt}}), ValidationError);
    CHECK(build_mixture({{"x", &two, {1}, std::nullopt}}).empty());
}

TEST_CASE("report") {
    const auto empty = compute_report({});
    CHECK(empty.total == 0);
    CHECK(empty.counts_by_length.empty());

    const auto d = load_dataset(testing::fixture("stats/dataset.jsonl"));
    const auto expected = Json::parse(io::read_file(testing::fixture("stats/expected_counts.json")));
    const auto r = compute_report(d);
    CHECK(r.total == expected["total"].get<std::size_t>());
    for (const auto& [k, c] : expected["counts"].items()) {
        const int len = std::stoi(k);
        CHECK(r.counts_by_length.at(len).train == c["train"].get<std::size_t>());
        CHECK(r.counts_by_length.at(len).test == c["test"].get<std::size_t>());
        CHECK(r.unique_category_tuples.at(len) == expected["unique_category_tuples"][k].get<std::size_t>());
    }
    CHECK(report_to_text(r).find("all") != std::string::npos);
}

TEST_CASE("dataset io") {
    testing::TempDir dir;
    auto d = many(3, 3, {"A", "B", "C"}, "z");
    d[1].source = "coi123";
    d[2].split = Split::Test;
    write_dataset(d, dir / "d.jsonl");
    CHECK(load_dataset(dir / "d.jsonl") == d);

    io::write_file(dir / "bad.jsonl", serialize_dataset({d[0]}) +
                                          R"({"example_id":"q","instruction":"i","input":"x","target":"no markers","chain_length":2,"category_path":["A","B"],"split":"train","variant":"standard"})"
                                          "\n");
    try {
        load_dataset(dir / "bad.jsonl");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    io::write_file(dir / "dup.jsonl", serialize_dataset({d[0], d[0]}));
    CHECK_THROWS_AS(load_dataset(dir / "dup.jsonl"), ParseError);
}
