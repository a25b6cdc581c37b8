// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "coi/errors.hpp"
#include "coi/rng.hpp"
#include "coi/scaffold.hpp"

using namespace coi;

namespace {

const char* const kCoI3Output =
    "1 output and 2 input: many of the churches work together for projects across the town under the slogan of "
    "`` churches together in stevenage ''.  2 output and 3 input: The pronoun 'them' refers to the noun phrase 'many "
    "of the churches' because the sentence states that 'they' work together for projects across the town.  This "
    "coreference is justified by the knowledge that the churches are the ones that are working together. 3 output: "
    "False";

const char* const kSentence =
    "many of the churches work together for projects across the town under the slogan of `` churches together in "
    "stevenage ''.";

// Random hop text from words that can never form a marker.
std::string random_hop(Rng& rng) {
    static const std::vector<std::string> vocab{"task", "output", "input", "and", "1", "2", "3", "x:", "y.",
                                                "Task", "the", "of", "outputs", "é", ",", "-", "12"};
    std::string s;
    const auto n = 1 + rng.below(8);
    for (std::uint64_t i = 0; i < n; ++i) {
        if (i) s += ' ';
        s += vocab[rng.below(vocab.size())];
    }
    return s;
}

}  // namespace

TEST_CASE("render examples") {
    CHECK(render_target({"X"}) == "X");
    CHECK(render_target({"para", "False"}) == "Task 1 output and task 2 input: para Task 2 output: False");
    CHECK(render_target({"a", "b", "c"}) ==
          "Task 1 output and task 2 input: a Task 2 output and task 3 input: b Task 3 output: c");
    CHECK_THROWS_AS(render_target({}), ValidationError);
    CHECK_THROWS_AS(render_target({"ok", "has Task 1 output: inside"}), ValidationError);
}

TEST_CASE("marker grammar") {
    CHECK(find_hop_markers("Task 1 output and task 2 input: a").size() == 1);
    CHECK(find_hop_markers("1 output and 2 input: a 2 output: b").size() == 2);
    CHECK(find_hop_markers("TASK 3 OUTPUT. done").size() == 1);
    CHECK(find_hop_markers("3 output. done").empty());
    CHECK(find_hop_markers("x1 output: no boundary").empty());
    CHECK(find_hop_markers("task output: no number").empty());
    const auto m = find_hop_markers("pre Task 2 output: z");
    REQUIRE(m.size() == 1);
    CHECK(m[0].hop == 2);
    CHECK(m[0].begin == 4);
}

TEST_CASE("strict parse") {
    CHECK(parse_target("X", 1) == std::vector<std::string>{"X"});
    CHECK(parse_target("Task 1 output and task 2 input: para Task 2 output: False", 2) ==
          std::vector<std::string>{"para", "False"});
    CHECK_THROWS_AS(parse_target("no markers at all", 2), ParseError);
    CHECK_THROWS_AS(parse_target("Task 1 output and task 2 input: only one", 2), ParseError);
}

TEST_CASE("three-hop model output with short markers") {
    const auto spans = parse_target(kCoI3Output, 3);
    REQUIRE(spans.size() == 3);
    CHECK(spans[0] == kSentence);
    CHECK(spans[2] == "False");
}

TEST_CASE("tolerant parse") {
    const auto both = extract_hop_spans("1 output and 1 input: the sentence. 2 output: False", 2);
    REQUIRE(both[0]);
    CHECK(*both[0] == "the sentence.");
    CHECK(*both[1] == "False");

    const auto none = extract_hop_spans("plain text", 2);
    CHECK_FALSE(none[0]);
    CHECK_FALSE(none[1]);

    const auto partial = extract_hop_spans("noise Task 2 output: tail", 2);
    CHECK_FALSE(partial[0]);
    REQUIRE(partial[1]);
    CHECK(*partial[1] == "tail");

    const auto empty_hop = extract_hop_spans("Task 1 output and task 2 input:  Task 2 output: b", 2);
    CHECK_FALSE(empty_hop[0]);
    CHECK(*empty_hop[1] == "b");
}

TEST_CASE("render then parse is the identity") {
    Rng rng(2024);
    int failures = 0;
    for (int k = 1; k <= 5; ++k) {
        for (int n = 0; n < 200; ++n) {
            std::vector<std::string> hops;
            for (int i = 0; i < k; ++i) {
                auto h = random_hop(rng);
                while (contains_hop_marker(h)) h = random_hop(rng);
                hops.push_back(h);
            }
            if (parse_target(render_target(hops), k) != hops) ++failures;
        }
    }
    CHECK(failures == 0);
}
