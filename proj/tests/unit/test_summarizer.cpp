// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "coi/errors.hpp"
#include "coi/summarizer.hpp"
#include "support.hpp"

using namespace coi;

namespace {

SeedTask task(std::string instruction) {
    return SeedTask{"t1", "Question Generation", std::move(instruction), "en", "en", {{"i", "o"}}, 0};
}

std::string words(std::size_t n) {
    std::string s;
    for (std::size_t i = 0; i < n; ++i) s += (i ? " w" : "w") + std::to_string(i);
    return s;
}

}  // namespace

TEST_CASE("word count") {
    CHECK(word_count("") == 0);
    CHECK(word_count("Generate a title") == 3);
    CHECK(word_count("  two   words  ") == 2);
}

TEST_CASE("question generation demo") {
    const std::string original =
        "In this task, you're given passages that contain mentions of names of people, places, or things. Some of "
        "these mentions refer to the same person, place, or thing. Your job is to write questions that evaluate "
        "one's understanding of such references.";
    const std::string expected = "Generate a question given a paragraph that mentions people, places, or things";
    CHECK(testing::prompts().summarize.body().find(expected) != std::string::npos);

    auto mock = std::make_shared<MockProvider>();
    mock->add_rule({{"Instruction 6: " + original}, {}, "Modified instruction 6: " + expected + "\n\nInstruction 7:"});
    auto gw = testing::gateway_for(mock);
    const auto s = summarize_instruction(task(original), *gw, testing::prompts().summarize);
    CHECK(s.summary == expected);
    CHECK_FALSE(s.flagged);
    CHECK(s.summary_words == 12);
}

TEST_CASE("length contract") {
    const auto& prompt = testing::prompts().summarize;
    SUBCASE("ten words pass first time") {
        auto gw = testing::gateway_for(testing::constant_mock(words(10)));
        const auto s = summarize_instruction(task(words(50)), *gw, prompt);
        CHECK_FALSE(s.flagged);
        CHECK(s.summary_words == 10);
        CHECK(s.attempts == 1);
    }
    SUBCASE("over length then pass") {
        auto mock = std::make_shared<MockProvider>();
        mock->add_rule({{"Your previous modified instruction"}, {}, words(12)});
        mock->set_default(words(35));
        auto gw = testing::gateway_for(mock);
        const auto s = summarize_instruction(task(words(50)), *gw, prompt);
        CHECK_FALSE(s.flagged);
        CHECK(s.summary_words == 12);
        CHECK(s.attempts == 2);
        CHECK(mock->prompts()[1].find("has 35 words") != std::string::npos);
    }
    SUBCASE("always over length") {
        auto gw = testing::gateway_for(testing::constant_mock(words(45)));
        const auto s = summarize_instruction(task(words(50)), *gw, prompt);
        CHECK(s.flagged);
        CHECK(s.attempts == 3);
        CHECK(s.summary_words == 45);
    }
    SUBCASE("empty reply keeps the original") {
        auto gw = testing::gateway_for(testing::constant_mock("   "));
        const auto s = summarize_instruction(task("Keep me as I am"), *gw, prompt);
        CHECK(s.flagged);
        CHECK(s.summary == "Keep me as I am");
    }
    SUBCASE("thirty words is still within budget") {
        auto gw = testing::gateway_for(testing::constant_mock(words(30)));
        CHECK_FALSE(summarize_instruction(task(words(50)), *gw, prompt).flagged);
    }
}

TEST_CASE("gateway errors propagate") {
    auto mock = testing::constant_mock("x");
    mock->fail_next(10, FailureKind::Server);
    auto gw = testing::gateway_for(mock);
    CHECK_THROWS_AS(summarize_instruction(task("a b"), *gw, testing::prompts().summarize), TransportError);
}

TEST_CASE("word statistics") {
    const std::vector<SeedTask> before{task("one two three four")};
    std::vector<SummarizedInstruction> after{{"t1", "one two three four", "one two", 4, 2, false, 1}};
    const auto st = corpus_word_stats(before, after);
    CHECK(st.mean_before == 4.0);
    CHECK(st.mean_after == 2.0);
    CHECK_THROWS_AS(corpus_word_stats({}, {}), ValidationError);
    after[0].task_id = "other";
    CHECK_THROWS_AS(corpus_word_stats(before, after), ValidationError);
}

TEST_CASE("mini corpus summaries match the oracle means") {
    const auto tasks = load_seed_corpus(testing::fixture("mini/corpus.jsonl"));
    auto gw = testing::gateway_for(MockProvider::from_file(testing::fixture("mini/mock_table.json")));
    const auto sums = summarize_corpus(tasks, *gw, testing::prompts().summarize, {}, 4);
    REQUIRE(sums.size() == tasks.size());
    for (std::size_t i = 0; i < sums.size(); ++i) {
        CHECK(sums[i].task_id == tasks[i].task_id);
        CHECK(sums[i].summary_words <= 30);
        CHECK_FALSE(sums[i].flagged);
    }
    CHECK(sums.back().attempts == 2);
    const auto expected = Json::parse(io::read_file(testing::fixture("mini/expected_counts.json")));
    const auto st = corpus_word_stats(tasks, sums);
    CHECK(st.mean_before == doctest::Approx(expected["mean_words_before"].get<double>()).epsilon(1e-12));
    CHECK(st.mean_after == doctest::Approx(expected["mean_words_after"].get<double>()).epsilon(1e-12));
}

TEST_CASE("summary records round trip") {
    testing::TempDir dir;
    std::vector<SummarizedInstruction> items{{"a", "orig text", "short", 2, 1, false, 1},
                                             {"b", "other", "x y", 1, 2, true, 3}};
    write_summaries(items, dir / "s.jsonl");
    CHECK(load_summaries(dir / "s.jsonl") == items);
}
