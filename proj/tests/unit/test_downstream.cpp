// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "coi/downstream.hpp"
#include "coi/errors.hpp"
#include "coi/scaffold.hpp"
#include "support.hpp"

using namespace coi;

namespace {

const TrigramIdentifier& bundled() {
    static const TrigramIdentifier id = TrigramIdentifier::load_dir(testing::data_dir() / "data/langid");
    return id;
}

std::vector<std::string> sentences(std::string_view s) {
    std::vector<std::string> out;
    for (const auto& span : split_sentences(s)) out.emplace_back(s.substr(span.begin, span.end - span.begin));
    return out;
}

}  // namespace

TEST_CASE("marker split") {
    const auto both = split_by_marker(render_target({"The summary.", "Le résumé."}));
    CHECK(*both.src_span == "The summary.");
    CHECK(*both.tgt_span == "Le résumé.");
    const auto none = split_by_marker("plain text");
    CHECK_FALSE(none.src_span);
    CHECK_FALSE(none.tgt_span);
    const auto partial = split_by_marker("blah Task 2 output: Le résumé.");
    CHECK_FALSE(partial.src_span);
    CHECK(*partial.tgt_span == "Le résumé.");
}

TEST_CASE("sentence splitting") {
    CHECK(sentences("One. Two!  Three?") == std::vector<std::string>{"One.", "Two!", "Three?"});
    CHECK(sentences("Version 2.5 is out. Yes...") == std::vector<std::string>{"Version 2.5 is out.", "Yes..."});
    CHECK(sentences("line one\nline two") == std::vector<std::string>{"line one", "line two"});
    CHECK(sentences("").empty());
    CHECK(sentences("  \n ").empty());
}

TEST_CASE("language split") {
    const std::string en = "The city council approved a new budget for the schools. Parents welcomed the decision.";
    const std::string fr = "Le conseil municipal a approuvé un nouveau budget pour les écoles. Les parents ont salué la décision.";
    const auto mixed = split_by_language(en + " " + fr, "en", "fr", bundled());
    CHECK(*mixed.src_span == en);
    CHECK(*mixed.tgt_span == fr);

    const auto only_tgt = split_by_language(fr, "en", "fr", bundled());
    CHECK_FALSE(only_tgt.src_span);
    CHECK(*only_tgt.tgt_span == fr);

    const auto empty = split_by_language("", "en", "fr", bundled());
    CHECK_FALSE(empty.src_span);
    CHECK_FALSE(empty.tgt_span);
    CHECK_THROWS_AS(split_by_language("x", "en", "en", bundled()), ValidationError);
}

TEST_CASE("bilingual fixture spans") {
    std::size_t total = 0;
    std::size_t correct = 0;
    io::for_each_jsonl(testing::fixture("bilingual.jsonl"), [&](const Json& row, std::size_t) {
        ++total;
        const auto s = split_by_language(row["output"].get<std::string>(), row["src_lang"], row["tgt_lang"], bundled());
        correct += s.src_span == std::optional<std::string>(row["src_span"].get<std::string>()) &&
                   s.tgt_span == std::optional<std::string>(row["tgt_span"].get<std::string>());
    });
    CHECK(total == 50);
    MESSAGE("recovered " << correct << "/" << total);
    CHECK(static_cast<double>(correct) >= 0.95 * static_cast<double>(total));
}

TEST_CASE("downstream report") {
    const std::vector<DownstreamReference> refs{{"a", "src one", "tgt un", "en", "fr"},
                                                {"b", "src two", "tgt deux", "en", "fr"}};
    SUBCASE("empty outputs") {
        const auto r = evaluate_downstream({{"a", ""}, {"b", ""}}, refs, SplitMethod::Marker);
        CHECK(r.total == 2);
        CHECK(r.rouge_all == 0.0);
        CHECK(r.valid_src == 0);
        CHECK(r.valid_tgt == 0);
    }
    SUBCASE("perfect marker outputs") {
        const auto r = evaluate_downstream({{"a", render_target({"src one", "tgt un"})},
                                            {"b", render_target({"src two", "tgt deux"})}},
                                           refs, SplitMethod::Marker);
        CHECK(r.rouge_src == 100.0);
        CHECK(r.rouge_tgt == 100.0);
        CHECK(r.valid_src == r.total);
        CHECK(r.valid_tgt == r.total);
    }
    SUBCASE("missing reference is skipped") {
        const auto r = evaluate_downstream({{"a", "x"}, {"zzz", "y"}}, refs, SplitMethod::Marker);
        CHECK(r.total == 1);
        REQUIRE(r.warnings.size() == 1);
        CHECK(r.warnings[0].find("zzz") != std::string::npos);
    }
    SUBCASE("language id needs an identifier") {
        CHECK_THROWS_AS(evaluate_downstream({{"a", "x"}}, refs, SplitMethod::LanguageId), ValidationError);
    }
    const auto text = report_to_text(evaluate_downstream({{"a", "x"}}, refs, SplitMethod::Marker), "model-x");
    CHECK(text.find("model-x") != std::string::npos);
}
