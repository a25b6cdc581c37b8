// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coi/composer.hpp"
#include "coi/io.hpp"
#include "coi/llm_gateway.hpp"
#include "coi/prompt.hpp"

namespace coi {

/// Changing tokenize() in any way must bump this; reports carry it in their header.
inline constexpr std::string_view kTokenizerVersion = "coi-rouge-tok-v1";

/// Lowercases ASCII letters, makes every ASCII punctuation character its own
/// token and splits the rest on whitespace. Other bytes stay inside words.
std::vector<std::string> tokenize(std::string_view text);

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b);

struct RougeScore {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

RougeScore rouge_from_tokens(const std::vector<std::string>& candidate, const std::vector<std::string>& reference);

/// ROUGE-L over tokenize(); an empty side gives an all-zero score.
RougeScore rouge_l(std::string_view candidate, std::string_view reference);

inline RougeScore score_whole(std::string_view output, std::string_view gold_target) {
    return rouge_l(output, gold_target);
}

/// Tolerant marker parsing of a model output into k hop spans.
std::vector<std::optional<std::string>> extract_subtask_spans_marker(std::string_view output, int k);

/// Asks the model which part of `output` answers `sub_instruction`. With an
/// input the full separation prompt is used, without one the plain prompt.
/// The reply counts only if it occurs verbatim in `output`; "Wrong" is absent.
std::optional<std::string> separate_with_llm(const std::string& sub_instruction,
                                             const std::optional<std::string>& input, const std::string& output,
                                             Gateway& gateway, const PromptLibrary& prompts);

struct SubtaskScore {
    int hop_index = 0;  ///< 1-based
    std::optional<std::string> span;
    RougeScore score;
    bool valid = false;
};

/// What per-hop scoring compares against.
struct SubtaskGold {
    std::string input;
    std::vector<std::string> instructions;  ///< one per hop; needed for LLM mode only
    std::vector<std::string> hop_outputs;

    static SubtaskGold from_chain(const ComposedChain& chain);
};

enum class SpanMode { Marker, Llm };

/// Hop i is scored as rouge_l(span_i, o_i); hops without a span are invalid and score 0.
/// LLM mode needs a gateway and prompts and throws ValidationError without them.
std::vector<SubtaskScore> score_subtasks(const std::string& output, const SubtaskGold& gold, SpanMode mode,
                                         Gateway* gateway = nullptr, const PromptLibrary* prompts = nullptr);

/// Number of examples with a recovered span, per hop position (index 0 = hop 1).
std::vector<std::size_t> valid_span_counts(const std::vector<std::vector<SubtaskScore>>& scores);

enum class Winner { A, B, None };

std::string to_string(Winner w);

struct Preference {
    Winner winner = Winner::None;
    std::string raw_verdict;
    bool order_swapped = false;
};

/// "A", "B" or "None" after trimming; anything else is None.
Winner parse_verdict(std::string_view reply);

/// Shows the pair in an order decided by one coin flip of Rng(seed) and maps
/// the verdict back to the caller's A/B.
Preference judge_pair(const std::string& instruction, const std::string& input, const std::string& gold,
                      const std::string& output_a, const std::string& output_b, Gateway& gateway,
                      const PromptTemplate& prompt, std::uint64_t seed);

struct JudgeCase {
    std::string case_id;
    std::string instruction;
    std::string input;
    std::string gold;
    std::string output_a;
    std::string output_b;
};

std::vector<JudgeCase> load_judge_cases(const std::filesystem::path& path);

/// judge_pair over a batch; case i uses seed mix_seed(seed, i). Results keep case order.
std::vector<Preference> judge_cases(const std::vector<JudgeCase>& cases, Gateway& gateway,
                                    const PromptTemplate& prompt, std::uint64_t seed, std::size_t workers = 1);

struct GroupStats {
    std::size_t count = 0;
    double mean_f1_x100 = 0.0;
};

/// Mean f1 x100 per group label. Throws ValidationError on empty input.
std::map<std::string, GroupStats> aggregate_scores(const std::vector<std::pair<std::string, double>>& f1_by_group);

struct PreferenceSummary {
    std::size_t total = 0;
    double a_pct = 0.0;
    double b_pct = 0.0;
    double none_pct = 0.0;
};

/// Throws ValidationError on empty input.
PreferenceSummary aggregate_preferences(const std::vector<Preference>& preferences);

Json to_json(const RougeScore& s);

}  // namespace coi
