// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "coi/corpus.hpp"
#include "coi/io.hpp"
#include "coi/llm_gateway.hpp"
#include "coi/prompt.hpp"

namespace coi {

/// Number of maximal whitespace-delimited tokens.
std::size_t word_count(std::string_view text);

struct SummarizedInstruction {
    std::string task_id;
    std::string original;
    std::string summary;
    std::size_t original_words = 0;
    std::size_t summary_words = 0;
    bool flagged = false;  ///< length contract unmet after all attempts, or empty reply
    int attempts = 0;

    friend bool operator==(const SummarizedInstruction&, const SummarizedInstruction&) = default;
};

struct SummarizeOptions {
    int max_attempts = 3;          ///< first request plus retries
    std::size_t max_words = 30;    ///< longest accepted summary
};

/// Shortens one task instruction with the few-shot summarization prompt.
///
/// Over-length replies are retried with a note quoting the previous attempt;
/// once attempts run out the shortest reply is kept and the result flagged.
/// An empty reply flags the task and keeps the original instruction unless an
/// earlier nonempty attempt exists.
SummarizedInstruction summarize_instruction(const SeedTask& task, Gateway& gateway, const PromptTemplate& prompt,
                                            const SummarizeOptions& options = {});

/// summarize_instruction over a corpus with up to `workers` concurrent requests;
/// results keep corpus order.
std::vector<SummarizedInstruction> summarize_corpus(const std::vector<SeedTask>& tasks, Gateway& gateway,
                                                    const PromptTemplate& prompt, const SummarizeOptions& options,
                                                    std::size_t workers);

struct WordStats {
    double mean_before = 0.0;
    double mean_after = 0.0;
};

/// Mean instruction length before and after summarization. Both lists must
/// cover the same task ids; throws ValidationError otherwise or when empty.
WordStats corpus_word_stats(const std::vector<SeedTask>& before, const std::vector<SummarizedInstruction>& after);

Json to_json(const SummarizedInstruction& s);
SummarizedInstruction summarized_from_json(const Json& obj, std::size_t line);
std::vector<SummarizedInstruction> load_summaries(const std::filesystem::path& path);
void write_summaries(const std::vector<SummarizedInstruction>& items, const std::filesystem::path& path);

}  // namespace coi
