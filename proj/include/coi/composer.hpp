// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "coi/corpus.hpp"
#include "coi/io.hpp"
#include "coi/llm_gateway.hpp"
#include "coi/prompt.hpp"
#include "coi/summarizer.hpp"

namespace coi {

/// Categories allowed only in the last position of a chain.
struct CategoryRules {
    std::set<std::string> final_only;

    /// One category per line; blank lines and `#` comments ignored; names trimmed.
    static CategoryRules load(const std::filesystem::path& path);
    static CategoryRules parse(std::string_view text);

    bool is_final_only(const std::string& category) const { return final_only.count(category) != 0; }

    /// True when no category before the last one is final-only.
    bool allows(const std::vector<std::string>& categories) const;
};

struct ChainCandidate {
    std::vector<std::string> hops;        ///< task ids, distinct, size >= 2
    std::vector<std::string> categories;  ///< aligned with hops

    friend bool operator==(const ChainCandidate&, const ChainCandidate&) = default;
};

struct ValidityResult {
    bool valid = false;
    std::string reason;
    std::string output;  ///< second-hop output when valid, empty otherwise
    std::string raw;     ///< the unparsed reply
};

enum class Variant { Standard, Concise, Irrelevant };

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

struct ChainHop {
    std::string task_id;
    std::string instruction;  ///< summarized instruction

    friend bool operator==(const ChainHop&, const ChainHop&) = default;
};

/// A verified chain with one output per hop for a single input.
struct ComposedChain {
    std::vector<ChainHop> hops;
    std::string joined_instruction;
    std::string input;                     ///< input of the first hop
    std::vector<std::string> hop_outputs;  ///< o1..ok; o1 is the seed instance output
    std::vector<std::string> categories;
    std::size_t instance_index = 0;        ///< which instance of the first task supplied the input
    Variant variant = Variant::Standard;
    bool flagged = false;                  ///< concise variant over its word budget

    int chain_length() const { return static_cast<int>(hops.size()); }
    ChainCandidate candidate() const;
    std::string key() const;  ///< "a>b>c#index", unique per chain and input

    friend bool operator==(const ComposedChain&, const ComposedChain&) = default;
};

/// A candidate or join dropped by the pipeline, with the stage that dropped it.
struct Rejection {
    ChainCandidate candidate;
    std::string stage;  ///< "heuristic", "composability", "extend"
    std::string reason;
};

/// A seed task together with its summarized instruction.
struct SummarizedTask {
    SeedTask task;
    std::string instruction;
};

/// Pairs every task with its summary; throws ValidationError if one is missing.
std::vector<SummarizedTask> attach_summaries(const std::vector<SeedTask>& tasks,
                                             const std::vector<SummarizedInstruction>& summaries);

// ------------------------------------------------------------ reply parsing

/// The first balanced `{...}` in `reply`, respecting JSON string quoting.
std::optional<std::string> extract_first_json_object(std::string_view reply);

/// Reads `"key" [:] "value"` pairs from JSON-ish text that strict parsing
/// rejected. Keys are compared after lowercasing and dropping everything but
/// letters and digits, so "Valid input", "valid_input" and "ValidInput" agree.
std::map<std::string, std::string> lenient_fields(std::string_view object_text);

std::string normalize_key(std::string_view key);

// ------------------------------------------------------------ operations

/// One seeded task per category, then every ordered pair of distinct
/// categories as a two-hop candidate. Needs at least two categories.
std::vector<ChainCandidate> sample_category_pairs(const std::vector<SummarizedTask>& tasks, std::uint64_t seed);

/// Drops candidates with a final-only category before the last position.
std::vector<ChainCandidate> heuristic_filter(const std::vector<ChainCandidate>& candidates, const CategoryRules& rules);

/// Asks whether `first_output` is a valid input for `second_instruction` and,
/// if so, for the second output. `first_instruction` is the sub-instruction
/// that produced `first_output`; it must be nonempty like the others.
ValidityResult check_composability(const std::string& first_instruction, const std::string& first_output,
                                   const std::string& second_instruction, Gateway& gateway,
                                   const PromptTemplate& prompt);

ValidityResult parse_validity_reply(const std::string& reply);

/// Joins sub-instructions with " and then ". Throws ValidationError for fewer than two.
std::string compose_instruction_text(const std::vector<std::string>& instructions);

struct RewriteResult {
    std::string instruction;
    bool rewritten = false;
    std::string warning;  ///< set when the reply could not be used
};

RewriteResult rewrite_consistency(const std::string& joined_instruction, const std::vector<std::string>& subtasks,
                                  Gateway& gateway, const PromptTemplate& prompt);

struct ComposeOptions {
    std::uint64_t seed = 0;
    bool consistency_rewrite = true;
    std::size_t pair_instances = 1;  ///< seed instances of the first task tried per candidate
    std::size_t workers = 1;
};

struct DistillOutcome {
    std::optional<ComposedChain> chain;
    std::optional<Rejection> rejection;
    std::vector<std::string> warnings;
};

/// Runs the composability check for one instance of the candidate's first task.
DistillOutcome distill_instance(const ChainCandidate& candidate, const std::vector<SummarizedTask>& tasks,
                                std::size_t instance_index, Gateway& gateway, const PromptLibrary& prompts,
                                bool consistency_rewrite);

/// distill_instance on one seeded instance of the first task.
DistillOutcome distill_pair(const ChainCandidate& candidate, const std::vector<SummarizedTask>& tasks,
                            Gateway& gateway, const PromptLibrary& prompts, const ComposeOptions& options);

struct ComposeResult {
    std::vector<ComposedChain> chains;
    std::vector<Rejection> rejections;
    std::vector<std::string> warnings;
};

/// Candidate sampling, heuristic filtering and distillation of every survivor.
ComposeResult compose_pairs(const std::vector<SummarizedTask>& tasks, const CategoryRules& rules, Gateway& gateway,
                            const PromptLibrary& prompts, const ComposeOptions& options);

/// Extends every k-chain ending at task y by each pair (y, z) whose z is not
/// already in the chain and whose categories pass the rules. The new hop
/// output comes from a fresh composability check on (o_k, instruction_z);
/// joins that fail it are rejected.
ComposeResult extend_chains(const std::vector<ComposedChain>& chains, const std::vector<ComposedChain>& pairs,
                            const CategoryRules& rules, Gateway& gateway, const PromptLibrary& prompts,
                            const ComposeOptions& options);

/// Replaces o2..ok with seeded outputs drawn from instances of tasks outside
/// the chain. Throws ValidationError if the corpus cannot supply enough
/// distinct unrelated outputs.
ComposedChain build_irrelevant_variant(const ComposedChain& chain, const std::vector<SeedTask>& corpus,
                                       std::uint64_t seed);

struct ConciseOptions {
    int max_attempts = 3;
    std::size_t max_words = 20;
};

/// LLM-compressed joined instruction; flagged if still over budget after all attempts.
ComposedChain build_concise_variant(const ComposedChain& chain, Gateway& gateway, const PromptTemplate& prompt,
                                    const ConciseOptions& options = {});

// ------------------------------------------------------------ serialization

Json to_json(const ComposedChain& chain);
ComposedChain chain_from_json(const Json& obj, std::size_t line);
std::vector<ComposedChain> load_chains(const std::filesystem::path& path);
void write_chains(const std::vector<ComposedChain>& chains, const std::filesystem::path& path);

Json to_json(const Rejection& r);
void write_rejections(const std::vector<Rejection>& rejections, const std::filesystem::path& path);

}  // namespace coi
