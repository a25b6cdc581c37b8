// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coi/composer.hpp"
#include "coi/io.hpp"

namespace coi {

enum class Split { Train, Test };

std::string to_string(Split s);
Split split_from_string(const std::string& s);

/// One serialized training or evaluation record.
struct CoiExample {
    std::string example_id;
    std::string instruction;
    std::string input;
    std::string target;  ///< scaffolded hop outputs
    int chain_length = 1;
    std::vector<std::string> category_path;
    Split split = Split::Train;
    std::string variant = "standard";
    std::optional<std::string> source;  ///< mixture slice the example came from

    friend bool operator==(const CoiExample&, const CoiExample&) = default;
};

using Dataset = std::vector<CoiExample>;

/// Example for a composed chain. Id: "coi<k>:<task>><task>...#<instance>",
/// with "+<variant>" appended for non-standard variants.
CoiExample example_from_chain(const ComposedChain& chain);

/// Single-instruction examples: up to `per_task` seeded instances of each task,
/// using the summarized instruction. Ids: "coi1:<task>#<instance>".
Dataset single_instruction_examples(const std::vector<SummarizedTask>& tasks, std::size_t per_task,
                                    std::uint64_t seed);

/// Keeps at most `cap` examples per category path (seeded choice), original order.
Dataset limit_per_category(const Dataset& examples, std::size_t cap, std::uint64_t seed);

/// Stratified by category path: round(fraction * N) test examples overall,
/// apportioned to groups by largest remainder (seeded order among equal
/// remainders), chosen per group with a seeded draw.
Dataset split_train_test(const Dataset& examples, double test_fraction, std::uint64_t seed);

/// Which chain lengths go to which split.
struct SplitPolicy {
    int train_only_max = 1;  ///< lengths <= this are always train
    int test_only_min = 4;   ///< lengths >= this are always test
    double test_fraction = 0.2;
};

/// Applies the policy: fixed splits at the extremes, split_train_test per chain
/// length in between.
Dataset assign_splits(const Dataset& examples, const SplitPolicy& policy, std::uint64_t seed);

struct MixturePart {
    std::string name;
    const Dataset* dataset = nullptr;
    std::vector<int> lengths;            ///< chain lengths kept; empty keeps all
    std::optional<Split> split;          ///< restrict to one split
};

/// Concatenates the selected slices, tagging each example's source with the
/// part name. Throws ValidationError on a repeated example id.
Dataset build_mixture(const std::vector<MixturePart>& parts);

struct SplitCounts {
    std::size_t train = 0;
    std::size_t test = 0;

    friend bool operator==(const SplitCounts&, const SplitCounts&) = default;
};

struct DatasetReport {
    std::map<int, SplitCounts> counts_by_length;
    std::map<int, std::size_t> unique_category_tuples;
    std::map<int, double> mean_instruction_words;
    std::size_t total = 0;
};

DatasetReport compute_report(const Dataset& dataset);
Json report_to_json(const DatasetReport& report);
std::string report_to_text(const DatasetReport& report);

Json to_json(const CoiExample& e);
CoiExample example_from_json(const Json& obj, std::size_t line);

/// JSONL, one example per line.
std::string serialize_dataset(const Dataset& dataset);
void write_dataset(const Dataset& dataset, const std::filesystem::path& path);

/// Throws ParseError with the line number on schema violations, including a
/// target that does not parse into chain_length hop outputs.
Dataset load_dataset(const std::filesystem::path& path);

}  // namespace coi
