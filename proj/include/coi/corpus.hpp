// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace coi {

/// One input/output pair of a single-instruction task.
struct Instance {
    std::string input;
    std::string output;

    friend bool operator==(const Instance&, const Instance&) = default;
};

/// A single-instruction seed task with its instances.
struct SeedTask {
    std::string task_id;
    std::string category;
    std::string instruction;
    std::string input_language;
    std::string output_language;
    std::vector<Instance> instances;
    std::size_t source_line = 0;  ///< 1-based line in the file it came from; 0 if built in memory

    friend bool operator==(const SeedTask& a, const SeedTask& b) {
        return a.task_id == b.task_id && a.category == b.category && a.instruction == b.instruction &&
               a.input_language == b.input_language && a.output_language == b.output_language &&
               a.instances == b.instances;
    }
};

struct LoadOptions {
    bool allow_empty = false;  ///< permit empty instance input/output strings
};

/// Reads a seed corpus: one JSON object per line, blank lines skipped.
///
/// Throws IoError if the file cannot be read, ParseError (with the line number)
/// for malformed JSON or schema violations, ValidationError for duplicate ids.
std::vector<SeedTask> load_seed_corpus(const std::filesystem::path& path, const LoadOptions& options = {});

std::string serialize_seed_corpus(const std::vector<SeedTask>& tasks);
void write_seed_corpus(const std::vector<SeedTask>& tasks, const std::filesystem::path& path);

/// Tasks whose input language is "en", in their original order.
std::vector<SeedTask> filter_english_input(const std::vector<SeedTask>& tasks);

/// min(n, |instances|) instances without replacement, in corpus order.
/// The draw depends only on (task_id, instance list, n, seed).
std::vector<Instance> sample_instances(const SeedTask& task, std::size_t n, std::uint64_t seed);

/// Index variant of sample_instances (same draw).
std::vector<std::size_t> sample_instance_indices(const SeedTask& task, std::size_t n, std::uint64_t seed);

const SeedTask* find_task(const std::vector<SeedTask>& tasks, const std::string& task_id);

}  // namespace coi
