// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace coi::cli {

/// Root holding prompts/, rules/ and data/: $COI_DATA_DIR when set,
/// otherwise the location fixed at build time.
std::filesystem::path default_data_dir();

/// Everything a pipeline run needs. Relative paths in a config file resolve
/// against the file's directory; paths given as flags resolve against the
/// working directory.
struct PipelineConfig {
    // provider
    std::string provider = "remote";  ///< remote | mock
    std::string model_id = "gpt-3.5-turbo";
    std::string api_base = "https://api.openai.com/v1";
    int timeout_ms = 60000;
    double requests_per_minute = 0.0;
    int retry_limit = 3;
    int max_tokens = 512;
    double temperature = 0.0;
    std::filesystem::path cache_dir;
    std::filesystem::path mock_table;

    // paths
    std::filesystem::path seed_corpus;
    std::filesystem::path rules_file;
    std::filesystem::path prompt_dir;
    std::filesystem::path profile_dir;
    std::filesystem::path output_dir;

    // seeds
    std::uint64_t seed = 0;
    std::uint64_t split_seed = 0;
    std::uint64_t judge_seed = 0;

    // caps
    std::size_t instances_per_task = 10;
    std::size_t pair_instances = 1;
    std::size_t cap_per_category = 3;
    int max_chain_length = 3;
    double test_fraction = 0.2;
    int train_only_max = 1;
    int test_only_min = 4;
    int summary_max_attempts = 3;
    int concise_max_attempts = 3;
    std::size_t workers = 1;

    // flags
    bool consistency_rewrite = true;
    bool english_only = true;
    bool allow_empty = false;
    std::vector<std::string> variants;  ///< subset of {concise, irrelevant}

    PipelineConfig();

    /// Applies one `key = value` setting. Throws ConfigError for unknown keys
    /// or values that do not parse.
    void set(const std::string& key, const std::string& value, const std::filesystem::path& base_dir);

    /// Reads `key = value` lines; `#` starts a comment line.
    void load_file(const std::filesystem::path& path);

    /// Canonical dump of the non-path settings, for the manifest's config digest.
    std::string canonical() const;
};

/// Runs one subcommand. `args` excludes the program name. Returns the exit
/// code: 0 success, 1 validation or configuration error, 2 I/O or transport error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coi::cli
