// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace coi {

/// A few-shot prompt template loaded from a text asset.
///
/// Leading lines starting with `#` form the header; `# version: N` is
/// recorded, other header lines are comments. The body follows verbatim.
/// `{name}` (lowercase letters, digits, underscores) is a placeholder; any
/// other brace sequence, such as the JSON in demonstrations, is literal text.
class PromptTemplate {
public:
    PromptTemplate() = default;
    PromptTemplate(std::string name, std::string body, std::string version = "0");

    static PromptTemplate load(const std::filesystem::path& path);

    /// Substitutes every placeholder. Throws ValidationError if a placeholder
    /// has no value or a value is supplied for a name the template lacks.
    std::string render(const std::map<std::string, std::string>& values) const;

    const std::string& name() const { return name_; }
    const std::string& version() const { return version_; }
    const std::string& body() const { return body_; }
    const std::vector<std::string>& placeholders() const { return placeholders_; }

private:
    std::string name_;
    std::string version_;
    std::string body_;
    std::vector<std::string> placeholders_;  // unique, in first-appearance order
};

/// The full set of assets the pipeline uses, loaded from one directory.
struct PromptLibrary {
    PromptTemplate summarize;       // summarize.txt
    PromptTemplate composability;   // composability.txt
    PromptTemplate consistency;     // consistency.txt
    PromptTemplate concise;         // concise.txt
    PromptTemplate separate;        // separate.txt (sub-instruction with its input)
    PromptTemplate separate_plain;  // separate_plain.txt (sub-instruction only)
    PromptTemplate judge;           // judge.txt

    static PromptLibrary load(const std::filesystem::path& dir);
};

}  // namespace coi
