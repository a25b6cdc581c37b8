// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coi/io.hpp"
#include "coi/langid.hpp"
#include "coi/scaffold.hpp"

namespace coi {

enum class SplitMethod { Marker, LanguageId };

std::string to_string(SplitMethod m);

/// Source- and target-language parts of one model output. Present spans are
/// substrings of that output.
struct BilingualSummary {
    std::optional<std::string> src_span;
    std::optional<std::string> tgt_span;
    SplitMethod method = SplitMethod::Marker;
};

/// Hop 1 of the tolerant scaffold parse is the source span, hop 2 the target span.
BilingualSummary split_by_marker(std::string_view output);

/// Sentence ranges (trimmed, nonempty). A sentence ends after a run of
/// [.!?] followed by whitespace or the end of the text, or at a newline.
std::vector<TextSpan> split_sentences(std::string_view text);

/// Classifies each sentence, merges neighbours with the same language into
/// runs and takes the longest src run and the longest tgt run (first wins on ties).
BilingualSummary split_by_language(std::string_view output, const std::string& src, const std::string& tgt,
                                   const LanguageIdentifier& identifier);

struct DownstreamReference {
    std::string example_id;
    std::string src_ref;
    std::string tgt_ref;
    std::string src_lang;
    std::string tgt_lang;
};

std::vector<DownstreamReference> load_references(const std::filesystem::path& path);

struct DownstreamReport {
    double rouge_all = 0.0;  ///< x100
    double rouge_src = 0.0;
    double rouge_tgt = 0.0;
    std::size_t valid_src = 0;
    std::size_t valid_tgt = 0;
    std::size_t total = 0;
    std::vector<std::string> warnings;  ///< one per skipped output
};

/// Averages over outputs with a reference; outputs without one are skipped
/// with a warning. Absent spans score 0. `identifier` is required for LanguageId.
DownstreamReport evaluate_downstream(const std::vector<std::pair<std::string, std::string>>& outputs,
                                     const std::vector<DownstreamReference>& refs, SplitMethod method,
                                     const LanguageIdentifier* identifier = nullptr);

Json report_to_json(const DownstreamReport& report);
std::string report_to_text(const DownstreamReport& report, const std::string& row_label);

}  // namespace coi
