// SPDX-License-Identifier: Apache-2.0
#include "coi/summarizer.hpp"

#include <map>
#include <optional>
#include <set>

#include "coi/errors.hpp"
#include "coi/parallel.hpp"
#include "coi/text.hpp"

namespace coi {

std::size_t word_count(std::string_view text) { return text::split_whitespace(text).size(); }

namespace {

// First nonblank line of the reply, without an echoed "Modified instruction N:"
// prefix or wrapping quotes.
std::string clean_summary(std::string_view reply) {
    std::string_view line;
    std::size_t pos = 0;
    while (pos <= reply.size()) {
        std::size_t eol = reply.find('\n', pos);
        if (eol == std::string_view::npos) eol = reply.size();
        line = text::trim(reply.substr(pos, eol - pos));
        if (!line.empty()) break;
        pos = eol + 1;
    }
    static constexpr std::string_view kEcho = "Modified instruction";
    if (line.substr(0, kEcho.size()) == kEcho) {
        auto colon = line.find(':');
        if (colon != std::string_view::npos) line = text::trim(line.substr(colon + 1));
    }
    if (line.size() >= 2 && line.front() == '"' && line.back() == '"') line = line.substr(1, line.size() - 2);
    return std::string(text::trim(line));
}

std::string retry_note(const std::string& previous, std::size_t words, std::size_t max_words) {
    return "Your previous modified instruction \"" + previous + "\" has " + std::to_string(words) +
           " words. Write a modified instruction with at most " + std::to_string(max_words) + " words.\n\n";
}

}  // namespace

SummarizedInstruction summarize_instruction(const SeedTask& task, Gateway& gateway, const PromptTemplate& prompt,
                                            const SummarizeOptions& options) {
    if (text::trim(task.instruction).empty()) {
        throw ValidationError("task '" + task.task_id + "' has an empty instruction");
    }
    SummarizedInstruction out;
    out.task_id = task.task_id;
    out.original = task.instruction;
    out.original_words = word_count(task.instruction);

    std::optional<std::string> shortest;
    std::string note;
    for (int attempt = 1; attempt <= options.max_attempts; ++attempt) {
        out.attempts = attempt;
        const auto reply = gateway.ask(
            prompt.render({{"instruction", task.instruction}, {"category", task.category}, {"retry_note", note}}));
        std::string summary = clean_summary(reply.text);
        if (summary.empty()) break;
        const std::size_t words = word_count(summary);
        if (!shortest || words < word_count(*shortest)) shortest = summary;
        if (words <= options.max_words) {
            out.summary = std::move(summary);
            out.summary_words = words;
            out.flagged = false;
            return out;
        }
        note = retry_note(summary, words, options.max_words);
    }
    out.flagged = true;
    out.summary = shortest ? *shortest : task.instruction;
    out.summary_words = word_count(out.summary);
    return out;
}

std::vector<SummarizedInstruction> summarize_corpus(const std::vector<SeedTask>& tasks, Gateway& gateway,
                                                    const PromptTemplate& prompt, const SummarizeOptions& options,
                                                    std::size_t workers) {
    return parallel_map(tasks, workers,
                        [&](const SeedTask& t) { return summarize_instruction(t, gateway, prompt, options); });
}

WordStats corpus_word_stats(const std::vector<SeedTask>& before, const std::vector<SummarizedInstruction>& after) {
    if (before.empty() || after.empty()) throw ValidationError("word statistics need at least one task");
    std::map<std::string, std::size_t> summary_words;
    for (const auto& s : after) summary_words[s.task_id] = s.summary_words;
    std::set<std::string> before_ids;
    for (const auto& t : before) before_ids.insert(t.task_id);
    if (before_ids.size() != summary_words.size() ||
        !std::equal(before_ids.begin(), before_ids.end(), summary_words.begin(),
                    [](const std::string& id, const auto& kv) { return id == kv.first; })) {
        throw ValidationError("summaries and corpus cover different task ids");
    }
    double sum_before = 0;
    double sum_after = 0;
    for (const auto& t : before) sum_before += static_cast<double>(word_count(t.instruction));
    for (const auto& s : after) sum_after += static_cast<double>(s.summary_words);
    return WordStats{sum_before / static_cast<double>(before.size()), sum_after / static_cast<double>(after.size())};
}

Json to_json(const SummarizedInstruction& s) {
    return Json{{"task_id", s.task_id},       {"original", s.original},
                {"summary", s.summary},       {"original_words", s.original_words},
                {"summary_words", s.summary_words}, {"flagged", s.flagged},
                {"attempts", s.attempts}};
}

SummarizedInstruction summarized_from_json(const Json& obj, std::size_t line) {
    io::reject_unknown_keys(obj, {"task_id", "original", "summary", "original_words", "summary_words", "flagged",
                                  "attempts"},
                            line);
    SummarizedInstruction s;
    s.task_id = io::require_string(obj, "task_id", line);
    s.original = io::require_string(obj, "original", line);
    s.summary = io::require_string(obj, "summary", line);
    s.original_words = static_cast<std::size_t>(io::require_int(obj, "original_words", line));
    s.summary_words = static_cast<std::size_t>(io::require_int(obj, "summary_words", line));
    auto f = obj.find("flagged");
    if (f == obj.end() || !f->is_boolean()) throw ParseError("field 'flagged' must be a boolean", line);
    s.flagged = f->get<bool>();
    s.attempts = static_cast<int>(io::require_int(obj, "attempts", line));
    if (s.summary_words != word_count(s.summary)) throw ParseError("summary_words does not match summary", line);
    return s;
}

std::vector<SummarizedInstruction> load_summaries(const std::filesystem::path& path) {
    std::vector<SummarizedInstruction> out;
    io::for_each_jsonl(path, [&](const Json& obj, std::size_t line) { out.push_back(summarized_from_json(obj, line)); });
    return out;
}

void write_summaries(const std::vector<SummarizedInstruction>& items, const std::filesystem::path& path) {
    std::string body;
    for (const auto& s : items) body += to_json(s).dump() + "\n";
    io::write_file(path, body);
}

}  // namespace coi
