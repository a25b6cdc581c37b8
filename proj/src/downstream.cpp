// SPDX-License-Identifier: Apache-2.0
#include "coi/downstream.hpp"

#include <cstdio>
#include <unordered_map>

#include "coi/errors.hpp"
#include "coi/evaluator.hpp"
#include "coi/text.hpp"

namespace coi {

std::string to_string(SplitMethod m) { return m == SplitMethod::Marker ? "marker" : "language_id"; }

BilingualSummary split_by_marker(std::string_view output) {
    const auto spans = extract_hop_spans(output, 2);
    return BilingualSummary{spans[0], spans[1], SplitMethod::Marker};
}

std::vector<TextSpan> split_sentences(std::string_view s) {
    std::vector<TextSpan> out;
    auto emit = [&](std::size_t b, std::size_t e) {
        while (b < e && text::is_space(s[b])) ++b;
        while (e > b && text::is_space(s[e - 1])) --e;
        if (b < e) out.push_back(TextSpan{b, e});
    };
    std::size_t start = 0;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (c == '\n') {
            emit(start, i);
            start = ++i;
        } else if (c == '.' || c == '!' || c == '?') {
            std::size_t j = i;
            while (j < s.size() && (s[j] == '.' || s[j] == '!' || s[j] == '?')) ++j;
            if (j == s.size() || text::is_space(s[j])) {
                emit(start, j);
                start = j;
            }
            i = j;
        } else {
            ++i;
        }
    }
    emit(start, s.size());
    return out;
}

BilingualSummary split_by_language(std::string_view output, const std::string& src, const std::string& tgt,
                                   const LanguageIdentifier& identifier) {
    if (src == tgt) throw ValidationError("source and target language must differ");
    BilingualSummary result;
    result.method = SplitMethod::LanguageId;

    struct Run {
        std::string lang;
        std::size_t begin;
        std::size_t end;
    };
    std::vector<Run> runs;
    for (const auto& s : split_sentences(output)) {
        auto lang = identifier.identify(output.substr(s.begin, s.end - s.begin));
        if (!runs.empty() && runs.back().lang == lang) {
            runs.back().end = s.end;
        } else {
            runs.push_back(Run{std::move(lang), s.begin, s.end});
        }
    }
    auto longest = [&](const std::string& lang) -> std::optional<std::string> {
        const Run* best = nullptr;
        for (const auto& r : runs) {
            if (r.lang == lang && (!best || r.end - r.begin > best->end - best->begin)) best = &r;
        }
        if (!best) return std::nullopt;
        return std::string(output.substr(best->begin, best->end - best->begin));
    };
    result.src_span = longest(src);
    result.tgt_span = longest(tgt);
    return result;
}

std::vector<DownstreamReference> load_references(const std::filesystem::path& path) {
    std::vector<DownstreamReference> out;
    io::for_each_jsonl(path, [&](const Json& obj, std::size_t line) {
        io::reject_unknown_keys(obj, {"example_id", "src_ref", "tgt_ref", "src_lang", "tgt_lang"}, line);
        out.push_back(DownstreamReference{io::require_string(obj, "example_id", line),
                                          io::require_string(obj, "src_ref", line),
                                          io::require_string(obj, "tgt_ref", line),
                                          io::require_string(obj, "src_lang", line),
                                          io::require_string(obj, "tgt_lang", line)});
    });
    return out;
}

DownstreamReport evaluate_downstream(const std::vector<std::pair<std::string, std::string>>& outputs,
                                     const std::vector<DownstreamReference>& refs, SplitMethod method,
                                     const LanguageIdentifier* identifier) {
    if (method == SplitMethod::LanguageId && !identifier) {
        throw ValidationError("language-id splitting needs an identifier");
    }
    std::unordered_map<std::string, const DownstreamReference*> by_id;
    for (const auto& r : refs) by_id[r.example_id] = &r;

    DownstreamReport report;
    double all = 0.0;
    double src = 0.0;
    double tgt = 0.0;
    for (const auto& [id, output] : outputs) {
        auto it = by_id.find(id);
        if (it == by_id.end()) {
            report.warnings.push_back("no reference for example '" + id + "', skipped");
            continue;
        }
        const auto& ref = *it->second;
        const auto split = method == SplitMethod::Marker ? split_by_marker(output)
                                                         : split_by_language(output, ref.src_lang, ref.tgt_lang, *identifier);
        ++report.total;
        all += rouge_l(output, ref.tgt_ref).f1;
        if (split.src_span) {
            ++report.valid_src;
            src += rouge_l(*split.src_span, ref.src_ref).f1;
        }
        if (split.tgt_span) {
            ++report.valid_tgt;
            tgt += rouge_l(*split.tgt_span, ref.tgt_ref).f1;
        }
    }
    if (report.total) {
        const double n = static_cast<double>(report.total);
        report.rouge_all = 100.0 * all / n;
        report.rouge_src = 100.0 * src / n;
        report.rouge_tgt = 100.0 * tgt / n;
    }
    return report;
}

Json report_to_json(const DownstreamReport& r) {
    return Json{{"rouge_all", r.rouge_all}, {"rouge_src", r.rouge_src}, {"rouge_tgt", r.rouge_tgt},
                {"valid_src", r.valid_src}, {"valid_tgt", r.valid_tgt}, {"total", r.total},
                {"warnings", r.warnings}};
}

std::string report_to_text(const DownstreamReport& r, const std::string& row_label) {
    char line[256];
    std::string out;
    std::snprintf(line, sizeof line, "%-20s %9s %9s %9s %10s %10s %6s\n", "model", "rouge_all", "rouge_src",
                  "rouge_tgt", "valid_src", "valid_tgt", "total");
    out += line;
    std::snprintf(line, sizeof line, "%-20s %9.2f %9.2f %9.2f %10zu %10zu %6zu\n", row_label.c_str(), r.rouge_all,
                  r.rouge_src, r.rouge_tgt, r.valid_src, r.valid_tgt, r.total);
    out += line;
    return out;
}

}  // namespace coi
