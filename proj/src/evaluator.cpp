// SPDX-License-Identifier: Apache-2.0
#include "coi/evaluator.hpp"

#include <algorithm>
#include <cctype>

#include "coi/errors.hpp"
#include "coi/parallel.hpp"
#include "coi/rng.hpp"
#include "coi/scaffold.hpp"
#include "coi/text.hpp"

namespace coi {

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    std::string word;
    auto flush = [&] {
        if (!word.empty()) out.push_back(std::move(word));
        word.clear();
    };
    for (char c : text) {
        const auto u = static_cast<unsigned char>(c);
        if (text::is_space(c)) {
            flush();
        } else if (u < 0x80 && std::ispunct(u)) {
            flush();
            out.emplace_back(1, c);
        } else {
            word += u < 0x80 ? static_cast<char>(std::tolower(u)) : c;
        }
    }
    flush();
    return out;
}

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    const auto& shorter = a.size() < b.size() ? a : b;
    const auto& longer = a.size() < b.size() ? b : a;
    std::vector<std::size_t> prev(shorter.size() + 1, 0);
    std::vector<std::size_t> cur(shorter.size() + 1, 0);
    for (const auto& x : longer) {
        for (std::size_t j = 1; j <= shorter.size(); ++j) {
            cur[j] = x == shorter[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    return prev[shorter.size()];
}

RougeScore rouge_from_tokens(const std::vector<std::string>& candidate, const std::vector<std::string>& reference) {
    RougeScore s;
    if (candidate.empty() || reference.empty()) return s;
    const auto lcs = static_cast<double>(lcs_length(candidate, reference));
    s.precision = lcs / static_cast<double>(candidate.size());
    s.recall = lcs / static_cast<double>(reference.size());
    if (s.precision + s.recall > 0) s.f1 = 2 * s.precision * s.recall / (s.precision + s.recall);
    return s;
}

RougeScore rouge_l(std::string_view candidate, std::string_view reference) {
    return rouge_from_tokens(tokenize(candidate), tokenize(reference));
}

std::vector<std::optional<std::string>> extract_subtask_spans_marker(std::string_view output, int k) {
    return extract_hop_spans(output, k);
}

std::optional<std::string> separate_with_llm(const std::string& sub_instruction,
                                             const std::optional<std::string>& input, const std::string& output,
                                             Gateway& gateway, const PromptLibrary& prompts) {
    if (output.empty()) return std::nullopt;
    const auto prompt =
        input ? prompts.separate.render({{"instruction", sub_instruction}, {"input", *input}, {"output", output}})
              : prompts.separate_plain.render({{"instruction", sub_instruction}, {"output", output}});
    const auto reply = gateway.ask(prompt);
    std::string_view span = text::trim(reply.text);
    if (span.empty() || span == "Wrong" || span == "\"Wrong\"") return std::nullopt;
    if (output.find(span) != std::string::npos) return std::string(span);
    if (span.size() >= 2 && span.front() == '"' && span.back() == '"') {
        span = text::trim(span.substr(1, span.size() - 2));
        if (!span.empty() && output.find(span) != std::string::npos) return std::string(span);
    }
    return std::nullopt;
}

SubtaskGold SubtaskGold::from_chain(const ComposedChain& chain) {
    SubtaskGold g;
    g.input = chain.input;
    for (const auto& h : chain.hops) g.instructions.push_back(h.instruction);
    g.hop_outputs = chain.hop_outputs;
    return g;
}

std::vector<SubtaskScore> score_subtasks(const std::string& output, const SubtaskGold& gold, SpanMode mode,
                                         Gateway* gateway, const PromptLibrary* prompts) {
    const int k = static_cast<int>(gold.hop_outputs.size());
    if (k < 1) throw ValidationError("gold chain has no hop outputs");
    std::vector<std::optional<std::string>> spans;
    if (mode == SpanMode::Marker) {
        spans = extract_subtask_spans_marker(output, k);
    } else {
        if (!gateway || !prompts) throw ValidationError("LLM span separation needs a gateway");
        if (gold.instructions.size() != gold.hop_outputs.size()) {
            throw ValidationError("LLM span separation needs one instruction per hop");
        }
        for (int i = 0; i < k; ++i) {
            const auto input = i == 0 ? std::optional<std::string>(gold.input) : std::nullopt;
            spans.push_back(separate_with_llm(gold.instructions[static_cast<std::size_t>(i)], input, output, *gateway,
                                              *prompts));
        }
    }
    std::vector<SubtaskScore> out;
    for (int i = 0; i < k; ++i) {
        SubtaskScore s;
        s.hop_index = i + 1;
        s.span = spans[static_cast<std::size_t>(i)];
        s.valid = s.span.has_value();
        if (s.valid) s.score = rouge_l(*s.span, gold.hop_outputs[static_cast<std::size_t>(i)]);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<std::size_t> valid_span_counts(const std::vector<std::vector<SubtaskScore>>& scores) {
    std::vector<std::size_t> counts;
    for (const auto& row : scores) {
        if (counts.size() < row.size()) counts.resize(row.size(), 0);
        for (std::size_t i = 0; i < row.size(); ++i) counts[i] += row[i].valid ? 1 : 0;
    }
    return counts;
}

std::string to_string(Winner w) {
    switch (w) {
        case Winner::A: return "A";
        case Winner::B: return "B";
        case Winner::None: return "None";
    }
    return "None";
}

Winner parse_verdict(std::string_view reply) {
    const auto t = text::trim(reply);
    if (t == "A") return Winner::A;
    if (t == "B") return Winner::B;
    return Winner::None;
}

Preference judge_pair(const std::string& instruction, const std::string& input, const std::string& gold,
                      const std::string& output_a, const std::string& output_b, Gateway& gateway,
                      const PromptTemplate& prompt, std::uint64_t seed) {
    Preference p;
    Rng rng(seed);
    p.order_swapped = rng.coin();
    const auto& shown_a = p.order_swapped ? output_b : output_a;
    const auto& shown_b = p.order_swapped ? output_a : output_b;
    const auto reply = gateway.ask(prompt.render({{"instruction", instruction},
                                                  {"input", input},
                                                  {"gold", gold},
                                                  {"output_a", shown_a},
                                                  {"output_b", shown_b}}));
    p.raw_verdict = reply.text;
    const Winner shown = parse_verdict(reply.text);
    if (shown == Winner::None || !p.order_swapped) {
        p.winner = shown;
    } else {
        p.winner = shown == Winner::A ? Winner::B : Winner::A;
    }
    return p;
}

std::vector<JudgeCase> load_judge_cases(const std::filesystem::path& path) {
    std::vector<JudgeCase> out;
    io::for_each_jsonl(path, [&](const Json& obj, std::size_t line) {
        io::reject_unknown_keys(obj, {"case_id", "instruction", "input", "gold", "output_a", "output_b"}, line);
        out.push_back(JudgeCase{io::require_string(obj, "case_id", line), io::require_string(obj, "instruction", line),
                                io::require_string(obj, "input", line), io::require_string(obj, "gold", line),
                                io::require_string(obj, "output_a", line), io::require_string(obj, "output_b", line)});
    });
    return out;
}

std::vector<Preference> judge_cases(const std::vector<JudgeCase>& cases, Gateway& gateway,
                                    const PromptTemplate& prompt, std::uint64_t seed, std::size_t workers) {
    std::vector<std::size_t> idx(cases.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return parallel_map(idx, workers, [&](std::size_t i) {
        const auto& c = cases[i];
        return judge_pair(c.instruction, c.input, c.gold, c.output_a, c.output_b, gateway, prompt, mix_seed(seed, i));
    });
}

std::map<std::string, GroupStats> aggregate_scores(const std::vector<std::pair<std::string, double>>& f1_by_group) {
    if (f1_by_group.empty()) throw ValidationError("nothing to aggregate");
    std::map<std::string, GroupStats> out;
    std::map<std::string, double> sums;
    for (const auto& [group, f1] : f1_by_group) {
        out[group].count += 1;
        sums[group] += f1;
    }
    for (auto& [group, stats] : out) stats.mean_f1_x100 = 100.0 * sums[group] / static_cast<double>(stats.count);
    return out;
}

PreferenceSummary aggregate_preferences(const std::vector<Preference>& preferences) {
    if (preferences.empty()) throw ValidationError("nothing to aggregate");
    PreferenceSummary s;
    s.total = preferences.size();
    std::size_t a = 0;
    std::size_t b = 0;
    for (const auto& p : preferences) {
        a += p.winner == Winner::A;
        b += p.winner == Winner::B;
    }
    const double n = static_cast<double>(s.total);
    s.a_pct = 100.0 * static_cast<double>(a) / n;
    s.b_pct = 100.0 * static_cast<double>(b) / n;
    s.none_pct = 100.0 * static_cast<double>(s.total - a - b) / n;
    return s;
}

Json to_json(const RougeScore& s) { return Json{{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}}; }

}  // namespace coi
