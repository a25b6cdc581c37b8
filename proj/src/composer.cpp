// SPDX-License-Identifier: Apache-2.0
#include "coi/composer.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "coi/errors.hpp"
#include "coi/parallel.hpp"
#include "coi/rng.hpp"
#include "coi/scaffold.hpp"
#include "coi/text.hpp"

namespace coi {

// ------------------------------------------------------------ rules

CategoryRules CategoryRules::parse(std::string_view body) {
    CategoryRules rules;
    std::size_t pos = 0;
    while (pos <= body.size()) {
        std::size_t eol = body.find('\n', pos);
        if (eol == std::string_view::npos) eol = body.size();
        auto line = text::trim(body.substr(pos, eol - pos));
        if (!line.empty() && line.front() != '#') rules.final_only.emplace(line);
        pos = eol + 1;
    }
    return rules;
}

CategoryRules CategoryRules::load(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw ValidationError("rules file not found: " + path.string());
    return parse(io::read_file(path));
}

bool CategoryRules::allows(const std::vector<std::string>& categories) const {
    for (std::size_t i = 0; i + 1 < categories.size(); ++i) {
        if (is_final_only(categories[i])) return false;
    }
    return true;
}

// ------------------------------------------------------------ chain basics

std::string to_string(Variant v) {
    switch (v) {
        case Variant::Standard: return "standard";
        case Variant::Concise: return "concise";
        case Variant::Irrelevant: return "irrelevant";
    }
    return "standard";
}

Variant variant_from_string(const std::string& s) {
    if (s == "standard") return Variant::Standard;
    if (s == "concise") return Variant::Concise;
    if (s == "irrelevant") return Variant::Irrelevant;
    throw ValidationError("unknown variant '" + s + "'");
}

ChainCandidate ComposedChain::candidate() const {
    ChainCandidate c;
    for (const auto& h : hops) c.hops.push_back(h.task_id);
    c.categories = categories;
    return c;
}

std::string ComposedChain::key() const {
    std::string k;
    for (std::size_t i = 0; i < hops.size(); ++i) {
        if (i) k += '>';
        k += hops[i].task_id;
    }
    return k + "#" + std::to_string(instance_index);
}

std::vector<SummarizedTask> attach_summaries(const std::vector<SeedTask>& tasks,
                                             const std::vector<SummarizedInstruction>& summaries) {
    std::unordered_map<std::string, const SummarizedInstruction*> by_id;
    for (const auto& s : summaries) by_id[s.task_id] = &s;
    std::vector<SummarizedTask> out;
    out.reserve(tasks.size());
    for (const auto& t : tasks) {
        auto it = by_id.find(t.task_id);
        if (it == by_id.end()) throw ValidationError("no summary for task '" + t.task_id + "'");
        out.push_back(SummarizedTask{t, it->second->summary});
    }
    return out;
}

// ------------------------------------------------------------ reply parsing

std::optional<std::string> extract_first_json_object(std::string_view reply) {
    for (std::size_t start = reply.find('{'); start != std::string_view::npos; start = reply.find('{', start + 1)) {
        int depth = 0;
        bool in_string = false;
        bool escaped = false;
        for (std::size_t i = start; i < reply.size(); ++i) {
            const char c = reply[i];
            if (in_string) {
                if (escaped) {
                    escaped = false;
                } else if (c == '\\') {
                    escaped = true;
                } else if (c == '"') {
                    in_string = false;
                }
                continue;
            }
            if (c == '"') {
                in_string = true;
            } else if (c == '{') {
                ++depth;
            } else if (c == '}') {
                if (--depth == 0) return std::string(reply.substr(start, i - start + 1));
            }
        }
    }
    return std::nullopt;
}

std::string normalize_key(std::string_view key) {
    std::string out;
    for (char c : key) {
        if (std::isalnum(static_cast<unsigned char>(c))) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

namespace {

// Reads a JSON string literal starting at s[pos] == '"'; leaves pos past the closing quote.
std::string read_string_literal(std::string_view s, std::size_t& pos) {
    std::string out;
    ++pos;
    while (pos < s.size() && s[pos] != '"') {
        char c = s[pos++];
        if (c != '\\' || pos >= s.size()) {
            out += c;
            continue;
        }
        char e = s[pos++];
        switch (e) {
            case 'n': out += '\n'; break;
            case 't': out += '\t'; break;
            case 'r': out += '\r'; break;
            case 'b': out += '\b'; break;
            case 'f': out += '\f'; break;
            case 'u': {
                if (pos + 4 <= s.size()) {
                    char32_t cp = static_cast<char32_t>(std::stoul(std::string(s.substr(pos, 4)), nullptr, 16));
                    out += text::utf8_encode(std::u32string(1, cp));
                    pos += 4;
                }
                break;
            }
            default: out += e;
        }
    }
    if (pos < s.size()) ++pos;
    return out;
}

void skip_ws(std::string_view s, std::size_t& pos) {
    while (pos < s.size() && text::is_space(s[pos])) ++pos;
}

std::map<std::string, std::string> object_fields(const std::string& object_text) {
    std::map<std::string, std::string> fields;
    try {
        const Json obj = Json::parse(object_text);
        if (!obj.is_object()) return fields;
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            const auto key = normalize_key(it.key());
            if (fields.count(key)) continue;
            fields[key] = it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
        }
        return fields;
    } catch (const Json::parse_error&) {
        return lenient_fields(object_text);
    }
}

std::string first_nonblank_line(std::string_view reply) {
    std::size_t pos = 0;
    while (pos <= reply.size()) {
        std::size_t eol = reply.find('\n', pos);
        if (eol == std::string_view::npos) eol = reply.size();
        auto line = text::trim(reply.substr(pos, eol - pos));
        if (!line.empty()) return std::string(line);
        pos = eol + 1;
    }
    return {};
}

std::string strip_quotes(std::string_view s) {
    s = text::trim(s);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = text::trim(s.substr(1, s.size() - 2));
    return std::string(s);
}

}  // namespace

std::map<std::string, std::string> lenient_fields(std::string_view s) {
    std::map<std::string, std::string> fields;
    std::size_t pos = s.find('"');
    while (pos != std::string_view::npos && pos < s.size()) {
        const std::string key = normalize_key(read_string_literal(s, pos));
        skip_ws(s, pos);
        if (pos < s.size() && s[pos] == ':') ++pos;
        skip_ws(s, pos);
        std::string value;
        if (pos < s.size() && s[pos] == '"') {
            value = read_string_literal(s, pos);
        } else {
            const std::size_t b = pos;
            while (pos < s.size() && s[pos] != ',' && s[pos] != '}') ++pos;
            value = std::string(text::trim(s.substr(b, pos - b)));
        }
        if (!key.empty() && !fields.count(key)) fields[key] = value;
        pos = s.find('"', pos);
    }
    return fields;
}

// ------------------------------------------------------------ operations

std::vector<ChainCandidate> sample_category_pairs(const std::vector<SummarizedTask>& tasks, std::uint64_t seed) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<const SummarizedTask*>> groups;
    for (const auto& t : tasks) {
        auto& g = groups[t.task.category];
        if (g.empty()) order.push_back(t.task.category);
        g.push_back(&t);
    }
    if (order.size() < 2) {
        throw ValidationError("pair sampling needs at least 2 categories, got " + std::to_string(order.size()));
    }
    std::vector<const SummarizedTask*> pick;
    for (const auto& cat : order) {
        const auto& g = groups[cat];
        Rng rng(mix_seed(seed, text::fnv1a64(cat)));
        pick.push_back(g[static_cast<std::size_t>(rng.below(g.size()))]);
    }
    std::vector<ChainCandidate> out;
    for (std::size_t a = 0; a < pick.size(); ++a) {
        for (std::size_t b = 0; b < pick.size(); ++b) {
            if (a == b) continue;
            out.push_back(ChainCandidate{{pick[a]->task.task_id, pick[b]->task.task_id}, {order[a], order[b]}});
        }
    }
    return out;
}

std::vector<ChainCandidate> heuristic_filter(const std::vector<ChainCandidate>& candidates, const CategoryRules& rules) {
    std::vector<ChainCandidate> out;
    for (const auto& c : candidates) {
        if (rules.allows(c.categories)) out.push_back(c);
    }
    return out;
}

ValidityResult parse_validity_reply(const std::string& reply) {
    ValidityResult r;
    r.raw = reply;
    const auto object = extract_first_json_object(reply);
    if (!object) {
        r.reason = "unparseable";
        return r;
    }
    const auto fields = object_fields(*object);
    auto verdict = fields.find("validinput");
    if (verdict == fields.end()) verdict = fields.find("valid");
    if (verdict == fields.end()) {
        r.reason = "unparseable";
        return r;
    }
    const auto word = text::to_lower_ascii(text::trim(verdict->second));
    if (auto it = fields.find("reason"); it != fields.end()) r.reason = it->second;
    if (word == "yes") {
        std::string output;
        if (auto it = fields.find("output"); it != fields.end()) output = std::string(text::trim(it->second));
        if (output.empty()) {
            r.reason = "empty output";
            return r;
        }
        r.valid = true;
        r.output = std::move(output);
    } else if (word != "no") {
        r.reason = "unparseable";
    }
    return r;
}

ValidityResult check_composability(const std::string& first_instruction, const std::string& first_output,
                                   const std::string& second_instruction, Gateway& gateway,
                                   const PromptTemplate& prompt) {
    if (text::trim(first_instruction).empty() || text::trim(first_output).empty() ||
        text::trim(second_instruction).empty()) {
        throw ValidationError("composability check needs nonempty instructions and output");
    }
    const auto reply = gateway.ask(prompt.render({{"instruction", second_instruction}, {"input", first_output}}));
    return parse_validity_reply(reply.text);
}

std::string compose_instruction_text(const std::vector<std::string>& instructions) {
    if (instructions.size() < 2) throw ValidationError("a composed instruction needs at least 2 parts");
    return text::join(instructions, " and then ");
}

RewriteResult rewrite_consistency(const std::string& joined_instruction, const std::vector<std::string>& subtasks,
                                  Gateway& gateway, const PromptTemplate& prompt) {
    std::string listing;
    for (std::size_t i = 0; i < subtasks.size(); ++i) {
        if (i) listing += "\n\n";
        listing += "Subtask " + std::to_string(i + 1) + ": \"" + subtasks[i] + "\"";
    }
    const auto reply = gateway.ask(prompt.render({{"instruction", joined_instruction}, {"subtasks", listing}}));
    RewriteResult r{joined_instruction, false, {}};
    const auto object = extract_first_json_object(reply.text);
    if (!object) {
        r.warning = "consistency rewrite: no JSON object in reply";
        return r;
    }
    const auto fields = object_fields(*object);
    auto it = fields.find("modifiedinstruction");
    if (it == fields.end() || text::trim(it->second).empty()) {
        r.warning = "consistency rewrite: reply lacks modified_instruction";
        return r;
    }
    r.instruction = std::string(text::trim(it->second));
    r.rewritten = true;
    return r;
}

namespace {

const SummarizedTask& lookup(const std::vector<SummarizedTask>& tasks, const std::string& id) {
    for (const auto& t : tasks) {
        if (t.task.task_id == id) return t;
    }
    throw ValidationError("unknown task '" + id + "'");
}

bool has_marker(const std::vector<std::string>& outputs) {
    return std::any_of(outputs.begin(), outputs.end(), [](const std::string& o) { return contains_hop_marker(o); });
}

void finish_instruction(ComposedChain& chain, Gateway& gateway, const PromptLibrary& prompts, bool rewrite,
                        std::vector<std::string>& warnings) {
    std::vector<std::string> parts;
    for (const auto& h : chain.hops) parts.push_back(h.instruction);
    chain.joined_instruction = compose_instruction_text(parts);
    if (!rewrite) return;
    auto r = rewrite_consistency(chain.joined_instruction, parts, gateway, prompts.consistency);
    if (!r.warning.empty()) warnings.push_back(chain.key() + ": " + r.warning);
    chain.joined_instruction = std::move(r.instruction);
}

}  // namespace

DistillOutcome distill_instance(const ChainCandidate& candidate, const std::vector<SummarizedTask>& tasks,
                                std::size_t instance_index, Gateway& gateway, const PromptLibrary& prompts,
                                bool consistency_rewrite) {
    if (candidate.hops.size() != 2 || candidate.categories.size() != 2) {
        throw ValidationError("distillation expects a two-hop candidate");
    }
    const auto& first = lookup(tasks, candidate.hops[0]);
    const auto& second = lookup(tasks, candidate.hops[1]);
    if (instance_index >= first.task.instances.size()) {
        throw ValidationError("instance " + std::to_string(instance_index) + " out of range for task '" +
                              first.task.task_id + "'");
    }
    const auto& inst = first.task.instances[instance_index];

    DistillOutcome out;
    const auto verdict = check_composability(first.instruction, inst.output, second.instruction, gateway,
                                             prompts.composability);
    if (!verdict.valid) {
        out.rejection = Rejection{candidate, "composability", verdict.reason};
        return out;
    }
    ComposedChain chain;
    chain.hops = {{first.task.task_id, first.instruction}, {second.task.task_id, second.instruction}};
    chain.input = inst.input;
    chain.hop_outputs = {inst.output, verdict.output};
    chain.categories = candidate.categories;
    chain.instance_index = instance_index;
    if (has_marker(chain.hop_outputs)) {
        out.rejection = Rejection{candidate, "scaffold", "hop output contains a hop marker"};
        return out;
    }
    finish_instruction(chain, gateway, prompts, consistency_rewrite, out.warnings);
    out.chain = std::move(chain);
    return out;
}

DistillOutcome distill_pair(const ChainCandidate& candidate, const std::vector<SummarizedTask>& tasks,
                            Gateway& gateway, const PromptLibrary& prompts, const ComposeOptions& options) {
    if (candidate.hops.empty()) throw ValidationError("empty candidate");
    const auto& first = lookup(tasks, candidate.hops[0]);
    const auto idx = sample_instance_indices(first.task, 1, options.seed);
    if (idx.empty()) throw ValidationError("task '" + first.task.task_id + "' has no instances");
    return distill_instance(candidate, tasks, idx.front(), gateway, prompts, options.consistency_rewrite);
}

ComposeResult compose_pairs(const std::vector<SummarizedTask>& tasks, const CategoryRules& rules, Gateway& gateway,
                            const PromptLibrary& prompts, const ComposeOptions& options) {
    ComposeResult result;
    const auto candidates = sample_category_pairs(tasks, options.seed);

    struct Work {
        ChainCandidate candidate;
        std::size_t instance;
    };
    std::vector<Work> work;
    for (const auto& c : candidates) {
        if (!rules.allows(c.categories)) {
            result.rejections.push_back(Rejection{c, "heuristic", "final-only category before the last hop"});
            continue;
        }
        const auto& first = lookup(tasks, c.hops[0]);
        for (auto i : sample_instance_indices(first.task, std::max<std::size_t>(1, options.pair_instances), options.seed)) {
            work.push_back(Work{c, i});
        }
    }
    auto outcomes = parallel_map(work, options.workers, [&](const Work& w) {
        return distill_instance(w.candidate, tasks, w.instance, gateway, prompts, options.consistency_rewrite);
    });
    for (auto& o : outcomes) {
        if (o.chain) result.chains.push_back(std::move(*o.chain));
        if (o.rejection) result.rejections.push_back(std::move(*o.rejection));
        for (auto& w : o.warnings) result.warnings.push_back(std::move(w));
    }
    return result;
}

ComposeResult extend_chains(const std::vector<ComposedChain>& chains, const std::vector<ComposedChain>& pairs,
                            const CategoryRules& rules, Gateway& gateway, const PromptLibrary& prompts,
                            const ComposeOptions& options) {
    std::unordered_map<std::string, std::vector<const ComposedChain*>> by_first;
    for (const auto& p : pairs) {
        if (p.chain_length() != 2) throw ValidationError("extension pairs must have chain length 2");
        by_first[p.hops[0].task_id].push_back(&p);
    }

    ComposeResult result;
    struct Join {
        const ComposedChain* chain;
        const ComposedChain* pair;
    };
    std::vector<Join> joins;
    for (const auto& c : chains) {
        if (c.hops.empty()) continue;
        auto it = by_first.find(c.hops.back().task_id);
        if (it == by_first.end()) continue;
        for (const ComposedChain* p : it->second) {
            const auto& z = p->hops[1];
            const bool revisits = std::any_of(c.hops.begin(), c.hops.end(),
                                              [&](const ChainHop& h) { return h.task_id == z.task_id; });
            if (revisits) continue;
            auto categories = c.categories;
            categories.push_back(p->categories[1]);
            if (!rules.allows(categories)) {
                auto cand = c.candidate();
                cand.hops.push_back(z.task_id);
                cand.categories = std::move(categories);
                result.rejections.push_back(Rejection{std::move(cand), "heuristic", "final-only category before the last hop"});
                continue;
            }
            joins.push_back(Join{&c, p});
        }
    }

    auto outcomes = parallel_map(joins, options.workers, [&](const Join& j) {
        DistillOutcome out;
        ComposedChain next = *j.chain;
        next.hops.push_back(j.pair->hops[1]);
        next.categories.push_back(j.pair->categories[1]);
        next.variant = Variant::Standard;
        next.flagged = false;
        const auto verdict = check_composability(j.chain->hops.back().instruction, j.chain->hop_outputs.back(),
                                                 j.pair->hops[1].instruction, gateway, prompts.composability);
        if (!verdict.valid) {
            out.rejection = Rejection{next.candidate(), "extend", verdict.reason};
            return out;
        }
        next.hop_outputs.push_back(verdict.output);
        if (contains_hop_marker(verdict.output)) {
            out.rejection = Rejection{next.candidate(), "scaffold", "hop output contains a hop marker"};
            return out;
        }
        finish_instruction(next, gateway, prompts, options.consistency_rewrite, out.warnings);
        out.chain = std::move(next);
        return out;
    });
    for (auto& o : outcomes) {
        if (o.chain) result.chains.push_back(std::move(*o.chain));
        if (o.rejection) result.rejections.push_back(std::move(*o.rejection));
        for (auto& w : o.warnings) result.warnings.push_back(std::move(w));
    }
    return result;
}

ComposedChain build_irrelevant_variant(const ComposedChain& chain, const std::vector<SeedTask>& corpus,
                                       std::uint64_t seed) {
    if (chain.chain_length() < 2) throw ValidationError("irrelevant variant needs chain length >= 2");
    auto in_chain = [&](const std::string& id) {
        return std::any_of(chain.hops.begin(), chain.hops.end(), [&](const ChainHop& h) { return h.task_id == id; });
    };
    std::vector<std::string> pool;
    for (const auto& t : corpus) {
        if (in_chain(t.task_id)) continue;
        for (const auto& inst : t.instances) {
            if (text::trim(inst.output).empty()) continue;
            if (std::find(chain.hop_outputs.begin(), chain.hop_outputs.end(), inst.output) != chain.hop_outputs.end()) continue;
            if (std::find(pool.begin(), pool.end(), inst.output) != pool.end()) continue;
            if (contains_hop_marker(inst.output)) continue;
            pool.push_back(inst.output);
        }
    }
    const std::size_t need = chain.hop_outputs.size() - 1;
    if (pool.size() < need) {
        throw ValidationError("corpus has " + std::to_string(pool.size()) + " unrelated outputs, chain " + chain.key() +
                              " needs " + std::to_string(need));
    }
    Rng rng(mix_seed(seed, text::fnv1a64(chain.key())));
    auto picks = rng.choose(pool.size(), need);
    rng.shuffle(picks);
    ComposedChain out = chain;
    for (std::size_t i = 0; i < need; ++i) out.hop_outputs[i + 1] = pool[picks[i]];
    out.variant = Variant::Irrelevant;
    return out;
}

ComposedChain build_concise_variant(const ComposedChain& chain, Gateway& gateway, const PromptTemplate& prompt,
                                    const ConciseOptions& options) {
    if (chain.chain_length() < 2) throw ValidationError("concise variant needs chain length >= 2");
    ComposedChain out = chain;
    out.variant = Variant::Concise;

    std::optional<std::string> shortest;
    std::string note;
    for (int attempt = 1; attempt <= options.max_attempts; ++attempt) {
        const auto reply = gateway.ask(prompt.render({{"instruction", chain.joined_instruction}, {"retry_note", note}}));
        std::string line = first_nonblank_line(reply.text);
        if (line.rfind("Summary:", 0) == 0) line = line.substr(8);
        std::string summary = strip_quotes(line);
        if (summary.empty()) break;
        const std::size_t words = word_count(summary);
        if (!shortest || words < word_count(*shortest)) shortest = summary;
        if (words <= options.max_words) {
            out.joined_instruction = std::move(summary);
            out.flagged = false;
            return out;
        }
        note = "Your previous summary \"" + summary + "\" has " + std::to_string(words) +
               " words. Write a summary with at most " + std::to_string(options.max_words) + " words.\n\n";
    }
    out.flagged = true;
    if (shortest) out.joined_instruction = *shortest;
    return out;
}

// ------------------------------------------------------------ serialization

Json to_json(const ComposedChain& c) {
    Json hops = Json::array();
    for (const auto& h : c.hops) hops.push_back(Json{{"task_id", h.task_id}, {"instruction", h.instruction}});
    return Json{{"hops", hops},
                {"joined_instruction", c.joined_instruction},
                {"input", c.input},
                {"hop_outputs", c.hop_outputs},
                {"chain_length", c.chain_length()},
                {"categories", c.categories},
                {"instance_index", c.instance_index},
                {"variant", to_string(c.variant)},
                {"flagged", c.flagged}};
}

namespace {

std::vector<std::string> require_string_list(const Json& obj, const char* key, std::size_t line) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_array()) throw ParseError(std::string("field '") + key + "' must be a list", line);
    std::vector<std::string> out;
    for (const auto& v : *it) {
        if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must hold strings", line);
        out.push_back(v.get<std::string>());
    }
    return out;
}

}  // namespace

ComposedChain chain_from_json(const Json& obj, std::size_t line) {
    io::reject_unknown_keys(obj, {"hops", "joined_instruction", "input", "hop_outputs", "chain_length", "categories",
                                  "instance_index", "variant", "flagged"},
                            line);
    ComposedChain c;
    auto hops = obj.find("hops");
    if (hops == obj.end() || !hops->is_array()) throw ParseError("field 'hops' must be a list", line);
    for (const auto& h : *hops) {
        if (!h.is_object()) throw ParseError("hop entries must be objects", line);
        io::reject_unknown_keys(h, {"task_id", "instruction"}, line);
        c.hops.push_back(ChainHop{io::require_string(h, "task_id", line), io::require_string(h, "instruction", line)});
    }
    c.joined_instruction = io::require_string(obj, "joined_instruction", line);
    c.input = io::require_string(obj, "input", line);
    c.hop_outputs = require_string_list(obj, "hop_outputs", line);
    c.categories = require_string_list(obj, "categories", line);
    const auto length = io::require_int(obj, "chain_length", line);
    const auto index = io::require_int(obj, "instance_index", line);
    if (index < 0) throw ParseError("instance_index must be non-negative", line);
    c.instance_index = static_cast<std::size_t>(index);
    try {
        c.variant = variant_from_string(io::require_string(obj, "variant", line));
    } catch (const ParseError&) {
        throw;
    } catch (const ValidationError& e) {
        throw ParseError(e.what(), line);
    }
    auto f = obj.find("flagged");
    if (f == obj.end() || !f->is_boolean()) throw ParseError("field 'flagged' must be a boolean", line);
    c.flagged = f->get<bool>();
    if (c.hops.empty() || length != c.chain_length() || c.hop_outputs.size() != c.hops.size() ||
        c.categories.size() != c.hops.size()) {
        throw ParseError("chain_length, hops, hop_outputs and categories disagree", line);
    }
    return c;
}

std::vector<ComposedChain> load_chains(const std::filesystem::path& path) {
    std::vector<ComposedChain> out;
    io::for_each_jsonl(path, [&](const Json& obj, std::size_t line) { out.push_back(chain_from_json(obj, line)); });
    return out;
}

void write_chains(const std::vector<ComposedChain>& chains, const std::filesystem::path& path) {
    std::string body;
    for (const auto& c : chains) body += to_json(c).dump() + "\n";
    io::write_file(path, body);
}

Json to_json(const Rejection& r) {
    return Json{{"candidate", Json{{"hops", r.candidate.hops}, {"categories", r.candidate.categories}}},
                {"stage", r.stage},
                {"reason", r.reason}};
}

void write_rejections(const std::vector<Rejection>& rejections, const std::filesystem::path& path) {
    std::string body;
    for (const auto& r : rejections) body += to_json(r).dump() + "\n";
    io::write_file(path, body);
}

}  // namespace coi
