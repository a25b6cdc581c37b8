// SPDX-License-Identifier: Apache-2.0
#include "coi/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <unordered_set>

#include "coi/errors.hpp"
#include "coi/rng.hpp"
#include "coi/scaffold.hpp"
#include "coi/summarizer.hpp"
#include "coi/text.hpp"

namespace coi {

std::string to_string(Split s) { return s == Split::Train ? "train" : "test"; }

Split split_from_string(const std::string& s) {
    if (s == "train") return Split::Train;
    if (s == "test") return Split::Test;
    throw ValidationError("split must be 'train' or 'test', got '" + s + "'");
}

CoiExample example_from_chain(const ComposedChain& chain) {
    CoiExample e;
    e.example_id = "coi" + std::to_string(chain.chain_length()) + ":" + chain.key();
    if (chain.variant != Variant::Standard) e.example_id += "+" + to_string(chain.variant);
    e.instruction = chain.joined_instruction;
    e.input = chain.input;
    e.target = render_target(chain.hop_outputs);
    e.chain_length = chain.chain_length();
    e.category_path = chain.categories;
    e.variant = to_string(chain.variant);
    return e;
}

Dataset single_instruction_examples(const std::vector<SummarizedTask>& tasks, std::size_t per_task,
                                    std::uint64_t seed) {
    Dataset out;
    for (const auto& t : tasks) {
        for (auto i : sample_instance_indices(t.task, per_task, seed)) {
            CoiExample e;
            e.example_id = "coi1:" + t.task.task_id + "#" + std::to_string(i);
            e.instruction = t.instruction;
            e.input = t.task.instances[i].input;
            e.target = t.task.instances[i].output;
            e.chain_length = 1;
            e.category_path = {t.task.category};
            out.push_back(std::move(e));
        }
    }
    return out;
}

namespace {

std::string path_key(const CoiExample& e) { return text::join(e.category_path, std::string_view("\x1f", 1)); }

// Groups of example indices keyed by category path, in first-appearance order.
std::vector<std::pair<std::string, std::vector<std::size_t>>> group_by_path(const Dataset& examples) {
    std::vector<std::pair<std::string, std::vector<std::size_t>>> groups;
    std::map<std::string, std::size_t> slot;
    for (std::size_t i = 0; i < examples.size(); ++i) {
        const auto key = path_key(examples[i]);
        auto [it, fresh] = slot.emplace(key, groups.size());
        if (fresh) groups.emplace_back(key, std::vector<std::size_t>{});
        groups[it->second].second.push_back(i);
    }
    return groups;
}

}  // namespace

Dataset limit_per_category(const Dataset& examples, std::size_t cap, std::uint64_t seed) {
    if (cap < 1) throw ValidationError("per-category cap must be >= 1");
    std::vector<bool> keep(examples.size(), false);
    for (const auto& [key, members] : group_by_path(examples)) {
        if (members.size() <= cap) {
            for (auto i : members) keep[i] = true;
            continue;
        }
        Rng rng(mix_seed(seed, text::fnv1a64(key)));
        for (auto j : rng.choose(members.size(), cap)) keep[members[j]] = true;
    }
    Dataset out;
    for (std::size_t i = 0; i < examples.size(); ++i) {
        if (keep[i]) out.push_back(examples[i]);
    }
    return out;
}

Dataset split_train_test(const Dataset& examples, double test_fraction, std::uint64_t seed) {
    if (!(test_fraction >= 0.0 && test_fraction <= 1.0)) throw ValidationError("test fraction must lie in [0, 1]");
    Dataset out = examples;
    for (auto& e : out) e.split = Split::Train;
    if (examples.empty()) return out;

    const auto groups = group_by_path(examples);
    const auto total_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(examples.size())));

    std::vector<std::size_t> quota(groups.size());
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t assigned = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const double exact = test_fraction * static_cast<double>(groups[g].second.size());
        quota[g] = std::min(groups[g].second.size(), static_cast<std::size_t>(std::floor(exact)));
        assigned += quota[g];
        remainders.emplace_back(exact - std::floor(exact), g);
    }
    Rng order(mix_seed(seed, 0x7469652d6f726465ULL));
    order.shuffle(remainders);
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t r = 0; assigned < total_test && r < remainders.size(); ++r) {
        const auto g = remainders[r].second;
        if (quota[g] < groups[g].second.size()) {
            ++quota[g];
            ++assigned;
        }
    }

    for (std::size_t g = 0; g < groups.size(); ++g) {
        const auto& members = groups[g].second;
        Rng rng(mix_seed(seed, text::fnv1a64(groups[g].first)));
        for (auto j : rng.choose(members.size(), quota[g])) out[members[j]].split = Split::Test;
    }
    return out;
}

Dataset assign_splits(const Dataset& examples, const SplitPolicy& policy, std::uint64_t seed) {
    std::map<int, std::vector<std::size_t>> middle;
    Dataset out = examples;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int k = out[i].chain_length;
        if (k <= policy.train_only_max) {
            out[i].split = Split::Train;
        } else if (k >= policy.test_only_min) {
            out[i].split = Split::Test;
        } else {
            middle[k].push_back(i);
        }
    }
    for (const auto& [k, positions] : middle) {
        Dataset level;
        for (auto i : positions) level.push_back(out[i]);
        const auto split = split_train_test(level, policy.test_fraction, mix_seed(seed, static_cast<std::uint64_t>(k)));
        for (std::size_t j = 0; j < split.size(); ++j) out[positions[j]].split = split[j].split;
    }
    return out;
}

Dataset build_mixture(const std::vector<MixturePart>& parts) {
    Dataset out;
    std::unordered_set<std::string> ids;
    for (const auto& part : parts) {
        if (!part.dataset) continue;
        for (const auto& e : *part.dataset) {
            if (!part.lengths.empty() &&
                std::find(part.lengths.begin(), part.lengths.end(), e.chain_length) == part.lengths.end()) {
                continue;
            }
            if (part.split && e.split != *part.split) continue;
            if (!ids.insert(e.example_id).second) {
                throw ValidationError("duplicate example id '" + e.example_id + "' in mixture part '" + part.name + "'");
            }
            CoiExample copy = e;
            copy.source = part.name;
            out.push_back(std::move(copy));
        }
    }
    return out;
}

DatasetReport compute_report(const Dataset& dataset) {
    DatasetReport r;
    std::map<int, std::set<std::vector<std::string>>> tuples;
    std::map<int, double> word_sums;
    std::map<int, std::size_t> sizes;
    for (const auto& e : dataset) {
        auto& c = r.counts_by_length[e.chain_length];
        (e.split == Split::Train ? c.train : c.test) += 1;
        tuples[e.chain_length].insert(e.category_path);
        word_sums[e.chain_length] += static_cast<double>(word_count(e.instruction));
        sizes[e.chain_length] += 1;
    }
    for (const auto& [k, set] : tuples) r.unique_category_tuples[k] = set.size();
    for (const auto& [k, n] : sizes) r.mean_instruction_words[k] = word_sums[k] / static_cast<double>(n);
    r.total = dataset.size();
    return r;
}

Json report_to_json(const DatasetReport& r) {
    Json counts = Json::object();
    Json tuples = Json::object();
    Json words = Json::object();
    for (const auto& [k, c] : r.counts_by_length) {
        counts[std::to_string(k)] = Json{{"train", c.train}, {"test", c.test}};
    }
    for (const auto& [k, n] : r.unique_category_tuples) tuples[std::to_string(k)] = n;
    for (const auto& [k, m] : r.mean_instruction_words) words[std::to_string(k)] = m;
    return Json{{"total", r.total},
                {"counts_by_length", counts},
                {"unique_category_tuples", tuples},
                {"mean_instruction_words", words}};
}

std::string report_to_text(const DatasetReport& r) {
    char line[160];
    std::string out;
    std::snprintf(line, sizeof line, "%-6s %8s %8s %8s %12s %10s\n", "length", "train", "test", "total", "unique_paths",
                  "mean_words");
    out += line;
    std::size_t train = 0;
    std::size_t test = 0;
    for (const auto& [k, c] : r.counts_by_length) {
        const auto tuples = r.unique_category_tuples.count(k) ? r.unique_category_tuples.at(k) : 0;
        const auto words = r.mean_instruction_words.count(k) ? r.mean_instruction_words.at(k) : 0.0;
        std::snprintf(line, sizeof line, "%-6d %8zu %8zu %8zu %12zu %10.2f\n", k, c.train, c.test, c.train + c.test,
                      tuples, words);
        out += line;
        train += c.train;
        test += c.test;
    }
    std::snprintf(line, sizeof line, "%-6s %8zu %8zu %8zu\n", "all", train, test, train + test);
    out += line;
    return out;
}

Json to_json(const CoiExample& e) {
    Json j{{"example_id", e.example_id},
           {"instruction", e.instruction},
           {"input", e.input},
           {"target", e.target},
           {"chain_length", e.chain_length},
           {"category_path", e.category_path},
           {"split", to_string(e.split)},
           {"variant", e.variant}};
    if (e.source) j["source"] = *e.source;
    return j;
}

CoiExample example_from_json(const Json& obj, std::size_t line) {
    io::reject_unknown_keys(obj, {"example_id", "instruction", "input", "target", "chain_length", "category_path",
                                  "split", "variant", "source"},
                            line);
    CoiExample e;
    e.example_id = io::require_string(obj, "example_id", line);
    if (e.example_id.empty()) throw ParseError("example_id must be nonempty", line);
    e.instruction = io::require_string(obj, "instruction", line);
    e.input = io::require_string(obj, "input", line);
    e.target = io::require_string(obj, "target", line);
    const auto k = io::require_int(obj, "chain_length", line);
    if (k < 1) throw ParseError("chain_length must be >= 1", line);
    e.chain_length = static_cast<int>(k);
    auto path = obj.find("category_path");
    if (path == obj.end() || !path->is_array()) throw ParseError("field 'category_path' must be a list", line);
    for (const auto& c : *path) {
        if (!c.is_string()) throw ParseError("field 'category_path' must hold strings", line);
        e.category_path.push_back(c.get<std::string>());
    }
    if (e.category_path.size() != static_cast<std::size_t>(e.chain_length)) {
        throw ParseError("category_path length differs from chain_length", line);
    }
    try {
        e.split = split_from_string(io::require_string(obj, "split", line));
        variant_from_string(io::require_string(obj, "variant", line));
    } catch (const ParseError&) {
        throw;
    } catch (const ValidationError& ex) {
        throw ParseError(ex.what(), line);
    }
    e.variant = obj["variant"].get<std::string>();
    if (obj.contains("source")) e.source = io::require_string(obj, "source", line);
    try {
        parse_target(e.target, e.chain_length);
    } catch (const ParseError& ex) {
        throw ParseError(std::string("target: ") + ex.what(), line);
    }
    return e;
}

std::string serialize_dataset(const Dataset& dataset) {
    std::string body;
    for (const auto& e : dataset) body += to_json(e).dump() + "\n";
    return body;
}

void write_dataset(const Dataset& dataset, const std::filesystem::path& path) {
    io::write_file(path, serialize_dataset(dataset));
}

Dataset load_dataset(const std::filesystem::path& path) {
    Dataset out;
    std::unordered_set<std::string> ids;
    io::for_each_jsonl(path, [&](const Json& obj, std::size_t line) {
        auto e = example_from_json(obj, line);
        if (!ids.insert(e.example_id).second) throw ParseError("duplicate example_id '" + e.example_id + "'", line);
        out.push_back(std::move(e));
    });
    return out;
}

}  // namespace coi
