// SPDX-License-Identifier: Apache-2.0
#include "coi/corpus.hpp"

#include <algorithm>
#include <unordered_set>

#include "coi/errors.hpp"
#include "coi/io.hpp"
#include "coi/rng.hpp"
#include "coi/text.hpp"

namespace coi {

namespace {

SeedTask task_from_json(const Json& obj, std::size_t line, const LoadOptions& options) {
    io::reject_unknown_keys(obj, {"task_id", "category", "instruction", "input_language", "output_language", "instances"},
                            line);
    SeedTask task;
    task.task_id = io::require_string(obj, "task_id", line);
    task.category = io::require_string(obj, "category", line);
    task.instruction = io::require_string(obj, "instruction", line);
    task.input_language = io::require_string(obj, "input_language", line);
    task.output_language = io::require_string(obj, "output_language", line);
    task.source_line = line;

    if (task.task_id.empty()) throw ParseError("task_id must be nonempty", line);
    if (task.category.empty()) throw ParseError("category must be nonempty", line);

    auto it = obj.find("instances");
    if (it == obj.end()) throw ParseError("missing field 'instances'", line);
    if (!it->is_array()) throw ParseError("field 'instances' must be an array", line);
    if (it->empty()) throw ParseError("task '" + task.task_id + "' has no instances", line);
    for (const auto& inst : *it) {
        if (!inst.is_object()) throw ParseError("instance must be an object", line);
        io::reject_unknown_keys(inst, {"input", "output"}, line);
        Instance x{io::require_string(inst, "input", line), io::require_string(inst, "output", line)};
        if (!options.allow_empty && (x.input.empty() || x.output.empty())) {
            throw ParseError("empty instance input/output in task '" + task.task_id + "' (use --allow-empty)", line);
        }
        task.instances.push_back(std::move(x));
    }
    return task;
}

}  // namespace

std::vector<SeedTask> load_seed_corpus(const std::filesystem::path& path, const LoadOptions& options) {
    std::vector<SeedTask> tasks;
    std::unordered_set<std::string> seen;
    io::for_each_jsonl(path, [&](const Json& obj, std::size_t line) {
        SeedTask task = task_from_json(obj, line, options);
        if (!seen.insert(task.task_id).second) {
            throw ValidationError("line " + std::to_string(line) + ": duplicate task_id '" + task.task_id + "'");
        }
        tasks.push_back(std::move(task));
    });
    return tasks;
}

std::string serialize_seed_corpus(const std::vector<SeedTask>& tasks) {
    std::string out;
    for (const auto& t : tasks) {
        Json instances = Json::array();
        for (const auto& x : t.instances) instances.push_back(Json{{"input", x.input}, {"output", x.output}});
        Json obj{{"task_id", t.task_id},
                 {"category", t.category},
                 {"instruction", t.instruction},
                 {"input_language", t.input_language},
                 {"output_language", t.output_language},
                 {"instances", std::move(instances)}};
        out += obj.dump();
        out += '\n';
    }
    return out;
}

void write_seed_corpus(const std::vector<SeedTask>& tasks, const std::filesystem::path& path) {
    io::write_file(path, serialize_seed_corpus(tasks));
}

std::vector<SeedTask> filter_english_input(const std::vector<SeedTask>& tasks) {
    std::vector<SeedTask> out;
    std::copy_if(tasks.begin(), tasks.end(), std::back_inserter(out),
                 [](const SeedTask& t) { return t.input_language == "en"; });
    return out;
}

std::vector<std::size_t> sample_instance_indices(const SeedTask& task, std::size_t n, std::uint64_t seed) {
    Rng rng(mix_seed(seed, text::fnv1a64(task.task_id)));
    return rng.choose(task.instances.size(), n);
}

std::vector<Instance> sample_instances(const SeedTask& task, std::size_t n, std::uint64_t seed) {
    std::vector<Instance> out;
    for (std::size_t i : sample_instance_indices(task, n, seed)) out.push_back(task.instances[i]);
    return out;
}

const SeedTask* find_task(const std::vector<SeedTask>& tasks, const std::string& task_id) {
    auto it = std::find_if(tasks.begin(), tasks.end(), [&](const SeedTask& t) { return t.task_id == task_id; });
    return it == tasks.end() ? nullptr : &*it;
}

}  // namespace coi
