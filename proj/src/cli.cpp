// SPDX-License-Identifier: Apache-2.0
#include "coi/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstdio>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "coi/composer.hpp"
#include "coi/corpus.hpp"
#include "coi/dataset.hpp"
#include "coi/downstream.hpp"
#include "coi/errors.hpp"
#include "coi/evaluator.hpp"
#include "coi/io.hpp"
#include "coi/langid.hpp"
#include "coi/llm_gateway.hpp"
#include "coi/prompt.hpp"
#include "coi/scaffold.hpp"
#include "coi/summarizer.hpp"
#include "coi/text.hpp"

#ifndef COI_VERSION
#define COI_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;

namespace coi::cli {

// ------------------------------------------------------------ config

fs::path default_data_dir() {
    if (const char* env = std::getenv("COI_DATA_DIR"); env && *env) return fs::path(env);
    return fs::path(COI_DATA_DIR);
}

PipelineConfig::PipelineConfig() {
    const fs::path data = default_data_dir();
    rules_file = data / "rules" / "final_only.txt";
    prompt_dir = data / "prompts";
    profile_dir = data / "data" / "langid";
}

namespace {

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    T out{};
    const auto* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end) throw ConfigError("setting '" + key + "': not a number: '" + value + "'");
    return out;
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("setting '" + key + "': not a number: '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    const auto v = text::to_lower_ascii(value);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("setting '" + key + "': not a boolean: '" + value + "'");
}

fs::path resolve(const std::string& value, const fs::path& base) {
    if (value.empty()) return {};
    fs::path p(value);
    return p.is_absolute() || base.empty() ? p : base / p;
}

}  // namespace

void PipelineConfig::set(const std::string& key, const std::string& value, const fs::path& base) {
    using Setter = std::function<void(const std::string&)>;
    const std::map<std::string, Setter> table = {
        {"provider", [&](const std::string& v) {
             if (v != "remote" && v != "mock") throw ConfigError("setting 'provider' must be remote or mock");
             provider = v;
         }},
        {"model_id", [&](const std::string& v) { model_id = v; }},
        {"api_base", [&](const std::string& v) { api_base = v; }},
        {"timeout_ms", [&](const std::string& v) { timeout_ms = parse_number<int>(key, v); }},
        {"requests_per_minute", [&](const std::string& v) { requests_per_minute = parse_real(key, v); }},
        {"retry_limit", [&](const std::string& v) { retry_limit = parse_number<int>(key, v); }},
        {"max_tokens", [&](const std::string& v) { max_tokens = parse_number<int>(key, v); }},
        {"temperature", [&](const std::string& v) { temperature = parse_real(key, v); }},
        {"cache_dir", [&](const std::string& v) { cache_dir = resolve(v, base); }},
        {"mock_table", [&](const std::string& v) { mock_table = resolve(v, base); }},
        {"seed_corpus", [&](const std::string& v) { seed_corpus = resolve(v, base); }},
        {"rules_file", [&](const std::string& v) { rules_file = resolve(v, base); }},
        {"prompt_dir", [&](const std::string& v) { prompt_dir = resolve(v, base); }},
        {"profile_dir", [&](const std::string& v) { profile_dir = resolve(v, base); }},
        {"output_dir", [&](const std::string& v) { output_dir = resolve(v, base); }},
        {"seed", [&](const std::string& v) { seed = parse_number<std::uint64_t>(key, v); }},
        {"split_seed", [&](const std::string& v) { split_seed = parse_number<std::uint64_t>(key, v); }},
        {"judge_seed", [&](const std::string& v) { judge_seed = parse_number<std::uint64_t>(key, v); }},
        {"instances_per_task", [&](const std::string& v) { instances_per_task = parse_number<std::size_t>(key, v); }},
        {"pair_instances", [&](const std::string& v) { pair_instances = parse_number<std::size_t>(key, v); }},
        {"cap_per_category", [&](const std::string& v) { cap_per_category = parse_number<std::size_t>(key, v); }},
        {"max_chain_length", [&](const std::string& v) { max_chain_length = parse_number<int>(key, v); }},
        {"test_fraction", [&](const std::string& v) { test_fraction = parse_real(key, v); }},
        {"train_only_max", [&](const std::string& v) { train_only_max = parse_number<int>(key, v); }},
        {"test_only_min", [&](const std::string& v) { test_only_min = parse_number<int>(key, v); }},
        {"summary_max_attempts", [&](const std::string& v) { summary_max_attempts = parse_number<int>(key, v); }},
        {"concise_max_attempts", [&](const std::string& v) { concise_max_attempts = parse_number<int>(key, v); }},
        {"workers", [&](const std::string& v) { workers = parse_number<std::size_t>(key, v); }},
        {"consistency_rewrite", [&](const std::string& v) { consistency_rewrite = parse_bool(key, v); }},
        {"english_only", [&](const std::string& v) { english_only = parse_bool(key, v); }},
        {"allow_empty", [&](const std::string& v) { allow_empty = parse_bool(key, v); }},
        {"variants", [&](const std::string& v) {
             variants.clear();
             std::string item;
             std::stringstream ss(v);
             while (std::getline(ss, item, ',')) {
                 auto t = std::string(text::trim(item));
                 if (t.empty()) continue;
                 if (t != "concise" && t != "irrelevant") throw ConfigError("unknown variant '" + t + "'");
                 variants.push_back(t);
             }
         }},
    };
    auto it = table.find(key);
    if (it == table.end()) throw ConfigError("unknown config key '" + key + "'");
    it->second(value);
}

void PipelineConfig::load_file(const fs::path& path) {
    if (!fs::exists(path)) throw ConfigError("config file not found: " + path.string());
    const auto body = io::read_file(path);
    const auto base = path.parent_path();
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos <= body.size()) {
        std::size_t eol = body.find('\n', pos);
        if (eol == std::string::npos) eol = body.size();
        const auto line = text::trim(std::string_view(body).substr(pos, eol - pos));
        pos = eol + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key(text::trim(line.substr(0, eq)));
        const std::string value(text::trim(line.substr(eq + 1)));
        try {
            set(key, value, base);
        } catch (const ConfigError& e) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

std::string PipelineConfig::canonical() const {
    Json j{{"provider", provider},
           {"model_id", model_id},
           {"max_tokens", max_tokens},
           {"temperature", temperature},
           {"retry_limit", retry_limit},
           {"seed", seed},
           {"split_seed", split_seed},
           {"judge_seed", judge_seed},
           {"instances_per_task", instances_per_task},
           {"pair_instances", pair_instances},
           {"cap_per_category", cap_per_category},
           {"max_chain_length", max_chain_length},
           {"test_fraction", test_fraction},
           {"train_only_max", train_only_max},
           {"test_only_min", test_only_min},
           {"summary_max_attempts", summary_max_attempts},
           {"concise_max_attempts", concise_max_attempts},
           {"consistency_rewrite", consistency_rewrite},
           {"english_only", english_only},
           {"allow_empty", allow_empty},
           {"variants", variants}};
    return j.dump();
}

// ------------------------------------------------------------ run context

namespace {

struct RunRecord {
    std::string command;
    std::map<std::string, std::string> inputs;  // logical name -> sha256
};

class Context {
public:
    Context(PipelineConfig cfg, std::ostream& out, std::ostream& err) : cfg_(std::move(cfg)), out_(out), err_(err) {}

    PipelineConfig& cfg() { return cfg_; }
    std::ostream& out() { return out_; }

    void warn(const std::string& msg) { err_ << "warning: " << msg << "\n"; }

    const fs::path& output_dir() {
        if (cfg_.output_dir.empty()) throw ConfigError("no output directory; set output_dir or pass --output-dir");
        return cfg_.output_dir;
    }

    fs::path out_path(const std::string& name) { return output_dir() / name; }

    /// Existing input file; ConfigError naming the path otherwise.
    fs::path require(const fs::path& p, const std::string& what) {
        if (p.empty()) throw ConfigError("no " + what + " configured");
        if (!fs::exists(p)) throw ConfigError(what + " not found: " + p.string());
        return p;
    }

    void record_input(const std::string& name, const fs::path& p) {
        if (fs::is_directory(p)) {
            std::vector<fs::path> files;
            for (const auto& e : fs::directory_iterator(p)) {
                if (e.is_regular_file()) files.push_back(e.path());
            }
            std::sort(files.begin(), files.end());
            for (const auto& f : files) run_.inputs[name + "/" + f.filename().string()] = io::sha256_file(f);
        } else {
            run_.inputs[name] = io::sha256_file(p);
        }
    }

    Gateway& gateway() {
        if (!gateway_) {
            std::shared_ptr<Provider> provider;
            if (cfg_.provider == "mock") {
                provider = MockProvider::from_file(require(cfg_.mock_table, "mock table"));
                record_input("mock_table", cfg_.mock_table);
            } else {
                provider = RemoteProvider::from_env(cfg_.api_base, std::chrono::milliseconds(cfg_.timeout_ms));
            }
            GatewayConfig gc;
            gc.model_id = cfg_.model_id;
            gc.max_tokens = cfg_.max_tokens;
            gc.temperature = cfg_.temperature;
            gc.retry_limit = cfg_.retry_limit;
            gc.requests_per_minute = cfg_.requests_per_minute;
            gc.cache_dir = cfg_.cache_dir;
            if (gc.retry_limit < 1) throw ConfigError("retry_limit must be >= 1");
            gateway_ = std::make_unique<Gateway>(std::move(provider), gc);
        }
        return *gateway_;
    }

    const PromptLibrary& prompts() {
        if (!prompts_) {
            require(cfg_.prompt_dir, "prompt directory");
            prompts_ = std::make_unique<PromptLibrary>(PromptLibrary::load(cfg_.prompt_dir));
            record_input("prompts", cfg_.prompt_dir);
        }
        return *prompts_;
    }

    CategoryRules rules() {
        auto rules = CategoryRules::load(require(cfg_.rules_file, "rules file"));
        record_input("rules", cfg_.rules_file);
        return rules;
    }

    std::vector<SeedTask> corpus() {
        const auto p = require(out_path("corpus.jsonl"), "ingested corpus (run ingest first)");
        return load_seed_corpus(p, LoadOptions{cfg_.allow_empty});
    }

    std::vector<SummarizedTask> summarized_tasks() {
        const auto tasks = corpus();
        const auto sums = load_summaries(require(out_path("summaries.jsonl"), "summaries (run summarize first)"));
        return attach_summaries(tasks, sums);
    }

    void write(const std::string& name, const std::string& body) { io::write_file(out_path(name), body); }

    void begin(const std::string& command) { run_.command = command; }

    /// Records this run in manifest.json and re-digests every file in the output directory.
    void finish() {
        const auto dir = output_dir();
        const auto manifest_path = dir / "manifest.json";
        std::map<std::string, Json> runs;
        if (fs::exists(manifest_path)) {
            try {
                const auto old = Json::parse(io::read_file(manifest_path));
                if (old.contains("runs") && old["runs"].is_object()) {
                    for (const auto& [k, v] : old["runs"].items()) runs[k] = v;
                }
            } catch (const Json::exception&) {
                warn("existing manifest.json is unreadable; starting a new one");
            }
        }
        Json inputs = Json::object();
        for (const auto& [k, v] : run_.inputs) inputs[k] = v;
        runs[run_.command] = Json{{"config_digest", io::sha256_hex(cfg_.canonical())},
                                  {"seeds", Json{{"seed", cfg_.seed}, {"split_seed", cfg_.split_seed},
                                                 {"judge_seed", cfg_.judge_seed}}},
                                  {"inputs", inputs}};

        std::vector<std::string> files;
        for (const auto& e : fs::recursive_directory_iterator(dir)) {
            if (!e.is_regular_file()) continue;
            const auto rel = fs::relative(e.path(), dir).generic_string();
            if (rel == "manifest.json" || rel.find(".tmp") != std::string::npos) continue;
            files.push_back(rel);
        }
        std::sort(files.begin(), files.end());
        Json file_map = Json::object();
        for (const auto& f : files) file_map[f] = io::sha256_file(dir / f);

        Json run_map = Json::object();
        for (const auto& [k, v] : runs) run_map[k] = v;
        const Json manifest{{"tool", "coi"}, {"version", COI_VERSION}, {"runs", run_map}, {"files", file_map}};
        io::write_file(manifest_path, manifest.dump(2) + "\n");
    }

private:
    PipelineConfig cfg_;
    std::ostream& out_;
    std::ostream& err_;
    RunRecord run_;
    std::unique_ptr<Gateway> gateway_;
    std::unique_ptr<PromptLibrary> prompts_;
};

std::string jsonl(const std::vector<Json>& rows) {
    std::string body;
    for (const auto& r : rows) body += r.dump() + "\n";
    return body;
}

std::string fixed(double v, int places = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", places, v);
    return buf;
}

// ------------------------------------------------------------ commands

void cmd_ingest(Context& ctx) {
    ctx.begin("ingest");
    const auto src = ctx.require(ctx.cfg().seed_corpus, "seed corpus");
    auto tasks = load_seed_corpus(src, LoadOptions{ctx.cfg().allow_empty});
    ctx.record_input("seed_corpus", src);
    const auto loaded = tasks.size();
    if (ctx.cfg().english_only) tasks = filter_english_input(tasks);
    write_seed_corpus(tasks, ctx.out_path("corpus.jsonl"));
    ctx.out() << "ingest: " << loaded << " tasks loaded, " << tasks.size() << " kept\n";
    ctx.finish();
}

void cmd_summarize(Context& ctx) {
    ctx.begin("summarize");
    const auto tasks = ctx.corpus();
    SummarizeOptions opt;
    opt.max_attempts = ctx.cfg().summary_max_attempts;
    const auto sums = summarize_corpus(tasks, ctx.gateway(), ctx.prompts().summarize, opt, ctx.cfg().workers);
    write_summaries(sums, ctx.out_path("summaries.jsonl"));
    std::size_t flagged = 0;
    for (const auto& s : sums) flagged += s.flagged;
    Json stats{{"tasks", sums.size()}, {"flagged", flagged}};
    if (!tasks.empty()) {
        const auto ws = corpus_word_stats(tasks, sums);
        stats["mean_words_before"] = ws.mean_before;
        stats["mean_words_after"] = ws.mean_after;
    }
    ctx.write("summary_stats.json", stats.dump(2) + "\n");
    ctx.out() << "summarize: " << sums.size() << " tasks, " << flagged << " flagged\n";
    ctx.finish();
}

ComposeOptions compose_options(Context& ctx) {
    ComposeOptions o;
    o.seed = ctx.cfg().seed;
    o.consistency_rewrite = ctx.cfg().consistency_rewrite;
    o.pair_instances = ctx.cfg().pair_instances;
    o.workers = ctx.cfg().workers;
    return o;
}

void report_warnings(Context& ctx, const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) ctx.warn(w);
}

void cmd_compose(Context& ctx) {
    ctx.begin("compose");
    const auto rules = ctx.rules();
    const auto tasks = ctx.summarized_tasks();
    auto result = compose_pairs(tasks, rules, ctx.gateway(), ctx.prompts(), compose_options(ctx));
    write_chains(result.chains, ctx.out_path("chains_2.jsonl"));
    write_rejections(result.rejections, ctx.out_path("rejections_2.jsonl"));
    report_warnings(ctx, result.warnings);
    ctx.out() << "compose: " << result.chains.size() << " composable pairs, " << result.rejections.size()
              << " rejected\n";
    ctx.finish();
}

void cmd_extend(Context& ctx) {
    ctx.begin("extend");
    const auto rules = ctx.rules();
    const int max_k = ctx.cfg().max_chain_length;
    if (max_k < 2) throw ConfigError("max_chain_length must be >= 2");
    const auto pairs = load_chains(ctx.require(ctx.out_path("chains_2.jsonl"), "pair chains (run compose first)"));
    auto current = pairs;
    for (int k = 2; k < max_k; ++k) {
        auto result = extend_chains(current, pairs, rules, ctx.gateway(), ctx.prompts(), compose_options(ctx));
        const auto n = std::to_string(k + 1);
        write_chains(result.chains, ctx.out_path("chains_" + n + ".jsonl"));
        write_rejections(result.rejections, ctx.out_path("rejections_" + n + ".jsonl"));
        report_warnings(ctx, result.warnings);
        ctx.out() << "extend: " << result.chains.size() << " chains of length " << n << "\n";
        current = std::move(result.chains);
    }
    ctx.finish();
}

void cmd_build(Context& ctx) {
    ctx.begin("build");
    auto& cfg = ctx.cfg();
    const auto tasks = ctx.summarized_tasks();
    const auto corpus = ctx.corpus();

    Dataset all = single_instruction_examples(tasks, cfg.instances_per_task, cfg.seed);
    std::map<std::string, ComposedChain> chain_by_id;
    for (int k = 2; k <= cfg.max_chain_length; ++k) {
        const auto p = ctx.require(ctx.out_path("chains_" + std::to_string(k) + ".jsonl"),
                                   "chains of length " + std::to_string(k) + " (run compose/extend first)");
        Dataset level;
        for (const auto& c : load_chains(p)) {
            auto e = example_from_chain(c);
            chain_by_id.emplace(e.example_id, c);
            level.push_back(std::move(e));
        }
        level = limit_per_category(level, cfg.cap_per_category, cfg.seed);
        all.insert(all.end(), level.begin(), level.end());
    }
    all = assign_splits(all, SplitPolicy{cfg.train_only_max, cfg.test_only_min, cfg.test_fraction}, cfg.split_seed);
    write_dataset(all, ctx.out_path("dataset.jsonl"));

    for (const auto& variant : cfg.variants) {
        Dataset out;
        for (const auto& e : all) {
            if (e.chain_length < 2) continue;
            const auto& chain = chain_by_id.at(e.example_id);
            auto v = variant == "concise"
                         ? build_concise_variant(chain, ctx.gateway(), ctx.prompts().concise,
                                                 ConciseOptions{cfg.concise_max_attempts, 20})
                         : build_irrelevant_variant(chain, corpus, cfg.seed);
            if (v.flagged) ctx.warn(v.key() + ": concise instruction still over 20 words");
            auto ve = example_from_chain(v);
            ve.split = e.split;
            out.push_back(std::move(ve));
        }
        write_dataset(out, ctx.out_path("dataset_" + variant + ".jsonl"));
    }

    const MixturePart coi1{"coi1", &all, {1}, Split::Train};
    const MixturePart coi2{"coi2", &all, {2}, Split::Train};
    const MixturePart coi3{"coi3", &all, {3}, Split::Train};
    write_dataset(build_mixture({coi1}), ctx.out_path("mixture_coi1.jsonl"));
    write_dataset(build_mixture({coi1, coi2}), ctx.out_path("mixture_coi12.jsonl"));
    write_dataset(build_mixture({coi1, coi2, coi3}), ctx.out_path("mixture_coi123.jsonl"));
    ctx.out() << "build: " << all.size() << " examples\n";
    ctx.finish();
}

void cmd_stats(Context& ctx, const fs::path& dataset_flag) {
    ctx.begin("stats");
    fs::path path = dataset_flag;
    if (path.empty()) path = ctx.out_path("dataset.jsonl");
    ctx.require(path, "dataset");
    const auto report = compute_report(load_dataset(path));
    const auto text = report_to_text(report);
    ctx.out() << text;
    if (!ctx.cfg().output_dir.empty()) {
        ctx.record_input("dataset", path);
        ctx.write("report.json", report_to_json(report).dump(2) + "\n");
        ctx.write("report.txt", text);
        ctx.finish();
    }
}

std::vector<std::pair<std::string, std::string>> load_predictions(const fs::path& path) {
    std::vector<std::pair<std::string, std::string>> out;
    io::for_each_jsonl(path, [&](const Json& obj, std::size_t line) {
        io::reject_unknown_keys(obj, {"example_id", "output"}, line);
        out.emplace_back(io::require_string(obj, "example_id", line), io::require_string(obj, "output", line));
    });
    return out;
}

struct EvalArgs {
    fs::path dataset;
    fs::path predictions;
    std::vector<fs::path> chains;
    std::string mode = "whole";
};

void cmd_eval(Context& ctx, const EvalArgs& args) {
    ctx.begin("eval");
    const auto dataset = load_dataset(ctx.require(args.dataset, "dataset"));
    const auto preds = load_predictions(ctx.require(args.predictions, "predictions"));
    ctx.record_input("dataset", args.dataset);
    ctx.record_input("predictions", args.predictions);

    std::map<std::string, const CoiExample*> by_id;
    for (const auto& e : dataset) by_id[e.example_id] = &e;
    std::map<std::string, ComposedChain> chains;
    if (args.mode == "subtask-llm") {
        if (args.chains.empty()) throw ConfigError("subtask-llm mode needs --chains");
        for (const auto& p : args.chains) {
            for (auto& c : load_chains(ctx.require(p, "chains file"))) chains.emplace(example_from_chain(c).example_id, c);
        }
    }

    std::vector<Json> rows;
    std::vector<std::pair<std::string, double>> groups;
    std::map<int, std::vector<std::vector<SubtaskScore>>> by_length;
    std::set<std::string> seen;
    for (const auto& [id, output] : preds) {
        auto it = by_id.find(id);
        if (it == by_id.end()) throw ValidationError("prediction for unknown example '" + id + "'");
        if (!seen.insert(id).second) throw ValidationError("duplicate prediction for example '" + id + "'");
        const auto& ex = *it->second;
        const std::string length_label = "length_" + std::to_string(ex.chain_length);
        if (args.mode == "whole") {
            const auto s = score_whole(output, ex.target);
            Json row{{"example_id", id}, {"chain_length", ex.chain_length}};
            row.update(to_json(s));
            rows.push_back(row);
            groups.emplace_back(length_label, s.f1);
            continue;
        }
        SubtaskGold gold;
        std::vector<SubtaskScore> scores;
        if (args.mode == "subtask-marker") {
            gold.input = ex.input;
            gold.hop_outputs = parse_target(ex.target, ex.chain_length);
            scores = score_subtasks(output, gold, SpanMode::Marker);
        } else {
            auto c = chains.find(id);
            if (c == chains.end()) throw ValidationError("no chain for example '" + id + "' in --chains files");
            scores = score_subtasks(output, SubtaskGold::from_chain(c->second), SpanMode::Llm, &ctx.gateway(),
                                    &ctx.prompts());
        }
        Json hops = Json::array();
        for (const auto& s : scores) {
            Json h{{"hop", s.hop_index}, {"valid", s.valid}, {"span", s.span ? Json(*s.span) : Json(nullptr)}};
            h.update(to_json(s.score));
            hops.push_back(h);
            groups.emplace_back(length_label + "/hop_" + std::to_string(s.hop_index), s.score.f1);
        }
        rows.push_back(Json{{"example_id", id}, {"chain_length", ex.chain_length}, {"hops", hops}});
        by_length[ex.chain_length].push_back(std::move(scores));
    }
    if (seen.size() < dataset.size()) {
        ctx.warn(std::to_string(dataset.size() - seen.size()) + " dataset examples have no prediction");
    }

    const auto summary = aggregate_scores(groups);
    Json groups_json = Json::object();
    std::string table = "tokenizer: " + std::string(kTokenizerVersion) + "\nmode: " + args.mode + "\n";
    char line[160];
    std::snprintf(line, sizeof line, "%-20s %8s %10s\n", "group", "count", "rouge_l");
    table += line;
    for (const auto& [g, st] : summary) {
        groups_json[g] = Json{{"count", st.count}, {"mean_f1_x100", st.mean_f1_x100}};
        std::snprintf(line, sizeof line, "%-20s %8zu %10.2f\n", g.c_str(), st.count, st.mean_f1_x100);
        table += line;
    }
    Json report{{"tokenizer", kTokenizerVersion}, {"mode", args.mode}, {"groups", groups_json}};
    if (!by_length.empty()) {
        Json valid = Json::object();
        for (const auto& [k, rows_k] : by_length) {
            const auto counts = valid_span_counts(rows_k);
            valid[std::to_string(k)] = counts;
            table += "valid spans (length " + std::to_string(k) + "):";
            for (auto c : counts) table += " " + std::to_string(c);
            table += " of " + std::to_string(rows_k.size()) + "\n";
        }
        report["valid_spans"] = valid;
    }
    ctx.write("scores_" + args.mode + ".jsonl", jsonl(rows));
    ctx.write("eval_" + args.mode + ".json", report.dump(2) + "\n");
    ctx.write("eval_" + args.mode + ".txt", table);
    ctx.out() << table;
    ctx.finish();
}

void cmd_judge(Context& ctx, const fs::path& cases_path) {
    ctx.begin("judge");
    const auto cases = load_judge_cases(ctx.require(cases_path, "judge cases"));
    ctx.record_input("cases", cases_path);
    const auto prefs = judge_cases(cases, ctx.gateway(), ctx.prompts().judge, ctx.cfg().judge_seed, ctx.cfg().workers);
    std::vector<Json> rows;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& p = prefs[i];
        rows.push_back(Json{{"case_id", cases[i].case_id}, {"winner", to_string(p.winner)},
                            {"order_swapped", p.order_swapped}, {"raw_verdict", p.raw_verdict}});
    }
    const auto s = aggregate_preferences(prefs);
    const Json summary{{"total", s.total}, {"A", s.a_pct}, {"B", s.b_pct}, {"None", s.none_pct}};
    const std::string table = "cases: " + std::to_string(s.total) + "\nA: " + fixed(s.a_pct) + "%\nB: " +
                              fixed(s.b_pct) + "%\nNone: " + fixed(s.none_pct) + "%\n";
    ctx.write("judgments.jsonl", jsonl(rows));
    ctx.write("judge_summary.json", summary.dump(2) + "\n");
    ctx.write("judge_summary.txt", table);
    ctx.out() << table;
    ctx.finish();
}

struct DownstreamArgs {
    fs::path predictions;
    fs::path references;
    std::string method = "marker";
    std::string label = "model";
};

void cmd_downstream(Context& ctx, const DownstreamArgs& args) {
    ctx.begin("downstream");
    const auto preds = load_predictions(ctx.require(args.predictions, "predictions"));
    const auto refs = load_references(ctx.require(args.references, "references"));
    ctx.record_input("predictions", args.predictions);
    ctx.record_input("references", args.references);
    DownstreamReport report;
    if (args.method == "marker") {
        report = evaluate_downstream(preds, refs, SplitMethod::Marker);
    } else {
        const auto id = TrigramIdentifier::load_dir(ctx.require(ctx.cfg().profile_dir, "language profile directory"));
        ctx.record_input("profiles", ctx.cfg().profile_dir);
        report = evaluate_downstream(preds, refs, SplitMethod::LanguageId, &id);
    }
    report_warnings(ctx, report.warnings);
    const auto table = report_to_text(report, args.label);
    ctx.write("downstream_" + args.method + ".json", report_to_json(report).dump(2) + "\n");
    ctx.write("downstream_" + args.method + ".txt", table);
    ctx.out() << table;
    ctx.finish();
}

}  // namespace

// ------------------------------------------------------------ entry point

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Chain-of-instructions dataset construction and evaluation", "coi"};
    app.set_version_flag("--version", std::string(COI_VERSION));
    app.require_subcommand(1);

    std::string config_path;
    std::map<std::string, std::string> overrides;
    auto flag = [&](CLI::App* sub, const std::string& name, const std::string& key, const std::string& help) {
        sub->add_option_function<std::string>(name, [&overrides, key](const std::string& v) { overrides[key] = v; }, help);
    };
    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key = value config file");
        flag(sub, "--seed", "seed", "sampling seed");
        flag(sub, "--output-dir", "output_dir", "directory receiving every artifact and manifest.json");
        flag(sub, "--provider", "provider", "remote or mock");
        flag(sub, "--mock-table", "mock_table", "canned replies for the mock provider");
        flag(sub, "--cache-dir", "cache_dir", "response cache directory");
        flag(sub, "--model-id", "model_id", "model name sent to the provider");
        flag(sub, "--workers", "workers", "concurrent requests");
        flag(sub, "--prompts", "prompt_dir", "prompt asset directory");
    };

    auto* ingest = app.add_subcommand("ingest", "load, validate and filter the seed corpus");
    common(ingest);
    flag(ingest, "--corpus", "seed_corpus", "seed corpus JSONL");
    auto* summarize = app.add_subcommand("summarize", "shorten every task instruction");
    common(summarize);
    auto* compose = app.add_subcommand("compose", "sample, filter and verify instruction pairs");
    common(compose);
    flag(compose, "--rules", "rules_file", "final-only category list");
    auto* extend = app.add_subcommand("extend", "chain verified pairs into longer chains");
    common(extend);
    flag(extend, "--rules", "rules_file", "final-only category list");
    flag(extend, "--max-chain-length", "max_chain_length", "longest chain to build");
    auto* build = app.add_subcommand("build", "assemble splits, variants and mixtures");
    common(build);
    flag(build, "--max-chain-length", "max_chain_length", "longest chain to include");
    flag(build, "--cap-per-category", "cap_per_category", "examples kept per category path");
    flag(build, "--test-fraction", "test_fraction", "test share for mid-length chains");
    flag(build, "--split-seed", "split_seed", "seed for the train/test split");
    flag(build, "--variants", "variants", "comma list of concise, irrelevant");
    auto* stats = app.add_subcommand("stats", "dataset statistics per chain length");
    common(stats);
    std::string stats_dataset;
    stats->add_option("--dataset", stats_dataset, "dataset JSONL (default: <output-dir>/dataset.jsonl)");

    auto* eval = app.add_subcommand("eval", "score predictions against a dataset");
    common(eval);
    EvalArgs eval_args;
    std::string eval_dataset;
    std::string eval_predictions;
    std::vector<std::string> eval_chains;
    eval->add_option("--dataset", eval_dataset, "dataset JSONL")->required();
    eval->add_option("--predictions", eval_predictions, "predictions JSONL")->required();
    eval->add_option("--chains", eval_chains, "chain files giving per-hop instructions (subtask-llm)");
    eval->add_option("--mode", eval_args.mode, "whole | subtask-marker | subtask-llm")
        ->check(CLI::IsMember({"whole", "subtask-marker", "subtask-llm"}));

    auto* judge = app.add_subcommand("judge", "pairwise preference judging");
    common(judge);
    std::string judge_cases;
    judge->add_option("--cases", judge_cases, "cases JSONL")->required();
    flag(judge, "--judge-seed", "judge_seed", "seed for presentation order");

    auto* downstream = app.add_subcommand("downstream", "bilingual summarization scoring");
    common(downstream);
    DownstreamArgs ds_args;
    std::string ds_predictions;
    std::string ds_references;
    downstream->add_option("--predictions", ds_predictions, "predictions JSONL")->required();
    downstream->add_option("--references", ds_references, "references JSONL")->required();
    downstream->add_option("--method", ds_args.method, "marker | language_id")
        ->check(CLI::IsMember({"marker", "language_id"}));
    downstream->add_option("--label", ds_args.label, "row label in the report table");
    flag(downstream, "--profiles", "profile_dir", "language profile directory");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 1;
    }

    auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    try {
        PipelineConfig cfg;
        if (!config_path.empty()) cfg.load_file(config_path);
        for (const auto& [k, v] : overrides) cfg.set(k, v, {});
        if (cfg.test_fraction < 0 || cfg.test_fraction > 1) throw ConfigError("test_fraction must lie in [0, 1]");
        if (cfg.cap_per_category < 1) throw ConfigError("cap_per_category must be >= 1");
        if (cfg.workers < 1) throw ConfigError("workers must be >= 1");

        Context ctx(std::move(cfg), out, err);
        if (name == "ingest") cmd_ingest(ctx);
        else if (name == "summarize") cmd_summarize(ctx);
        else if (name == "compose") cmd_compose(ctx);
        else if (name == "extend") cmd_extend(ctx);
        else if (name == "build") cmd_build(ctx);
        else if (name == "stats") cmd_stats(ctx, stats_dataset);
        else if (name == "eval") {
            eval_args.dataset = eval_dataset;
            eval_args.predictions = eval_predictions;
            for (const auto& c : eval_chains) eval_args.chains.emplace_back(c);
            cmd_eval(ctx, eval_args);
        } else if (name == "judge") cmd_judge(ctx, judge_cases);
        else if (name == "downstream") {
            ds_args.predictions = ds_predictions;
            ds_args.references = ds_references;
            cmd_downstream(ctx, ds_args);
        }
    } catch (const ValidationError& e) {
        err << "coi " << name << ": error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        err << "coi " << name << ": error: " << e.what() << "\n";
        return 2;
    } catch (const TransportError& e) {
        err << "coi " << name << ": error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "coi " << name << ": error: " << e.what() << "\n";
        return 1;
    } catch (const fs::filesystem_error& e) {
        err << "coi " << name << ": error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace coi::cli
