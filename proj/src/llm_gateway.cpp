// SPDX-License-Identifier: Apache-2.0
#include "coi/llm_gateway.hpp"

#include <cmath>
#include <cstdio>
#include <thread>

#include "coi/errors.hpp"

namespace coi {

namespace fs = std::filesystem;

void LlmRequest::validate() const {
    if (max_tokens < 1) throw ValidationError("max_tokens must be >= 1");
    if (!(temperature >= 0.0)) throw ValidationError("temperature must be >= 0");
}

CacheKey CacheKey::of(const LlmRequest& request) {
    char temp[32];
    std::snprintf(temp, sizeof temp, "%.17g", request.temperature);
    Json canonical = Json::array({request.model_id, request.prompt, request.max_tokens, std::string(temp)});
    if (request.stop_sequences) {
        canonical.push_back(*request.stop_sequences);
    } else {
        canonical.push_back(nullptr);
    }
    return CacheKey{io::sha256_hex(canonical.dump())};
}

// ---------------------------------------------------------------- mock

std::shared_ptr<MockProvider> MockProvider::from_json(const Json& table) {
    if (!table.is_object()) throw ConfigError("mock table must be a JSON object");
    auto mock = std::make_shared<MockProvider>();
    for (const auto& [key, value] : table.items()) {
        if (key == "exact") {
            for (const auto& [prompt, reply] : value.items()) mock->add_exact(prompt, reply.get<std::string>());
        } else if (key == "digests") {
            for (const auto& [digest, reply] : value.items()) mock->add_digest(digest, reply.get<std::string>());
        } else if (key == "rules") {
            for (const auto& r : value) {
                for (const auto& [rk, rv] : r.items()) {
                    if (rk != "all_of" && rk != "any_of" && rk != "response" && rk != "meta") {
                        throw ConfigError("unknown mock rule key '" + rk + "'");
                    }
                }
                Rule rule;
                if (r.contains("all_of")) rule.all_of = r.at("all_of").get<std::vector<std::string>>();
                if (r.contains("any_of")) rule.any_of = r.at("any_of").get<std::vector<std::string>>();
                if (!r.contains("response")) throw ConfigError("mock rule without 'response'");
                rule.response = r.at("response").get<std::string>();
                mock->add_rule(std::move(rule));
            }
        } else if (key == "default") {
            mock->set_default(value.get<std::string>());
        } else if (key != "meta") {
            throw ConfigError("unknown mock table key '" + key + "'");
        }
    }
    return mock;
}

std::shared_ptr<MockProvider> MockProvider::from_file(const fs::path& path) {
    Json table;
    try {
        table = Json::parse(io::read_file(path));
    } catch (const Json::exception& e) {
        throw ConfigError("mock table " + path.string() + ": " + e.what());
    }
    try {
        return from_json(table);
    } catch (const Json::exception& e) {
        throw ConfigError("mock table " + path.string() + ": " + e.what());
    }
}

void MockProvider::add_exact(std::string prompt, std::string response) {
    std::lock_guard lk(mu_);
    exact_.emplace_back(std::move(prompt), std::move(response));
}

void MockProvider::add_digest(std::string digest, std::string response) {
    std::lock_guard lk(mu_);
    digests_.emplace_back(std::move(digest), std::move(response));
}

void MockProvider::add_rule(Rule rule) {
    std::lock_guard lk(mu_);
    rules_.push_back(std::move(rule));
}

void MockProvider::set_responder(Responder responder) {
    std::lock_guard lk(mu_);
    responder_ = std::move(responder);
}

void MockProvider::set_default(std::string response) {
    std::lock_guard lk(mu_);
    default_ = std::move(response);
}

void MockProvider::fail_next(int count, FailureKind kind) {
    std::lock_guard lk(mu_);
    pending_failures_ = count;
    failure_kind_ = kind;
}

std::string MockProvider::send(const LlmRequest& request) {
    Responder responder;
    {
        std::lock_guard lk(mu_);
        seen_.push_back(request.prompt);
        if (pending_failures_ > 0) {
            --pending_failures_;
            throw ProviderFailure(failure_kind_, "mock: scripted failure");
        }
        for (const auto& [prompt, reply] : exact_) {
            if (prompt == request.prompt) return reply;
        }
        if (!digests_.empty()) {
            std::string d = io::sha256_hex(request.prompt);
            for (const auto& [digest, reply] : digests_) {
                if (digest == d) return reply;
            }
        }
        for (const auto& rule : rules_) {
            bool all = true;
            for (const auto& s : rule.all_of) {
                if (request.prompt.find(s) == std::string::npos) {
                    all = false;
                    break;
                }
            }
            if (!all) continue;
            bool any = rule.any_of.empty();
            for (const auto& s : rule.any_of) {
                if (request.prompt.find(s) != std::string::npos) {
                    any = true;
                    break;
                }
            }
            if (any) return rule.response;
        }
        responder = responder_;
    }
    if (responder) {
        if (auto reply = responder(request)) return *reply;
    }
    std::lock_guard lk(mu_);
    if (default_) return *default_;
    throw ConfigError("mock provider has no response for prompt with digest " + io::sha256_hex(request.prompt));
}

std::size_t MockProvider::calls() const {
    std::lock_guard lk(mu_);
    return seen_.size();
}

std::vector<std::string> MockProvider::prompts() const {
    std::lock_guard lk(mu_);
    return seen_;
}

// ---------------------------------------------------------------- rate limiter

RateLimiter::RateLimiter(double requests_per_minute) {
    if (requests_per_minute > 0) {
        interval_ = std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(60.0 / requests_per_minute));
    }
}

void RateLimiter::acquire() {
    if (interval_ == Clock::duration::zero()) return;
    Clock::time_point slot;
    {
        std::lock_guard lk(mu_);
        auto now = Clock::now();
        slot = std::max(now, next_);
        next_ = slot + interval_;
    }
    std::this_thread::sleep_until(slot);
}

// ---------------------------------------------------------------- gateway

Gateway::Gateway(std::shared_ptr<Provider> provider, GatewayConfig config)
    : provider_(std::move(provider)), config_(std::move(config)), limiter_(config_.requests_per_minute) {
    if (!provider_) throw ConfigError("gateway requires a provider");
    if (config_.retry_limit < 1) throw ConfigError("retry_limit must be >= 1");
}

LlmResponse Gateway::complete(const LlmRequest& request) {
    request.validate();
    std::optional<FailureKind> last_kind;
    std::string last_message;
    for (int attempt = 1; attempt <= config_.retry_limit; ++attempt) {
        last_attempts_ = static_cast<std::size_t>(attempt);
        if (attempt > 1 && config_.backoff.count() > 0) {
            std::this_thread::sleep_for(config_.backoff * (1LL << std::min(attempt - 2, 16)));
        }
        limiter_.acquire();
        ++transport_calls_;
        auto start = std::chrono::steady_clock::now();
        try {
            std::string text = provider_->send(request);
            auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
            return LlmResponse{std::move(text), false, static_cast<std::uint64_t>(elapsed.count())};
        } catch (const ProviderFailure& f) {
            switch (f.kind()) {
                case FailureKind::Auth:
                    throw ConfigError(provider_->name() + " provider rejected credentials: " + f.what());
                case FailureKind::Fatal:
                    throw TransportError(provider_->name() + " provider error: " + f.what());
                default:
                    last_kind = f.kind();
                    last_message = f.what();
            }
        }
    }
    std::string msg = provider_->name() + " provider failed after " + std::to_string(config_.retry_limit) +
                      " attempts: " + last_message;
    if (last_kind == FailureKind::RateLimited) throw ThrottledError(msg);
    throw TransportError(msg);
}

LlmResponse Gateway::cached_complete(const LlmRequest& request, const fs::path& cache_dir) {
    request.validate();
    const CacheKey key = CacheKey::of(request);
    const fs::path entry = cache_dir / key.digest.substr(0, 2) / (key.digest + ".json");

    std::error_code ec;
    if (fs::exists(entry, ec)) {
        try {
            Json obj = Json::parse(io::read_file(entry));
            if (obj.at("digest").get<std::string>() == key.digest) {
                ++cache_hits_;
                return LlmResponse{obj.at("text").get<std::string>(), true, std::nullopt};
            }
        } catch (const std::exception&) {
            // corrupt entry: fall through and recompute
        }
    }
    ++cache_misses_;
    LlmResponse resp = complete(request);
    Json obj{{"digest", key.digest}, {"model_id", request.model_id}, {"text", resp.text}};
    {
        std::lock_guard lk(cache_mu_);
        io::write_file(entry, obj.dump() + "\n");
    }
    return resp;
}

LlmResponse Gateway::ask(const std::string& prompt) {
    LlmRequest req;
    req.model_id = config_.model_id;
    req.prompt = prompt;
    req.max_tokens = config_.max_tokens;
    req.temperature = config_.temperature;
    if (config_.cache_dir.empty()) return complete(req);
    return cached_complete(req, config_.cache_dir);
}

GatewayStats Gateway::stats() const {
    return GatewayStats{transport_calls_.load(), cache_hits_.load(), cache_misses_.load(), last_attempts_.load()};
}

}  // namespace coi
