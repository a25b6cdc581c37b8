// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coi/io.hpp"

namespace coi {

struct LlmRequest {
    std::string model_id;
    std::string prompt;
    int max_tokens = 512;
    double temperature = 0.0;
    std::optional<std::vector<std::string>> stop_sequences;

    /// Throws ValidationError unless max_tokens >= 1 and temperature >= 0.
    void validate() const;
};

struct LlmResponse {
    std::string text;
    bool cached = false;
    std::optional<std::uint64_t> latency_ms;
};

/// Content hash over every request field.
struct CacheKey {
    std::string digest;

    static CacheKey of(const LlmRequest& request);
    friend bool operator==(const CacheKey&, const CacheKey&) = default;
};

/// How a single provider call failed.
enum class FailureKind {
    Auth,         ///< credentials rejected; never retried
    RateLimited,  ///< transient
    Timeout,      ///< transient
    Server,       ///< transient (5xx, dropped connection)
    Fatal,        ///< malformed reply or non-retryable client error
};

class ProviderFailure : public std::runtime_error {
public:
    ProviderFailure(FailureKind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
    FailureKind kind() const noexcept { return kind_; }

private:
    FailureKind kind_;
};

/// One chat-completion backend. Implementations must be thread-safe and
/// report failures by throwing ProviderFailure.
class Provider {
public:
    virtual ~Provider() = default;
    virtual std::string send(const LlmRequest& request) = 0;
    virtual std::string name() const = 0;
};

/// Offline provider answering from a canned table.
///
/// Lookup order: exact prompt, prompt digest (SHA-256 of the prompt text),
/// ordered match rules, scripted responder, default. A prompt nothing matches
/// is a ConfigError so gaps in a fixture table surface immediately.
class MockProvider final : public Provider {
public:
    struct Rule {
        std::vector<std::string> all_of;  ///< every string must occur in the prompt
        std::vector<std::string> any_of;  ///< if nonempty, at least one must occur
        std::string response;
    };
    using Responder = std::function<std::optional<std::string>(const LlmRequest&)>;

    MockProvider() = default;

    /// Table format: {"exact": {prompt: reply}, "digests": {sha256: reply},
    /// "rules": [{"all_of": [...], "any_of": [...], "response": reply, "meta": ...}],
    /// "default": reply, "meta": ...}. All keys optional; "meta" is ignored.
    static std::shared_ptr<MockProvider> from_json(const Json& table);
    static std::shared_ptr<MockProvider> from_file(const std::filesystem::path& path);

    void add_exact(std::string prompt, std::string response);
    void add_digest(std::string digest, std::string response);
    void add_rule(Rule rule);
    void set_responder(Responder responder);
    void set_default(std::string response);

    /// The next `count` calls fail with `kind` before the table is consulted.
    void fail_next(int count, FailureKind kind);

    std::string send(const LlmRequest& request) override;
    std::string name() const override { return "mock"; }

    std::size_t calls() const;
    std::vector<std::string> prompts() const;  ///< every prompt received, in call order

private:
    mutable std::mutex mu_;
    std::vector<std::pair<std::string, std::string>> exact_;
    std::vector<std::pair<std::string, std::string>> digests_;
    std::vector<Rule> rules_;
    Responder responder_;
    std::optional<std::string> default_;
    int pending_failures_ = 0;
    FailureKind failure_kind_ = FailureKind::Server;
    std::vector<std::string> seen_;
};

struct RemoteOptions {
    std::string api_base = "https://api.openai.com/v1";
    std::string api_key;
    std::chrono::milliseconds timeout{60000};
};

/// OpenAI-compatible `/chat/completions` client.
class RemoteProvider final : public Provider {
public:
    explicit RemoteProvider(RemoteOptions options);

    /// Reads the key from COI_API_KEY; throws ConfigError if it is unset or empty.
    static std::shared_ptr<RemoteProvider> from_env(std::string api_base, std::chrono::milliseconds timeout);

    std::string send(const LlmRequest& request) override;
    std::string name() const override { return "remote"; }

private:
    RemoteOptions options_;
    std::string origin_;       // scheme://host[:port]
    std::string path_prefix_;  // e.g. /v1
};

/// Blocks callers so that at most `requests_per_minute` calls start per minute
/// across all threads. A non-positive rate disables limiting.
class RateLimiter {
public:
    explicit RateLimiter(double requests_per_minute);
    void acquire();

private:
    using Clock = std::chrono::steady_clock;
    std::mutex mu_;
    Clock::duration interval_{};
    Clock::time_point next_{};
};

struct GatewayConfig {
    std::string model_id = "gpt-3.5-turbo";
    int max_tokens = 512;
    double temperature = 0.0;
    int retry_limit = 3;  ///< total attempts per request, >= 1
    double requests_per_minute = 0.0;
    std::chrono::milliseconds backoff{500};  ///< first retry delay, doubled per retry
    std::filesystem::path cache_dir;         ///< empty disables caching in ask()
};

struct GatewayStats {
    std::size_t transport_calls = 0;
    std::size_t cache_hits = 0;
    std::size_t cache_misses = 0;
    std::size_t last_attempts = 0;  ///< attempts made by the most recent complete()
};

/// Shared, thread-safe entry point to a provider.
class Gateway {
public:
    Gateway(std::shared_ptr<Provider> provider, GatewayConfig config);

    /// Sends with retry and exponential backoff.
    LlmResponse complete(const LlmRequest& request);

    /// As complete(), but persists replies under `cache_dir` keyed by CacheKey.
    /// Unreadable or corrupt cache entries are recomputed and rewritten.
    LlmResponse cached_complete(const LlmRequest& request, const std::filesystem::path& cache_dir);

    /// Builds a request from the configured generation settings and routes it
    /// through the cache when one is configured.
    LlmResponse ask(const std::string& prompt);

    GatewayStats stats() const;
    const GatewayConfig& config() const { return config_; }

private:
    std::shared_ptr<Provider> provider_;
    GatewayConfig config_;
    RateLimiter limiter_;
    std::mutex cache_mu_;
    std::atomic<std::size_t> transport_calls_{0};
    std::atomic<std::size_t> cache_hits_{0};
    std::atomic<std::size_t> cache_misses_{0};
    std::atomic<std::size_t> last_attempts_{0};
};

}  // namespace coi
