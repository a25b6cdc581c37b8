// SPDX-License-Identifier: Apache-2.0
#include <httplib.h>

#include <cstdlib>

#include "coi/errors.hpp"
#include "coi/llm_gateway.hpp"

namespace coi {

RemoteProvider::RemoteProvider(RemoteOptions options) : options_(std::move(options)) {
    if (options_.api_key.empty()) throw ConfigError("remote provider requires an API key (COI_API_KEY)");
    const auto scheme_end = options_.api_base.find("://");
    if (scheme_end == std::string::npos) throw ConfigError("api_base must include a scheme: " + options_.api_base);
    const auto path_start = options_.api_base.find('/', scheme_end + 3);
    origin_ = options_.api_base.substr(0, path_start);
    path_prefix_ = path_start == std::string::npos ? "" : options_.api_base.substr(path_start);
    while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
}

std::shared_ptr<RemoteProvider> RemoteProvider::from_env(std::string api_base, std::chrono::milliseconds timeout) {
    const char* key = std::getenv("COI_API_KEY");
    if (key == nullptr || *key == '\0') throw ConfigError("environment variable COI_API_KEY is not set");
    return std::make_shared<RemoteProvider>(RemoteOptions{std::move(api_base), key, timeout});
}

std::string RemoteProvider::send(const LlmRequest& request) {
    Json body{{"model", request.model_id},
              {"messages", Json::array({Json{{"role", "user"}, {"content", request.prompt}}})},
              {"max_tokens", request.max_tokens},
              {"temperature", request.temperature}};
    if (request.stop_sequences) body["stop"] = *request.stop_sequences;

    httplib::Client client(origin_);
    const auto secs = options_.timeout.count() / 1000;
    const auto usecs = (options_.timeout.count() % 1000) * 1000;
    client.set_connection_timeout(secs, usecs);
    client.set_read_timeout(secs, usecs);
    client.set_write_timeout(secs, usecs);
    httplib::Headers headers{{"Authorization", "Bearer " + options_.api_key}};

    auto res = client.Post(path_prefix_ + "/chat/completions", headers, body.dump(), "application/json");
    if (!res) {
        const auto err = res.error();
        const auto kind = (err == httplib::Error::Read || err == httplib::Error::Write ||
                           err == httplib::Error::ConnectionTimeout)
                              ? FailureKind::Timeout
                              : FailureKind::Server;
        throw ProviderFailure(kind, "request failed: " + httplib::to_string(err));
    }
    const int status = res->status;
    if (status == 401 || status == 403) throw ProviderFailure(FailureKind::Auth, "HTTP " + std::to_string(status));
    if (status == 429) throw ProviderFailure(FailureKind::RateLimited, "HTTP 429");
    if (status == 408) throw ProviderFailure(FailureKind::Timeout, "HTTP 408");
    if (status >= 500) throw ProviderFailure(FailureKind::Server, "HTTP " + std::to_string(status));
    if (status != 200) throw ProviderFailure(FailureKind::Fatal, "HTTP " + std::to_string(status) + ": " + res->body);

    try {
        Json reply = Json::parse(res->body);
        const auto& content = reply.at("choices").at(0).at("message").at("content");
        return content.is_null() ? std::string() : content.get<std::string>();
    } catch (const Json::exception& e) {
        throw ProviderFailure(FailureKind::Fatal, std::string("malformed completion payload: ") + e.what());
    }
}

}  // namespace coi
