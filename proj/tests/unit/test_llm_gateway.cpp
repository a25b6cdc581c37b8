// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdlib>
#include <thread>

#include <httplib.h>

#include "coi/errors.hpp"
#include "coi/io.hpp"
#include "coi/llm_gateway.hpp"
#include "support.hpp"

using namespace coi;
using coi::testing::TempDir;

namespace {

LlmRequest request(std::string prompt, double temperature = 0.0) {
    LlmRequest r;
    r.model_id = "m";
    r.prompt = std::move(prompt);
    r.temperature = temperature;
    return r;
}

}  // namespace

TEST_CASE("mock exact table") {
    auto mock = MockProvider::from_json(Json{{"exact", {{"ping", "pong"}}}});
    auto gw = testing::gateway_for(mock);
    CHECK(gw->complete(request("ping")).text == "pong");
    CHECK_THROWS_AS(gw->complete(request("other")), ConfigError);
}

TEST_CASE("mock lookup order and rules") {
    auto mock = MockProvider::from_json(Json::parse(R"({
        "exact": {"x": "exact"},
        "digests": {")" + io::sha256_hex("y") + R"(": "digest"},
        "rules": [{"all_of": ["a", "b"], "response": "ab"},
                  {"any_of": ["c", "d"], "response": "cd", "meta": "note"}],
        "default": "fallback",
        "meta": {"about": "test"}})"));
    auto gw = testing::gateway_for(mock);
    CHECK(gw->complete(request("x")).text == "exact");
    CHECK(gw->complete(request("y")).text == "digest");
    CHECK(gw->complete(request("b then a")).text == "ab");
    CHECK(gw->complete(request("only d")).text == "cd");
    CHECK(gw->complete(request("zzz")).text == "fallback");
    CHECK(mock->calls() == 5);
    CHECK_THROWS_AS(MockProvider::from_json(Json::parse(R"({"rulez": []})")), ConfigError);
    CHECK_THROWS_AS(MockProvider::from_json(Json::parse(R"({"rules": [{"all": ["a"], "response": "r"}]})")),
                    ConfigError);
}

TEST_CASE("retry until success records attempts") {
    auto mock = testing::constant_mock("ok");
    mock->fail_next(2, FailureKind::Server);
    GatewayConfig cfg = testing::quick_config();
    cfg.retry_limit = 3;
    Gateway gw(mock, cfg);
    CHECK(gw.complete(request("p")).text == "ok");
    CHECK(gw.stats().last_attempts == 3);
}

TEST_CASE("failure mapping") {
    SUBCASE("auth is a configuration error without retry") {
        auto mock = testing::constant_mock("ok");
        mock->fail_next(5, FailureKind::Auth);
        Gateway gw(mock, testing::quick_config());
        CHECK_THROWS_AS(gw.complete(request("p")), ConfigError);
        CHECK(gw.stats().last_attempts == 1);
    }
    SUBCASE("rate limit exhausted is throttled") {
        auto mock = testing::constant_mock("ok");
        mock->fail_next(5, FailureKind::RateLimited);
        Gateway gw(mock, testing::quick_config());
        CHECK_THROWS_AS(gw.complete(request("p")), ThrottledError);
        CHECK(gw.stats().last_attempts == 3);
    }
    SUBCASE("timeouts exhausted are transport errors") {
        auto mock = testing::constant_mock("ok");
        mock->fail_next(5, FailureKind::Timeout);
        Gateway gw(mock, testing::quick_config());
        try {
            gw.complete(request("p"));
            FAIL("expected a transport error");
        } catch (const ThrottledError&) {
            FAIL("timeouts must not be reported as throttling");
        } catch (const TransportError&) {
        }
    }
}

TEST_CASE("request validation") {
    auto gw = testing::gateway_for(testing::constant_mock("ok"));
    auto r = request("p");
    r.max_tokens = 0;
    CHECK_THROWS_AS(gw->complete(r), ValidationError);
    r = request("p", -1.0);
    CHECK_THROWS_AS(gw->complete(r), ValidationError);
}

TEST_CASE("response cache") {
    TempDir dir;
    auto mock = testing::constant_mock("reply");
    Gateway gw(mock, testing::quick_config());

    const auto first = gw.cached_complete(request("p"), dir.path());
    CHECK_FALSE(first.cached);
    const auto second = gw.cached_complete(request("p"), dir.path());
    CHECK(second.cached);
    CHECK(second.text == "reply");
    CHECK(gw.stats().transport_calls == 1);

    CHECK_FALSE(gw.cached_complete(request("p", 0.7), dir.path()).cached);
    CHECK(gw.stats().transport_calls == 2);
    CHECK(CacheKey::of(request("p")) == CacheKey::of(request("p")));
    CHECK_FALSE(CacheKey::of(request("p")) == CacheKey::of(request("p", 0.5)));

    // truncate the entry on disk
    const auto digest = CacheKey::of(request("p")).digest;
    const auto entry = dir.path() / digest.substr(0, 2) / (digest + ".json");
    REQUIRE(std::filesystem::exists(entry));
    io::write_file(entry, "{\"dig");
    const auto third = gw.cached_complete(request("p"), dir.path());
    CHECK_FALSE(third.cached);
    CHECK(third.text == "reply");
    CHECK(gw.cached_complete(request("p"), dir.path()).cached);
}

TEST_CASE("remote provider needs an api key") {
#ifdef _WIN32
    _putenv_s("COI_API_KEY", "");
#else
    unsetenv("COI_API_KEY");
#endif
    CHECK_THROWS_AS(RemoteProvider::from_env("http://127.0.0.1:9", std::chrono::milliseconds(100)), ConfigError);
}

TEST_CASE("remote provider against a local server") {
    httplib::Server server;
    std::atomic<int> flaky{0};
    server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
        const auto body = Json::parse(req.body);
        const std::string prompt = body["messages"][0]["content"];
        if (req.get_header_value("Authorization") != "Bearer k") {
            res.status = 401;
        } else if (prompt == "busy") {
            res.status = 429;
        } else if (prompt == "flaky" && flaky++ == 0) {
            res.status = 503;
        } else if (prompt == "garbled") {
            res.set_content("not json", "application/json");
        } else {
            Json reply{{"choices", Json::array({Json{{"message", {{"role", "assistant"}, {"content", "echo " + prompt}}}}})}};
            res.set_content(reply.dump(), "application/json");
        }
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread th([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    const std::string base = "http://127.0.0.1:" + std::to_string(port) + "/v1";
    auto good = std::make_shared<RemoteProvider>(RemoteOptions{base, "k", std::chrono::milliseconds(2000)});
    auto bad = std::make_shared<RemoteProvider>(RemoteOptions{base, "wrong", std::chrono::milliseconds(2000)});
    Gateway gw(good, testing::quick_config());
    Gateway denied(bad, testing::quick_config());

    CHECK(gw.complete(request("hello")).text == "echo hello");
    CHECK(gw.complete(request("flaky")).text == "echo flaky");
    CHECK(gw.stats().last_attempts == 2);
    CHECK_THROWS_AS(gw.complete(request("busy")), ThrottledError);
    CHECK_THROWS_AS(gw.complete(request("garbled")), TransportError);
    CHECK_THROWS_AS(denied.complete(request("hello")), ConfigError);
    CHECK(denied.stats().last_attempts == 1);

    server.stop();
    th.join();
}

TEST_CASE("rate limiter spaces calls") {
    RateLimiter limiter(600.0);  // one call per 100 ms
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < 3; ++i) limiter.acquire();
    CHECK(std::chrono::steady_clock::now() - start >= std::chrono::milliseconds(190));
}
