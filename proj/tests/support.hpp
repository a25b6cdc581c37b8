// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <filesystem>
#include <memory>
#include <random>
#include <string>

#include "coi/llm_gateway.hpp"
#include "coi/prompt.hpp"

namespace coi::testing {

inline std::filesystem::path fixture(const std::string& rel) { return std::filesystem::path(COI_FIXTURE_DIR) / rel; }

inline std::filesystem::path data_dir() { return std::filesystem::path(COI_DATA_DIR); }

inline const PromptLibrary& prompts() {
    static const PromptLibrary lib = PromptLibrary::load(data_dir() / "prompts");
    return lib;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag = "coi") {
        static std::atomic<int> counter{0};
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                (tag + "-" + std::to_string(rd()) + "-" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

private:
    std::filesystem::path path_;
};

inline GatewayConfig quick_config() {
    GatewayConfig cfg;
    cfg.backoff = std::chrono::milliseconds(0);
    return cfg;
}

inline std::unique_ptr<Gateway> gateway_for(std::shared_ptr<MockProvider> mock) {
    return std::make_unique<Gateway>(std::move(mock), quick_config());
}

/// Mock that returns `reply` for every prompt.
inline std::shared_ptr<MockProvider> constant_mock(std::string reply) {
    auto m = std::make_shared<MockProvider>();
    m->set_default(std::move(reply));
    return m;
}

}  // namespace coi::testing
