// SPDX-License-Identifier: Apache-2.0
#include "coi/prompt.hpp"

#include <algorithm>
#include <set>

#include "coi/errors.hpp"
#include "coi/io.hpp"
#include "coi/text.hpp"

namespace coi {

namespace {

bool is_name_char(char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_'; }

// Calls fn(begin, end, name) for every `{name}` occurrence in body.
template <typename Fn>
void scan_placeholders(const std::string& body, Fn fn) {
    std::size_t i = 0;
    while ((i = body.find('{', i)) != std::string::npos) {
        std::size_t j = i + 1;
        while (j < body.size() && is_name_char(body[j])) ++j;
        if (j > i + 1 && j < body.size() && body[j] == '}' && !(body[i + 1] >= '0' && body[i + 1] <= '9')) {
            fn(i, j + 1, body.substr(i + 1, j - i - 1));
            i = j + 1;
        } else {
            ++i;
        }
    }
}

}  // namespace

PromptTemplate::PromptTemplate(std::string name, std::string body, std::string version)
    : name_(std::move(name)), version_(std::move(version)), body_(std::move(body)) {
    scan_placeholders(body_, [&](std::size_t, std::size_t, std::string n) {
        if (std::find(placeholders_.begin(), placeholders_.end(), n) == placeholders_.end()) {
            placeholders_.push_back(std::move(n));
        }
    });
}

PromptTemplate PromptTemplate::load(const std::filesystem::path& path) {
    const std::string raw = io::read_file(path);
    std::string version = "0";
    std::size_t pos = 0;
    while (pos < raw.size() && raw[pos] == '#') {
        std::size_t eol = raw.find('\n', pos);
        if (eol == std::string::npos) eol = raw.size();
        std::string_view line = text::trim(std::string_view(raw).substr(pos + 1, eol - pos - 1));
        if (line.rfind("version:", 0) == 0) version = std::string(text::trim(line.substr(8)));
        pos = std::min(eol + 1, raw.size());
    }
    std::string body = raw.substr(pos);
    while (!body.empty() && (body.back() == '\n' || body.back() == '\r')) body.pop_back();
    return PromptTemplate(path.stem().string(), std::move(body), std::move(version));
}

std::string PromptTemplate::render(const std::map<std::string, std::string>& values) const {
    for (const auto& [key, _] : values) {
        if (std::find(placeholders_.begin(), placeholders_.end(), key) == placeholders_.end()) {
            throw ValidationError("prompt '" + name_ + "' has no placeholder {" + key + "}");
        }
    }
    std::string out;
    out.reserve(body_.size() + 256);
    std::size_t last = 0;
    scan_placeholders(body_, [&](std::size_t b, std::size_t e, const std::string& n) {
        auto it = values.find(n);
        if (it == values.end()) throw ValidationError("prompt '" + name_ + "' is missing a value for {" + n + "}");
        out.append(body_, last, b - last);
        out += it->second;
        last = e;
    });
    out.append(body_, last, std::string::npos);
    return out;
}

PromptLibrary PromptLibrary::load(const std::filesystem::path& dir) {
    PromptLibrary lib;
    lib.summarize = PromptTemplate::load(dir / "summarize.txt");
    lib.composability = PromptTemplate::load(dir / "composability.txt");
    lib.consistency = PromptTemplate::load(dir / "consistency.txt");
    lib.concise = PromptTemplate::load(dir / "concise.txt");
    lib.separate = PromptTemplate::load(dir / "separate.txt");
    lib.separate_plain = PromptTemplate::load(dir / "separate_plain.txt");
    lib.judge = PromptTemplate::load(dir / "judge.txt");
    return lib;
}

}  // namespace coi
