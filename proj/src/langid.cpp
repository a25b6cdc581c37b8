// SPDX-License-Identifier: Apache-2.0
#include "coi/langid.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "coi/errors.hpp"
#include "coi/io.hpp"
#include "coi/text.hpp"

namespace coi {

namespace {

// Latin letters, including Latin-1 and Latin Extended-A/B.
bool is_letter(char32_t c) {
    if ((c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z')) return true;
    return c >= 0xC0 && c <= 0x24F && c != 0xD7 && c != 0xF7;
}

char32_t lower(char32_t c) {
    if (c >= U'A' && c <= U'Z') return c + 32;
    if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 32;
    if (c >= 0x100 && c <= 0x17F && (c % 2 == 0)) return c + 1;
    return c;
}

}  // namespace

std::vector<std::string> char_trigrams(std::string_view input) {
    std::vector<std::string> out;
    std::u32string word;
    auto flush = [&] {
        if (word.empty()) return;
        std::u32string padded = U" " + word + U" ";
        for (std::size_t i = 0; i + 3 <= padded.size(); ++i) out.push_back(text::utf8_encode(padded.substr(i, 3)));
        word.clear();
    };
    for (char32_t c : text::utf8_decode(input)) {
        if (is_letter(c)) {
            word += lower(c);
        } else {
            flush();
        }
    }
    flush();
    return out;
}

TrigramProfile TrigramProfile::build(std::string language, std::string_view training_text) {
    TrigramProfile p;
    p.language = std::move(language);
    for (auto& t : char_trigrams(training_text)) {
        ++p.counts[t];
        ++p.total;
    }
    return p;
}

TrigramProfile TrigramProfile::parse(std::string_view body) {
    TrigramProfile p;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < body.size()) {
        std::size_t eol = body.find('\n', pos);
        if (eol == std::string_view::npos) eol = body.size();
        const auto line = body.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (line.empty()) continue;
        if (line.front() == '#') {
            static constexpr std::string_view kLang = "# language:";
            if (line.substr(0, kLang.size()) == kLang) p.language = std::string(text::trim(line.substr(kLang.size())));
            continue;
        }
        const auto tab = line.rfind('\t');
        if (tab == std::string_view::npos) throw ParseError("profile line lacks a tab", line_no);
        std::size_t count = 0;
        try {
            count = std::stoull(std::string(line.substr(tab + 1)));
        } catch (const std::exception&) {
            throw ParseError("profile count is not a number", line_no);
        }
        p.counts[std::string(line.substr(0, tab))] += count;
        p.total += count;
    }
    if (p.language.empty()) throw ParseError("profile lacks a '# language:' header");
    return p;
}

std::string TrigramProfile::serialize() const {
    std::string out = "# language: " + language + "\n";
    for (const auto& [t, c] : counts) out += t + "\t" + std::to_string(c) + "\n";
    return out;
}

TrigramIdentifier TrigramIdentifier::load_dir(const std::filesystem::path& dir, double min_confidence) {
    if (!std::filesystem::is_directory(dir)) throw IoError("language profile directory not found: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() == ".profile") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw IoError("no *.profile files in " + dir.string());
    TrigramIdentifier id(min_confidence);
    for (const auto& f : files) id.add_profile(TrigramProfile::parse(io::read_file(f)));
    return id;
}

void TrigramIdentifier::add_profile(TrigramProfile profile) {
    profiles_.push_back(std::move(profile));
    reindex();
}

std::vector<std::string> TrigramIdentifier::languages() const {
    std::vector<std::string> out;
    for (const auto& p : profiles_) out.push_back(p.language);
    return out;
}

void TrigramIdentifier::reindex() {
    index_.clear();
    for (std::size_t i = 0; i < profiles_.size(); ++i) {
        for (const auto& [t, c] : profiles_[i].counts) {
            auto& row = index_[t];
            row.resize(profiles_.size(), 0);
            row[i] = c;
        }
    }
    for (auto& [t, row] : index_) row.resize(profiles_.size(), 0);
    vocabulary_ = index_.size() + 1;
}

Classification TrigramIdentifier::classify(std::string_view input) const {
    Classification out;
    out.language = std::string(kUnknownLanguage);
    const auto grams = char_trigrams(input);
    out.trigrams = grams.size();
    if (grams.empty() || profiles_.empty()) return out;

    std::vector<double> score(profiles_.size(), 0.0);
    for (const auto& g : grams) {
        auto it = index_.find(g);
        for (std::size_t i = 0; i < profiles_.size(); ++i) {
            const double c = it == index_.end() ? 0.0 : static_cast<double>(it->second[i]);
            score[i] += std::log((c + 1.0) / static_cast<double>(profiles_[i].total + vocabulary_));
        }
    }
    const auto best = static_cast<std::size_t>(std::max_element(score.begin(), score.end()) - score.begin());
    double norm = 0.0;
    for (double s : score) norm += std::exp(s - score[best]);
    out.confidence = 1.0 / norm;
    if (out.confidence >= min_confidence_) out.language = profiles_[best].language;
    return out;
}

}  // namespace coi
