// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace coi {

inline constexpr std::string_view kUnknownLanguage = "unknown";

/// Anything that maps text to a language code or kUnknownLanguage.
class LanguageIdentifier {
public:
    virtual ~LanguageIdentifier() = default;
    virtual std::string identify(std::string_view text) const = 0;
};

/// Character trigrams of the normalized text: lowercase, non-letters become
/// spaces, each word padded with one space on both sides.
std::vector<std::string> char_trigrams(std::string_view text);

/// Trigram counts for one language.
struct TrigramProfile {
    std::string language;
    std::map<std::string, std::size_t> counts;
    std::size_t total = 0;

    static TrigramProfile build(std::string language, std::string_view training_text);

    /// Text format: "# language: xx" header, then "<trigram>\t<count>" lines.
    static TrigramProfile parse(std::string_view body);
    std::string serialize() const;
};

struct Classification {
    std::string language;   ///< kUnknownLanguage when undecided
    double confidence = 0;  ///< posterior of the best language under a uniform prior
    std::size_t trigrams = 0;
};

/// Naive Bayes over character trigrams with add-one smoothing.
class TrigramIdentifier final : public LanguageIdentifier {
public:
    explicit TrigramIdentifier(double min_confidence = 0.5) : min_confidence_(min_confidence) {}

    /// Every `*.profile` file in `dir`, in file-name order.
    static TrigramIdentifier load_dir(const std::filesystem::path& dir, double min_confidence = 0.5);

    void add_profile(TrigramProfile profile);
    std::vector<std::string> languages() const;

    Classification classify(std::string_view text) const;
    std::string identify(std::string_view text) const override { return classify(text).language; }

private:
    void reindex();

    double min_confidence_;
    std::vector<TrigramProfile> profiles_;
    std::unordered_map<std::string, std::vector<std::size_t>> index_;  // trigram -> count per profile
    std::size_t vocabulary_ = 0;
};

}  // namespace coi
