// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <fstream>

#include "coi/errors.hpp"
#include "coi/langid.hpp"
#include "support.hpp"

using namespace coi;

namespace {

const TrigramIdentifier& bundled() {
    static const TrigramIdentifier id = TrigramIdentifier::load_dir(testing::data_dir() / "data/langid");
    return id;
}

std::vector<std::string> lines(const std::filesystem::path& p) {
    std::vector<std::string> out;
    std::ifstream in(p);
    for (std::string l; std::getline(in, l);) {
        if (!l.empty()) out.push_back(l);
    }
    return out;
}

}  // namespace

TEST_CASE("trigram normalization") {
    CHECK(char_trigrams("Ab") == std::vector<std::string>{" ab", "ab "});
    CHECK(char_trigrams("ÉT, 42!") == std::vector<std::string>{" ét", "ét "});
    CHECK(char_trigrams("").empty());
    CHECK(char_trigrams("123 ...").empty());
}

TEST_CASE("profile text round trip") {
    const auto p = TrigramProfile::build("xx", "hello world hello");
    const auto back = TrigramProfile::parse(p.serialize());
    CHECK(back.language == "xx");
    CHECK(back.counts == p.counts);
    CHECK(back.total == p.total);
    CHECK_THROWS_AS(TrigramProfile::parse(" ab\t3\n"), ParseError);
    CHECK_THROWS_AS(TrigramProfile::parse("# language: xx\n ab 3\n"), ParseError);
}

TEST_CASE("bundled profiles") {
    const auto& id = bundled();
    CHECK(id.languages() == std::vector<std::string>{"en", "es", "fr"});
    CHECK(id.identify("") == kUnknownLanguage);
    CHECK(id.identify("12345 !!") == kUnknownLanguage);
    CHECK(id.identify("the food is good and the service was excellent") == "en");
    CHECK(id.identify("la nourriture est bonne et le service était excellent") == "fr");
    CHECK(id.identify("la comida está buena y el servicio fue excelente") == "es");
    const auto c = id.classify("the food is good");
    CHECK(c.confidence > 0.5);
    CHECK(c.confidence <= 1.0);
    CHECK_THROWS_AS(TrigramIdentifier::load_dir("/nonexistent/profiles"), IoError);
}

TEST_CASE("confidence threshold") {
    TrigramIdentifier id(0.99);
    id.add_profile(TrigramProfile::build("aa", "abc abc abc"));
    id.add_profile(TrigramProfile::build("bb", "abd abd abd"));
    CHECK(id.identify("ab") == kUnknownLanguage);
    CHECK(id.identify("abc abc abc abc") == "aa");
}

TEST_CASE("labeled sentence fixture") {
    std::size_t total = 0;
    std::size_t correct = 0;
    for (const char* lang : {"en", "fr", "es"}) {
        for (const auto& s : lines(testing::fixture(std::string("langid/") + lang + ".txt"))) {
            ++total;
            correct += bundled().identify(s) == lang;
        }
    }
    CHECK(total == 300);
    MESSAGE("accuracy " << correct << "/" << total);
    CHECK(static_cast<double>(correct) >= 0.95 * static_cast<double>(total));
}
