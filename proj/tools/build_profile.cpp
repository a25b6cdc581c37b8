// SPDX-License-Identifier: Apache-2.0
// Builds a trigram language profile from plain training text.
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "coi/errors.hpp"
#include "coi/io.hpp"
#include "coi/langid.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Build a character-trigram language profile", "coi-build-profile"};
    std::string language;
    std::string input;
    std::string output;
    app.add_option("--language", language, "language code written into the profile")->required();
    app.add_option("--input", input, "UTF-8 training text")->required()->check(CLI::ExistingFile);
    app.add_option("--output", output, "profile file to write")->required();
    CLI11_PARSE(app, argc, argv);

    try {
        const auto profile = coi::TrigramProfile::build(language, coi::io::read_file(input));
        coi::io::write_file(output, profile.serialize());
        std::cout << language << ": " << profile.counts.size() << " trigrams, " << profile.total << " total\n";
    } catch (const coi::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
