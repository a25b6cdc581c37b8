// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coi {

/// A hop marker found in model output, e.g. "Task 1 output and task 2 input:"
/// or the short forms "1 output and 2 input:", "2 output:".
struct HopMarker {
    std::size_t begin = 0;  ///< offset of the marker's first character
    std::size_t end = 0;    ///< offset just past the terminating ':' or '.'
    int hop = 0;            ///< first number in the marker
};

/// Byte range [begin, end) inside the scanned text.
struct TextSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
};

/// Every marker in `text`, left to right, non-overlapping.
///
/// Grammar (case-insensitive):
///   marker := ["task" WS] NUM WS ("output" | "input")
///             [WS "and" WS ["task" WS] NUM WS "input"] WS? TERM
///   (the "and" clause only follows "output")
///   TERM   := ":"            for bare forms
///           | ":" | "."      when the marker starts with "task"
/// A marker must start at a word boundary.
std::vector<HopMarker> find_hop_markers(std::string_view text);

bool contains_hop_marker(std::string_view text);

/// Scaffolded target for a chain's hop outputs.
///
/// One hop: the output verbatim. k >= 2 hops:
/// "Task 1 output and task 2 input: o1 Task 2 output and task 3 input: o2 ... Task k output: ok".
/// Throws ValidationError if the list is empty or, for k >= 2, a hop text
/// contains a marker (it would not parse back).
std::string render_target(const std::vector<std::string>& hop_outputs);

/// Recovers exactly k hop texts (trimmed). Throws ParseError naming the
/// recovered spans when any of hops 1..k is missing.
std::vector<std::string> parse_target(std::string_view text, int k);

/// Tolerant form: as many of the k hop spans as can be found, trimmed;
/// missing or empty hops are nullopt. Spans are byte ranges into `text`.
std::vector<std::optional<TextSpan>> locate_hop_spans(std::string_view text, int k);

std::vector<std::optional<std::string>> extract_hop_spans(std::string_view text, int k);

}  // namespace coi
