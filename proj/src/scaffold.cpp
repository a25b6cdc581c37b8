// SPDX-License-Identifier: Apache-2.0
#include "coi/scaffold.hpp"

#include <cctype>

#include "coi/errors.hpp"
#include "coi/text.hpp"

namespace coi {

namespace {

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

// Cursor-style matcher over the text; every `eat_*` either advances and
// returns true or leaves the position untouched.
class Matcher {
public:
    Matcher(std::string_view s, std::size_t pos) : s_(s), pos_(pos) {}

    std::size_t pos() const { return pos_; }

    bool eat_ws1() {
        std::size_t p = pos_;
        while (p < s_.size() && text::is_space(s_[p])) ++p;
        if (p == pos_) return false;
        pos_ = p;
        return true;
    }

    void eat_ws0() {
        while (pos_ < s_.size() && text::is_space(s_[pos_])) ++pos_;
    }

    // Whole word, case-insensitive, not followed by a letter.
    bool eat_word(std::string_view w) {
        if (pos_ + w.size() > s_.size()) return false;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (std::tolower(static_cast<unsigned char>(s_[pos_ + i])) != w[i]) return false;
        }
        if (pos_ + w.size() < s_.size() && is_alpha(s_[pos_ + w.size()])) return false;
        pos_ += w.size();
        return true;
    }

    bool eat_number(int& value) {
        std::size_t p = pos_;
        long long v = 0;
        while (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) {
            v = std::min<long long>(v * 10 + (s_[p] - '0'), 1'000'000);
            ++p;
        }
        if (p == pos_) return false;
        if (p < s_.size() && is_alpha(s_[p])) return false;
        value = static_cast<int>(v);
        pos_ = p;
        return true;
    }

    bool eat_char(char c) {
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    // ["task" WS]
    bool eat_task_prefix() {
        Matcher m = *this;
        if (m.eat_word("task") && m.eat_ws1()) {
            *this = m;
            return true;
        }
        return false;
    }

private:
    std::string_view s_;
    std::size_t pos_;
};

std::optional<HopMarker> match_marker_at(std::string_view s, std::size_t pos) {
    Matcher m(s, pos);
    const bool strong = m.eat_task_prefix();
    int hop = 0;
    if (!m.eat_number(hop) || !m.eat_ws1()) return std::nullopt;
    const bool output = m.eat_word("output");
    if (!output && !m.eat_word("input")) return std::nullopt;

    // optional "and [task] N input" clause, only after "output"; a hop text
    // ending in "N input and" must not swallow the next "Task j output:"
    if (output) {
        Matcher tail = m;
        int other = 0;
        if (tail.eat_ws1() && tail.eat_word("and") && tail.eat_ws1()) {
            tail.eat_task_prefix();
            if (tail.eat_number(other) && tail.eat_ws1() && tail.eat_word("input")) m = tail;
        }
    }
    m.eat_ws0();
    if (m.eat_char(':') || (strong && m.eat_char('.'))) return HopMarker{pos, m.pos(), hop};
    return std::nullopt;
}

}  // namespace

std::vector<HopMarker> find_hop_markers(std::string_view text) {
    std::vector<HopMarker> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        const bool boundary = i == 0 || !is_alnum(text[i - 1]);
        if (boundary && (c == 't' || c == 'T' || std::isdigit(static_cast<unsigned char>(c)))) {
            if (auto m = match_marker_at(text, i)) {
                out.push_back(*m);
                i = m->end;
                continue;
            }
        }
        ++i;
    }
    return out;
}

bool contains_hop_marker(std::string_view text) { return !find_hop_markers(text).empty(); }

std::string render_target(const std::vector<std::string>& hop_outputs) {
    if (hop_outputs.empty()) throw ValidationError("render_target needs at least one hop output");
    if (hop_outputs.size() == 1) return hop_outputs.front();
    std::string out;
    const std::size_t k = hop_outputs.size();
    for (std::size_t i = 0; i < k; ++i) {
        if (contains_hop_marker(hop_outputs[i])) {
            throw ValidationError("hop " + std::to_string(i + 1) + " output contains a hop marker: \"" +
                                  hop_outputs[i] + "\"");
        }
        if (i) out += ' ';
        out += "Task " + std::to_string(i + 1) + " output";
        if (i + 1 < k) out += " and task " + std::to_string(i + 2) + " input";
        out += ": ";
        out += hop_outputs[i];
    }
    return out;
}

std::vector<std::optional<TextSpan>> locate_hop_spans(std::string_view text, int k) {
    if (k < 1) throw ValidationError("chain length must be >= 1");
    std::vector<std::optional<TextSpan>> spans(static_cast<std::size_t>(k));
    const auto markers = find_hop_markers(text);

    auto trimmed = [&](std::size_t b, std::size_t e) -> std::optional<TextSpan> {
        while (b < e && text::is_space(text[b])) ++b;
        while (e > b && text::is_space(text[e - 1])) --e;
        if (b == e) return std::nullopt;
        return TextSpan{b, e};
    };

    // the first marker for a hop wins; later duplicates only delimit
    std::vector<bool> seen(static_cast<std::size_t>(k), false);
    for (std::size_t i = 0; i < markers.size(); ++i) {
        const int hop = markers[i].hop;
        if (hop < 1 || hop > k || seen[static_cast<std::size_t>(hop - 1)]) continue;
        seen[static_cast<std::size_t>(hop - 1)] = true;
        const std::size_t end = i + 1 < markers.size() ? markers[i + 1].begin : text.size();
        spans[static_cast<std::size_t>(hop - 1)] = trimmed(markers[i].end, end);
    }
    if (k == 1 && !seen[0]) spans[0] = trimmed(0, text.size());
    return spans;
}

std::vector<std::optional<std::string>> extract_hop_spans(std::string_view text, int k) {
    std::vector<std::optional<std::string>> out;
    for (const auto& s : locate_hop_spans(text, k)) {
        if (s) {
            out.emplace_back(std::string(text.substr(s->begin, s->end - s->begin)));
        } else {
            out.emplace_back(std::nullopt);
        }
    }
    return out;
}

std::vector<std::string> parse_target(std::string_view text, int k) {
    if (k < 1) throw ValidationError("chain length must be >= 1");
    const auto markers = find_hop_markers(text);
    std::vector<std::optional<std::string>> spans(static_cast<std::size_t>(k));

    // Unlike the tolerant form, a marker followed directly by the next marker
    // yields an empty (present) hop.
    for (std::size_t i = 0; i < markers.size(); ++i) {
        const int hop = markers[i].hop;
        if (hop < 1 || hop > k) continue;
        auto& slot = spans[static_cast<std::size_t>(hop - 1)];
        if (slot) continue;
        const std::size_t end = i + 1 < markers.size() ? markers[i + 1].begin : text.size();
        slot = std::string(text::trim(text.substr(markers[i].end, end - markers[i].end)));
    }
    if (k == 1 && !spans[0]) spans[0] = std::string(text::trim(text));

    std::vector<std::string> out;
    std::string recovered;
    bool complete = true;
    for (int i = 0; i < k; ++i) {
        const auto& s = spans[static_cast<std::size_t>(i)];
        if (!s) {
            complete = false;
            continue;
        }
        if (!recovered.empty()) recovered += ", ";
        recovered += std::to_string(i + 1) + "=\"" + *s + "\"";
        out.push_back(*s);
    }
    if (!complete) {
        throw ParseError("expected " + std::to_string(k) + " hop outputs; recovered [" + recovered + "]");
    }
    return out;
}

}  // namespace coi
