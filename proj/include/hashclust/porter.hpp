// Porter stemming algorithm for lowercase ASCII tokens. Behavior matches the
// author's reference implementation, including its two revisions over the
// original rule table ("bli" -> "ble", "logi" -> "log") and the rule that
// words of length <= 2 are returned unchanged.
#pragma once

#include <array>
#include <string>
#include <string_view>

namespace hashclust {

namespace porter_detail {

inline bool is_consonant(std::string_view w, std::size_t i) {
    switch (w[i]) {
        case 'a':
        case 'e':
        case 'i':
        case 'o':
        case 'u':
            return false;
        case 'y':
            return i == 0 ? true : !is_consonant(w, i - 1);
        default:
            return true;
    }
}

// Number of vowel->consonant transitions in w[0..n): the m of [C](VC)^m[V].
inline std::size_t measure(std::string_view w, std::size_t n) {
    std::size_t i = 0;
    while (i < n && is_consonant(w, i)) ++i;
    std::size_t m = 0;
    for (;;) {
        while (i < n && !is_consonant(w, i)) ++i;
        if (i >= n) return m;
        ++m;
        while (i < n && is_consonant(w, i)) ++i;
        if (i >= n) return m;
    }
}

inline bool vowel_in_stem(std::string_view w, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (!is_consonant(w, i)) return true;
    return false;
}

inline bool double_consonant(std::string_view w, std::size_t i) {
    if (i < 1) return false;
    return w[i] == w[i - 1] && is_consonant(w, i);
}

// consonant-vowel-consonant ending at i, where the final consonant is not
// w, x or y. Gates the restore-final-e rules.
inline bool cvc(std::string_view w, std::size_t i) {
    if (i < 2) return false;
    if (!is_consonant(w, i) || is_consonant(w, i - 1) || !is_consonant(w, i - 2)) return false;
    char c = w[i];
    return c != 'w' && c != 'x' && c != 'y';
}

inline bool ends_with(std::string_view w, std::string_view suffix) {
    return w.size() >= suffix.size() && w.substr(w.size() - suffix.size()) == suffix;
}

struct Rule {
    std::string_view suffix;
    std::string_view replacement;
};

// Applies the first matching rule; the replacement happens only when the
// stem's measure is positive, but a match always ends the scan.
template <std::size_t N>
void apply_rules(std::string& w, const std::array<Rule, N>& rules) {
    for (const Rule& rule : rules) {
        if (ends_with(w, rule.suffix)) {
            std::size_t stem = w.size() - rule.suffix.size();
            if (measure(w, stem) > 0) {
                w.resize(stem);
                w.append(rule.replacement);
            }
            return;
        }
    }
}

inline void step1a(std::string& w) {
    if (w.back() != 's') return;
    if (ends_with(w, "sses")) {
        w.resize(w.size() - 2);
    } else if (ends_with(w, "ies")) {
        w.resize(w.size() - 2);  // "ies" -> "i"
    } else if (w[w.size() - 2] != 's') {
        w.pop_back();
    }
}

inline void step1b(std::string& w) {
    if (ends_with(w, "eed")) {
        if (measure(w, w.size() - 3) > 0) w.pop_back();
        return;
    }
    bool removed = false;
    if (ends_with(w, "ed") && vowel_in_stem(w, w.size() - 2)) {
        w.resize(w.size() - 2);
        removed = true;
    } else if (ends_with(w, "ing") && vowel_in_stem(w, w.size() - 3)) {
        w.resize(w.size() - 3);
        removed = true;
    }
    if (!removed) return;

    if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
        w.push_back('e');
    } else if (double_consonant(w, w.size() - 1)) {
        char c = w.back();
        if (c != 'l' && c != 's' && c != 'z') w.pop_back();
    } else if (measure(w, w.size()) == 1 && cvc(w, w.size() - 1)) {
        w.push_back('e');
    }
}

inline void step1c(std::string& w) {
    if (w.back() == 'y' && vowel_in_stem(w, w.size() - 1)) w.back() = 'i';
}

inline void step2(std::string& w) {
    static constexpr std::array<Rule, 21> rules = {{
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
        {"izer", "ize"},    {"bli", "ble"},     {"alli", "al"},   {"entli", "ent"},
        {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
        {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
        {"logi", "log"},
    }};
    apply_rules(w, rules);
}

inline void step3(std::string& w) {
    static constexpr std::array<Rule, 7> rules = {{
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""},
    }};
    apply_rules(w, rules);
}

inline void step4(std::string& w) {
    static constexpr std::array<std::string_view, 19> suffixes = {
        "al",  "ance", "ence", "er",    "ic",   "able", "ible", "ant", "ement", "ment",
        "ent", "ion",  "ou",   "ism",   "ate",  "iti",  "ous",  "ive", "ize",
    };
    for (std::string_view suffix : suffixes) {
        if (!ends_with(w, suffix)) continue;
        std::size_t stem = w.size() - suffix.size();
        if (suffix == "ion") {
            if (stem == 0 || (w[stem - 1] != 's' && w[stem - 1] != 't')) return;
        }
        if (measure(w, stem) > 1) w.resize(stem);
        return;
    }
}

inline void step5a(std::string& w) {
    if (w.back() != 'e') return;
    std::size_t m = measure(w, w.size());
    if (m > 1 || (m == 1 && !cvc(w, w.size() - 2))) w.pop_back();
}

inline void step5b(std::string& w) {
    if (w.back() == 'l' && double_consonant(w, w.size() - 1) && measure(w, w.size()) > 1)
        w.pop_back();
}

}  // namespace porter_detail

inline std::string porter_stem(std::string_view token) {
    std::string w(token);
    if (w.size() <= 2) return w;
    porter_detail::step1a(w);
    porter_detail::step1b(w);
    porter_detail::step1c(w);
    porter_detail::step2(w);
    porter_detail::step3(w);
    porter_detail::step4(w);
    porter_detail::step5a(w);
    porter_detail::step5b(w);
    return w;
}

}  // namespace hashclust
