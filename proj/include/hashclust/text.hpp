// Tweet text cleaning: hashtag extraction and token normalization.
// Operates on bytes; only ASCII letters/digits count as word characters, so
// non-ASCII input degrades to separators rather than breaking anything.
#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace hashclust {

using StopwordSet = std::unordered_set<std::string>;

namespace detail {

inline bool is_ascii_alnum(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

inline bool is_word_char(char c) { return is_ascii_alnum(c) || c == '_'; }

inline char ascii_lower(char c) { return c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c; }

inline bool iequals_prefix(std::string_view s, std::string_view prefix) {
    if (s.size() < prefix.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i)
        if (ascii_lower(s[i]) != ascii_lower(prefix[i])) return false;
    return true;
}

inline bool icontains(std::string_view s, std::string_view needle) {
    if (needle.empty() || s.size() < needle.size()) return false;
    for (std::size_t i = 0; i + needle.size() <= s.size(); ++i)
        if (iequals_prefix(s.substr(i), needle)) return true;
    return false;
}

inline bool is_hyperlink_token(std::string_view token) {
    return iequals_prefix(token, "http://") || iequals_prefix(token, "https://") ||
           icontains(token, "t.co/");
}

}  // namespace detail

struct ExtractedHashtags {
    std::vector<std::string> hashtags;  // '#' stripped, case preserved, deduplicated
    std::string residual;               // input with the '#tag' matches deleted
};

// Pulls out maximal '#'-plus-word-characters matches. Duplicates keep their
// first occurrence; case distinguishes tags.
inline ExtractedHashtags extract_hashtags(std::string_view text) {
    ExtractedHashtags out;
    std::unordered_set<std::string> seen;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '#' && i + 1 < text.size() && detail::is_word_char(text[i + 1])) {
            std::size_t j = i + 1;
            while (j < text.size() && detail::is_word_char(text[j])) ++j;
            std::string tag(text.substr(i + 1, j - i - 1));
            if (seen.insert(tag).second) out.hashtags.push_back(std::move(tag));
            i = j;
        } else {
            out.residual.push_back(text[i]);
            ++i;
        }
    }
    return out;
}

inline bool contains_hashtag(std::string_view text) {
    for (std::size_t i = 0; i + 1 < text.size(); ++i)
        if (text[i] == '#' && detail::is_word_char(text[i + 1])) return true;
    return false;
}

// Normalizes hashtag-free text to stop-filtered lowercase tokens:
// hyperlink tokens out first, then lowercase, then every non-alphanumeric
// byte becomes a space, then whitespace split and stopword removal.
inline std::vector<std::string> normalize_text(std::string_view residual,
                                               const StopwordSet& stopwords) {
    std::string kept;
    kept.reserve(residual.size());
    std::size_t i = 0;
    while (i < residual.size()) {
        while (i < residual.size() && (residual[i] == ' ' || residual[i] == '\t' ||
                                       residual[i] == '\n' || residual[i] == '\r'))
            kept.push_back(residual[i++]);
        std::size_t j = i;
        while (j < residual.size() && residual[j] != ' ' && residual[j] != '\t' &&
               residual[j] != '\n' && residual[j] != '\r')
            ++j;
        if (j > i) {
            std::string_view token = residual.substr(i, j - i);
            if (!detail::is_hyperlink_token(token)) kept.append(token);
            i = j;
        }
    }

    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&]() {
        if (!current.empty()) {
            if (!stopwords.contains(current)) tokens.push_back(current);
            current.clear();
        }
    };
    for (char c : kept) {
        if (detail::is_ascii_alnum(c))
            current.push_back(detail::ascii_lower(c));
        else
            flush();
    }
    flush();
    return tokens;
}

}  // namespace hashclust
