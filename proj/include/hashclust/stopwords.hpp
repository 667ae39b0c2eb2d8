// Stopword handling. The bundled default is a 175-word standard English
// function-word list (also shipped verbatim as data/stopwords_english.txt);
// a caller-provided file overrides it.
#pragma once

#include <array>
#include <fstream>
#include <string>
#include <string_view>

#include "hashclust/errors.hpp"
#include "hashclust/text.hpp"

namespace hashclust {

inline constexpr std::array<std::string_view, 175> kDefaultStopwords = {
    "a", "about", "above", "after", "again", "against", "ain", "all", "although",
    "always", "am", "among", "an", "and", "any", "anyone", "anything", "are",
    "aren", "as", "at", "be", "became", "because", "become", "becomes", "been",
    "before", "being", "below", "between", "both", "but", "by", "can", "cannot",
    "could", "couldn", "d", "did", "didn", "do", "does", "doesn", "doing", "don",
    "down", "during", "each", "else", "ever", "every", "few", "for", "from",
    "further", "had", "hadn", "has", "hasn", "have", "haven", "having", "he",
    "her", "here", "hers", "herself", "him", "himself", "his", "how", "however",
    "i", "if", "in", "into", "is", "isn", "it", "its", "itself", "just", "least",
    "let", "like", "ll", "m", "ma", "may", "me", "meanwhile", "might", "mightn",
    "more", "most", "mustn", "my", "myself", "needn", "no", "nor", "not", "now",
    "o", "of", "off", "on", "once", "only", "or", "other", "ought", "our",
    "ours", "ourselves", "out", "over", "own", "re", "s", "same", "shan", "she",
    "should", "shouldn", "so", "some", "such", "t", "than", "that", "the",
    "their", "theirs", "them", "themselves", "then", "there", "these", "they",
    "this", "those", "through", "to", "too", "under", "until", "up", "ve",
    "very", "was", "wasn", "we", "were", "weren", "what", "when", "where",
    "which", "while", "who", "whom", "why", "will", "with", "won", "would",
    "wouldn", "y", "you", "your", "yours", "yourself", "yourselves"};

inline const StopwordSet& default_stopwords() {
    static const StopwordSet set = [] {
        StopwordSet s;
        for (auto w : kDefaultStopwords) s.emplace(w);
        return s;
    }();
    return set;
}

// One word per line, lowercase; blank lines and trailing CR tolerated.
inline StopwordSet load_stopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open stopword file: " + path);
    StopwordSet set;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        std::string word = line.substr(start);
        for (char& c : word) c = detail::ascii_lower(c);
        set.insert(std::move(word));
    }
    return set;
}

}  // namespace hashclust
