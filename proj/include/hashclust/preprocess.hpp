// Tweet preprocessing: hashtag extraction, normalization, Porter stemming.
// Hashtags stay case-preserved identifiers; only the residual body text is
// lowercased, cleaned and stemmed.
#pragma once

#include <string>
#include <unordered_set>
#include <vector>

#include "hashclust/ingest.hpp"
#include "hashclust/porter.hpp"
#include "hashclust/stopwords.hpp"
#include "hashclust/text.hpp"

namespace hashclust {

struct ProcessedTweet {
    std::size_t source_line = 0;  // line number of the originating record
    std::int64_t created_at = 0;
    std::vector<std::string> hashtags;  // deduplicated, first-occurrence order
    std::vector<std::string> stems;     // stemmed body tokens, hashtags removed
};

// Carried hashtags come first (record order), then tags extracted from the
// text, deduplicated case-sensitively on first occurrence.
inline ProcessedTweet preprocess_tweet(const TweetRecord& record, const StopwordSet& stopwords) {
    ProcessedTweet out;
    out.source_line = record.line_no;
    out.created_at = record.created_at;

    auto extracted = extract_hashtags(record.text);

    std::unordered_set<std::string> seen;
    for (const auto& tag : record.hashtags)
        if (seen.insert(tag).second) out.hashtags.push_back(tag);
    for (const auto& tag : extracted.hashtags)
        if (seen.insert(tag).second) out.hashtags.push_back(tag);

    for (const auto& token : normalize_text(extracted.residual, stopwords))
        out.stems.push_back(porter_stem(token));
    return out;
}

inline std::vector<ProcessedTweet> preprocess_all(const std::vector<TweetRecord>& records,
                                                  const StopwordSet& stopwords) {
    std::vector<ProcessedTweet> out;
    out.reserve(records.size());
    for (const auto& rec : records) out.push_back(preprocess_tweet(rec, stopwords));
    return out;
}

}  // namespace hashclust
