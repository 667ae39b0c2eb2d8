// Corpus ingestion: newline-delimited JSON tweet records, record filtering,
// and fixed-duration UTC windowing.
#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hashclust/errors.hpp"
#include "hashclust/text.hpp"
#include "hashclust/time_utils.hpp"

namespace hashclust {

struct TweetRecord {
    std::int64_t created_at = 0;  // Unix seconds, UTC
    std::string text;
    std::int64_t retweet_count = 0;
    std::vector<std::string> hashtags;  // case preserved, no leading '#'
    std::vector<std::string> urls;
    std::optional<std::pair<double, double>> coordinates;  // (lat, lon)
    std::size_t line_no = 0;  // 1-based position in the source file; doubles as tweet id
};

struct ParseError {
    enum class Kind { Malformed, Incomplete };
    std::size_t line_no = 0;
    Kind kind = Kind::Malformed;
    std::string message;
};

using ParseOutcome = std::variant<TweetRecord, ParseError>;

namespace detail {

inline bool valid_hashtag_token(std::string_view tag) {
    if (tag.empty()) return false;
    for (char c : tag)
        if (c == '#' || c == ' ' || c == '\t' || c == '\n' || c == '\r') return false;
    return true;
}

}  // namespace detail

// One JSON object per line. Required: created_at (ISO-8601 string), text
// (non-empty string). Optional: retweet_count, hashtags, urls, coordinates
// [lat, lon]. Unknown fields are ignored.
inline ParseOutcome parse_tweet_record(std::string_view line, std::size_t line_no) {
    auto malformed = [&](std::string msg) {
        return ParseError{line_no, ParseError::Kind::Malformed, std::move(msg)};
    };
    auto incomplete = [&](std::string msg) {
        return ParseError{line_no, ParseError::Kind::Incomplete, std::move(msg)};
    };

    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return malformed("not a JSON object");

    TweetRecord rec;
    rec.line_no = line_no;

    if (!j.contains("text") || !j["text"].is_string() || j["text"].get<std::string>().empty())
        return incomplete("incomplete record: missing text");
    rec.text = j["text"].get<std::string>();

    if (!j.contains("created_at") || !j["created_at"].is_string())
        return incomplete("incomplete record: missing created_at");
    auto ts = parse_iso8601(j["created_at"].get<std::string>());
    if (!ts) return malformed("unparseable created_at: " + j["created_at"].get<std::string>());
    rec.created_at = *ts;

    if (j.contains("retweet_count") && !j["retweet_count"].is_null()) {
        if (!j["retweet_count"].is_number_integer()) return malformed("retweet_count not an integer");
        rec.retweet_count = j["retweet_count"].get<std::int64_t>();
        if (rec.retweet_count < 0) return malformed("negative retweet_count");
    }

    if (j.contains("hashtags") && !j["hashtags"].is_null()) {
        if (!j["hashtags"].is_array()) return malformed("hashtags not an array");
        for (const auto& item : j["hashtags"]) {
            if (!item.is_string()) return malformed("hashtag entry not a string");
            std::string tag = item.get<std::string>();
            if (!tag.empty() && tag.front() == '#') tag.erase(tag.begin());
            if (!detail::valid_hashtag_token(tag))
                return malformed("invalid hashtag entry: \"" + item.get<std::string>() + "\"");
            rec.hashtags.push_back(std::move(tag));
        }
    }

    if (j.contains("urls") && !j["urls"].is_null()) {
        if (!j["urls"].is_array()) return malformed("urls not an array");
        for (const auto& item : j["urls"]) {
            if (!item.is_string()) return malformed("url entry not a string");
            rec.urls.push_back(item.get<std::string>());
        }
    }

    if (j.contains("coordinates") && !j["coordinates"].is_null()) {
        const auto& c = j["coordinates"];
        if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
            return malformed("coordinates not a [lat, lon] pair");
        rec.coordinates = std::make_pair(c[0].get<double>(), c[1].get<double>());
    }

    return rec;
}

// Drops records with empty text, records with no hashtags anywhere (neither
// carried nor extractable from text), and, when require_geo is set, records
// without coordinates. Order-preserving and idempotent.
inline std::vector<TweetRecord> filter_tweets(const std::vector<TweetRecord>& records,
                                              bool require_geo = false) {
    std::vector<TweetRecord> kept;
    kept.reserve(records.size());
    for (const auto& rec : records) {
        if (rec.text.empty()) continue;
        if (require_geo && !rec.coordinates) continue;
        if (rec.hashtags.empty() && !contains_hashtag(rec.text)) continue;
        kept.push_back(rec);
    }
    return kept;
}

struct TweetWindow {
    std::int64_t start = 0;  // aligned to a multiple of the duration from midnight UTC
    int duration_hours = 0;
    std::vector<TweetRecord> tweets;  // ascending created_at, ties by input position
};

// Buckets records into half-open [start, start + duration) windows; empty
// windows are omitted and the result is sorted by start.
inline std::vector<TweetWindow> window_tweets(const std::vector<TweetRecord>& records,
                                              int duration_hours) {
    if (duration_hours <= 0 || 24 % duration_hours != 0)
        throw ConfigError("window duration must be a positive divisor of 24, got " +
                          std::to_string(duration_hours));
    const std::int64_t span = static_cast<std::int64_t>(duration_hours) * 3600;

    std::vector<std::size_t> order(records.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return records[a].created_at < records[b].created_at;
    });

    std::vector<TweetWindow> windows;
    for (std::size_t idx : order) {
        const auto& rec = records[idx];
        std::int64_t start = floor_to_window(rec.created_at, span);
        if (windows.empty() || windows.back().start != start)
            windows.push_back(TweetWindow{start, duration_hours, {}});
        windows.back().tweets.push_back(rec);
    }
    // Tweets were visited in ascending created_at, so windows are already
    // sorted by start.
    return windows;
}

struct CorpusReadResult {
    std::vector<TweetRecord> records;
    std::vector<ParseError> errors;
    std::size_t lines_read = 0;
};

// Reads a JSONL corpus, collecting per-line errors instead of aborting.
// Whitespace-only lines are skipped.
inline CorpusReadResult read_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open corpus file: " + path);
    CorpusReadResult result;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        ++result.lines_read;
        ParseOutcome outcome = parse_tweet_record(line, line_no);
        if (auto* rec = std::get_if<TweetRecord>(&outcome))
            result.records.push_back(std::move(*rec));
        else
            result.errors.push_back(std::move(std::get<ParseError>(outcome)));
    }
    return result;
}

}  // namespace hashclust
