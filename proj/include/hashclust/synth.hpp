// Synthetic planted-event corpus generator. Each event owns disjoint word
// and hashtag pools; a configurable noise fraction of word draws leaks from
// other events' pools. Output is byte-deterministic for a fixed seed, which
// makes end-to-end determinism checks trivial.
#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hashclust/errors.hpp"
#include "hashclust/rng.hpp"
#include "hashclust/time_utils.hpp"

namespace hashclust {

struct SynthConfig {
    std::size_t events = 5;
    std::size_t tweets_per_event = 100;
    std::size_t vocab_per_event = 30;
    std::size_t tags_per_event = 4;
    double noise = 0.0;  // fraction of word draws contaminated from other events
    std::uint64_t rng_seed = 42;
    std::int64_t start_epoch = 1447718400;  // 2015-11-17T00:00:00Z
    std::size_t words_per_tweet = 10;
    std::size_t max_tags_per_tweet = 3;
};

struct SynthCorpus {
    std::vector<std::string> corpus_lines;                     // JSONL records
    std::vector<std::pair<std::string, std::string>> gold;     // (tweet id, event label)
};

inline SynthCorpus generate_synthetic(const SynthConfig& config) {
    if (config.events < 1 || config.tweets_per_event < 1 || config.vocab_per_event < 1 ||
        config.tags_per_event < 1 || config.words_per_tweet < 1)
        throw ConfigError("synthetic generator counts must all be >= 1");
    if (config.noise < 0.0 || config.noise >= 1.0)
        throw ConfigError("noise must be in [0, 1)");

    Rng rng(config.rng_seed);
    SynthCorpus out;
    const std::size_t total = config.events * config.tweets_per_event;
    const std::int64_t spacing_num = 86400;

    for (std::size_t i = 0; i < total; ++i) {
        const std::size_t event = i % config.events;
        const std::int64_t created =
            config.start_epoch + static_cast<std::int64_t>(i) * spacing_num /
                                     static_cast<std::int64_t>(total);

        std::string text;
        for (std::size_t w = 0; w < config.words_per_tweet; ++w) {
            std::size_t source_event = event;
            if (config.events > 1 && rng.unit() < config.noise) {
                std::size_t other = rng.below(config.events - 1);
                source_event = other >= event ? other + 1 : other;
            }
            std::size_t word = rng.below(config.vocab_per_event);
            if (!text.empty()) text.push_back(' ');
            text += "ev" + std::to_string(source_event) + "term" + std::to_string(word);
        }

        std::size_t tag_count =
            1 + rng.below(std::min(config.max_tags_per_tweet, config.tags_per_event));
        std::vector<std::string> tags;
        for (std::size_t idx : rng.sample_indices(config.tags_per_event, tag_count)) {
            tags.push_back("Ev" + std::to_string(event) + "Tag" + std::to_string(idx));
            text += " #" + tags.back();
        }
        if (rng.unit() < 0.2) text += " https://t.co/synth" + std::to_string(i);

        nlohmann::json record;
        record["created_at"] = format_iso8601(created);
        record["text"] = text;
        record["retweet_count"] = static_cast<std::int64_t>(rng.below(100));
        record["hashtags"] = tags;
        record["coordinates"] = {48.8566, 2.3522};
        out.corpus_lines.push_back(record.dump());

        out.gold.emplace_back(std::to_string(i + 1), "event" + std::to_string(event));
    }
    return out;
}

// Writes the corpus as JSONL and the gold labels as "tweet_id,label" CSV.
inline void write_synthetic(const SynthCorpus& corpus, const std::string& corpus_path,
                            const std::string& gold_path) {
    std::ofstream corpus_out(corpus_path, std::ios::binary);
    if (!corpus_out) throw InputError("cannot write corpus file: " + corpus_path);
    for (const auto& line : corpus.corpus_lines) corpus_out << line << '\n';

    std::ofstream gold_out(gold_path, std::ios::binary);
    if (!gold_out) throw InputError("cannot write gold labels file: " + gold_path);
    gold_out << "tweet_id,label\n";
    for (const auto& [id, label] : corpus.gold) gold_out << id << ',' << label << '\n';
}

}  // namespace hashclust
