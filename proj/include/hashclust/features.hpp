// Hashtag feature construction: per-hashtag profiles (bag of stems + bag of
// co-occurring hashtags), the two unit-normalized blocks built from them,
// and the weighted composite similarity over the pair of blocks.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hashclust/errors.hpp"
#include "hashclust/preprocess.hpp"
#include "hashclust/sparse_vector.hpp"

namespace hashclust {

class Vocabulary {
public:
    std::uint32_t intern(const std::string& word) {
        auto it = word_to_id_.find(word);
        if (it != word_to_id_.end()) return it->second;
        std::uint32_t id = static_cast<std::uint32_t>(id_to_word_.size());
        word_to_id_.emplace(word, id);
        id_to_word_.push_back(word);
        return id;
    }

    const std::string& word(std::uint32_t id) const { return id_to_word_.at(id); }
    std::size_t size() const { return id_to_word_.size(); }

    const std::unordered_map<std::string, std::uint32_t>& word_to_id() const { return word_to_id_; }

private:
    std::unordered_map<std::string, std::uint32_t> word_to_id_;
    std::vector<std::string> id_to_word_;
};

using HashtagIndex = Vocabulary;  // same bijection structure, over hashtags

struct HashtagProfile {
    std::string hashtag;
    std::map<std::uint32_t, std::uint32_t> word_counts;  // stem id -> count
    std::map<std::uint32_t, std::uint32_t> cooc_counts;  // other-hashtag id -> count
    std::uint32_t tweet_count = 0;
};

struct ProfileSet {
    std::vector<HashtagProfile> profiles;  // indexed by hashtag id
    Vocabulary vocab;
    HashtagIndex tags;
};

// Aggregates stems and co-occurrences per hashtag over all tweets carrying
// it. Co-occurrence counts one per (tweet, other hashtag) pair; a profile
// never co-occurs with itself.
inline ProfileSet build_profiles(const std::vector<ProcessedTweet>& tweets) {
    ProfileSet set;
    for (const auto& tweet : tweets) {
        if (tweet.hashtags.empty()) continue;
        std::vector<std::uint32_t> tag_ids;
        tag_ids.reserve(tweet.hashtags.size());
        for (const auto& tag : tweet.hashtags) {
            std::uint32_t id = set.tags.intern(tag);
            if (id == set.profiles.size()) set.profiles.push_back(HashtagProfile{tag, {}, {}, 0});
            tag_ids.push_back(id);
        }
        std::vector<std::uint32_t> stem_ids;
        stem_ids.reserve(tweet.stems.size());
        for (const auto& stem : tweet.stems) stem_ids.push_back(set.vocab.intern(stem));

        for (std::uint32_t tid : tag_ids) {
            auto& profile = set.profiles[tid];
            profile.tweet_count += 1;
            for (std::uint32_t sid : stem_ids) profile.word_counts[sid] += 1;
            for (std::uint32_t other : tag_ids)
                if (other != tid) profile.cooc_counts[other] += 1;
        }
    }
    return set;
}

struct FeatureConfig {
    double alpha = 0.5;      // weight of the word block; tag block gets 1 - alpha
    bool use_tfidf = false;  // raw term frequency by default
};

inline SparseVec word_vector(const HashtagProfile& profile) {
    return unit_vector_from_weights(profile.word_counts);
}

inline SparseVec tag_vector(const HashtagProfile& profile) {
    return unit_vector_from_weights(profile.cooc_counts);
}

class FeaturelessHashtag : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A hashtag's feature vector: two unit blocks plus the effective block
// weights. When exactly one block is empty the full weight moves to the
// other block, which keeps sim(h, h) == 1 for every constructible vector.
struct HashtagVector {
    SparseVec word_block;  // unit norm or empty
    SparseVec tag_block;   // unit norm or empty
    double alpha = 0.5;    // nominal configuration value
    double word_weight = 0.5;  // effective alpha after redistribution
    double tag_weight = 0.5;   // effective beta after redistribution
};

inline HashtagVector combined_vector(SparseVec word_block, SparseVec tag_block, double alpha) {
    if (alpha <= 0.0 || alpha > 1.0)
        throw ConfigError("alpha must be in (0, 1], got " + std::to_string(alpha));
    HashtagVector v;
    v.alpha = alpha;
    if (word_block.empty() && tag_block.empty())
        throw FeaturelessHashtag("featureless hashtag: both feature blocks empty");
    if (word_block.empty()) {
        v.word_weight = 0.0;
        v.tag_weight = 1.0;
    } else if (tag_block.empty()) {
        v.word_weight = 1.0;
        v.tag_weight = 0.0;
    } else {
        v.word_weight = alpha;
        v.tag_weight = 1.0 - alpha;
    }
    v.word_block = std::move(word_block);
    v.tag_block = std::move(tag_block);
    return v;
}

// Composite similarity: the dot product of the weighted concatenations
// (sqrt(alpha) * word, sqrt(beta) * tag). Always in [0, 1] because all
// weights are non-negative and both sides have unit composite norm.
inline double similarity(const HashtagVector& a, const HashtagVector& b) {
    if (a.alpha != b.alpha)
        throw ContractViolation("similarity between vectors built with different alpha");
    double s = 0.0;
    if (a.word_weight > 0.0 && b.word_weight > 0.0)
        s += std::sqrt(a.word_weight * b.word_weight) * dot(a.word_block, b.word_block);
    if (a.tag_weight > 0.0 && b.tag_weight > 0.0)
        s += std::sqrt(a.tag_weight * b.tag_weight) * dot(a.tag_block, b.tag_block);
    return s;
}

inline double distance(const HashtagVector& a, const HashtagVector& b) {
    return 1.0 - similarity(a, b);
}

// A vector already in composite space: blocks pre-scaled by the square roots
// of their effective weights, jointly unit-norm. Centroids live here.
struct CompositeVec {
    SparseVec word;
    SparseVec tag;

    double norm_squared() const { return word.norm_squared() + tag.norm_squared(); }
    double norm() const { return std::sqrt(norm_squared()); }
};

inline CompositeVec to_composite(const HashtagVector& v) {
    CompositeVec c;
    c.word = v.word_block;
    c.tag = v.tag_block;
    c.word.scale(std::sqrt(v.word_weight));
    c.tag.scale(std::sqrt(v.tag_weight));
    return c;
}

inline double dot(const CompositeVec& a, const CompositeVec& b) {
    return dot(a.word, b.word) + dot(a.tag, b.tag);
}

inline double distance(const CompositeVec& a, const CompositeVec& b) {
    return 1.0 - dot(a, b);
}

// TF-IDF reweighting of a profile's word counts: count * ln(N / df) across
// the profile collection. Words present in every profile weigh zero.
inline std::map<std::uint32_t, double> tfidf_weights(
    const HashtagProfile& profile, const std::vector<std::uint32_t>& document_frequency,
    std::size_t profile_count) {
    std::map<std::uint32_t, double> weights;
    for (const auto& [word_id, count] : profile.word_counts) {
        double idf = std::log(static_cast<double>(profile_count) /
                              static_cast<double>(document_frequency[word_id]));
        if (idf > 0.0) weights[word_id] = static_cast<double>(count) * idf;
    }
    return weights;
}

struct VectorSet {
    // Sorted by hashtag string: the canonical presentation order.
    std::vector<std::pair<std::string, HashtagVector>> vectors;
    std::vector<std::string> featureless;  // hashtags that could not be vectorized
};

// Vectorizes every profile. Featureless hashtags (no stems and no co-tags
// anywhere) cannot join any clustering and are reported separately.
inline VectorSet build_vectors(const ProfileSet& set, const FeatureConfig& config) {
    std::vector<std::uint32_t> df;
    if (config.use_tfidf) {
        df.assign(set.vocab.size(), 0);
        for (const auto& profile : set.profiles)
            for (const auto& [word_id, count] : profile.word_counts) df[word_id] += 1;
    }

    VectorSet out;
    for (const auto& profile : set.profiles) {
        SparseVec wv = config.use_tfidf
                           ? unit_vector_from_weights(
                                 tfidf_weights(profile, df, set.profiles.size()))
                           : word_vector(profile);
        SparseVec tv = tag_vector(profile);
        if (wv.empty() && tv.empty()) {
            out.featureless.push_back(profile.hashtag);
            continue;
        }
        out.vectors.emplace_back(profile.hashtag,
                                 combined_vector(std::move(wv), std::move(tv), config.alpha));
    }
    std::sort(out.vectors.begin(), out.vectors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

// Hashtags ordered by first appearance in the tweet stream (ascending
// created_at, ties by hashtag string). This is the feed order for the
// single-pass clusterer.
inline std::vector<std::string> first_appearance_order(const std::vector<ProcessedTweet>& tweets) {
    std::unordered_map<std::string, std::int64_t> first_seen;
    for (const auto& tweet : tweets)
        for (const auto& tag : tweet.hashtags) {
            auto it = first_seen.find(tag);
            if (it == first_seen.end() || tweet.created_at < it->second)
                first_seen[tag] = tweet.created_at;
        }
    std::vector<std::pair<std::int64_t, std::string>> keyed;
    keyed.reserve(first_seen.size());
    for (auto& [tag, t] : first_seen) keyed.emplace_back(t, tag);
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::string> order;
    order.reserve(keyed.size());
    for (auto& [t, tag] : keyed) order.push_back(std::move(tag));
    return order;
}

}  // namespace hashclust
