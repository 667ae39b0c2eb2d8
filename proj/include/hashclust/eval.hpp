// Clustering quality scoring: contingency tables, Purity, and normalized
// mutual information, plus the mapping that turns a hashtag clustering into
// per-tweet cluster labels so tweet-level gold labels can score it.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hashclust/clustering.hpp"
#include "hashclust/errors.hpp"
#include "hashclust/preprocess.hpp"

namespace hashclust {

struct Labeling {
    std::vector<std::string> items;  // ordered item ids
    std::unordered_map<std::string, std::string> labels;

    void add(std::string item, std::string label) {
        labels.emplace(item, std::move(label));
        items.push_back(std::move(item));
    }
};

struct ContingencyTable {
    std::vector<std::string> row_labels;  // predicted clusters, sorted
    std::vector<std::string> col_labels;  // gold classes, sorted
    std::vector<std::vector<std::uint64_t>> counts;
    std::vector<std::uint64_t> row_sums;
    std::vector<std::uint64_t> col_sums;
    std::uint64_t n = 0;
};

// counts[r][i] = number of items predicted into cluster r that carry gold
// class i. Both labelings must cover exactly the same item set.
inline ContingencyTable contingency(const Labeling& pred, const Labeling& gold) {
    std::vector<std::string> only_pred, only_gold;
    for (const auto& item : pred.items)
        if (!gold.labels.contains(item)) only_pred.push_back(item);
    for (const auto& item : gold.items)
        if (!pred.labels.contains(item)) only_gold.push_back(item);
    if (!only_pred.empty() || !only_gold.empty()) {
        std::string msg = "labelings cover different items;";
        msg += " only in predicted: " + std::to_string(only_pred.size());
        msg += ", only in gold: " + std::to_string(only_gold.size());
        std::size_t shown = 0;
        for (const auto& item : only_pred) {
            if (shown++ == 5) break;
            msg += " -" + item;
        }
        for (const auto& item : only_gold) {
            if (shown++ == 10) break;
            msg += " +" + item;
        }
        throw InputError(msg);
    }

    ContingencyTable table;
    std::map<std::string, std::size_t> row_index, col_index;
    for (const auto& [item, label] : pred.labels) row_index.emplace(label, 0);
    for (const auto& [item, label] : gold.labels) col_index.emplace(label, 0);
    for (auto& [label, idx] : row_index) {
        idx = table.row_labels.size();
        table.row_labels.push_back(label);
    }
    for (auto& [label, idx] : col_index) {
        idx = table.col_labels.size();
        table.col_labels.push_back(label);
    }
    table.counts.assign(table.row_labels.size(),
                        std::vector<std::uint64_t>(table.col_labels.size(), 0));
    for (const auto& item : pred.items) {
        std::size_t r = row_index.at(pred.labels.at(item));
        std::size_t c = col_index.at(gold.labels.at(item));
        table.counts[r][c] += 1;
    }
    table.row_sums.assign(table.row_labels.size(), 0);
    table.col_sums.assign(table.col_labels.size(), 0);
    for (std::size_t r = 0; r < table.counts.size(); ++r)
        for (std::size_t c = 0; c < table.counts[r].size(); ++c) {
            table.row_sums[r] += table.counts[r][c];
            table.col_sums[c] += table.counts[r][c];
            table.n += table.counts[r][c];
        }
    return table;
}

// Per-cluster purity: the plurality-class fraction of each cluster.
inline std::vector<double> per_cluster_purity(const ContingencyTable& table) {
    if (table.n == 0) throw ConfigError("purity of an empty table");
    std::vector<double> out;
    out.reserve(table.counts.size());
    for (std::size_t r = 0; r < table.counts.size(); ++r) {
        std::uint64_t best = 0;
        for (std::uint64_t c : table.counts[r]) best = std::max(best, c);
        out.push_back(static_cast<double>(best) / static_cast<double>(table.row_sums[r]));
    }
    return out;
}

// Weighted sum of per-cluster purities: (1/n) * sum_r max_i counts[r][i].
inline double purity(const ContingencyTable& table) {
    if (table.n == 0) throw ConfigError("purity of an empty table");
    std::uint64_t total = 0;
    for (const auto& row : table.counts) {
        std::uint64_t best = 0;
        for (std::uint64_t c : row) best = std::max(best, c);
        total += best;
    }
    return static_cast<double>(total) / static_cast<double>(table.n);
}

// NMI(X, Y) = I(X, Y) / sqrt(H(X) * H(Y)), natural logarithms (the ratio is
// base-invariant). Zero cells contribute zero to I. When either marginal
// entropy is zero the formula divides by zero; the convention here returns
// 1 when both partitions are the same single block and 0 otherwise.
inline double nmi(const ContingencyTable& table) {
    if (table.n == 0) throw ConfigError("nmi of an empty table");
    const double n = static_cast<double>(table.n);
    if (table.row_labels.size() == 1 || table.col_labels.size() == 1)
        return table.row_labels.size() == 1 && table.col_labels.size() == 1 ? 1.0 : 0.0;

    double mutual_information = 0.0;
    for (std::size_t r = 0; r < table.counts.size(); ++r)
        for (std::size_t c = 0; c < table.counts[r].size(); ++c) {
            std::uint64_t cell = table.counts[r][c];
            if (cell == 0) continue;
            double p_joint = static_cast<double>(cell) / n;
            double p_row = static_cast<double>(table.row_sums[r]) / n;
            double p_col = static_cast<double>(table.col_sums[c]) / n;
            mutual_information += p_joint * std::log(p_joint / (p_row * p_col));
        }
    double h_rows = 0.0;
    for (std::uint64_t s : table.row_sums) {
        double p = static_cast<double>(s) / n;
        h_rows -= p * std::log(p);
    }
    double h_cols = 0.0;
    for (std::uint64_t s : table.col_sums) {
        double p = static_cast<double>(s) / n;
        h_cols -= p * std::log(p);
    }
    // Mutual information is non-negative; summation noise can leave it at
    // -1e-17 under exact independence.
    return std::max(0.0, mutual_information / std::sqrt(h_rows * h_cols));
}

struct EvalReport {
    double purity = 0.0;
    double nmi = 0.0;
    std::size_t k_pred = 0;
    std::size_t k_gold = 0;
    std::vector<double> per_cluster_purity;
};

inline EvalReport evaluate_table(const ContingencyTable& table) {
    EvalReport report;
    report.purity = purity(table);
    report.nmi = nmi(table);
    report.k_pred = table.row_labels.size();
    report.k_gold = table.col_labels.size();
    report.per_cluster_purity = per_cluster_purity(table);
    return report;
}

enum class TweetLabelRule {
    Plurality,      // cluster holding most of the tweet's hashtags
    FirstHashtag,   // cluster of the earliest-listed clustered hashtag
};

struct TweetLabelingResult {
    Labeling labeling;                  // tweet id -> cluster id (as string)
    std::vector<std::string> excluded;  // tweets with no clustered hashtag
};

// Labels each tweet with a cluster of the given hashtag clustering. Under
// the plurality rule, ties go to the tied cluster containing the tweet's
// earliest-listed hashtag. Tweets none of whose hashtags are in the
// clustering are excluded and reported.
inline TweetLabelingResult tweets_to_cluster_labels(const Clustering& clustering,
                                                    const std::vector<ProcessedTweet>& tweets,
                                                    TweetLabelRule rule = TweetLabelRule::Plurality) {
    TweetLabelingResult result;
    for (const auto& tweet : tweets) {
        std::string id = std::to_string(tweet.source_line);
        int label = -1;
        if (rule == TweetLabelRule::FirstHashtag) {
            for (const auto& tag : tweet.hashtags) {
                auto it = clustering.assignments.find(tag);
                if (it != clustering.assignments.end()) {
                    label = it->second;
                    break;
                }
            }
        } else {
            std::unordered_map<int, std::size_t> votes;
            for (const auto& tag : tweet.hashtags) {
                auto it = clustering.assignments.find(tag);
                if (it != clustering.assignments.end()) votes[it->second] += 1;
            }
            std::size_t best = 0;
            for (const auto& [cluster, count] : votes) best = std::max(best, count);
            for (const auto& tag : tweet.hashtags) {
                auto it = clustering.assignments.find(tag);
                if (it != clustering.assignments.end() && votes[it->second] == best) {
                    label = it->second;
                    break;
                }
            }
        }
        if (label < 0)
            result.excluded.push_back(std::move(id));
        else
            result.labeling.add(std::move(id), std::to_string(label));
    }
    return result;
}

// The hashtag-level view of a clustering as a labeling.
inline Labeling clustering_to_labeling(const Clustering& clustering) {
    Labeling labeling;
    for (const auto& tag : clustering.hashtags)
        labeling.add(tag, std::to_string(clustering.assignments.at(tag)));
    return labeling;
}

// Keeps only the given items, preserving the labeling's own item order.
inline Labeling restrict_labeling(const Labeling& labeling,
                                  const std::unordered_set<std::string>& items) {
    Labeling out;
    for (const auto& item : labeling.items)
        if (items.contains(item)) out.add(item, labeling.labels.at(item));
    return out;
}

// Two-column CSV "tweet_id,label" with a header row. Labels may not contain
// commas; everything after the first comma is the label.
inline Labeling load_gold_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open gold labels file: " + path);
    Labeling labeling;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1) continue;  // header
        std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw InputError("gold labels line " + std::to_string(line_no) + ": no comma");
        std::string item = line.substr(0, comma);
        std::string label = line.substr(comma + 1);
        if (item.empty() || label.empty())
            throw InputError("gold labels line " + std::to_string(line_no) + ": empty field");
        if (labeling.labels.contains(item))
            throw InputError("gold labels line " + std::to_string(line_no) +
                             ": duplicate tweet_id " + item);
        labeling.add(std::move(item), std::move(label));
    }
    return labeling;
}

}  // namespace hashclust
