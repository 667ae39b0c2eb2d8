// File formats: clustering JSON, evaluation reports (JSON + aligned text),
// summary tables (CSV + aligned text), and the profile debug dump. Output
// is fully deterministic: keys are ordered and metrics print with fixed
// precision.
#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hashclust/clustering.hpp"
#include "hashclust/errors.hpp"
#include "hashclust/eval.hpp"
#include "hashclust/features.hpp"
#include "hashclust/time_utils.hpp"

namespace hashclust {

namespace detail {

inline std::string format_metric(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", value);
    return buf;
}

// Highest-weight entries of a sparse block mapped through the vocabulary;
// ties break toward the lower word id.
inline std::vector<std::string> top_words(const SparseVec& block, const Vocabulary& vocab,
                                          std::size_t limit) {
    std::vector<std::pair<std::uint32_t, double>> entries = block.entries;
    std::stable_sort(entries.begin(), entries.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    std::vector<std::string> words;
    for (const auto& [id, weight] : entries) {
        if (words.size() == limit) break;
        words.push_back(vocab.word(id));
    }
    return words;
}

}  // namespace detail

struct WindowInfo {
    std::int64_t start = 0;
    int hours = 0;          // 0 = whole corpus
};

inline nlohmann::json clustering_to_json(const Clustering& clustering, const Vocabulary& vocab,
                                         std::optional<WindowInfo> window = std::nullopt,
                                         std::size_t top_word_limit = 10) {
    nlohmann::json j;
    j["method"] = clustering.method;
    j["alpha"] = clustering.alpha;
    j["k"] = clustering.k();
    j["objective"] = clustering.objective;
    if (window) {
        j["window"]["start"] = format_iso8601(window->start);
        j["window"]["hours"] = window->hours;
    }
    auto groups = clustering.members_by_cluster();
    nlohmann::json clusters = nlohmann::json::array();
    for (std::size_t id = 0; id < groups.size(); ++id) {
        nlohmann::json c;
        c["id"] = id;
        c["hashtags"] = groups[id];
        c["top_words"] = detail::top_words(clustering.centroids[id].word, vocab, top_word_limit);
        clusters.push_back(std::move(c));
    }
    j["clusters"] = std::move(clusters);
    return j;
}

inline void write_clustering(const std::string& path, const Clustering& clustering,
                             const Vocabulary& vocab,
                             std::optional<WindowInfo> window = std::nullopt) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write clustering file: " + path);
    out << clustering_to_json(clustering, vocab, window).dump(2) << '\n';
}

// A clustering read back from disk: membership only, no centroids.
struct ClusterFile {
    std::string method;
    double alpha = 0.5;
    std::vector<std::vector<std::string>> groups;
};

inline ClusterFile read_cluster_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open clustering file: " + path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("clusters") || !j["clusters"].is_array())
        throw InputError("not a clustering file: " + path);
    ClusterFile file;
    file.method = j.value("method", std::string("unknown"));
    file.alpha = j.value("alpha", 0.5);
    for (const auto& c : j["clusters"]) {
        std::vector<std::string> group;
        for (const auto& tag : c.at("hashtags")) group.push_back(tag.get<std::string>());
        file.groups.push_back(std::move(group));
    }
    return file;
}

inline Labeling cluster_file_to_labeling(const ClusterFile& file) {
    Labeling labeling;
    for (std::size_t id = 0; id < file.groups.size(); ++id)
        for (const auto& tag : file.groups[id]) labeling.add(tag, std::to_string(id));
    return labeling;
}

inline nlohmann::json eval_report_to_json(const EvalReport& report) {
    nlohmann::json j;
    j["purity"] = report.purity;
    j["nmi"] = report.nmi;
    j["k_pred"] = report.k_pred;
    j["k_gold"] = report.k_gold;
    j["per_cluster_purity"] = report.per_cluster_purity;
    return j;
}

inline std::string eval_report_to_text(const EvalReport& report) {
    std::ostringstream out;
    out << "metric  value\n";
    out << "purity  " << detail::format_metric(report.purity) << '\n';
    out << "nmi     " << detail::format_metric(report.nmi) << '\n';
    out << "k_pred  " << report.k_pred << '\n';
    out << "k_gold  " << report.k_gold << '\n';
    return out.str();
}

// One scored line of the run summary; mirrors the per-window result tables.
struct SummaryRow {
    std::string date;        // "2015/11/17" or "all"
    std::string hour_range;  // "00:00 - 06:00" or "-"
    std::size_t tweets = 0;
    std::size_t clusters = 0;
    std::string method;
    std::optional<double> purity;
    std::optional<double> nmi;
};

inline std::string summary_to_csv(const std::vector<SummaryRow>& rows) {
    std::string out = "date,hour_range,tweets,clusters,method,purity,nmi\n";
    for (const auto& row : rows) {
        out += row.date + ',' + row.hour_range + ',' + std::to_string(row.tweets) + ',' +
               std::to_string(row.clusters) + ',' + row.method + ',';
        out += row.purity ? detail::format_metric(*row.purity) : std::string();
        out += ',';
        out += row.nmi ? detail::format_metric(*row.nmi) : std::string();
        out += '\n';
    }
    return out;
}

inline std::string align_columns(const std::vector<std::vector<std::string>>& cells) {
    std::size_t columns = 0;
    for (const auto& line : cells) columns = std::max(columns, line.size());
    std::vector<std::size_t> widths(columns, 0);
    for (const auto& line : cells)
        for (std::size_t c = 0; c < line.size(); ++c) widths[c] = std::max(widths[c], line[c].size());
    std::string out;
    for (const auto& line : cells) {
        std::string text;
        for (std::size_t c = 0; c < line.size(); ++c) {
            text += line[c];
            if (c + 1 < line.size()) text.append(widths[c] + 2 - line[c].size(), ' ');
        }
        out += text;
        out += '\n';
    }
    return out;
}

inline std::string summary_to_text(const std::vector<SummaryRow>& rows) {
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"date", "hour range", "tweets", "clusters", "method", "purity", "nmi"});
    for (const auto& row : rows)
        cells.push_back({row.date, row.hour_range, std::to_string(row.tweets),
                         std::to_string(row.clusters), row.method,
                         row.purity ? detail::format_metric(*row.purity) : "-",
                         row.nmi ? detail::format_metric(*row.nmi) : "-"});
    return align_columns(cells);
}

struct SweepRow {
    std::size_t k = 0;
    double purity = 0.0;
    double nmi = 0.0;
};

inline std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::string out = "k,purity,nmi\n";
    for (const auto& row : rows)
        out += std::to_string(row.k) + ',' + detail::format_metric(row.purity) + ',' +
               detail::format_metric(row.nmi) + '\n';
    return out;
}

inline std::string sweep_to_text(const std::vector<SweepRow>& rows) {
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"k", "purity", "nmi"});
    for (const auto& row : rows)
        cells.push_back({std::to_string(row.k), detail::format_metric(row.purity),
                         detail::format_metric(row.nmi)});
    return align_columns(cells);
}

// Debug dump of the aggregated profiles: top weighted words and co-tags per
// hashtag, counts descending with ties toward the lower id.
inline nlohmann::json profiles_to_json(const ProfileSet& set, std::size_t top_limit = 10) {
    auto top_counts = [&](const std::map<std::uint32_t, std::uint32_t>& counts, bool words) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> entries(counts.begin(), counts.end());
        std::stable_sort(entries.begin(), entries.end(),
                         [](const auto& a, const auto& b) { return a.second > b.second; });
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [id, count] : entries) {
            if (arr.size() == top_limit) break;
            nlohmann::json e;
            e[words ? "word" : "hashtag"] = words ? set.vocab.word(id) : set.tags.word(id);
            e["count"] = count;
            arr.push_back(std::move(e));
        }
        return arr;
    };
    nlohmann::json j;
    j["hashtag_count"] = set.profiles.size();
    j["vocab_size"] = set.vocab.size();
    nlohmann::json profiles = nlohmann::json::array();
    for (const auto& profile : set.profiles) {
        nlohmann::json p;
        p["hashtag"] = profile.hashtag;
        p["tweets"] = profile.tweet_count;
        p["top_words"] = top_counts(profile.word_counts, true);
        p["top_cotags"] = top_counts(profile.cooc_counts, false);
        profiles.push_back(std::move(p));
    }
    j["profiles"] = std::move(profiles);
    return j;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + path);
    out << content;
}

// Window labels for file names and summary rows.
inline std::string window_date(std::int64_t start) {
    std::string iso = format_iso8601(start);  // YYYY-MM-DDTHH:MM:SSZ
    std::string date = iso.substr(0, 10);
    for (char& c : date)
        if (c == '-') c = '/';
    return date;
}

inline std::string window_hour_range(std::int64_t start, int hours) {
    std::string iso = format_iso8601(start);
    int start_hour = (iso[11] - '0') * 10 + (iso[12] - '0');
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%02d:00 - %02d:00", start_hour, start_hour + hours);
    return buf;
}

inline std::string window_file_label(std::int64_t start, int hours) {
    if (hours == 0) return "all";
    std::string iso = format_iso8601(start);
    std::string label = iso.substr(0, 13);  // YYYY-MM-DDTHH
    label.erase(std::remove(label.begin(), label.end(), '-'), label.end());
    return label;
}

}  // namespace hashclust
