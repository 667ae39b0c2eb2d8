// Experiment harness: windowed clustering runs, the both-methods comparison
// protocol (stream clustering first, its cluster count feeding k-means), and
// the k sweep. The CLI is a thin wrapper over these entry points so tests
// can drive them directly.
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "hashclust/clustering.hpp"
#include "hashclust/errors.hpp"
#include "hashclust/eval.hpp"
#include "hashclust/features.hpp"
#include "hashclust/ingest.hpp"
#include "hashclust/kmeans.hpp"
#include "hashclust/preprocess.hpp"
#include "hashclust/report.hpp"
#include "hashclust/stopwords.hpp"
#include "hashclust/streamcube.hpp"

namespace hashclust {

struct RunConfig {
    std::string input_path;
    int window_hours = 0;  // 0 = whole corpus as one group
    std::string method = "both";  // kmeans | streamcube | both
    double alpha = 0.5;
    bool use_tfidf = false;
    std::size_t k = 0;  // required for method=kmeans
    std::size_t restarts = 10;
    std::size_t max_iterations = 100;
    bool kmeanspp = false;
    bool renormalize_centroids = true;
    double default_threshold = 0.5;
    bool require_geo = false;
    std::string stopword_path;     // empty = bundled default list
    std::string gold_labels_path;  // required for truth=gold
    std::string output_dir;        // empty = no files written
    std::string truth = "streamcube";  // streamcube | gold
    TweetLabelRule label_rule = TweetLabelRule::Plurality;
    std::uint64_t rng_seed = 42;
    bool validate = false;  // run invariant validation passes
};

struct WindowOutcome {
    std::int64_t window_start = 0;
    int window_hours = 0;  // 0 = whole corpus
    std::size_t tweet_count = 0;
    std::size_t hashtag_count = 0;
    std::vector<std::string> featureless;
    std::optional<Clustering> kmeans_result;
    std::optional<Clustering> streamcube_result;
    std::optional<EvalReport> kmeans_report;      // vs the configured truth
    std::optional<EvalReport> streamcube_report;  // vs gold (truth=gold only)
    std::size_t scored_tweets = 0;
    std::size_t excluded_tweets = 0;
};

struct PipelineResult {
    std::vector<WindowOutcome> windows;
    std::vector<SummaryRow> summary;
    std::size_t parse_errors = 0;
    std::size_t filtered_out = 0;
};

namespace pipeline_detail {

struct WindowData {
    std::int64_t start = 0;
    int hours = 0;
    std::vector<ProcessedTweet> tweets;
    ProfileSet profiles;
    VectorSet vectors;
};

inline std::vector<std::pair<std::string, HashtagVector>> stream_ordered(
    const WindowData& data) {
    std::unordered_map<std::string, const HashtagVector*> by_tag;
    for (const auto& [tag, vec] : data.vectors.vectors) by_tag.emplace(tag, &vec);
    std::vector<std::pair<std::string, HashtagVector>> stream;
    stream.reserve(by_tag.size());
    for (const auto& tag : first_appearance_order(data.tweets)) {
        auto it = by_tag.find(tag);
        if (it != by_tag.end()) stream.emplace_back(tag, *it->second);
    }
    return stream;
}

inline std::optional<EvalReport> score_versus(const Labeling& pred, const Labeling& truth,
                                              std::size_t& scored, std::size_t& dropped) {
    std::unordered_set<std::string> common;
    for (const auto& item : pred.items)
        if (truth.labels.contains(item)) common.insert(item);
    dropped += pred.items.size() - common.size();
    if (common.empty()) return std::nullopt;
    Labeling p = restrict_labeling(pred, common);
    Labeling t = restrict_labeling(truth, common);
    scored = common.size();
    return evaluate_table(contingency(p, t));
}

}  // namespace pipeline_detail

// Loads, filters, preprocesses and windows a corpus. window_hours == 0 packs
// everything into one pseudo-window.
inline std::vector<pipeline_detail::WindowData> prepare_windows(const RunConfig& config,
                                                                PipelineResult& result) {
    CorpusReadResult corpus = read_corpus(config.input_path);
    result.parse_errors = corpus.errors.size();
    std::vector<TweetRecord> kept = filter_tweets(corpus.records, config.require_geo);
    result.filtered_out = corpus.records.size() - kept.size();

    StopwordSet stopwords =
        config.stopword_path.empty() ? default_stopwords() : load_stopwords(config.stopword_path);
    FeatureConfig features{config.alpha, config.use_tfidf};

    std::vector<TweetWindow> windows;
    if (config.window_hours == 0) {
        if (!kept.empty()) {
            TweetWindow all;
            all.start = floor_to_window(kept.front().created_at, 86400);
            for (const auto& rec : kept)
                all.start = std::min(all.start, floor_to_window(rec.created_at, 86400));
            all.duration_hours = 0;
            all.tweets = kept;
            std::stable_sort(all.tweets.begin(), all.tweets.end(),
                             [](const TweetRecord& a, const TweetRecord& b) {
                                 return a.created_at < b.created_at;
                             });
            windows.push_back(std::move(all));
        }
    } else {
        windows = window_tweets(kept, config.window_hours);
    }

    std::vector<pipeline_detail::WindowData> prepared;
    for (auto& window : windows) {
        pipeline_detail::WindowData data;
        data.start = window.start;
        data.hours = window.duration_hours;
        data.tweets = preprocess_all(window.tweets, stopwords);
        data.profiles = build_profiles(data.tweets);
        data.vectors = build_vectors(data.profiles, features);
        prepared.push_back(std::move(data));
    }
    return prepared;
}

// One full run: per window, cluster with the configured method(s) and score
// against the configured truth. With method=both the stream clusterer runs
// first and its cluster count becomes k for k-means, so both methods always
// report the same number of clusters.
inline PipelineResult run_pipeline(const RunConfig& config) {
    if (config.method != "kmeans" && config.method != "streamcube" && config.method != "both")
        throw ConfigError("unknown method: " + config.method);
    if (config.method == "kmeans" && config.k == 0)
        throw ConfigError("method=kmeans requires k");
    if (config.truth != "streamcube" && config.truth != "gold")
        throw ConfigError("unknown truth: " + config.truth);
    if (config.truth == "gold" && config.gold_labels_path.empty())
        throw ConfigError("truth=gold requires a gold labels file");

    std::optional<Labeling> gold;
    if (!config.gold_labels_path.empty()) gold = load_gold_labels(config.gold_labels_path);

    PipelineResult result;
    auto windows = prepare_windows(config, result);

    const bool writing = !config.output_dir.empty();
    if (writing) std::filesystem::create_directories(config.output_dir);

    for (auto& data : windows) {
        WindowOutcome outcome;
        outcome.window_start = data.start;
        outcome.window_hours = data.hours;
        outcome.tweet_count = data.tweets.size();
        outcome.hashtag_count = data.vectors.vectors.size();
        outcome.featureless = data.vectors.featureless;

        const bool run_stream = config.method != "kmeans";
        const bool run_kmeans = config.method != "streamcube";

        if (!data.vectors.vectors.empty()) {
            if (run_stream) {
                StreamConfig stream_config{config.default_threshold, config.validate};
                auto stream = pipeline_detail::stream_ordered(data);
                outcome.streamcube_result = hashtag_cluster_static(stream, stream_config);
                if (config.validate) validate_clustering(*outcome.streamcube_result, stream);
            }
            if (run_kmeans) {
                KMeansConfig km;
                km.k = config.method == "both" ? outcome.streamcube_result->k() : config.k;
                km.restarts = config.restarts;
                km.max_iterations = config.max_iterations;
                km.rng_seed = config.rng_seed;
                km.kmeanspp = config.kmeanspp;
                km.renormalize_centroids = config.renormalize_centroids;
                outcome.kmeans_result = kmeans(data.vectors.vectors, km);
                if (config.validate) validate_clustering(*outcome.kmeans_result, data.vectors.vectors);
            }
        }

        if (config.truth == "streamcube" && outcome.kmeans_result && outcome.streamcube_result) {
            auto pred = tweets_to_cluster_labels(*outcome.kmeans_result, data.tweets,
                                                 config.label_rule);
            auto truth = tweets_to_cluster_labels(*outcome.streamcube_result, data.tweets,
                                                  config.label_rule);
            outcome.excluded_tweets = pred.excluded.size();
            outcome.kmeans_report = pipeline_detail::score_versus(
                pred.labeling, truth.labeling, outcome.scored_tweets, outcome.excluded_tweets);
        } else if (config.truth == "gold" && gold) {
            if (outcome.kmeans_result) {
                auto pred = tweets_to_cluster_labels(*outcome.kmeans_result, data.tweets,
                                                     config.label_rule);
                outcome.excluded_tweets += pred.excluded.size();
                outcome.kmeans_report = pipeline_detail::score_versus(
                    pred.labeling, *gold, outcome.scored_tweets, outcome.excluded_tweets);
            }
            if (outcome.streamcube_result) {
                auto pred = tweets_to_cluster_labels(*outcome.streamcube_result, data.tweets,
                                                     config.label_rule);
                std::size_t scored = 0;
                outcome.streamcube_report = pipeline_detail::score_versus(
                    pred.labeling, *gold, scored, outcome.excluded_tweets);
            }
        }

        if (writing) {
            std::string label = window_file_label(data.start, data.hours);
            auto window_info = data.hours == 0
                                   ? std::optional<WindowInfo>{}
                                   : std::optional<WindowInfo>{WindowInfo{data.start, data.hours}};
            if (outcome.kmeans_result)
                write_clustering(config.output_dir + "/clusters_" + label + "_kmeans.json",
                                 *outcome.kmeans_result, data.profiles.vocab, window_info);
            if (outcome.streamcube_result)
                write_clustering(config.output_dir + "/clusters_" + label + "_streamcube.json",
                                 *outcome.streamcube_result, data.profiles.vocab, window_info);
            if (outcome.kmeans_report)
                write_text_file(config.output_dir + "/eval_" + label + "_kmeans.json",
                                eval_report_to_json(*outcome.kmeans_report).dump(2) + "\n");
            if (outcome.streamcube_report)
                write_text_file(config.output_dir + "/eval_" + label + "_streamcube.json",
                                eval_report_to_json(*outcome.streamcube_report).dump(2) + "\n");
        }

        result.windows.push_back(std::move(outcome));
    }

    for (const auto& outcome : result.windows) {
        std::string date = window_date(outcome.window_start);
        std::string hours = outcome.window_hours == 0
                                ? "-"
                                : window_hour_range(outcome.window_start, outcome.window_hours);
        std::size_t clusters = outcome.kmeans_result     ? outcome.kmeans_result->k()
                               : outcome.streamcube_result ? outcome.streamcube_result->k()
                                                           : 0;
        if (config.truth == "gold" && outcome.streamcube_result && outcome.kmeans_result) {
            SummaryRow km{date, hours, outcome.tweet_count, clusters, "kmeans", {}, {}};
            if (outcome.kmeans_report) {
                km.purity = outcome.kmeans_report->purity;
                km.nmi = outcome.kmeans_report->nmi;
            }
            result.summary.push_back(km);
            SummaryRow sc{date, hours, outcome.tweet_count, clusters, "streamcube", {}, {}};
            if (outcome.streamcube_report) {
                sc.purity = outcome.streamcube_report->purity;
                sc.nmi = outcome.streamcube_report->nmi;
            }
            result.summary.push_back(sc);
        } else {
            std::string method = config.method == "both" ? "kmeans-vs-streamcube" : config.method;
            SummaryRow row{date, hours, outcome.tweet_count, clusters, method, {}, {}};
            if (outcome.kmeans_report) {
                row.purity = outcome.kmeans_report->purity;
                row.nmi = outcome.kmeans_report->nmi;
            } else if (outcome.streamcube_report) {
                row.purity = outcome.streamcube_report->purity;
                row.nmi = outcome.streamcube_report->nmi;
            }
            result.summary.push_back(row);
        }
    }

    if (writing) {
        write_text_file(config.output_dir + "/summary.csv", summary_to_csv(result.summary));
        write_text_file(config.output_dir + "/summary.txt", summary_to_text(result.summary));
    }
    return result;
}

// k sweep over one vector set (whole corpus, no windowing), scored against
// gold labels. ks are deduplicated and sorted ascending.
inline std::vector<SweepRow> sweep_k(const RunConfig& config, std::vector<std::size_t> ks) {
    if (config.gold_labels_path.empty()) throw ConfigError("sweep-k requires gold labels");
    Labeling gold = load_gold_labels(config.gold_labels_path);

    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    if (ks.empty()) return {};

    RunConfig whole = config;
    whole.window_hours = 0;
    PipelineResult scratch;
    auto windows = prepare_windows(whole, scratch);
    if (windows.empty()) throw InputError("no tweets to sweep over");
    auto& data = windows.front();
    if (ks.back() > data.vectors.vectors.size())
        throw ConfigError("largest k (" + std::to_string(ks.back()) +
                          ") exceeds the hashtag count (" +
                          std::to_string(data.vectors.vectors.size()) + ")");

    std::vector<SweepRow> rows;
    for (std::size_t k : ks) {
        if (k == 0) throw ConfigError("k must be >= 1");
        KMeansConfig km;
        km.k = k;
        km.restarts = config.restarts;
        km.max_iterations = config.max_iterations;
        km.rng_seed = config.rng_seed;
        km.kmeanspp = config.kmeanspp;
        km.renormalize_centroids = config.renormalize_centroids;
        Clustering clustering = kmeans(data.vectors.vectors, km);
        auto pred = tweets_to_cluster_labels(clustering, data.tweets, config.label_rule);
        std::size_t scored = 0, dropped = 0;
        auto report = pipeline_detail::score_versus(pred.labeling, gold, scored, dropped);
        if (!report) throw InputError("gold labels do not cover any mapped tweet");
        rows.push_back(SweepRow{k, report->purity, report->nmi});
    }
    return rows;
}

}  // namespace hashclust
