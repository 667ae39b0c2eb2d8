// hashclust command line: corpus validation, clustering runs, evaluation,
// the k sweep, the two-method comparison protocol, and a synthetic corpus
// generator for self-contained experiments.
//
// Exit codes: 0 success, 2 configuration error, 3 input error, 4 internal
// invariant violation.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hashclust/eval.hpp"
#include "hashclust/pipeline.hpp"
#include "hashclust/report.hpp"
#include "hashclust/synth.hpp"

namespace {

struct CliOptions {
    std::string input;
    std::string out;
    std::string gold;
    std::string gold_out;
    std::string stopwords;
    std::string clusters;
    std::string truth_clusters;
    std::string dump_profiles;
    std::string config_path;
    std::string method = "both";
    std::string truth = "streamcube";
    std::string ks;
    int window_hours = 0;
    double alpha = 0.5;
    double noise = 0.0;
    double default_threshold = 0.5;
    std::size_t k = 0;
    std::size_t restarts = 10;
    std::size_t max_iterations = 100;
    std::uint64_t seed = 42;
    bool tfidf = false;
    bool kmeanspp = false;
    bool no_centroid_renorm = false;
    bool require_geo = false;
    bool validate = false;
    bool first_hashtag_rule = false;
    std::size_t events = 5;
    std::size_t tweets_per_event = 100;
    std::size_t vocab_per_event = 30;
    std::size_t tags_per_event = 4;
};

// Values from --config become new defaults; explicit flags already parsed by
// CLI11 override them because the file is applied before CLI11::parse runs.
void apply_config_file(const std::string& path, CliOptions& opt) {
    std::ifstream in(path);
    if (!in) throw hashclust::InputError("cannot open config file: " + path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw hashclust::ConfigError("config file is not a JSON object: " + path);
    for (const auto& [key, value] : j.items()) {
        if (key == "input") opt.input = value.get<std::string>();
        else if (key == "out") opt.out = value.get<std::string>();
        else if (key == "gold") opt.gold = value.get<std::string>();
        else if (key == "gold-out") opt.gold_out = value.get<std::string>();
        else if (key == "stopwords") opt.stopwords = value.get<std::string>();
        else if (key == "clusters") opt.clusters = value.get<std::string>();
        else if (key == "truth-clusters") opt.truth_clusters = value.get<std::string>();
        else if (key == "dump-profiles") opt.dump_profiles = value.get<std::string>();
        else if (key == "method") opt.method = value.get<std::string>();
        else if (key == "truth") opt.truth = value.get<std::string>();
        else if (key == "ks") opt.ks = value.get<std::string>();
        else if (key == "window-hours") opt.window_hours = value.get<int>();
        else if (key == "alpha") opt.alpha = value.get<double>();
        else if (key == "noise") opt.noise = value.get<double>();
        else if (key == "default-threshold") opt.default_threshold = value.get<double>();
        else if (key == "k") opt.k = value.get<std::size_t>();
        else if (key == "restarts") opt.restarts = value.get<std::size_t>();
        else if (key == "max-iterations") opt.max_iterations = value.get<std::size_t>();
        else if (key == "seed") opt.seed = value.get<std::uint64_t>();
        else if (key == "tfidf") opt.tfidf = value.get<bool>();
        else if (key == "kmeanspp") opt.kmeanspp = value.get<bool>();
        else if (key == "no-centroid-renorm") opt.no_centroid_renorm = value.get<bool>();
        else if (key == "require-geo") opt.require_geo = value.get<bool>();
        else if (key == "validate") opt.validate = value.get<bool>();
        else if (key == "first-hashtag-rule") opt.first_hashtag_rule = value.get<bool>();
        else if (key == "events") opt.events = value.get<std::size_t>();
        else if (key == "tweets-per-event") opt.tweets_per_event = value.get<std::size_t>();
        else if (key == "vocab-per-event") opt.vocab_per_event = value.get<std::size_t>();
        else if (key == "tags-per-event") opt.tags_per_event = value.get<std::size_t>();
        else throw hashclust::ConfigError("unknown config key: " + key);
    }
}

hashclust::RunConfig to_run_config(const CliOptions& opt) {
    hashclust::RunConfig config;
    config.input_path = opt.input;
    config.window_hours = opt.window_hours;
    config.method = opt.method;
    config.alpha = opt.alpha;
    config.use_tfidf = opt.tfidf;
    config.k = opt.k;
    config.restarts = opt.restarts;
    config.max_iterations = opt.max_iterations;
    config.kmeanspp = opt.kmeanspp;
    config.renormalize_centroids = !opt.no_centroid_renorm;
    config.default_threshold = opt.default_threshold;
    config.require_geo = opt.require_geo;
    config.stopword_path = opt.stopwords;
    config.gold_labels_path = opt.gold;
    config.output_dir = opt.out;
    config.truth = opt.truth;
    config.label_rule = opt.first_hashtag_rule ? hashclust::TweetLabelRule::FirstHashtag
                                               : hashclust::TweetLabelRule::Plurality;
    config.rng_seed = opt.seed;
    config.validate = opt.validate;
    return config;
}

// Required values may come from flags or the config file, so presence is
// checked here rather than by the parser.
void require_value(const std::string& value, const std::string& flag) {
    if (value.empty()) throw hashclust::ConfigError(flag + " is required");
}

std::vector<std::size_t> parse_ks(const std::string& spec) {
    std::vector<std::size_t> ks;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        std::size_t comma = spec.find(',', pos);
        std::string item = spec.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (!item.empty()) {
            try {
                ks.push_back(std::stoull(item));
            } catch (const std::exception&) {
                throw hashclust::ConfigError("bad k value in --ks: \"" + item + "\"");
            }
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return ks;
}

int cmd_synth(const CliOptions& opt) {
    require_value(opt.out, "--out");
    require_value(opt.gold_out, "--gold-out");
    hashclust::SynthConfig config;
    config.events = opt.events;
    config.tweets_per_event = opt.tweets_per_event;
    config.vocab_per_event = opt.vocab_per_event;
    config.tags_per_event = opt.tags_per_event;
    config.noise = opt.noise;
    config.rng_seed = opt.seed;
    auto corpus = hashclust::generate_synthetic(config);
    hashclust::write_synthetic(corpus, opt.out, opt.gold_out);
    std::cout << "wrote " << corpus.corpus_lines.size() << " tweets to " << opt.out << " and "
              << corpus.gold.size() << " gold labels to " << opt.gold_out << "\n";
    return 0;
}

int cmd_ingest(const CliOptions& opt) {
    require_value(opt.input, "--input");
    auto corpus = hashclust::read_corpus(opt.input);
    auto kept = hashclust::filter_tweets(corpus.records, opt.require_geo);

    std::vector<std::vector<std::string>> cells;
    cells.push_back({"date", "hour range", "tweets"});
    if (opt.window_hours == 0) {
        cells.push_back({"all", "-", std::to_string(kept.size())});
    } else {
        for (const auto& window : hashclust::window_tweets(kept, opt.window_hours))
            cells.push_back({hashclust::window_date(window.start),
                             hashclust::window_hour_range(window.start, window.duration_hours),
                             std::to_string(window.tweets.size())});
    }
    std::cout << hashclust::align_columns(cells);
    std::cout << "records: " << corpus.records.size() + corpus.errors.size()
              << ", parse errors: " << corpus.errors.size()
              << ", filtered out: " << corpus.records.size() - kept.size()
              << ", kept: " << kept.size() << "\n";
    for (const auto& err : corpus.errors)
        std::cerr << "line " << err.line_no << ": " << err.message << "\n";
    return 0;
}

int cmd_cluster(const CliOptions& opt) {
    require_value(opt.input, "--input");
    require_value(opt.out, "--out");
    auto config = to_run_config(opt);
    auto result = hashclust::run_pipeline(config);
    if (!opt.dump_profiles.empty()) {
        hashclust::PipelineResult scratch;
        auto windows = hashclust::prepare_windows(config, scratch);
        nlohmann::json dump = nlohmann::json::array();
        for (const auto& data : windows)
            dump.push_back(hashclust::profiles_to_json(data.profiles));
        hashclust::write_text_file(opt.dump_profiles, dump.dump(2) + "\n");
    }
    std::cout << hashclust::summary_to_text(result.summary);
    if (result.parse_errors > 0)
        std::cerr << result.parse_errors << " corpus lines failed to parse\n";
    return 0;
}

int cmd_evaluate(const CliOptions& opt, const std::string& truth_kind) {
    require_value(opt.clusters, "--clusters");
    require_value(opt.input, "--input");
    auto corpus = hashclust::read_corpus(opt.input);
    auto kept = hashclust::filter_tweets(corpus.records, opt.require_geo);
    hashclust::StopwordSet stopwords = opt.stopwords.empty()
                                           ? hashclust::default_stopwords()
                                           : hashclust::load_stopwords(opt.stopwords);
    auto tweets = hashclust::preprocess_all(kept, stopwords);

    auto rule = opt.first_hashtag_rule ? hashclust::TweetLabelRule::FirstHashtag
                                       : hashclust::TweetLabelRule::Plurality;
    auto file = hashclust::read_cluster_file(opt.clusters);
    hashclust::Clustering pred_clustering;
    pred_clustering.method = file.method;
    pred_clustering.alpha = file.alpha;
    for (std::size_t id = 0; id < file.groups.size(); ++id)
        for (const auto& tag : file.groups[id]) {
            pred_clustering.hashtags.push_back(tag);
            pred_clustering.assignments.emplace(tag, static_cast<int>(id));
        }
    auto pred = hashclust::tweets_to_cluster_labels(pred_clustering, tweets, rule);

    hashclust::Labeling truth;
    if (truth_kind == "gold") {
        if (opt.gold.empty()) throw hashclust::ConfigError("evaluate --truth gold requires --gold");
        truth = hashclust::load_gold_labels(opt.gold);
    } else if (truth_kind == "streamcube") {
        if (opt.truth_clusters.empty())
            throw hashclust::ConfigError("evaluate --truth streamcube requires --truth-clusters");
        auto truth_file = hashclust::read_cluster_file(opt.truth_clusters);
        hashclust::Clustering truth_clustering;
        for (std::size_t id = 0; id < truth_file.groups.size(); ++id)
            for (const auto& tag : truth_file.groups[id]) {
                truth_clustering.hashtags.push_back(tag);
                truth_clustering.assignments.emplace(tag, static_cast<int>(id));
            }
        truth = hashclust::tweets_to_cluster_labels(truth_clustering, tweets, rule).labeling;
    } else {
        throw hashclust::ConfigError("unknown truth: " + truth_kind);
    }

    std::unordered_set<std::string> common;
    for (const auto& item : pred.labeling.items)
        if (truth.labels.contains(item)) common.insert(item);
    if (common.empty()) throw hashclust::InputError("no tweets are covered by both labelings");
    auto table = hashclust::contingency(hashclust::restrict_labeling(pred.labeling, common),
                                        hashclust::restrict_labeling(truth, common));
    auto report = hashclust::evaluate_table(table);

    std::cout << hashclust::eval_report_to_text(report);
    std::cout << "scored  " << common.size() << "\n";
    if (!pred.excluded.empty())
        std::cout << "excluded (no clustered hashtag)  " << pred.excluded.size() << "\n";
    if (!opt.out.empty())
        hashclust::write_text_file(opt.out,
                                   hashclust::eval_report_to_json(report).dump(2) + "\n");
    return 0;
}

int cmd_sweep(const CliOptions& opt) {
    require_value(opt.input, "--input");
    require_value(opt.gold, "--gold");
    auto config = to_run_config(opt);
    auto rows = hashclust::sweep_k(config, parse_ks(opt.ks));
    std::cout << hashclust::sweep_to_text(rows);
    if (!opt.out.empty()) hashclust::write_text_file(opt.out, hashclust::sweep_to_csv(rows));
    return 0;
}

int cmd_compare(const CliOptions& opt) {
    require_value(opt.input, "--input");
    auto config = to_run_config(opt);
    config.method = "both";
    auto result = hashclust::run_pipeline(config);
    std::cout << hashclust::summary_to_text(result.summary);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hashtag event-detection pipeline: preprocessing, clustering, evaluation"};
    app.require_subcommand(1);
    CliOptions opt;

    auto add_common_clustering = [&](CLI::App* cmd) {
        cmd->add_option("--alpha", opt.alpha, "word-block weight in (0,1]; tag block gets 1-alpha");
        cmd->add_option("--seed", opt.seed, "RNG seed");
        cmd->add_option("--restarts", opt.restarts, "k-means restarts");
        cmd->add_option("--max-iterations", opt.max_iterations, "k-means iteration cap");
        cmd->add_flag("--tfidf", opt.tfidf, "weight words by tf-idf instead of raw counts");
        cmd->add_flag("--kmeanspp", opt.kmeanspp, "k-means++ seeding instead of uniform");
        cmd->add_flag("--no-centroid-renorm", opt.no_centroid_renorm,
                      "diagnostic: skip centroid renormalization");
        cmd->add_option("--default-threshold", opt.default_threshold,
                        "stream clustering threshold while only one cluster exists");
        cmd->add_option("--stopwords", opt.stopwords, "stopword file (one word per line)");
        cmd->add_flag("--require-geo", opt.require_geo, "drop records without coordinates");
        cmd->add_flag("--validate", opt.validate, "run invariant validation passes");
        cmd->add_flag("--first-hashtag-rule", opt.first_hashtag_rule,
                      "label tweets by first clustered hashtag instead of plurality");
    };

    CLI::App* synth = app.add_subcommand("synth", "generate a planted-event synthetic corpus");
    synth->add_option("--events", opt.events, "number of planted events")->capture_default_str();
    synth->add_option("--tweets-per-event", opt.tweets_per_event, "tweets per event")
        ->capture_default_str();
    synth->add_option("--vocab-per-event", opt.vocab_per_event, "vocabulary words per event")
        ->capture_default_str();
    synth->add_option("--tags-per-event", opt.tags_per_event, "hashtags per event")
        ->capture_default_str();
    synth->add_option("--noise", opt.noise, "cross-event word contamination fraction [0,1)")
        ->capture_default_str();
    synth->add_option("--seed", opt.seed, "RNG seed")->capture_default_str();
    synth->add_option("--out", opt.out, "corpus output path (JSONL)");
    synth->add_option("--gold-out", opt.gold_out, "gold labels output path (CSV)");

    CLI::App* ingest = app.add_subcommand("ingest", "validate a corpus and report windows");
    ingest->add_option("--input", opt.input, "corpus file (JSONL)");
    ingest->add_option("--window-hours", opt.window_hours, "window length (divisor of 24; 0 = off)");
    ingest->add_flag("--require-geo", opt.require_geo, "drop records without coordinates");

    CLI::App* cluster = app.add_subcommand("cluster", "cluster hashtags per window");
    cluster->add_option("--input", opt.input, "corpus file (JSONL)");
    cluster->add_option("--window-hours", opt.window_hours,
                        "window length (divisor of 24; 0 = whole corpus)");
    cluster->add_option("--method", opt.method, "kmeans | streamcube | both")
        ->capture_default_str();
    cluster->add_option("--k", opt.k, "cluster count (required for method=kmeans)");
    cluster->add_option("--out", opt.out, "output directory");
    cluster->add_option("--dump-profiles", opt.dump_profiles,
                        "write a JSON dump of the per-hashtag profiles");
    add_common_clustering(cluster);

    CLI::App* evaluate = app.add_subcommand("evaluate", "score a clustering file");
    std::string eval_truth = "gold";
    evaluate->add_option("--clusters", opt.clusters, "clustering JSON (prediction)");
    evaluate->add_option("--input", opt.input, "corpus file the clustering came from");
    evaluate->add_option("--gold", opt.gold, "gold labels CSV (tweet_id,label)");
    evaluate->add_option("--truth-clusters", opt.truth_clusters,
                         "clustering JSON to use as ground truth");
    evaluate->add_option("--truth", eval_truth, "gold | streamcube")->capture_default_str();
    evaluate->add_option("--out", opt.out, "write the report as JSON here");
    evaluate->add_option("--stopwords", opt.stopwords, "stopword file (one word per line)");
    evaluate->add_flag("--require-geo", opt.require_geo, "drop records without coordinates");
    evaluate->add_flag("--first-hashtag-rule", opt.first_hashtag_rule,
                       "label tweets by first clustered hashtag instead of plurality");

    CLI::App* sweep = app.add_subcommand("sweep-k", "run k-means for several k against gold");
    sweep->add_option("--input", opt.input, "corpus file (JSONL)");
    sweep->add_option("--gold", opt.gold, "gold labels CSV");
    sweep->add_option("--ks", opt.ks, "comma-separated k values, e.g. 2,5,10");
    sweep->add_option("--out", opt.out, "write the sweep as CSV here");
    add_common_clustering(sweep);

    CLI::App* compare = app.add_subcommand(
        "compare", "run both methods per window, k-means with the stream cluster count");
    compare->add_option("--input", opt.input, "corpus file (JSONL)");
    compare->add_option("--window-hours", opt.window_hours,
                        "window length (divisor of 24; 0 = whole corpus)");
    compare->add_option("--truth", opt.truth, "streamcube | gold")->capture_default_str();
    compare->add_option("--gold", opt.gold, "gold labels CSV (required for --truth gold)");
    compare->add_option("--out", opt.out, "output directory");
    add_common_clustering(compare);

    for (auto* cmd : {synth, ingest, cluster, evaluate, sweep, compare})
        cmd->add_option("--config", opt.config_path, "JSON config file; flags override it");

    try {
        // Apply --config before the real parse so explicit flags win.
        for (int i = 1; i + 1 < argc; ++i)
            if (std::string(argv[i]) == "--config") apply_config_file(argv[i + 1], opt);
        app.parse(argc, argv);

        if (synth->parsed()) return cmd_synth(opt);
        if (ingest->parsed()) return cmd_ingest(opt);
        if (cluster->parsed()) return cmd_cluster(opt);
        if (evaluate->parsed()) return cmd_evaluate(opt, eval_truth);
        if (sweep->parsed()) return cmd_sweep(opt);
        if (compare->parsed()) return cmd_compare(opt);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const hashclust::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const hashclust::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const hashclust::ContractViolation& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
