// Acceptance suite: one check per shipped guarantee, each printed as a
// single PASS/FAIL line. Run through ctest (the CLI binary path arrives as
// argv[1]) or directly: acceptance_tests <path-to-hashclust-cli>.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "hashclust/eval.hpp"
#include "hashclust/pipeline.hpp"
#include "hashclust/porter.hpp"
#include "hashclust/rng.hpp"
#include "hashclust/synth.hpp"
#include "oracle_kmeans.hpp"
#include "oracle_metrics.hpp"

using namespace hashclust;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "<unreadable:" + path + ">";
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

fs::path make_temp_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

ContingencyTable table_from(const Labeling& pred, const Labeling& gold) {
    std::unordered_set<std::string> common;
    for (const auto& item : pred.items)
        if (gold.labels.contains(item)) common.insert(item);
    return contingency(restrict_labeling(pred, common), restrict_labeling(gold, common));
}

// Tweet-level NMI of a hashtag clustering against gold labels.
double nmi_versus_gold(const Clustering& clustering, const std::vector<ProcessedTweet>& tweets,
                       const Labeling& gold) {
    auto pred = tweets_to_cluster_labels(clustering, tweets);
    return nmi(table_from(pred.labeling, gold));
}

struct SynthSetup {
    fs::path dir;
    std::string corpus_path;
    std::string gold_path;
};

SynthSetup write_corpus(const std::string& name, double noise, std::uint64_t seed,
                        std::size_t tags_per_event = 10) {
    SynthSetup setup;
    setup.dir = make_temp_dir(name);
    setup.corpus_path = (setup.dir / "corpus.jsonl").string();
    setup.gold_path = (setup.dir / "gold.csv").string();
    SynthConfig config;
    config.events = 5;
    config.tweets_per_event = 100;
    config.vocab_per_event = 30;
    config.tags_per_event = tags_per_event;
    config.noise = noise;
    config.rng_seed = seed;
    write_synthetic(generate_synthetic(config), setup.corpus_path, setup.gold_path);
    return setup;
}

// --- criteria -------------------------------------------------------------

bool metric_oracle_equivalence(std::string& detail) {
    auto start = Clock::now();
    Rng rng(60601);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + rng.below(50);
        std::size_t k_pred = 1 + rng.below(8);
        std::size_t k_gold = 1 + rng.below(8);
        metrics_oracle::LabelPairs pairs;
        Labeling pred, gold;
        for (std::size_t i = 0; i < n; ++i) {
            std::string p = "c" + std::to_string(rng.below(k_pred));
            std::string g = "g" + std::to_string(rng.below(k_gold));
            pairs.emplace_back(p, g);
            pred.add(std::to_string(i), p);
            gold.add(std::to_string(i), g);
        }
        auto table = contingency(pred, gold);
        double dp = std::abs(purity(table) - metrics_oracle::purity(pairs));
        double dn = std::abs(nmi(table) - metrics_oracle::nmi(pairs));
        if (dp > 1e-12 || dn > 1e-12) {
            detail = "trial " + std::to_string(trial) + " purity diff " + std::to_string(dp) +
                     " nmi diff " + std::to_string(dn);
            return false;
        }
    }
    double elapsed = seconds_since(start);
    detail = "200 labelings, max diff <= 1e-12, " + std::to_string(elapsed) + "s";
    return elapsed < 1.0;
}

bool nmi_hand_value(std::string& detail) {
    Labeling pred, gold;
    const char* preds[] = {"0", "0", "1", "1"};
    const char* golds[] = {"A", "A", "A", "B"};
    for (int i = 0; i < 4; ++i) {
        pred.add(std::to_string(i), preds[i]);
        gold.add(std::to_string(i), golds[i]);
    }
    double value = nmi(contingency(pred, gold));
    detail = "nmi = " + std::to_string(value);
    return std::abs(value - 0.3456) < 1e-3;
}

bool normalization_invariants(std::string& detail) {
    auto setup = write_corpus("hashclust_accept_norm", 0.1, 424242);
    RunConfig config;
    config.input_path = setup.corpus_path;
    PipelineResult scratch;
    auto windows = prepare_windows(config, scratch);
    if (windows.size() != 1) {
        detail = "expected one window";
        return false;
    }
    const auto& data = windows.front();
    std::size_t tweet_count = data.tweets.size();
    std::size_t tag_count = data.vectors.vectors.size();
    if (tweet_count < 500 || tag_count < 50) {
        detail = "corpus too small: " + std::to_string(tweet_count) + " tweets, " +
                 std::to_string(tag_count) + " hashtags";
        return false;
    }
    for (const auto& [tag, vec] : data.vectors.vectors) {
        if (!vec.word_block.empty() && std::abs(vec.word_block.norm() - 1.0) > 1e-9) {
            detail = "word block norm off for " + tag;
            return false;
        }
        if (!vec.tag_block.empty() && std::abs(vec.tag_block.norm() - 1.0) > 1e-9) {
            detail = "tag block norm off for " + tag;
            return false;
        }
        if (std::abs(similarity(vec, vec) - 1.0) > 1e-9) {
            detail = "self-similarity off for " + tag;
            return false;
        }
    }
    detail = std::to_string(tweet_count) + " tweets, " + std::to_string(tag_count) +
             " hashtags, all norms within 1e-9";
    return true;
}

bool kmeans_recovery(std::string& detail) {
    auto start = Clock::now();

    auto run_bundles = [&](double noise, std::uint64_t corpus_seed,
                           std::vector<double>& nmis) {
        auto setup = write_corpus(noise == 0.0 ? "hashclust_accept_rec0" : "hashclust_accept_rec2",
                                  noise, corpus_seed);
        RunConfig config;
        config.input_path = setup.corpus_path;
        PipelineResult scratch;
        auto windows = prepare_windows(config, scratch);
        Labeling gold = load_gold_labels(setup.gold_path);
        const auto& data = windows.front();
        for (std::uint64_t bundle = 0; bundle < 10; ++bundle) {
            KMeansConfig km;
            km.k = 5;
            km.restarts = 40;  // uniform seeding needs breadth to cover 5 planted events
            km.rng_seed = 1000 + bundle * 97;
            auto clustering = kmeans(data.vectors.vectors, km);
            nmis.push_back(nmi_versus_gold(clustering, data.tweets, gold));
        }
    };

    std::vector<double> clean;
    run_bundles(0.0, 11, clean);
    int perfect = 0;
    for (double v : clean)
        if (v >= 1.0 - 1e-9) ++perfect;

    std::vector<double> noisy;
    run_bundles(0.2, 12, noisy);
    std::sort(noisy.begin(), noisy.end());
    double median = 0.5 * (noisy[4] + noisy[5]);

    double elapsed = seconds_since(start);
    detail = "noise 0: " + std::to_string(perfect) + "/10 at NMI 1.0; noise 0.2 median NMI " +
             std::to_string(median) + "; " + std::to_string(elapsed) + "s";
    return perfect >= 9 && median >= 0.8 && elapsed < 5.0;
}

bool objective_monotonicity(std::string& detail) {
    // The non-increasing objective is asserted inside the k-means loop; any
    // violation throws. Hammer it with varied shapes and seeds.
    Rng rng(777);
    try {
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<std::pair<std::string, HashtagVector>> vectors;
            std::size_t n = 6 + rng.below(30);
            for (std::size_t i = 0; i < n; ++i) {
                SparseVec w;
                for (std::uint32_t d = 0; d < 8; ++d)
                    if (rng.unit() < 0.5) w.entries.emplace_back(d, rng.unit() + 0.02);
                if (w.empty()) w.entries.emplace_back(rng.below(8), 1.0);
                w.scale(1.0 / w.norm());
                vectors.emplace_back("h" + std::to_string(i),
                                     combined_vector(std::move(w), {}, 0.5));
            }
            KMeansConfig km;
            km.k = 1 + rng.below(n);
            km.restarts = 5;
            km.rng_seed = rng.next_u64();
            kmeans(vectors, km);
        }
    } catch (const ContractViolation& e) {
        detail = e.what();
        return false;
    }
    detail = "30 randomized runs, no monotonicity violation";
    return true;
}

bool brute_force_optimality(std::string& detail) {
    // 8 points drawn around two random directions per instance, k = 2,
    // best of 10 restarts against the exhaustive 2-partition minimum
    Rng rng(90210);
    int hits = 0;
    const int instances = 100;
    const std::size_t dim = 6;
    for (int trial = 0; trial < instances; ++trial) {
        std::vector<kmeans_oracle::Dense> centers(2, kmeans_oracle::Dense(dim));
        for (auto& center : centers)
            for (double& x : center) x = rng.unit() + 0.05;

        std::vector<std::pair<std::string, HashtagVector>> vectors;
        std::vector<kmeans_oracle::Dense> dense;
        for (int i = 0; i < 8; ++i) {
            kmeans_oracle::Dense point(dim);
            double norm2 = 0.0;
            for (std::size_t d = 0; d < dim; ++d) {
                point[d] = centers[static_cast<std::size_t>(i) % 2][d] + 0.4 * rng.unit();
                norm2 += point[d] * point[d];
            }
            double norm = std::sqrt(norm2);
            SparseVec w;
            for (std::uint32_t d = 0; d < dim; ++d) {
                point[d] /= norm;
                w.entries.emplace_back(d, point[d]);
            }
            dense.push_back(point);
            vectors.emplace_back("v" + std::to_string(i), combined_vector(std::move(w), {}, 0.5));
        }
        KMeansConfig km;
        km.k = 2;
        km.restarts = 10;
        km.rng_seed = 5000 + static_cast<std::uint64_t>(trial);
        auto result = kmeans(vectors, km);
        double exhaustive = kmeans_oracle::best_bipartition_objective(dense);
        if (result.objective <= exhaustive + 1e-9) ++hits;
    }
    detail = std::to_string(hits) + "/" + std::to_string(instances) + " global optima found";
    return hits >= 95;
}

bool streamcube_validity(std::string& detail) {
    auto setup = write_corpus("hashclust_accept_stream", 0.15, 808);
    RunConfig config;
    config.input_path = setup.corpus_path;
    PipelineResult scratch;
    auto windows = prepare_windows(config, scratch);
    const auto& data = windows.front();

    std::unordered_map<std::string, const HashtagVector*> by_tag;
    for (const auto& [tag, vec] : data.vectors.vectors) by_tag.emplace(tag, &vec);
    std::vector<std::pair<std::string, HashtagVector>> stream;
    for (const auto& tag : first_appearance_order(data.tweets))
        if (by_tag.contains(tag)) stream.emplace_back(tag, *by_tag.at(tag));

    StreamConfig stream_config;
    stream_config.default_threshold = 0.5;
    stream_config.validate_each_step = true;  // throws on any per-step invariant breach
    try {
        auto first = hashtag_cluster_static(stream, stream_config);
        validate_clustering(first, stream);
        auto second = hashtag_cluster_static(stream, stream_config);
        if (first.assignments != second.assignments || first.objective != second.objective) {
            detail = "rerun with identical input diverged";
            return false;
        }
        detail = std::to_string(stream.size()) + " hashtags, " + std::to_string(first.k()) +
                 " clusters, per-step invariants held";
        return true;
    } catch (const ContractViolation& e) {
        detail = e.what();
        return false;
    }
}

bool protocol_shape(std::string& detail) {
    auto setup = write_corpus("hashclust_accept_proto", 0.15, 99);
    RunConfig config;
    config.input_path = setup.corpus_path;
    config.window_hours = 6;
    config.method = "both";
    config.truth = "streamcube";
    auto result = run_pipeline(config);
    if (result.windows.empty()) {
        detail = "no windows";
        return false;
    }

    PipelineResult scratch;
    auto windows = prepare_windows(config, scratch);
    for (std::size_t w = 0; w < result.windows.size(); ++w) {
        const auto& outcome = result.windows[w];
        if (!outcome.kmeans_result || !outcome.streamcube_result) {
            detail = "missing method result in a window";
            return false;
        }
        if (outcome.kmeans_result->k() != outcome.streamcube_result->k()) {
            detail = "cluster counts differ in a window";
            return false;
        }
        if (!outcome.kmeans_report) {
            detail = "missing score in a window";
            return false;
        }
        double p = outcome.kmeans_report->purity;
        double n = outcome.kmeans_report->nmi;
        if (p < 0.0 || p > 1.0 || n < 0.0 || n > 1.0 + 1e-12) {
            detail = "score out of range";
            return false;
        }
        // purity >= the largest truth-class fraction
        auto pred = tweets_to_cluster_labels(*outcome.kmeans_result, windows[w].tweets);
        auto truth = tweets_to_cluster_labels(*outcome.streamcube_result, windows[w].tweets);
        auto table = table_from(pred.labeling, truth.labeling);
        std::uint64_t biggest = 0;
        for (std::uint64_t c : table.col_sums) biggest = std::max(biggest, c);
        double bound = static_cast<double>(biggest) / static_cast<double>(table.n);
        if (p + 1e-12 < bound) {
            detail = "purity " + std::to_string(p) + " below max-class bound " +
                     std::to_string(bound);
            return false;
        }
    }
    detail = std::to_string(result.windows.size()) + " windows, equal counts, scores in range";
    return true;
}

bool sweep_shape(std::string& detail) {
    auto setup = write_corpus("hashclust_accept_sweep", 0.0, 31, 10);  // 50 hashtags
    RunConfig config;
    config.input_path = setup.corpus_path;
    config.gold_labels_path = setup.gold_path;
    config.restarts = 20;

    const std::size_t n = 50;
    auto rows = sweep_k(config, {2, 5, n / 2, n});
    if (rows.size() != 4) {
        detail = "expected 4 rows, got " + std::to_string(rows.size());
        return false;
    }
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].k <= rows[i - 1].k) {
            detail = "ks not strictly increasing";
            return false;
        }
    if (rows.back().purity != 1.0) {
        detail = "purity(k=N) = " + std::to_string(rows.back().purity) + ", expected exactly 1";
        return false;
    }
    if (rows.front().purity > rows.back().purity) {
        detail = "purity(k=2) exceeds purity(k=N)";
        return false;
    }
    detail = "rows (k, purity): 2=" + std::to_string(rows[0].purity) +
             ", N=" + std::to_string(rows.back().purity);
    return true;
}

bool porter_conformance(std::string& detail) {
    auto start = Clock::now();
    std::ifstream in(std::string(HASHCLUST_DATA_DIR) + "/porter/porter_pairs.txt");
    if (!in) {
        detail = "fixture missing";
        return false;
    }
    std::string word, expected;
    std::size_t pairs = 0, mismatches = 0;
    std::string first_mismatch;
    while (in >> word >> expected) {
        ++pairs;
        if (porter_stem(word) != expected) {
            if (mismatches == 0)
                first_mismatch = word + " -> " + porter_stem(word) + " (want " + expected + ")";
            ++mismatches;
        }
    }
    double elapsed = seconds_since(start);
    detail = std::to_string(pairs) + " pairs, " + std::to_string(mismatches) + " mismatches, " +
             std::to_string(elapsed) + "s";
    if (mismatches > 0) detail += "; first: " + first_mismatch;
    return pairs >= 20000 && mismatches == 0 && elapsed < 1.0;
}

bool end_to_end(const std::string& cli, std::string& detail) {
    auto start = Clock::now();
    fs::path dir = make_temp_dir("hashclust_accept_e2e");
    std::string corpus = (dir / "corpus.jsonl").string();
    std::string gold = (dir / "gold.csv").string();

    auto run = [&](const std::string& args) {
        std::string command = "\"" + cli + "\" " + args + " > /dev/null 2>&1";
        int status = std::system(command.c_str());
        return status == 0;
    };

    if (!run("synth --events 5 --tweets-per-event 100 --vocab-per-event 30 --tags-per-event 4"
             " --noise 0.1 --seed 7 --out " + corpus + " --gold-out " + gold)) {
        detail = "synth failed";
        return false;
    }
    for (const char* out : {"out1", "out2"}) {
        std::string out_dir = (dir / out).string();
        if (!run("cluster --input " + corpus + " --method both --seed 9 --out " + out_dir)) {
            detail = "cluster failed";
            return false;
        }
        if (!run("evaluate --clusters " + out_dir + "/clusters_all_kmeans.json --input " + corpus +
                 " --gold " + gold + " --out " + out_dir + "/eval.json")) {
            detail = "evaluate failed";
            return false;
        }
    }

    for (const char* file : {"summary.csv", "clusters_all_kmeans.json",
                             "clusters_all_streamcube.json", "eval.json"}) {
        std::string a = slurp((dir / "out1" / file).string());
        std::string b = slurp((dir / "out2" / file).string());
        if (a != b || a.rfind("<unreadable", 0) == 0) {
            detail = std::string("output not deterministic or missing: ") + file;
            return false;
        }
    }
    double elapsed = seconds_since(start);
    detail = "synth + cluster + evaluate twice, byte-identical, " + std::to_string(elapsed) + "s";
    return elapsed < 10.0;
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli = argc > 1 ? argv[1] : "";
    int failures = 0;
    auto report = [&](int number, const std::string& name, bool ok, const std::string& detail) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << number << ". " << name << ": " << detail
                  << "\n";
        if (!ok) ++failures;
    };

    std::string detail;
    bool ok;

    ok = metric_oracle_equivalence(detail);
    report(1, "metric oracle equivalence", ok, detail);

    ok = nmi_hand_value(detail);
    report(2, "NMI hand value", ok, detail);

    ok = normalization_invariants(detail);
    report(3, "normalization invariants", ok, detail);

    ok = kmeans_recovery(detail);
    report(4, "k-means recovery on planted events", ok, detail);

    ok = objective_monotonicity(detail);
    report(5, "k-means objective monotonicity", ok, detail);

    ok = brute_force_optimality(detail);
    report(6, "brute-force optimality at tiny scale", ok, detail);

    ok = streamcube_validity(detail);
    report(7, "stream clustering validity", ok, detail);

    ok = protocol_shape(detail);
    report(8, "comparison protocol shape", ok, detail);

    ok = sweep_shape(detail);
    report(9, "k sweep shape", ok, detail);

    ok = porter_conformance(detail);
    report(10, "Porter conformance", ok, detail);

    if (cli.empty()) {
        report(11, "end to end via CLI", false, "no CLI path given (argv[1])");
    } else {
        ok = end_to_end(cli, detail);
        report(11, "end to end via CLI", ok, detail);
    }

    if (failures == 0)
        std::cout << "all criteria passed\n";
    else
        std::cout << failures << " criteria failed\n";
    return failures == 0 ? 0 : 1;
}
