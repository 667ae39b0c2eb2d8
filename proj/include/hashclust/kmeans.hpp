// K-means over hashtag vectors with the composite similarity as the
// distance, spherical centroid updates, uniform data-point seeding with
// restarts, and farthest-point repair of empty clusters.
#pragma once

#include <algorithm>
#include <cstdint>
#include <future>
#include <limits>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "hashclust/clustering.hpp"
#include "hashclust/errors.hpp"
#include "hashclust/features.hpp"
#include "hashclust/rng.hpp"

namespace hashclust {

struct KMeansConfig {
    std::size_t k = 0;
    std::size_t max_iterations = 100;
    std::size_t restarts = 10;
    std::uint64_t rng_seed = 0;
    double convergence_epsilon = 1e-9;     // on objective change
    bool kmeanspp = false;                 // uniform (Forgy) seeding by default
    bool renormalize_centroids = true;     // spherical updates by default
};

// Index of the nearest centroid; ties go to the lowest index.
inline int assign(const CompositeVec& v, const std::vector<CompositeVec>& centroids) {
    if (centroids.empty()) throw ContractViolation("assign called with no centroids");
    int best = 0;
    double best_distance = distance(v, centroids[0]);
    for (std::size_t i = 1; i < centroids.size(); ++i) {
        double d = distance(v, centroids[i]);
        if (d < best_distance) {
            best_distance = d;
            best = static_cast<int>(i);
        }
    }
    return best;
}

inline int assign(const HashtagVector& v, const std::vector<CompositeVec>& centroids) {
    return assign(to_composite(v), centroids);
}

namespace kmeans_detail {

inline CompositeVec mean_of(const std::vector<CompositeVec>& points,
                            const std::vector<int>& assignment, int cluster,
                            std::size_t member_count, bool renormalize) {
    SparseAccumulator words, tags;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (assignment[i] != cluster) continue;
        words.add(points[i].word);
        tags.add(points[i].tag);
    }
    CompositeVec mean;
    mean.word = words.to_vector();
    mean.tag = tags.to_vector();
    double inv = 1.0 / static_cast<double>(member_count);
    mean.word.scale(inv);
    mean.tag.scale(inv);
    if (renormalize) {
        double n = mean.norm();
        if (n == 0.0) throw ContractViolation("zero centroid from non-empty member list");
        mean.word.scale(1.0 / n);
        mean.tag.scale(1.0 / n);
    }
    return mean;
}

}  // namespace kmeans_detail

// Spherical mean of a non-empty member list: blockwise arithmetic mean,
// renormalized to unit composite norm.
inline CompositeVec centroid(const std::vector<HashtagVector>& members) {
    if (members.empty()) throw ContractViolation("centroid of empty member list");
    std::vector<CompositeVec> points;
    points.reserve(members.size());
    for (const auto& m : members) points.push_back(to_composite(m));
    std::vector<int> assignment(points.size(), 0);
    return kmeans_detail::mean_of(points, assignment, 0, points.size(), true);
}

namespace kmeans_detail {

struct RunResult {
    std::vector<int> assignment;
    std::vector<CompositeVec> centroids;
    double objective = std::numeric_limits<double>::infinity();
};

inline std::vector<CompositeVec> init_centroids(const std::vector<CompositeVec>& points,
                                                std::size_t k, bool kmeanspp, Rng& rng) {
    std::vector<CompositeVec> centroids;
    centroids.reserve(k);
    if (!kmeanspp) {
        for (std::size_t idx : rng.sample_indices(points.size(), k))
            centroids.push_back(points[idx]);
        return centroids;
    }
    std::vector<bool> chosen(points.size(), false);
    std::size_t first = static_cast<std::size_t>(rng.below(points.size()));
    centroids.push_back(points[first]);
    chosen[first] = true;
    std::vector<double> nearest(points.size(), 0.0);
    while (centroids.size() < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (chosen[i]) {
                nearest[i] = 0.0;
                continue;
            }
            double d = distance(points[i], centroids.back());
            if (centroids.size() == 1 || d < nearest[i]) nearest[i] = d;
            total += nearest[i] * nearest[i];
        }
        std::size_t pick = points.size();
        if (total > 0.0) {
            double target = rng.unit() * total;
            double cumulative = 0.0;
            for (std::size_t i = 0; i < points.size(); ++i) {
                if (chosen[i]) continue;
                cumulative += nearest[i] * nearest[i];
                if (cumulative >= target) {
                    pick = i;
                    break;
                }
            }
        }
        if (pick == points.size()) {
            // All remaining mass is zero (duplicate points): fall back to the
            // first unchosen index.
            for (std::size_t i = 0; i < points.size(); ++i)
                if (!chosen[i]) {
                    pick = i;
                    break;
                }
        }
        centroids.push_back(points[pick]);
        chosen[pick] = true;
    }
    return centroids;
}

// Moves the globally farthest point (from its own centroid) into each empty
// cluster. Returns true if anything had to be repaired.
inline bool repair_empty_clusters(const std::vector<CompositeVec>& points,
                                  std::vector<int>& assignment,
                                  std::vector<CompositeVec>& centroids) {
    bool repaired = false;
    for (;;) {
        std::vector<std::size_t> sizes(centroids.size(), 0);
        for (int a : assignment) sizes[static_cast<std::size_t>(a)] += 1;
        std::size_t empty = sizes.size();
        for (std::size_t c = 0; c < sizes.size(); ++c)
            if (sizes[c] == 0) {
                empty = c;
                break;
            }
        if (empty == sizes.size()) return repaired;

        std::size_t farthest = points.size();
        double farthest_distance = -1.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            std::size_t home = static_cast<std::size_t>(assignment[i]);
            if (sizes[home] < 2) continue;  // do not empty another cluster
            double d = distance(points[i], centroids[home]);
            if (d > farthest_distance) {
                farthest_distance = d;
                farthest = i;
            }
        }
        if (farthest == points.size())
            throw ContractViolation("cannot repair empty cluster: no donor point");
        centroids[empty] = points[farthest];
        assignment[farthest] = static_cast<int>(empty);
        repaired = true;
    }
}

inline double total_objective(const std::vector<CompositeVec>& points,
                              const std::vector<int>& assignment,
                              const std::vector<CompositeVec>& centroids) {
    double sum = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        sum += distance(points[i], centroids[static_cast<std::size_t>(assignment[i])]);
    return sum;
}

inline RunResult run_once(const std::vector<CompositeVec>& points, const KMeansConfig& config,
                          std::uint64_t seed) {
    Rng rng(seed);
    RunResult state;
    state.centroids = init_centroids(points, config.k, config.kmeanspp, rng);
    state.assignment.assign(points.size(), 0);
    for (std::size_t i = 0; i < points.size(); ++i)
        state.assignment[i] = assign(points[i], state.centroids);
    repair_empty_clusters(points, state.assignment, state.centroids);
    state.objective = total_objective(points, state.assignment, state.centroids);

    for (std::size_t iter = 0; iter < config.max_iterations; ++iter) {
        std::vector<std::size_t> sizes(config.k, 0);
        for (int a : state.assignment) sizes[static_cast<std::size_t>(a)] += 1;
        std::vector<CompositeVec> next_centroids(config.k);
        for (std::size_t c = 0; c < config.k; ++c)
            next_centroids[c] = mean_of(points, state.assignment, static_cast<int>(c), sizes[c],
                                        config.renormalize_centroids);

        std::vector<int> next_assignment(points.size());
        for (std::size_t i = 0; i < points.size(); ++i)
            next_assignment[i] = assign(points[i], next_centroids);
        bool step_repaired = repair_empty_clusters(points, next_assignment, next_centroids);
        double next_objective = total_objective(points, next_assignment, next_centroids);

        // Spherical updates make the objective non-increasing (repairs only
        // ever lower it: the moved point contributes zero to its new
        // cluster), so a rise means a bug. The non-spherical diagnostic
        // mode voids the guarantee.
        if (config.renormalize_centroids && next_objective > state.objective + 1e-9)
            throw ContractViolation("k-means objective increased from " +
                                    std::to_string(state.objective) + " to " +
                                    std::to_string(next_objective));

        bool stable = !step_repaired && next_assignment == state.assignment;
        double delta = state.objective - next_objective;
        state.assignment = std::move(next_assignment);
        state.centroids = std::move(next_centroids);
        state.objective = next_objective;
        if (stable) break;
        if (!step_repaired && std::abs(delta) < config.convergence_epsilon) break;
    }
    return state;
}

}  // namespace kmeans_detail

// Best-of-restarts K-means. Restart r runs with seed rng_seed + r; restarts
// execute independently and the winner is the lowest objective, ties broken
// by the lowest restart index, so results do not depend on scheduling.
inline Clustering kmeans(const std::vector<std::pair<std::string, HashtagVector>>& vectors,
                         const KMeansConfig& config) {
    if (config.k == 0) throw ConfigError("k-means requires k >= 1");
    if (config.k > vectors.size())
        throw ConfigError("k (" + std::to_string(config.k) + ") exceeds the number of vectors (" +
                          std::to_string(vectors.size()) + ")");
    if (config.restarts == 0) throw ConfigError("k-means requires at least one restart");

    std::vector<CompositeVec> points;
    points.reserve(vectors.size());
    for (const auto& [tag, vec] : vectors) points.push_back(to_composite(vec));

    // Restarts run in bounded waves; the winner is picked in restart order,
    // so the outcome never depends on scheduling.
    std::size_t wave = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    kmeans_detail::RunResult best;
    for (std::size_t base = 0; base < config.restarts; base += wave) {
        std::size_t count = std::min(wave, config.restarts - base);
        std::vector<std::future<kmeans_detail::RunResult>> futures;
        futures.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            std::size_t r = base + i;
            futures.push_back(std::async(std::launch::async, [&points, &config, r] {
                return kmeans_detail::run_once(points, config, config.rng_seed + r);
            }));
        }
        for (auto& f : futures) {
            kmeans_detail::RunResult result = f.get();
            if (result.objective < best.objective) best = std::move(result);
        }
    }

    Clustering out;
    out.method = "kmeans";
    out.alpha = vectors.empty() ? 0.5 : vectors.front().second.alpha;
    out.centroids = std::move(best.centroids);
    out.objective = best.objective;
    out.hashtags.reserve(vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        out.hashtags.push_back(vectors[i].first);
        out.assignments.emplace(vectors[i].first, best.assignment[i]);
    }
    return out;
}

}  // namespace hashclust
