// Single-pass hashtag clustering: each incoming hashtag either gets absorbed
// by its nearest cluster or starts a new one, depending on that cluster's
// minimum threshold (its distance to the closest other cluster). While only
// one cluster exists the absorbing rule has no other cluster to reference,
// so a configurable default threshold applies.
#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hashclust/clustering.hpp"
#include "hashclust/errors.hpp"
#include "hashclust/features.hpp"

namespace hashclust {

struct StreamCluster {
    int id = 0;
    std::vector<std::string> members;  // absorption order
    CompositeVec centroid;             // incrementally maintained spherical mean
    double min_threshold = 0.0;        // meaningful once >= 2 clusters exist
};

struct StreamConfig {
    double default_threshold = 0.5;  // absorbing threshold while only one cluster exists
    bool validate_each_step = false;  // recheck every invariant after every step
};

struct NearestCluster {
    int id = 0;
    double distance = 0.0;
};

// Nearest cluster by centroid distance; ties go to the lowest cluster id.
inline NearestCluster nearest_neighbor(const CompositeVec& v,
                                       const std::vector<StreamCluster>& clusters) {
    if (clusters.empty())
        throw ContractViolation("nearest_neighbor called with no clusters");
    NearestCluster best{clusters.front().id, distance(v, clusters.front().centroid)};
    for (std::size_t i = 1; i < clusters.size(); ++i) {
        double d = distance(v, clusters[i].centroid);
        if (d < best.distance) best = NearestCluster{clusters[i].id, d};
    }
    return best;
}

inline NearestCluster nearest_neighbor(const HashtagVector& v,
                                       const std::vector<StreamCluster>& clusters) {
    return nearest_neighbor(to_composite(v), clusters);
}

// Recomputes every cluster's min_threshold as the minimum centroid-to-
// centroid distance to any other cluster. No-op with fewer than 2 clusters.
inline void refresh_min_thresholds(std::vector<StreamCluster>& clusters) {
    if (clusters.size() < 2) return;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        double best = 2.0;
        for (std::size_t j = 0; j < clusters.size(); ++j) {
            if (j == i) continue;
            double d = distance(clusters[i].centroid, clusters[j].centroid);
            if (d < best) best = d;
        }
        clusters[i].min_threshold = best;
    }
}

namespace streamcube_detail {

// Incremental spherical mean: (n * centroid + v) / (n + 1), renormalized.
inline void absorb_into(StreamCluster& cluster, const CompositeVec& v) {
    double n = static_cast<double>(cluster.members.size());
    SparseAccumulator words, tags;
    words.add(cluster.centroid.word, n);
    words.add(v.word);
    tags.add(cluster.centroid.tag, n);
    tags.add(v.tag);
    CompositeVec mean;
    mean.word = words.to_vector();
    mean.tag = tags.to_vector();
    double inv = 1.0 / (n + 1.0);
    mean.word.scale(inv);
    mean.tag.scale(inv);
    double norm = mean.norm();
    if (norm == 0.0) throw ContractViolation("zero centroid after absorption");
    mean.word.scale(1.0 / norm);
    mean.tag.scale(1.0 / norm);
    cluster.centroid = std::move(mean);
}

// Pairwise centroid distances, kept symmetric so threshold refreshes after
// an absorption are O(k) distance computations instead of O(k^2).
class DistanceTable {
public:
    void add_cluster(const std::vector<StreamCluster>& clusters) {
        std::size_t k = clusters.size();
        for (auto& row : table_) row.push_back(0.0);
        table_.emplace_back(k, 0.0);
        refresh_row(clusters, k - 1);
    }

    void refresh_row(const std::vector<StreamCluster>& clusters, std::size_t i) {
        for (std::size_t j = 0; j < table_.size(); ++j) {
            if (j == i) continue;
            double d = distance(clusters[i].centroid, clusters[j].centroid);
            table_[i][j] = d;
            table_[j][i] = d;
        }
    }

    void apply_min_thresholds(std::vector<StreamCluster>& clusters) const {
        if (clusters.size() < 2) return;
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            double best = 2.0;
            for (std::size_t j = 0; j < clusters.size(); ++j)
                if (j != i && table_[i][j] < best) best = table_[i][j];
            clusters[i].min_threshold = best;
        }
    }

private:
    std::vector<std::vector<double>> table_;
};

inline void validate_state(const std::vector<StreamCluster>& clusters,
                           std::size_t processed_count) {
    std::size_t total = 0;
    for (const auto& cluster : clusters) {
        if (cluster.members.empty())
            throw ContractViolation("stream cluster " + std::to_string(cluster.id) + " is empty");
        total += cluster.members.size();
        if (std::abs(cluster.centroid.norm() - 1.0) > 1e-9)
            throw ContractViolation("stream cluster " + std::to_string(cluster.id) +
                                    " centroid norm " + std::to_string(cluster.centroid.norm()));
    }
    if (total != processed_count)
        throw ContractViolation("stream clusters do not partition the processed hashtags");
    if (clusters.size() >= 2) {
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            double best = 2.0;
            for (std::size_t j = 0; j < clusters.size(); ++j) {
                if (j == i) continue;
                double d = distance(clusters[i].centroid, clusters[j].centroid);
                if (d < best) best = d;
            }
            if (std::abs(best - clusters[i].min_threshold) > 1e-9)
                throw ContractViolation("stale min_threshold on cluster " +
                                        std::to_string(clusters[i].id));
        }
    }
}

}  // namespace streamcube_detail

// Processes hashtags in stream order. The first hashtag opens cluster 0;
// afterwards a hashtag whose nearest-cluster distance exceeds ("greater
// than", strictly) that cluster's threshold opens a new cluster, otherwise
// it is absorbed and the centroid updates incrementally. Thresholds refresh
// after every structural change.
inline Clustering hashtag_cluster_static(
    const std::vector<std::pair<std::string, HashtagVector>>& stream,
    const StreamConfig& config) {
    if (stream.empty()) throw ConfigError("hashtag_cluster_static requires a non-empty stream");
    if (config.default_threshold <= 0.0 || config.default_threshold > 1.0)
        throw ConfigError("default_threshold must be in (0, 1]");

    std::vector<StreamCluster> clusters;
    streamcube_detail::DistanceTable distances;
    std::vector<int> assignment(stream.size(), 0);

    for (std::size_t idx = 0; idx < stream.size(); ++idx) {
        const auto& [tag, vec] = stream[idx];
        CompositeVec point = to_composite(vec);
        if (clusters.empty()) {
            clusters.push_back(StreamCluster{0, {tag}, std::move(point), config.default_threshold});
            distances.add_cluster(clusters);
            assignment[idx] = 0;
        } else {
            NearestCluster nearest = nearest_neighbor(point, clusters);
            double threshold = clusters.size() >= 2
                                   ? clusters[static_cast<std::size_t>(nearest.id)].min_threshold
                                   : config.default_threshold;
            if (nearest.distance > threshold) {
                int id = static_cast<int>(clusters.size());
                clusters.push_back(
                    StreamCluster{id, {tag}, std::move(point), config.default_threshold});
                distances.add_cluster(clusters);
                assignment[idx] = id;
            } else {
                auto& home = clusters[static_cast<std::size_t>(nearest.id)];
                streamcube_detail::absorb_into(home, point);
                home.members.push_back(tag);
                distances.refresh_row(clusters, static_cast<std::size_t>(nearest.id));
                assignment[idx] = nearest.id;
            }
            distances.apply_min_thresholds(clusters);
        }
        if (config.validate_each_step) streamcube_detail::validate_state(clusters, idx + 1);
    }

    Clustering out;
    out.method = "streamcube";
    out.alpha = stream.front().second.alpha;
    out.hashtags.reserve(stream.size());
    out.centroids.reserve(clusters.size());
    for (const auto& cluster : clusters) out.centroids.push_back(cluster.centroid);
    double objective = 0.0;
    for (std::size_t idx = 0; idx < stream.size(); ++idx) {
        out.hashtags.push_back(stream[idx].first);
        out.assignments.emplace(stream[idx].first, assignment[idx]);
        objective +=
            distance(to_composite(stream[idx].second), out.centroids[static_cast<std::size_t>(assignment[idx])]);
    }
    out.objective = objective;
    return out;
}

}  // namespace hashclust
