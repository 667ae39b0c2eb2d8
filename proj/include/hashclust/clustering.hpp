// Shared clustering result type: both clusterers emit this, so evaluation
// and serialization stay method-agnostic.
#pragma once

#include <cmath>
#include <string>
#include <unordered_map>
#include <vector>

#include "hashclust/errors.hpp"
#include "hashclust/features.hpp"

namespace hashclust {

struct Clustering {
    std::string method;  // "kmeans" | "streamcube"
    double alpha = 0.5;
    std::vector<std::string> hashtags;  // clustered hashtags, presentation order
    std::unordered_map<std::string, int> assignments;  // hashtag -> cluster id
    std::vector<CompositeVec> centroids;               // indexed by cluster id
    double objective = 0.0;  // sum of member-to-centroid distances

    std::size_t k() const { return centroids.size(); }

    // Cluster members in presentation order (= absorption order for the
    // single-pass method).
    std::vector<std::vector<std::string>> members_by_cluster() const {
        std::vector<std::vector<std::string>> groups(centroids.size());
        for (const auto& tag : hashtags) groups[static_cast<std::size_t>(assignments.at(tag))].push_back(tag);
        return groups;
    }
};

// Structural checks shared by tests and the pipeline's debug mode: the
// assignments form a partition with no empty cluster, centroids are unit
// norm, and the stored objective is recomputable.
inline void validate_clustering(const Clustering& c,
                                const std::vector<std::pair<std::string, HashtagVector>>& vectors) {
    if (c.assignments.size() != vectors.size() || c.hashtags.size() != vectors.size())
        throw ContractViolation("clustering does not cover the input hashtag set");
    std::vector<std::size_t> sizes(c.centroids.size(), 0);
    double objective = 0.0;
    for (const auto& [tag, vec] : vectors) {
        auto it = c.assignments.find(tag);
        if (it == c.assignments.end())
            throw ContractViolation("hashtag missing from assignments: " + tag);
        if (it->second < 0 || static_cast<std::size_t>(it->second) >= c.centroids.size())
            throw ContractViolation("assignment out of range for hashtag: " + tag);
        sizes[static_cast<std::size_t>(it->second)] += 1;
        objective += distance(to_composite(vec), c.centroids[static_cast<std::size_t>(it->second)]);
    }
    for (std::size_t i = 0; i < sizes.size(); ++i)
        if (sizes[i] == 0) throw ContractViolation("empty cluster " + std::to_string(i));
    if (std::abs(objective - c.objective) > 1e-9)
        throw ContractViolation("stored objective not recomputable: stored " +
                                std::to_string(c.objective) + " recomputed " +
                                std::to_string(objective));
}

}  // namespace hashclust
