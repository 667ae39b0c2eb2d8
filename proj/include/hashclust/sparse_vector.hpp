// Sparse vectors with sorted index lists. Dot products run as linear merges,
// which also fixes the floating-point summation order, so sim(a,b) and
// sim(b,a) are bit-identical.
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "hashclust/errors.hpp"

namespace hashclust {

struct SparseVec {
    // (index, weight) pairs, indices strictly increasing, weights non-zero.
    std::vector<std::pair<std::uint32_t, double>> entries;

    bool empty() const { return entries.empty(); }

    double norm_squared() const {
        double s = 0.0;
        for (const auto& [i, w] : entries) s += w * w;
        return s;
    }

    double norm() const { return std::sqrt(norm_squared()); }

    void scale(double factor) {
        for (auto& [i, w] : entries) w *= factor;
    }
};

inline double dot(const SparseVec& a, const SparseVec& b) {
    double s = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.entries.size() && j < b.entries.size()) {
        std::uint32_t ia = a.entries[i].first, ib = b.entries[j].first;
        if (ia == ib) {
            s += a.entries[i].second * b.entries[j].second;
            ++i;
            ++j;
        } else if (ia < ib) {
            ++i;
        } else {
            ++j;
        }
    }
    return s;
}

// Builds a unit-norm vector from sparse non-negative weights; an all-zero or
// empty input yields the empty vector.
template <typename Map>
SparseVec unit_vector_from_weights(const Map& weights) {
    SparseVec v;
    v.entries.reserve(weights.size());
    for (const auto& [index, weight] : weights) {
        double w = static_cast<double>(weight);
        if (w != 0.0) v.entries.emplace_back(index, w);
    }
    if (v.entries.empty()) return v;
    double n = v.norm();
    v.scale(1.0 / n);
    return v;
}

// Accumulator for vector sums/means; materializes a sorted SparseVec.
class SparseAccumulator {
public:
    void add(const SparseVec& v, double factor = 1.0) {
        for (const auto& [i, w] : v.entries) sums_[i] += w * factor;
    }

    SparseVec to_vector() const {
        SparseVec v;
        v.entries.reserve(sums_.size());
        for (const auto& [i, w] : sums_)
            if (w != 0.0) v.entries.emplace_back(i, w);
        return v;
    }

private:
    std::map<std::uint32_t, double> sums_;  // ordered: deterministic output
};

}  // namespace hashclust
