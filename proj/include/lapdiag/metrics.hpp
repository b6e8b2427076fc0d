#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace lapdiag {

struct ErrorReport {
    double max_abs = 0.0;
    double l1_rel = 0.0;
    double l2_rel = 0.0;
    /// Geometric mean of the entrywise relative errors |est - ref| / |ref|.
    double e_rel = 0.0;
    /// Share of vertex pairs ordered oppositely by est and ref, in percent.
    double inverted_pairs_pct = 0.0;
    /// Jaccard overlap of the k smallest entries (highest electrical closeness).
    std::map<std::size_t, double> topk_jaccard;
    std::vector<std::string> warnings;
};

/// Pairs (i, j) with ref_i < ref_j and est_i > est_j (ties never count). O(n log n).
std::uint64_t count_inversions(std::span<const double> est, std::span<const double> ref);

/// Indices of the k smallest values, ties by index.
std::vector<std::size_t> smallest_k(std::span<const double> values, std::size_t k);

ErrorReport compare(std::span<const double> est, std::span<const double> ref, std::span<const std::size_t> ks = {});

} // namespace lapdiag
