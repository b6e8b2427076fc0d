#include "lapdiag/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lapdiag {

namespace {

// Counts pairs i < j with values[i] > values[j] while merge-sorting.
std::uint64_t sort_count(std::vector<double> &values, std::vector<double> &buffer, std::size_t lo, std::size_t hi) {
    if (hi - lo < 2)
        return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::uint64_t count = sort_count(values, buffer, lo, mid) + sort_count(values, buffer, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (values[i] <= values[j]) {
            buffer[k++] = values[i++];
        } else {
            count += mid - i;
            buffer[k++] = values[j++];
        }
    }
    while (i < mid)
        buffer[k++] = values[i++];
    while (j < hi)
        buffer[k++] = values[j++];
    std::copy(buffer.begin() + static_cast<std::ptrdiff_t>(lo), buffer.begin() + static_cast<std::ptrdiff_t>(hi),
              values.begin() + static_cast<std::ptrdiff_t>(lo));
    return count;
}

} // namespace

std::uint64_t count_inversions(std::span<const double> est, std::span<const double> ref) {
    if (est.size() != ref.size())
        throw std::invalid_argument("count_inversions: length mismatch");
    std::vector<std::size_t> idx(est.size());
    std::iota(idx.begin(), idx.end(), 0);
    // Ties in ref are ordered by est so they never register as inversions.
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return ref[a] != ref[b] ? ref[a] < ref[b] : est[a] < est[b];
    });
    std::vector<double> values(est.size()), buffer(est.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        values[i] = est[idx[i]];
    return sort_count(values, buffer, 0, values.size());
}

std::vector<std::size_t> smallest_k(std::span<const double> values, std::size_t k) {
    if (k > values.size())
        throw std::invalid_argument("k larger than the vector length");
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), 0);
    const auto less = [&](std::size_t a, std::size_t b) {
        return values[a] != values[b] ? values[a] < values[b] : a < b;
    };
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(), less);
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

ErrorReport compare(std::span<const double> est, std::span<const double> ref, std::span<const std::size_t> ks) {
    if (est.size() != ref.size())
        throw std::invalid_argument("compare: estimate has " + std::to_string(est.size()) + " entries, reference has " +
                                    std::to_string(ref.size()));
    const std::size_t n = est.size();
    for (auto k : ks)
        if (k > n)
            throw std::invalid_argument("compare: k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));

    ErrorReport r;
    double l1 = 0.0, l1_ref = 0.0, l2 = 0.0, l2_ref = 0.0, log_sum = 0.0;
    std::size_t rel_count = 0, skipped = 0;
    bool zero_rel = false;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = std::abs(est[i] - ref[i]);
        r.max_abs = std::max(r.max_abs, d);
        l1 += d;
        l1_ref += std::abs(ref[i]);
        l2 += d * d;
        l2_ref += ref[i] * ref[i];
        if (ref[i] == 0.0) {
            ++skipped;
            continue;
        }
        const double rel = d / std::abs(ref[i]);
        if (rel == 0.0)
            zero_rel = true;
        else
            log_sum += std::log(rel);
        ++rel_count;
    }
    r.l1_rel = l1_ref > 0.0 ? l1 / l1_ref : 0.0;
    r.l2_rel = l2_ref > 0.0 ? std::sqrt(l2) / std::sqrt(l2_ref) : 0.0;
    r.e_rel = (rel_count == 0 || zero_rel) ? 0.0 : std::exp(log_sum / static_cast<double>(rel_count));
    if (skipped)
        r.warnings.push_back(std::to_string(skipped) + " zero reference entries skipped in e_rel");

    if (n >= 2) {
        const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
        r.inverted_pairs_pct = 100.0 * static_cast<double>(count_inversions(est, ref)) / pairs;
    }
    for (auto k : ks) {
        const auto a = smallest_k(est, k);
        const auto b = smallest_k(ref, k);
        std::vector<std::size_t> both;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
        const std::size_t uni = a.size() + b.size() - both.size();
        r.topk_jaccard[k] = uni ? static_cast<double>(both.size()) / static_cast<double>(uni) : 1.0;
    }
    return r;
}

} // namespace lapdiag
