#include "lapdiag/metrics.hpp"
#include "lapdiag/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace lapdiag;

namespace {

std::uint64_t brute_inversions(const std::vector<double> &est, const std::vector<double> &ref) {
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < est.size(); ++i)
        for (std::size_t j = i + 1; j < est.size(); ++j)
            count += (ref[i] < ref[j] && est[i] > est[j]) || (ref[i] > ref[j] && est[i] < est[j]);
    return count;
}

} // namespace

TEST_CASE("identical vectors") {
    const std::vector<double> v{0.3, 0.1, 0.7, 0.2};
    const std::vector<std::size_t> ks{1, 2, 4};
    const ErrorReport r = compare(v, v, ks);
    CHECK(r.max_abs == 0);
    CHECK(r.l1_rel == 0);
    CHECK(r.l2_rel == 0);
    CHECK(r.e_rel == 0);
    CHECK(r.inverted_pairs_pct == 0);
    for (auto [k, j] : r.topk_jaccard)
        CHECK(j == 1.0);
}

TEST_CASE("one inverted pair of three") {
    const std::vector<double> est{1, 2, 3}, ref{1, 3, 2};
    CHECK(compare(est, ref).inverted_pairs_pct == doctest::Approx(100.0 / 3));
    CHECK(count_inversions(est, ref) == 1);
}

TEST_CASE("uniform shift") {
    const std::vector<double> ref{0.5, 0.2, 0.9, 0.4};
    std::vector<double> est = ref;
    for (auto &x : est)
        x += 0.1;
    const ErrorReport r = compare(est, ref);
    CHECK(r.max_abs == doctest::Approx(0.1));
    CHECK(r.inverted_pairs_pct == 0);
    CHECK(r.l1_rel == doctest::Approx(0.4 / 2.0));
}

TEST_CASE("merge-sort inversions match brute force") {
    Pcg32 rng(3, 3);
    for (std::size_t n : {1u, 2u, 17u, 200u, 500u}) {
        std::vector<double> est(n), ref(n);
        for (std::size_t i = 0; i < n; ++i) {
            // Coarse values so that ties occur in both vectors.
            est[i] = static_cast<double>(rng.bounded(40));
            ref[i] = static_cast<double>(rng.bounded(40));
        }
        CHECK(count_inversions(est, ref) == brute_inversions(est, ref));
    }
}

TEST_CASE("rank metrics are invariant under increasing transforms") {
    Pcg32 rng(4, 4);
    std::vector<double> est(300), ref(300);
    for (std::size_t i = 0; i < est.size(); ++i) {
        ref[i] = rng.uniform();
        est[i] = ref[i] + 0.2 * rng.uniform();
    }
    std::vector<double> moved = est;
    for (auto &x : moved)
        x = 2 * x + 5;
    const std::vector<std::size_t> ks{10, 50};
    const ErrorReport a = compare(est, ref, ks), b = compare(moved, ref, ks);
    CHECK(a.inverted_pairs_pct == b.inverted_pairs_pct);
    CHECK(a.topk_jaccard == b.topk_jaccard);
    CHECK(a.inverted_pairs_pct > 0);
    CHECK(a.inverted_pairs_pct <= 100);
}

TEST_CASE("e_rel of a scaled copy") {
    const std::vector<double> ref{0.5, 2.0, 0.25, 8.0};
    for (double r : {0.01, 0.3}) {
        std::vector<double> est = ref;
        for (auto &x : est)
            x *= 1 + r;
        CHECK(compare(est, ref).e_rel == doctest::Approx(r).epsilon(1e-12));
    }
}

TEST_CASE("top-k uses the smallest entries") {
    const std::vector<double> ref{0.1, 0.2, 0.3, 0.4}, est{0.1, 0.35, 0.3, 0.05};
    const std::vector<std::size_t> ks{2};
    // Smallest two: ref {0,1}, est {3,0}; overlap 1 of 3.
    CHECK(compare(est, ref, ks).topk_jaccard.at(2) == doctest::Approx(1.0 / 3));
    CHECK(smallest_k(est, 2) == std::vector<std::size_t>{0, 3});
}

TEST_CASE("metric errors and zero references") {
    const std::vector<double> a{1, 2}, b{1, 2, 3};
    CHECK_THROWS_AS(compare(a, b), std::invalid_argument);
    const std::vector<std::size_t> too_big{3};
    CHECK_THROWS_AS(compare(a, a, too_big), std::invalid_argument);
    const std::vector<double> ref{0.0, 2.0}, est{0.1, 2.2};
    const ErrorReport r = compare(est, ref);
    CHECK(r.warnings.size() == 1);
    CHECK(r.e_rel == doctest::Approx(0.1));
}
