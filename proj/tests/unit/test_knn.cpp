#include <doctest.h>

#include <algorithm>
#include <map>
#include <vector>

#include "teachml/errors.hpp"
#include "teachml/knn.hpp"
#include "teachml/rng.hpp"
#include "test_helpers.hpp"

using namespace teachml;
using testutil::make_matrix;

namespace {

// Independent route: full stable sort on squared distance (stability keeps
// lower stored rows first on ties), then a vote with lowest-code tie-break.
int oracle_knn(const FeatureMatrix& stored, const std::vector<int>& y, int k,
               std::span<const double> query) {
    std::vector<std::pair<double, std::size_t>> dist;
    for (std::size_t i = 0; i < stored.rows(); ++i) {
        double d2 = 0;
        for (std::size_t c = 0; c < stored.cols(); ++c) {
            const double diff = query[c] - stored.at(i, c);
            d2 += diff * diff;
        }
        dist.push_back({d2, i});
    }
    std::stable_sort(dist.begin(), dist.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::map<int, int> votes;
    for (int j = 0; j < k; ++j) votes[y[dist[static_cast<std::size_t>(j)].second]]++;
    int best = votes.begin()->first;
    for (const auto& [label, count] : votes) {
        if (count > votes.at(best)) best = label;
    }
    return best;
}

}  // namespace

TEST_CASE("fit stores the data verbatim") {
    FeatureMatrix x = make_matrix({{1, 2}, {3, 4}});
    KNNModel m = fit_knn(x, {7, 8}, 1);
    CHECK(m.k == 1);
    CHECK(m.stored_y == std::vector<int>{7, 8});
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) CHECK(m.stored_x.at(r, c) == x.at(r, c));
    }
}

TEST_CASE("k outside [1, n] is rejected") {
    FeatureMatrix x = make_matrix({{1}, {2}});
    CHECK_THROWS_AS(fit_knn(x, {0, 1}, 0), DataError);
    CHECK_THROWS_AS(fit_knn(x, {0, 1}, 3), DataError);
    CHECK_NOTHROW(fit_knn(x, {0, 1}, 2));
}

TEST_CASE("k equal to n is a global majority vote") {
    Rng rng(21);
    std::vector<std::vector<double>> rows;
    std::vector<int> y;
    for (int i = 0; i < 30; ++i) {
        rows.push_back({rng.next_double(), rng.next_double()});
        y.push_back(static_cast<int>(rng.bounded(4)));
    }
    KNNModel m = fit_knn(make_matrix(rows), y, 30);

    // oracle: majority with lowest-code tie-break
    std::map<int, int> counts;
    for (int label : y) counts[label]++;
    int expected = counts.begin()->first;
    for (const auto& [label, count] : counts) {
        if (count > counts.at(expected)) expected = label;
    }
    CHECK(predict_knn(m, make_matrix({{0.5, 0.5}, {9, -3}})) ==
          std::vector<int>{expected, expected});
}

TEST_CASE("a stored row is its own nearest neighbor") {
    FeatureMatrix x = make_matrix({{1, 1}, {5, 5}, {9, 9}});
    KNNModel m = fit_knn(x, {3, 4, 5}, 1);
    CHECK(predict_knn(m, x) == std::vector<int>{3, 4, 5});
}

TEST_CASE("nearest stored point decides the label") {
    KNNModel m = fit_knn(make_matrix({{0}, {10}}), {0, 1}, 1);
    CHECK(predict_knn(m, make_matrix({{2}}))[0] == 0);
    CHECK(predict_knn(m, make_matrix({{6}}))[0] == 1);
}

TEST_CASE("equidistant neighbors prefer the lower stored row") {
    KNNModel m = fit_knn(make_matrix({{0}, {4}}), {7, 3}, 1);
    CHECK(predict_knn(m, make_matrix({{2}}))[0] == 7);

    // same points, opposite storage order: the other label wins the tie
    KNNModel swapped = fit_knn(make_matrix({{4}, {0}}), {3, 7}, 1);
    CHECK(predict_knn(swapped, make_matrix({{2}}))[0] == 3);
}

TEST_CASE("dimension mismatch is an error") {
    KNNModel m = fit_knn(make_matrix({{0}, {1}}), {0, 1}, 1);
    CHECK_THROWS_AS(predict_knn(m, make_matrix({{0, 1}})), DataError);
}

TEST_CASE("uniform positive scaling leaves predictions unchanged") {
    Rng rng(22);
    std::vector<std::vector<double>> rows, queries;
    std::vector<int> y;
    for (int i = 0; i < 100; ++i) {
        rows.push_back({rng.next_double() * 4, rng.next_double() * 4, rng.next_double() * 4});
        y.push_back(static_cast<int>(rng.bounded(5)));
    }
    for (int i = 0; i < 40; ++i) {
        queries.push_back({rng.next_double() * 4, rng.next_double() * 4, rng.next_double() * 4});
    }

    for (double c : {2.0, 0.5}) {
        auto scale = [&](const std::vector<std::vector<double>>& src) {
            std::vector<std::vector<double>> out = src;
            for (auto& row : out) {
                for (double& v : row) v *= c;
            }
            return out;
        };
        KNNModel raw = fit_knn(make_matrix(rows), y, 5);
        KNNModel scaled = fit_knn(make_matrix(scale(rows)), y, 5);
        CHECK(predict_knn(raw, make_matrix(queries)) ==
              predict_knn(scaled, make_matrix(scale(queries))));
    }
}

TEST_CASE("k=1 memorizes conflict-free training data") {
    std::vector<std::vector<double>> rows;
    std::vector<int> y;
    for (int i = 0; i < 50; ++i) {
        rows.push_back({static_cast<double>(i)});
        y.push_back(i % 7);
    }
    KNNModel m = fit_knn(make_matrix(rows), y, 1);
    CHECK(predict_knn(m, make_matrix(rows)) == y);
}

TEST_CASE("predictions agree with the brute-force oracle") {
    Rng rng(23);
    std::vector<std::vector<double>> rows;
    std::vector<int> y;
    for (int i = 0; i < 120; ++i) {
        rows.push_back({static_cast<double>(rng.bounded(4)), static_cast<double>(rng.bounded(4)),
                        rng.next_double()});
        y.push_back(static_cast<int>(rng.bounded(6)));
    }
    FeatureMatrix stored = make_matrix(rows);
    for (int k : {1, 3, 5}) {
        KNNModel m = fit_knn(stored, y, k);
        for (int q = 0; q < 50; ++q) {
            std::vector<std::vector<double>> query = {{static_cast<double>(rng.bounded(4)),
                                                       static_cast<double>(rng.bounded(4)),
                                                       rng.next_double()}};
            FeatureMatrix qm = make_matrix(query);
            CHECK(predict_knn(m, qm)[0] == oracle_knn(stored, y, k, qm.row(0)));
        }
    }
}
