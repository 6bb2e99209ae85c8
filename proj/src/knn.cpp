#include "teachml/knn.hpp"

#include <algorithm>
#include <map>

#include "teachml/errors.hpp"

namespace teachml {

KNNModel fit_knn(const FeatureMatrix& x, const std::vector<int>& y, int k) {
    if (x.rows() != y.size()) throw DataError("fit_knn: x/y length mismatch");
    if (k < 1) throw DataError("fit_knn: k must be >= 1");
    if (static_cast<std::size_t>(k) > x.rows()) {
        throw DataError("fit_knn: k exceeds the number of stored rows");
    }
    return {x, y, k};
}

std::vector<int> predict_knn(const KNNModel& m, const FeatureMatrix& x) {
    if (x.cols() != m.stored_x.cols()) throw DataError("predict_knn: feature count mismatch");

    const std::size_t n = m.stored_x.rows();
    const auto k = static_cast<std::size_t>(m.k);
    std::vector<int> out;
    out.reserve(x.rows());

    std::vector<std::pair<double, std::size_t>> dist(n);  // (squared distance, row)
    for (std::size_t q = 0; q < x.rows(); ++q) {
        for (std::size_t i = 0; i < n; ++i) {
            double d2 = 0;
            for (std::size_t c = 0; c < x.cols(); ++c) {
                const double diff = x.at(q, c) - m.stored_x.at(i, c);
                d2 += diff * diff;
            }
            dist[i] = {d2, i};
        }
        // (distance, index) order makes distance ties prefer lower rows.
        std::partial_sort(dist.begin(), dist.begin() + static_cast<long>(k), dist.end());

        std::map<int, int> tally;
        for (std::size_t j = 0; j < k; ++j) tally[m.stored_y[dist[j].second]]++;
        int best_label = tally.begin()->first;
        int best_count = tally.begin()->second;
        for (const auto& [label, count] : tally) {
            if (count > best_count) {
                best_count = count;
                best_label = label;
            }
        }
        out.push_back(best_label);
    }
    return out;
}

}  // namespace teachml
