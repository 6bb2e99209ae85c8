#pragma once

#include <vector>

#include "teachml/preprocessing.hpp"

namespace teachml {

// Lazy learner: stores the training data verbatim.
struct KNNModel {
    FeatureMatrix stored_x;
    std::vector<int> stored_y;
    int k = 5;
};

// Throws DataError when k < 1 or k > n.
KNNModel fit_knn(const FeatureMatrix& x, const std::vector<int>& y, int k = 5);

// Brute-force Euclidean neighbors. Distance ties prefer the lower stored row
// index; vote ties among the k neighbors go to the lowest class code.
std::vector<int> predict_knn(const KNNModel& m, const FeatureMatrix& x);

}  // namespace teachml
