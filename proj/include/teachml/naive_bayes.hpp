#pragma once

#include <vector>

#include "teachml/preprocessing.hpp"

namespace teachml {

// Gaussian naive Bayes over all (encoded) features.
struct NBModel {
    std::vector<int> classes;            // ascending
    std::vector<double> priors;          // per class, sums to 1
    std::vector<std::vector<double>> means;      // [class][feature]
    std::vector<std::vector<double>> variances;  // [class][feature], >= epsilon
    double epsilon = 0.0;
};

// Per-class Gaussian mean/variance per feature with class-frequency priors.
// The variance floor is epsilon_factor times the largest per-feature variance
// over the whole training set, added to every stored variance.
NBModel fit_gaussian_nb(const FeatureMatrix& x, const std::vector<int>& y,
                        double epsilon_factor = 1e-9);

// argmax over classes of log prior + sum of log Gaussian densities.
// Posterior ties resolve to the lowest class code.
std::vector<int> predict_nb(const NBModel& m, const FeatureMatrix& x);

}  // namespace teachml
