#pragma once

#include <cstdint>
#include <vector>

#include "teachml/decision_tree.hpp"

namespace teachml {

struct ForestParams {
    int n_trees = 100;
    int features_per_split = 0;  // 0 means floor(sqrt(d))
    bool bootstrap = true;       // false trains every tree on the full sample
    TreeParams tree;
};

struct ForestModel {
    std::vector<TreeModel> trees;
    ForestParams params;
    std::uint64_t master_seed = 0;
};

// Trains n_trees CART trees, each on its own bootstrap sample (n draws with
// replacement) with per-node feature subsampling. Tree t uses the stream
// seeded with mix_seed(master_seed, t), so serial and parallel training
// produce identical forests.
ForestModel fit_random_forest(const FeatureMatrix& x, const std::vector<int>& y,
                              const ForestParams& params, std::uint64_t master_seed);

// Per-row majority vote over the trees; vote ties go to the lowest class code.
std::vector<int> predict_forest(const ForestModel& m, const FeatureMatrix& x);

}  // namespace teachml
