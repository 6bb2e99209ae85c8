#pragma once

#include <optional>
#include <vector>

#include "teachml/preprocessing.hpp"
#include "teachml/rng.hpp"

namespace teachml {

// Split node when feature >= 0, leaf otherwise.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int label = -1;

    bool operator==(const TreeNode&) const = default;
};

struct TreeParams {
    int min_samples_split = 2;
    std::optional<int> max_depth;  // unlimited when empty
};

struct TreeModel {
    std::vector<TreeNode> nodes;  // preorder, root at 0
    TreeParams params;
    int n_features = 0;
};

// Gini impurity 1 - sum(p_c^2) from per-class counts. The split score is
// (n_left/n)*gini(left) + (n_right/n)*gini(right), summed in ascending class
// order, so equal partitions score bit-identically everywhere.
double gini_impurity(const std::vector<long>& counts);

// CART with midpoint thresholds between consecutive distinct sorted values.
// Ties between splits go to the lowest feature index, then the smallest
// threshold; leaf labels are the majority class, ties to the lowest code.
TreeModel fit_decision_tree(const FeatureMatrix& x, const std::vector<int>& y,
                            const TreeParams& params = {});

// Routes a row left iff feature value <= threshold.
std::vector<int> predict_tree(const TreeModel& m, const FeatureMatrix& x);

namespace detail {

// Tree induction over a row subset with per-node feature subsampling
// (mtry candidate features drawn from rng at every node). Used by the forest;
// rng == nullptr or mtry >= d evaluates all features.
TreeModel fit_tree_on_indices(const FeatureMatrix& x, const std::vector<int>& y,
                              const std::vector<std::size_t>& indices,
                              const TreeParams& params, int mtry, Rng* rng);

}  // namespace detail

}  // namespace teachml
