#include "teachml/decision_tree.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "teachml/errors.hpp"

namespace teachml {

double gini_impurity(const std::vector<long>& counts) {
    long n = 0;
    for (long c : counts) n += c;
    if (n == 0) return 0.0;
    double sum_sq = 0.0;
    for (long c : counts) {
        const double p = static_cast<double>(c) / static_cast<double>(n);
        sum_sq += p * p;
    }
    return 1.0 - sum_sq;
}

namespace {

struct BestSplit {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double score = 0.0;
};

class TreeBuilder {
public:
    TreeBuilder(const FeatureMatrix& x, const std::vector<int>& y,
                const TreeParams& params, int mtry, Rng* rng)
        : x_(x), y_(y), params_(params), mtry_(mtry), rng_(rng) {
        std::map<int, int> seen;
        for (int label : y) seen.emplace(label, 0);
        for (const auto& [label, unused] : seen) classes_.push_back(label);
        for (std::size_t i = 0; i < classes_.size(); ++i) class_index_[classes_[i]] = i;
    }

    TreeModel build(const std::vector<std::size_t>& indices) {
        TreeModel model;
        model.params = params_;
        model.n_features = static_cast<int>(x_.cols());
        nodes_ = &model.nodes;
        std::vector<std::size_t> rows = indices;
        build_node(rows, 0);
        return model;
    }

private:
    std::vector<long> class_counts(const std::vector<std::size_t>& rows) const {
        std::vector<long> counts(classes_.size(), 0);
        for (std::size_t r : rows) counts[class_index_.at(y_[r])]++;
        return counts;
    }

    int majority_label(const std::vector<long>& counts) const {
        std::size_t best = 0;
        for (std::size_t i = 1; i < counts.size(); ++i) {
            if (counts[i] > counts[best]) best = i;  // strict: lowest code on ties
        }
        return classes_[best];
    }

    std::vector<int> candidate_features() {
        const int d = static_cast<int>(x_.cols());
        std::vector<int> features(static_cast<std::size_t>(d));
        std::iota(features.begin(), features.end(), 0);
        if (rng_ == nullptr || mtry_ >= d) return features;
        // Partial Fisher-Yates, then ascending so tie-breaks stay by index.
        for (int i = 0; i < mtry_; ++i) {
            const auto j = static_cast<std::size_t>(i) +
                           rng_->bounded(static_cast<std::uint64_t>(d - i));
            std::swap(features[static_cast<std::size_t>(i)], features[j]);
        }
        features.resize(static_cast<std::size_t>(mtry_));
        std::sort(features.begin(), features.end());
        return features;
    }

    BestSplit find_best_split(const std::vector<std::size_t>& rows,
                              const std::vector<long>& node_counts,
                              const std::vector<int>& features) const {
        const long n = static_cast<long>(rows.size());
        BestSplit best;

        std::vector<std::pair<double, std::size_t>> ordered(rows.size());
        std::vector<long> left(classes_.size());
        std::vector<long> right(classes_.size());

        for (int f : features) {
            for (std::size_t i = 0; i < rows.size(); ++i) {
                ordered[i] = {x_.at(rows[i], static_cast<std::size_t>(f)),
                              class_index_.at(y_[rows[i]])};
            }
            std::sort(ordered.begin(), ordered.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });

            std::fill(left.begin(), left.end(), 0L);
            right = node_counts;
            long n_left = 0;
            for (std::size_t i = 0; i + 1 < ordered.size(); ++i) {
                left[ordered[i].second]++;
                right[ordered[i].second]--;
                ++n_left;
                if (ordered[i].first == ordered[i + 1].first) continue;
                const double threshold = (ordered[i].first + ordered[i + 1].first) / 2.0;
                const double score =
                    (static_cast<double>(n_left) / static_cast<double>(n)) * gini_impurity(left) +
                    (static_cast<double>(n - n_left) / static_cast<double>(n)) *
                        gini_impurity(right);
                if (!best.found || score < best.score) {
                    best = {true, f, threshold, score};
                }
            }
        }
        return best;
    }

    int make_leaf(const std::vector<long>& counts) {
        const int idx = static_cast<int>(nodes_->size());
        TreeNode node;
        node.label = majority_label(counts);
        nodes_->push_back(node);
        return idx;
    }

    int build_node(std::vector<std::size_t>& rows, int depth) {
        const std::vector<long> counts = class_counts(rows);
        const double node_gini = gini_impurity(counts);

        const bool pure = node_gini == 0.0;
        const bool too_small = static_cast<int>(rows.size()) < params_.min_samples_split;
        const bool depth_capped = params_.max_depth && depth >= *params_.max_depth;
        if (pure || too_small || depth_capped) return make_leaf(counts);

        const BestSplit best = find_best_split(rows, counts, candidate_features());
        if (!best.found || best.score >= node_gini) return make_leaf(counts);

        std::vector<std::size_t> left_rows, right_rows;
        left_rows.reserve(rows.size());
        for (std::size_t r : rows) {
            if (x_.at(r, static_cast<std::size_t>(best.feature)) <= best.threshold) {
                left_rows.push_back(r);
            } else {
                right_rows.push_back(r);
            }
        }

        const int idx = static_cast<int>(nodes_->size());
        TreeNode node;
        node.feature = best.feature;
        node.threshold = best.threshold;
        nodes_->push_back(node);
        rows.clear();
        rows.shrink_to_fit();

        const int left_idx = build_node(left_rows, depth + 1);
        const int right_idx = build_node(right_rows, depth + 1);
        (*nodes_)[static_cast<std::size_t>(idx)].left = left_idx;
        (*nodes_)[static_cast<std::size_t>(idx)].right = right_idx;
        return idx;
    }

    const FeatureMatrix& x_;
    const std::vector<int>& y_;
    TreeParams params_;
    int mtry_;
    Rng* rng_;
    std::vector<int> classes_;
    std::map<int, std::size_t> class_index_;
    std::vector<TreeNode>* nodes_ = nullptr;
};

}  // namespace

namespace detail {

TreeModel fit_tree_on_indices(const FeatureMatrix& x, const std::vector<int>& y,
                              const std::vector<std::size_t>& indices,
                              const TreeParams& params, int mtry, Rng* rng) {
    if (indices.empty() || x.rows() != y.size()) {
        throw DataError("fit_decision_tree: empty or mismatched training set");
    }
    TreeBuilder builder(x, y, params, mtry, rng);
    return builder.build(indices);
}

}  // namespace detail

TreeModel fit_decision_tree(const FeatureMatrix& x, const std::vector<int>& y,
                            const TreeParams& params) {
    std::vector<std::size_t> all(x.rows());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return detail::fit_tree_on_indices(x, y, all, params, static_cast<int>(x.cols()), nullptr);
}

std::vector<int> predict_tree(const TreeModel& m, const FeatureMatrix& x) {
    if (m.nodes.empty()) throw DataError("predict_tree: empty model");
    if (static_cast<std::size_t>(m.n_features) != x.cols()) {
        throw DataError("predict_tree: feature count mismatch");
    }
    std::vector<int> out;
    out.reserve(x.rows());
    for (std::size_t r = 0; r < x.rows(); ++r) {
        std::size_t node = 0;
        while (m.nodes[node].feature >= 0) {
            const TreeNode& nd = m.nodes[node];
            node = static_cast<std::size_t>(
                x.at(r, static_cast<std::size_t>(nd.feature)) <= nd.threshold ? nd.left
                                                                              : nd.right);
        }
        out.push_back(m.nodes[node].label);
    }
    return out;
}

}  // namespace teachml
