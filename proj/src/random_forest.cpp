#include "teachml/random_forest.hpp"

#include <cmath>
#include <map>
#include <numeric>

#include "teachml/errors.hpp"

namespace teachml {

ForestModel fit_random_forest(const FeatureMatrix& x, const std::vector<int>& y,
                              const ForestParams& params, std::uint64_t master_seed) {
    if (params.n_trees < 1) throw DataError("fit_random_forest: n_trees must be >= 1");
    if (x.rows() == 0 || x.rows() != y.size()) {
        throw DataError("fit_random_forest: empty or mismatched training set");
    }

    const std::size_t n = x.rows();
    const int d = static_cast<int>(x.cols());
    int mtry = params.features_per_split;
    if (mtry <= 0) mtry = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(d))));
    mtry = std::min(mtry, d);

    ForestModel model;
    model.params = params;
    model.params.features_per_split = mtry;
    model.master_seed = master_seed;
    model.trees.reserve(static_cast<std::size_t>(params.n_trees));

    for (int t = 0; t < params.n_trees; ++t) {
        Rng rng(mix_seed(master_seed, static_cast<std::uint64_t>(t)));

        std::vector<std::size_t> sample(n);
        if (params.bootstrap) {
            for (std::size_t i = 0; i < n; ++i) {
                sample[i] = static_cast<std::size_t>(rng.bounded(n));
            }
        } else {
            std::iota(sample.begin(), sample.end(), std::size_t{0});
        }

        model.trees.push_back(
            detail::fit_tree_on_indices(x, y, sample, params.tree, mtry, &rng));
    }
    return model;
}

std::vector<int> predict_forest(const ForestModel& m, const FeatureMatrix& x) {
    if (m.trees.empty()) throw DataError("predict_forest: empty model");

    std::vector<std::vector<int>> votes;
    votes.reserve(m.trees.size());
    for (const TreeModel& tree : m.trees) votes.push_back(predict_tree(tree, x));

    std::vector<int> out;
    out.reserve(x.rows());
    for (std::size_t r = 0; r < x.rows(); ++r) {
        std::map<int, int> tally;
        for (const std::vector<int>& v : votes) tally[v[r]]++;
        int best_label = tally.begin()->first;
        int best_count = tally.begin()->second;
        for (const auto& [label, count] : tally) {
            if (count > best_count) {  // strict: lowest code wins ties
                best_count = count;
                best_label = label;
            }
        }
        out.push_back(best_label);
    }
    return out;
}

}  // namespace teachml
