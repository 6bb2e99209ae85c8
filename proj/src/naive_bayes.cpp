#include "teachml/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "teachml/errors.hpp"

namespace teachml {

NBModel fit_gaussian_nb(const FeatureMatrix& x, const std::vector<int>& y,
                        double epsilon_factor) {
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    if (n == 0 || y.size() != n) throw DataError("fit_gaussian_nb: empty or mismatched input");
    if (epsilon_factor <= 0) throw DataError("fit_gaussian_nb: epsilon_factor must be > 0");

    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < n; ++i) by_class[y[i]].push_back(i);

    // Smoothing scale from the pooled data: the largest per-feature variance.
    double max_var = 0.0;
    for (std::size_t c = 0; c < d; ++c) {
        double sum = 0;
        for (std::size_t r = 0; r < n; ++r) sum += x.at(r, c);
        const double mean = sum / static_cast<double>(n);
        double ss = 0;
        for (std::size_t r = 0; r < n; ++r) {
            const double diff = x.at(r, c) - mean;
            ss += diff * diff;
        }
        max_var = std::max(max_var, ss / static_cast<double>(n));
    }
    double epsilon = epsilon_factor * max_var;
    if (epsilon <= 0.0) epsilon = epsilon_factor;  // all-constant data

    NBModel model;
    model.epsilon = epsilon;
    for (const auto& [cls, members] : by_class) {
        const double nc = static_cast<double>(members.size());
        model.classes.push_back(cls);
        model.priors.push_back(nc / static_cast<double>(n));

        std::vector<double> mean(d, 0.0), var(d, 0.0);
        for (std::size_t c = 0; c < d; ++c) {
            double sum = 0;
            for (std::size_t r : members) sum += x.at(r, c);
            mean[c] = sum / nc;
            double ss = 0;
            for (std::size_t r : members) {
                const double diff = x.at(r, c) - mean[c];
                ss += diff * diff;
            }
            var[c] = ss / nc + epsilon;
        }
        model.means.push_back(std::move(mean));
        model.variances.push_back(std::move(var));
    }
    return model;
}

std::vector<int> predict_nb(const NBModel& m, const FeatureMatrix& x) {
    const std::size_t d = x.cols();
    if (m.means.empty() || m.means.front().size() != d) {
        throw DataError("predict_nb: feature count mismatch");
    }

    std::vector<int> out;
    out.reserve(x.rows());
    const double log_2pi = std::log(2.0 * std::numbers::pi);

    for (std::size_t r = 0; r < x.rows(); ++r) {
        double best = -std::numeric_limits<double>::infinity();
        int best_class = m.classes.front();
        for (std::size_t k = 0; k < m.classes.size(); ++k) {
            double logp = std::log(m.priors[k]);
            for (std::size_t c = 0; c < d; ++c) {
                const double var = m.variances[k][c];
                const double diff = x.at(r, c) - m.means[k][c];
                logp += -0.5 * (log_2pi + std::log(var) + diff * diff / var);
            }
            // strict > keeps the lowest class code on ties (classes ascending)
            if (logp > best) {
                best = logp;
                best_class = m.classes[k];
            }
        }
        out.push_back(best_class);
    }
    return out;
}

}  // namespace teachml
