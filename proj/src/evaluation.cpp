#include "teachml/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "teachml/errors.hpp"

namespace teachml {

long ConfusionMatrix::total() const {
    long t = 0;
    for (const auto& row : counts) t = std::accumulate(row.begin(), row.end(), t);
    return t;
}

long ConfusionMatrix::trace() const {
    long t = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) t += counts[i][i];
    return t;
}

ConfusionMatrix confusion_matrix(const std::vector<int>& y_true,
                                 const std::vector<int>& y_pred,
                                 const std::vector<int>& classes) {
    if (y_true.size() != y_pred.size()) {
        throw DataError("confusion_matrix: y_true/y_pred length mismatch");
    }
    std::map<int, std::size_t> index;
    for (std::size_t i = 0; i < classes.size(); ++i) index[classes[i]] = i;

    ConfusionMatrix cm;
    cm.classes = classes;
    cm.counts.assign(classes.size(), std::vector<long>(classes.size(), 0));
    for (std::size_t t = 0; t < y_true.size(); ++t) {
        auto it = index.find(y_true[t]);
        auto jt = index.find(y_pred[t]);
        if (it == index.end()) {
            throw DataError("confusion_matrix: unknown true label " + std::to_string(y_true[t]));
        }
        if (jt == index.end()) {
            throw DataError("confusion_matrix: unknown predicted label " +
                            std::to_string(y_pred[t]));
        }
        cm.counts[it->second][jt->second]++;
    }
    return cm;
}

std::string to_string(Averaging a) {
    return a == Averaging::Macro ? "macro" : "weighted";
}

PerClassMetrics per_class_metrics(const ConfusionMatrix& cm) {
    const std::size_t c = cm.classes.size();
    PerClassMetrics pc;
    pc.precision.assign(c, 0.0);
    pc.recall.assign(c, 0.0);
    pc.f1.assign(c, 0.0);
    pc.support.assign(c, 0);

    for (std::size_t i = 0; i < c; ++i) {
        const long tp = cm.counts[i][i];
        long fp = 0, fn = 0;
        for (std::size_t r = 0; r < c; ++r) {
            if (r == i) continue;
            fp += cm.counts[r][i];
            fn += cm.counts[i][r];
        }
        pc.support[i] = tp + fn;

        const std::string cls = std::to_string(cm.classes[i]);
        if (tp + fp == 0) {
            pc.warnings.push_back("class " + cls + ": precision undefined (no predictions), using 0");
        } else {
            pc.precision[i] = static_cast<double>(tp) / static_cast<double>(tp + fp);
        }
        if (tp + fn == 0) {
            pc.warnings.push_back("class " + cls + ": recall undefined (no true samples), using 0");
        } else {
            pc.recall[i] = static_cast<double>(tp) / static_cast<double>(tp + fn);
        }
        if (pc.precision[i] + pc.recall[i] == 0.0) {
            pc.warnings.push_back("class " + cls + ": F1 undefined, using 0");
        } else {
            pc.f1[i] = 2.0 * pc.precision[i] * pc.recall[i] / (pc.precision[i] + pc.recall[i]);
        }
    }
    return pc;
}

MetricSet metrics(const ConfusionMatrix& cm, Averaging averaging) {
    const long total = cm.total();
    if (cm.classes.empty() || total == 0) throw DataError("metrics: empty confusion matrix");

    const PerClassMetrics pc = per_class_metrics(cm);
    MetricSet ms;
    ms.averaging = averaging;
    ms.warnings = pc.warnings;
    ms.accuracy = static_cast<double>(cm.trace()) / static_cast<double>(total);

    const std::size_t c = cm.classes.size();
    if (averaging == Averaging::Macro) {
        for (std::size_t i = 0; i < c; ++i) {
            ms.precision += pc.precision[i];
            ms.recall += pc.recall[i];
            ms.f1 += pc.f1[i];
        }
        ms.precision /= static_cast<double>(c);
        ms.recall /= static_cast<double>(c);
        ms.f1 /= static_cast<double>(c);
    } else {
        for (std::size_t i = 0; i < c; ++i) {
            const double w = static_cast<double>(pc.support[i]) / static_cast<double>(total);
            ms.precision += w * pc.precision[i];
            ms.recall += w * pc.recall[i];
            ms.f1 += w * pc.f1[i];
        }
    }
    return ms;
}

Ranking rank_models(const std::vector<RankEntry>& entries) {
    if (entries.empty()) throw DataError("rank_models: no entries");

    std::vector<std::size_t> order(entries.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return entries[a].metric_set.accuracy > entries[b].metric_set.accuracy;
    });

    // Group accuracies within 1e-6 of their neighbor, then order each group
    // by the tie-break chain. Grouping first keeps the comparison transitive.
    constexpr double kAccuracyTie = 1e-6;
    Ranking ranking;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i + 1;
        while (j < order.size() &&
               entries[order[j - 1]].metric_set.accuracy -
                       entries[order[j]].metric_set.accuracy <=
                   kAccuracyTie) {
            ++j;
        }
        std::sort(order.begin() + static_cast<long>(i), order.begin() + static_cast<long>(j),
                  [&](std::size_t a, std::size_t b) {
                      const MetricSet& ma = entries[a].metric_set;
                      const MetricSet& mb = entries[b].metric_set;
                      if (ma.f1 != mb.f1) return ma.f1 > mb.f1;
                      if (ma.precision != mb.precision) return ma.precision > mb.precision;
                      return entries[a].name < entries[b].name;
                  });
        i = j;
    }
    for (std::size_t idx : order) ranking.ordered.push_back(entries[idx]);
    ranking.winner = ranking.ordered.front().name;
    return ranking;
}

}  // namespace teachml
