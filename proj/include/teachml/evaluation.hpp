#pragma once

#include <string>
#include <vector>

namespace teachml {

// c x c count table; rows are true classes, columns predicted classes,
// both in the order of `classes`.
struct ConfusionMatrix {
    std::vector<std::vector<long>> counts;
    std::vector<int> classes;

    long total() const;
    long trace() const;
};

ConfusionMatrix confusion_matrix(const std::vector<int>& y_true,
                                 const std::vector<int>& y_pred,
                                 const std::vector<int>& classes);

enum class Averaging { Macro, Weighted };

std::string to_string(Averaging a);

struct PerClassMetrics {
    std::vector<double> precision;
    std::vector<double> recall;
    std::vector<double> f1;
    std::vector<long> support;
    std::vector<std::string> warnings;  // zero-denominator notes
};

// Per-class precision/recall/F1; any zero denominator yields 0 with a warning.
PerClassMetrics per_class_metrics(const ConfusionMatrix& cm);

struct MetricSet {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    Averaging averaging = Averaging::Macro;
    std::vector<std::string> warnings;
};

// accuracy = trace/total; precision/recall/F1 averaged over all classes in
// the matrix (macro: unweighted, weighted: by true-class support).
MetricSet metrics(const ConfusionMatrix& cm, Averaging averaging = Averaging::Macro);

struct RankEntry {
    std::string name;
    MetricSet metric_set;
};

struct Ranking {
    std::vector<RankEntry> ordered;  // best first
    std::string winner;
};

// Accuracy descending; accuracies within 1e-6 form a tie group ordered by
// F1 descending, then precision descending, then name ascending.
Ranking rank_models(const std::vector<RankEntry>& entries);

}  // namespace teachml
