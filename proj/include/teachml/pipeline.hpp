#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "teachml/data_model.hpp"
#include "teachml/evaluation.hpp"
#include "teachml/preprocessing.hpp"
#include "teachml/rule_labeling.hpp"
#include "teachml/synthetic.hpp"
#include "teachml/trained_model.hpp"

namespace teachml {

struct SourceSpec {
    std::string csv_path;
    std::string alias_path;  // empty = no alias table
    std::optional<AgeUnit> age_unit;  // overrides any __age_unit alias entry
};

struct ModelConfigs {
    double nb_epsilon_factor = 1e-9;
    TreeParams tree;
    ForestParams forest;
    int knn_k = 5;
};

// Mirror of the declarative config file; exactly one of `sources` / `synth`
// must be present and the seed is always explicit.
struct PipelineConfig {
    std::uint64_t seed = 0;
    std::vector<SourceSpec> sources;
    std::optional<SynthSpec> synth;  // seed field is overwritten by `seed`
    std::vector<std::string> feature_columns = default_feature_columns();
    std::optional<std::vector<std::string>> scale_columns;  // absent = all features
    std::string rules_path;                             // empty = built-in rules
    SplitSpec split;
    ModelConfigs models;
    Averaging averaging = Averaging::Macro;
    std::string output_dir = "runs";  // empty = do not write anything
    std::vector<std::string> report_formats = {"text", "json", "csv"};
};

// Parses and validates the JSON config document.
// Throws ConfigError on unknown keys, missing seed, or zero/two input modes.
PipelineConfig parse_config(std::istream& in);
PipelineConfig parse_config_file(const std::string& path);

// Canonical serialized form (sorted keys, defaults filled in) and its
// FNV-1a 64 hash; both are stable across runs for the same config.
std::string canonical_config(const PipelineConfig& cfg);
std::string config_hash(const PipelineConfig& cfg);

struct ModelEvaluation {
    std::string id;    // naive_bayes / decision_tree / random_forest / knn
    std::string name;  // display name
    ConfusionMatrix cm;
    MetricSet macro;
    MetricSet weighted;
    std::vector<int> test_predictions;
};

struct PipelineResult {
    std::uint64_t seed = 0;
    std::string config_echo;
    std::string hash;
    std::string run_dir;  // empty when output was disabled
    std::vector<std::string> provenance;
    ValidationReport validation;
    SummaryStats summary;
    std::size_t n_rows = 0;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    std::vector<std::string> feature_names;
    Averaging averaging = Averaging::Macro;
    std::vector<ModelEvaluation> models;  // fixed order: nb, tree, forest, knn
    Ranking ranking;
    std::vector<TrainedModel> trained;   // same order as `models`
};

// Full pipeline: load/merge or generate, validate, label, encode, split,
// scale (fit on train), fit the four models, evaluate, rank, write reports
// and model files. Deterministic: same config + seed means byte-identical
// report files. On error the partially written run directory is removed and
// a PipelineError carrying the stage name is thrown.
PipelineResult run_pipeline(const PipelineConfig& cfg);

void write_text_report(const PipelineResult& result, std::ostream& out);
std::string json_report(const PipelineResult& result);
std::string metrics_csv(const PipelineResult& result, Averaging averaging);
std::string confusion_csv(const ModelEvaluation& eval);

}  // namespace teachml
