#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "teachml/errors.hpp"
#include "teachml/pipeline.hpp"

using namespace teachml;
namespace fs = std::filesystem;

namespace {

PipelineConfig fast_config(std::uint64_t seed) {
    PipelineConfig cfg;
    cfg.seed = seed;
    SynthSpec spec;
    spec.n = 400;
    spec.seed = seed;
    cfg.synth = spec;
    cfg.models.forest.n_trees = 15;
    cfg.output_dir.clear();
    return cfg;
}

PipelineConfig parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name)
        : path(fs::temp_directory_path() / ("teachml_test_" + name)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("config must name a seed and exactly one input mode") {
    CHECK_THROWS_AS(parse_string(R"({"synth": {"n": 5}})"), ConfigError);
    CHECK_THROWS_AS(parse_string(R"({"seed": 1})"), ConfigError);
    CHECK_THROWS_AS(parse_string(
                        R"({"seed": 1, "synth": {"n": 5}, "input": [{"csv": "x.csv"}]})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_string(R"({"seed": 1, "synth": {"n": 5}, "typo_key": 3})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_string(R"({"seed": 1, "synth": {"n": 5}, "averaging": "mean"})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_string("{ not json"), ConfigError);

    PipelineConfig ok = parse_string(R"({"seed": 9, "synth": {"n": 5}})");
    CHECK(ok.seed == 9);
    REQUIRE(ok.synth.has_value());
    CHECK(ok.synth->seed == 9);  // master seed drives the generator
    CHECK(ok.feature_columns.size() == 17);
    CHECK(ok.split.test_fraction == doctest::Approx(0.05));
}

TEST_CASE("canonical config and hash are stable") {
    PipelineConfig a = fast_config(3);
    PipelineConfig b = fast_config(3);
    CHECK(canonical_config(a) == canonical_config(b));
    CHECK(config_hash(a) == config_hash(b));
    b.seed = 4;
    CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("the pipeline produces four evaluated models and a winner") {
    PipelineResult result = run_pipeline(fast_config(7));
    CHECK(result.n_rows == 400);
    CHECK(result.n_train + result.n_test == 400);
    CHECK(result.n_test == 20);  // round(400 * 0.05)
    REQUIRE(result.models.size() == 4);
    CHECK(result.models[0].id == "naive_bayes");
    CHECK(result.models[3].id == "knn");
    for (const ModelEvaluation& eval : result.models) {
        CHECK(eval.cm.total() == static_cast<long>(result.n_test));
        CHECK(eval.test_predictions.size() == result.n_test);
        CHECK(eval.macro.accuracy == eval.weighted.accuracy);
    }
    bool winner_known = false;
    for (const ModelEvaluation& eval : result.models) {
        winner_known = winner_known || eval.name == result.ranking.winner;
    }
    CHECK(winner_known);
    CHECK(result.trained.size() == 4);
}

TEST_CASE("the reference split echoes 2891 train and 152 test rows") {
    PipelineConfig cfg = fast_config(42);
    cfg.synth->n = 3043;
    cfg.models.forest.n_trees = 5;  // keep this a split check, not a forest benchmark
    PipelineResult result = run_pipeline(cfg);
    CHECK(result.n_train == 2891);
    CHECK(result.n_test == 152);
}

TEST_CASE("reports and models are written once per run directory") {
    TempDir tmp("outputs");
    PipelineConfig cfg = fast_config(11);
    cfg.output_dir = tmp.path.string();
    PipelineResult result = run_pipeline(cfg);
    REQUIRE_FALSE(result.run_dir.empty());

    const fs::path dir(result.run_dir);
    for (const char* name :
         {"report.txt", "report.json", "metrics_macro.csv", "metrics_weighted.csv",
          "confusion_naive_bayes.csv", "confusion_decision_tree.csv",
          "confusion_random_forest.csv", "confusion_knn.csv", "model_naive_bayes.json",
          "model_decision_tree.json", "model_random_forest.json", "model_knn.json"}) {
        CHECK(fs::exists(dir / name));
    }

    // a rerun of the same config overwrites with byte-identical content
    const std::string report_before = slurp(dir / "report.json");
    const std::string text_before = slurp(dir / "report.txt");
    PipelineResult again = run_pipeline(cfg);
    CHECK(again.run_dir == result.run_dir);
    CHECK(slurp(dir / "report.json") == report_before);
    CHECK(slurp(dir / "report.txt") == text_before);
}

TEST_CASE("a failing stage names itself and removes partial outputs") {
    TempDir tmp("failing");
    PipelineConfig cfg = fast_config(13);
    cfg.output_dir = tmp.path.string();
    cfg.rules_path = (tmp.path / "missing_rules.txt").string();
    CHECK_THROWS_WITH_AS(run_pipeline(cfg), doctest::Contains("label"), PipelineError);
    CHECK(fs::is_empty(tmp.path));  // no run directory left behind
}

TEST_CASE("disabling scaling leaves tree predictions alone but moves knn") {
    PipelineConfig scaled = fast_config(17);
    scaled.synth->n = 1200;
    scaled.split.test_fraction = 0.25;  // enough test rows for the contrast to show
    PipelineConfig unscaled = scaled;
    unscaled.scale_columns = std::vector<std::string>{};

    PipelineResult a = run_pipeline(scaled);
    PipelineResult b = run_pipeline(unscaled);
    CHECK(a.models[1].test_predictions == b.models[1].test_predictions);  // decision tree

    bool knn_differs = a.models[3].test_predictions != b.models[3].test_predictions;
    bool nb_differs = a.models[0].test_predictions != b.models[0].test_predictions;
    CHECK((knn_differs || nb_differs));
}

TEST_CASE("text and csv writers are deterministic") {
    PipelineResult result = run_pipeline(fast_config(19));
    std::ostringstream a, b;
    write_text_report(result, a);
    write_text_report(result, b);
    CHECK(a.str() == b.str());
    CHECK(json_report(result) == json_report(result));
    CHECK(metrics_csv(result, Averaging::Macro) == metrics_csv(result, Averaging::Macro));

    const std::string csv = metrics_csv(result, Averaging::Macro);
    CHECK(csv.rfind("model,accuracy,precision,recall,f1\n", 0) == 0);
    CHECK(csv.find("naive_bayes,") != std::string::npos);
    const std::string confusion = confusion_csv(result.models[0]);
    CHECK(confusion.rfind("true\\pred", 0) == 0);
}

TEST_CASE("an all-negative screen predicts no special method through the tree") {
    // at low prevalence the all-zero answer region is well represented
    SynthSpec spec;
    spec.n = 1500;
    spec.seed = 3;
    spec.a_prevalence.fill(0.35);
    const Dataset labeled = label_dataset(generate(spec), canonical_rules());
    bool zero_row_present = false;
    for (const Record& r : labeled.rows) {
        zero_row_present = zero_row_present || r.a == AVector{};
    }
    REQUIRE(zero_row_present);

    std::vector<int> y;
    for (const Record& r : labeled.rows) y.push_back(*r.preferred_education);
    TrainedModel tm;
    tm.encoder = fit_label_encoders(labeled, categorical_columns());
    tm.feature_names = default_feature_columns();
    FeatureMatrix raw = apply_encoders(labeled, tm.encoder, tm.feature_names);
    tm.scaler = fit_scaler(raw, tm.feature_names);
    tm.model = fit_decision_tree(apply_scaler(raw, tm.scaler), y);
    tm.label_vocabulary = {0, 1, 2, 3, 4, 5, 6};

    Record probe = labeled.rows[0];
    probe.a.fill(0);
    probe.qchat_score = 0;
    probe.class_asd = "No";
    CHECK(predict_record(tm, probe, labeled.schema) == 0);
}

TEST_CASE("forest training accuracy tracks tree test accuracy on the reference run") {
    // the two ensembles both learn the rule structure; the forest's resubstitution
    // accuracy must not fall behind the tree's held-out accuracy by more than 0.02
    PipelineConfig cfg = fast_config(42);
    cfg.synth->n = 3043;
    cfg.models.forest.n_trees = 100;
    PipelineResult result = run_pipeline(cfg);

    // rebuild the train matrix exactly as the pipeline does (deterministic)
    const Dataset labeled = label_dataset(generate(*cfg.synth), canonical_rules());
    std::vector<int> y;
    for (const Record& r : labeled.rows) y.push_back(*r.preferred_education);
    const EncoderMap enc = fit_label_encoders(labeled, categorical_columns());
    const FeatureMatrix x = apply_encoders(labeled, enc, cfg.feature_columns);
    SplitSpec split_spec = cfg.split;
    split_spec.seed = cfg.seed;
    const Split split = train_test_split(x, y, split_spec);
    const ScalerParams scaler = fit_scaler(split.train_x, cfg.feature_columns);
    const FeatureMatrix train_x = apply_scaler(split.train_x, scaler);

    const std::vector<int> forest_train_pred =
        predict(result.trained[2], train_x);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < split.train_y.size(); ++i) {
        hits += forest_train_pred[i] == split.train_y[i];
    }
    const double forest_train_acc =
        static_cast<double>(hits) / static_cast<double>(split.train_y.size());
    const double tree_test_acc = result.models[1].macro.accuracy;
    CHECK(forest_train_acc >= tree_test_acc - 0.02);
}
