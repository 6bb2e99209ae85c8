#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "teachml/errors.hpp"
#include "teachml/pipeline.hpp"

using namespace teachml;
using nlohmann::json;

namespace {

// "data.csv" or "data.csv:alias.txt"
SourceSpec parse_source(const std::string& spec) {
    SourceSpec src;
    const std::size_t colon = spec.find(':');
    if (colon == std::string::npos) {
        src.csv_path = spec;
    } else {
        src.csv_path = spec.substr(0, colon);
        src.alias_path = spec.substr(colon + 1);
    }
    return src;
}

LoadResult load_source(const SourceSpec& src) {
    AliasMap aliases;
    if (!src.alias_path.empty()) aliases = load_alias_file(src.alias_path);
    AgeUnit unit = AgeUnit::Months;
    if (auto it = aliases.find("__age_unit"); it != aliases.end()) {
        if (it->second == "years") {
            unit = AgeUnit::Years;
        } else if (it->second != "months") {
            throw DataError("alias file: __age_unit must be 'months' or 'years'");
        }
        aliases.erase(it);
    }
    if (src.age_unit) unit = *src.age_unit;
    return load_dataset_file(src.csv_path, canonical_schema(unit), aliases);
}

RuleSet resolve_rules(const std::string& rules) {
    if (rules.empty() || rules == "builtin") return canonical_rules();
    return load_rules_file(rules);
}

void write_dataset(const Dataset& ds, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        write_csv(ds, std::cout);
    } else {
        write_csv_file(ds, out_path);
    }
}

void print_validation(const ValidationReport& report, const std::string& format) {
    if (format == "json") {
        json doc = {{"rows_accepted", report.rows_accepted},
                    {"rows_rejected", report.rows_rejected},
                    {"warnings", report.warnings}};
        json errors = json::array();
        for (const RowError& e : report.row_errors) {
            errors.push_back({{"row", e.row}, {"column", e.column}, {"message", e.message}});
        }
        doc["row_errors"] = std::move(errors);
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::cout << "rows accepted: " << report.rows_accepted << "\n";
    std::cout << "rows rejected: " << report.rows_rejected << "\n";
    for (const RowError& e : report.row_errors) {
        std::cout << "error: row " << e.row << " " << e.column << ": " << e.message << "\n";
    }
    for (const std::string& w : report.warnings) std::cout << "warning: " << w << "\n";
}

struct TrainOptions {
    std::string data;
    std::string alias;
    std::string model_type;
    std::string rules = "builtin";
    std::string out;
    std::uint64_t seed = 0;
    double epsilon_factor = 1e-9;
    int min_samples_split = 2;
    int max_depth = 0;  // 0 = unlimited
    int n_trees = 100;
    int features_per_split = 0;
    int knn_k = 5;
    bool no_scale = false;
};

// Shared by `train` and `evaluate`: label when needed, encode, scale.
struct PreparedData {
    Dataset labeled;
    std::vector<int> y;
};

PreparedData prepare_labeled(const SourceSpec& src, const std::string& rules) {
    LoadResult loaded = load_source(src);
    PreparedData prep;
    if (loaded.dataset.labeled()) {
        prep.labeled = std::move(loaded.dataset);
    } else {
        prep.labeled = label_dataset(loaded.dataset, resolve_rules(rules));
    }
    for (const Record& r : prep.labeled.rows) prep.y.push_back(*r.preferred_education);
    return prep;
}

int cmd_train(const TrainOptions& opt) {
    SourceSpec src = parse_source(opt.data);
    if (!opt.alias.empty()) src.alias_path = opt.alias;
    PreparedData prep = prepare_labeled(src, opt.rules);
    const std::vector<std::string>& features = default_feature_columns();

    std::vector<std::string> cats;
    for (const std::string& c : categorical_columns()) {
        if (std::find(features.begin(), features.end(), c) != features.end()) cats.push_back(c);
    }
    const EncoderMap encoder = fit_label_encoders(prep.labeled, cats);
    const FeatureMatrix raw = apply_encoders(prep.labeled, encoder, features);
    const ScalerParams scaler =
        fit_scaler(raw, opt.no_scale ? std::vector<std::string>{} : features);
    const FeatureMatrix x = apply_scaler(raw, scaler);

    TrainedModel tm;
    tm.encoder = encoder;
    tm.scaler = scaler;
    tm.feature_names = x.feature_names();
    tm.seed = opt.seed;
    {
        std::set<int> distinct(prep.y.begin(), prep.y.end());
        tm.label_vocabulary.assign(distinct.begin(), distinct.end());
    }

    TreeParams tree_params;
    tree_params.min_samples_split = opt.min_samples_split;
    if (opt.max_depth > 0) tree_params.max_depth = opt.max_depth;

    if (opt.model_type == "naive_bayes") {
        tm.model = fit_gaussian_nb(x, prep.y, opt.epsilon_factor);
    } else if (opt.model_type == "decision_tree") {
        tm.model = fit_decision_tree(x, prep.y, tree_params);
    } else if (opt.model_type == "random_forest") {
        ForestParams fp;
        fp.n_trees = opt.n_trees;
        fp.features_per_split = opt.features_per_split;
        fp.tree = tree_params;
        tm.model = fit_random_forest(x, prep.y, fp, opt.seed);
    } else if (opt.model_type == "knn") {
        tm.model = fit_knn(x, prep.y, opt.knn_k);
    } else {
        throw ConfigError("unknown model type: " + opt.model_type);
    }

    save_model_file(tm, opt.out);
    std::cout << "wrote " << opt.out << " (" << model_type_name(tm) << ", "
              << prep.labeled.rows.size() << " rows)\n";
    return 0;
}

int cmd_evaluate(const std::string& model_path, const std::string& data,
                 const std::string& alias, const std::string& rules,
                 const std::string& averaging, const std::string& format) {
    const TrainedModel tm = load_model_file(model_path);
    SourceSpec src = parse_source(data);
    if (!alias.empty()) src.alias_path = alias;
    PreparedData prep = prepare_labeled(src, rules);

    const FeatureMatrix x = features_for(tm, prep.labeled);
    const std::vector<int> pred = predict(tm, x);

    std::vector<int> classes = tm.label_vocabulary;
    for (int label : prep.y) {
        if (std::find(classes.begin(), classes.end(), label) == classes.end()) {
            classes.push_back(label);
        }
    }
    std::sort(classes.begin(), classes.end());

    const ConfusionMatrix cm = confusion_matrix(prep.y, pred, classes);
    const Averaging avg = averaging == "weighted" ? Averaging::Weighted : Averaging::Macro;
    const MetricSet ms = metrics(cm, avg);

    if (format == "json") {
        json doc = {{"model", model_type_name(tm)},
                    {"rows", prep.y.size()},
                    {"averaging", to_string(avg)},
                    {"accuracy", ms.accuracy},
                    {"precision", ms.precision},
                    {"recall", ms.recall},
                    {"f1", ms.f1},
                    {"confusion", {{"classes", cm.classes}, {"counts", cm.counts}}},
                    {"warnings", ms.warnings}};
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "model:     " << model_type_name(tm) << "\n";
        std::cout << "rows:      " << prep.y.size() << "\n";
        std::cout << "averaging: " << to_string(avg) << "\n";
        char buf[64];
        std::snprintf(buf, sizeof(buf), "accuracy %.4f  precision %.4f  recall %.4f  f1 %.4f",
                      ms.accuracy, ms.precision, ms.recall, ms.f1);
        std::cout << buf << "\n";
        for (const std::string& w : ms.warnings) std::cout << "warning: " << w << "\n";
    }
    return 0;
}

int cmd_predict(const std::string& model_path, const std::string& data,
                const std::string& alias, const std::string& format) {
    const TrainedModel tm = load_model_file(model_path);
    SourceSpec src = parse_source(data);
    if (!alias.empty()) src.alias_path = alias;
    LoadResult loaded = load_source(src);

    bool any_failed = loaded.report.rows_rejected > 0;
    for (const RowError& e : loaded.report.row_errors) {
        std::cerr << "error: row " << e.row << " " << e.column << ": " << e.message << "\n";
    }

    json out_rows = json::array();
    for (const Record& r : loaded.dataset.rows) {
        try {
            const int code = predict_record(tm, r, loaded.dataset.schema);
            if (format == "json") {
                out_rows.push_back({{"case_no", r.case_no},
                                    {"code", code},
                                    {"method", std::string(method_name(code))}});
            } else {
                std::cout << r.case_no << "," << code << "," << method_name(code) << "\n";
            }
        } catch (const DataError& e) {
            std::cerr << "error: case " << r.case_no << ": " << e.what() << "\n";
            any_failed = true;
        }
    }
    if (format == "json") std::cout << out_rows.dump(2) << "\n";
    return any_failed ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"screening-data pipeline: rule-derived teaching-method labels and four classifiers"};
    app.require_subcommand(1);

    // --- synth ---
    auto* synth = app.add_subcommand("synth", "generate a deterministic synthetic dataset");
    std::size_t synth_n = 0;
    std::uint64_t synth_seed = 0;
    std::string synth_out;
    synth->add_option("--n", synth_n, "row count")->required();
    synth->add_option("--seed", synth_seed, "generator seed")->required();
    synth->add_option("--out,-o", synth_out, "output CSV (default stdout)");

    // --- merge ---
    auto* merge = app.add_subcommand("merge", "merge datasets into one canonical CSV");
    std::vector<std::string> merge_inputs;
    std::string merge_out;
    merge->add_option("--input,-i", merge_inputs, "source CSV, optionally csv:alias")
        ->required()
        ->expected(-1);
    merge->add_option("--out,-o", merge_out, "output CSV (default stdout)");

    // --- validate ---
    auto* validate_cmd = app.add_subcommand("validate", "load a CSV and report problems");
    std::string val_input, val_alias, val_format = "text";
    validate_cmd->add_option("--input,-i", val_input, "CSV path")->required();
    validate_cmd->add_option("--alias", val_alias, "alias table");
    validate_cmd->add_option("--format", val_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    // --- label ---
    auto* label_cmd = app.add_subcommand("label", "add the Preferred_Education column");
    std::string lab_input, lab_alias, lab_rules = "builtin", lab_out;
    label_cmd->add_option("--input,-i", lab_input, "CSV path")->required();
    label_cmd->add_option("--alias", lab_alias, "alias table");
    label_cmd->add_option("--rules", lab_rules, "'builtin' or a rules file");
    label_cmd->add_option("--out,-o", lab_out, "output CSV (default stdout)");

    // --- train ---
    auto* train = app.add_subcommand("train", "fit one model on a whole labeled CSV");
    TrainOptions topt;
    train->add_option("--data", topt.data, "training CSV")->required();
    train->add_option("--alias", topt.alias, "alias table");
    train
        ->add_option("--model", topt.model_type,
                     "naive_bayes, decision_tree, random_forest or knn")
        ->required()
        ->check(CLI::IsMember({"naive_bayes", "decision_tree", "random_forest", "knn"}));
    train->add_option("--seed", topt.seed, "training seed")->required();
    train->add_option("--out,-o", topt.out, "model file to write")->required();
    train->add_option("--rules", topt.rules, "'builtin' or a rules file");
    train->add_option("--epsilon-factor", topt.epsilon_factor, "NB variance smoothing factor");
    train->add_option("--min-samples-split", topt.min_samples_split, "tree split threshold");
    train->add_option("--max-depth", topt.max_depth, "tree depth cap (0 = unlimited)");
    train->add_option("--n-trees", topt.n_trees, "forest size");
    train->add_option("--features-per-split", topt.features_per_split,
                      "forest mtry (0 = floor(sqrt(d)))");
    train->add_option("--knn-k", topt.knn_k, "neighbor count");
    train->add_flag("--no-scale", topt.no_scale, "skip feature scaling");

    // --- evaluate ---
    auto* evaluate = app.add_subcommand("evaluate", "score a saved model against a labeled CSV");
    std::string ev_model, ev_data, ev_alias, ev_rules = "builtin";
    std::string ev_averaging = "macro", ev_format = "text";
    evaluate->add_option("--model", ev_model, "model file")->required();
    evaluate->add_option("--data", ev_data, "evaluation CSV")->required();
    evaluate->add_option("--alias", ev_alias, "alias table");
    evaluate->add_option("--rules", ev_rules, "'builtin' or a rules file");
    evaluate->add_option("--averaging", ev_averaging, "macro or weighted")
        ->check(CLI::IsMember({"macro", "weighted"}));
    evaluate->add_option("--format", ev_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    // --- predict ---
    auto* predict_cmd = app.add_subcommand("predict", "predict method labels for records");
    std::string pr_model, pr_data, pr_alias, pr_format = "text";
    predict_cmd->add_option("--model", pr_model, "model file")->required();
    predict_cmd->add_option("--data", pr_data, "records CSV")->required();
    predict_cmd->add_option("--alias", pr_alias, "alias table");
    predict_cmd->add_option("--format", pr_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    // --- run ---
    auto* run = app.add_subcommand("run", "execute the full pipeline from a config file");
    std::string run_config;
    std::optional<std::uint64_t> run_seed;
    std::optional<std::string> run_output_dir;
    std::optional<double> run_test_fraction;
    std::optional<std::string> run_averaging;
    std::vector<std::string> run_formats;
    bool run_stratified = false;
    bool run_quiet = false;
    run->add_option("--config,-c", run_config, "pipeline config JSON")->required();
    run->add_option("--seed", run_seed, "override the config seed");
    run->add_option("--output-dir", run_output_dir, "override the output directory");
    run->add_option("--test-fraction", run_test_fraction, "override the test fraction");
    run->add_option("--averaging", run_averaging, "override averaging (macro/weighted)");
    run->add_option("--format", run_formats, "restrict report formats (text/json/csv)");
    run->add_flag("--stratified", run_stratified, "force a stratified split");
    run->add_flag("--quiet,-q", run_quiet, "suppress the text report on stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (synth->parsed()) {
            SynthSpec spec;
            spec.n = synth_n;
            spec.seed = synth_seed;
            write_dataset(generate(spec), synth_out);
            return 0;
        }
        if (merge->parsed()) {
            std::vector<Dataset> parts;
            for (const std::string& input : merge_inputs) {
                parts.push_back(load_source(parse_source(input)).dataset);
            }
            write_dataset(merge_datasets(parts), merge_out);
            return 0;
        }
        if (validate_cmd->parsed()) {
            SourceSpec src = parse_source(val_input);
            if (!val_alias.empty()) src.alias_path = val_alias;
            LoadResult loaded = load_source(src);
            ValidationReport report = validate(loaded.dataset);
            report.rows_rejected += loaded.report.rows_rejected;
            for (const RowError& e : loaded.report.row_errors) report.row_errors.push_back(e);
            for (const std::string& w : loaded.report.warnings) report.warnings.push_back(w);
            print_validation(report, val_format);
            return 0;
        }
        if (label_cmd->parsed()) {
            SourceSpec src = parse_source(lab_input);
            if (!lab_alias.empty()) src.alias_path = lab_alias;
            LoadResult loaded = load_source(src);
            write_dataset(label_dataset(loaded.dataset, resolve_rules(lab_rules)), lab_out);
            return 0;
        }
        if (train->parsed()) return cmd_train(topt);
        if (evaluate->parsed()) {
            return cmd_evaluate(ev_model, ev_data, ev_alias, ev_rules, ev_averaging, ev_format);
        }
        if (predict_cmd->parsed()) return cmd_predict(pr_model, pr_data, pr_alias, pr_format);
        if (run->parsed()) {
            PipelineConfig cfg = parse_config_file(run_config);
            if (run_seed) {
                cfg.seed = *run_seed;
                if (cfg.synth) cfg.synth->seed = *run_seed;
            }
            if (run_output_dir) cfg.output_dir = *run_output_dir;
            if (run_test_fraction) cfg.split.test_fraction = *run_test_fraction;
            if (run_stratified) cfg.split.stratified = true;
            if (run_averaging) {
                cfg.averaging =
                    *run_averaging == "weighted" ? Averaging::Weighted : Averaging::Macro;
            }
            if (!run_formats.empty()) cfg.report_formats = run_formats;

            const PipelineResult result = run_pipeline(cfg);
            if (!run_quiet) write_text_report(result, std::cout);
            if (!result.run_dir.empty()) std::cout << "run directory: " << result.run_dir << "\n";
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
