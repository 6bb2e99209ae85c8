#include "teachml/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "teachml/errors.hpp"

namespace teachml {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::set<std::string> kTopLevelKeys = {
    "seed",   "input",  "synth",     "feature_columns", "scale_columns", "rules",
    "split",  "models", "averaging", "output_dir",      "report_formats"};

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
    for (const auto& [key, unused] : obj.items()) {
        if (!known.count(key)) {
            throw ConfigError("config: unknown key '" + key + "' in " + where);
        }
    }
}

WeightedVocab vocab_from_json(const json& obj, const std::string& where) {
    if (!obj.is_object()) throw ConfigError("config: " + where + " must be an object");
    WeightedVocab vocab;
    for (const auto& [value, weight] : obj.items()) {
        vocab.emplace_back(value, weight.get<double>());
    }
    return vocab;
}

json vocab_to_json(const WeightedVocab& vocab) {
    json obj = json::object();
    for (const auto& [value, weight] : vocab) obj[value] = weight;
    return obj;
}

AgeUnit age_unit_from_string(const std::string& s) {
    if (s == "months") return AgeUnit::Months;
    if (s == "years") return AgeUnit::Years;
    throw ConfigError("config: age_unit must be 'months' or 'years', got '" + s + "'");
}

struct ModelNaming {
    const char* id;
    const char* display;
};

constexpr ModelNaming kModelOrder[] = {
    {"naive_bayes", "Naive Bayes"},
    {"decision_tree", "Decision Tree"},
    {"random_forest", "Random Forest"},
    {"knn", "K-Nearest Neighbors"},
};

template <typename F>
auto stage(const char* name, F&& f) {
    try {
        return f();
    } catch (const PipelineError&) {
        throw;
    } catch (const std::exception& e) {
        throw PipelineError(name, e.what());
    }
}

std::string pct(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f%%", fraction * 100.0);
    return buf;
}

std::string fixed6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace

PipelineConfig parse_config(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: top level must be an object");
    reject_unknown_keys(doc, kTopLevelKeys, "top level");

    PipelineConfig cfg;

    try {
        if (!doc.contains("seed")) throw ConfigError("config: 'seed' is mandatory");
        cfg.seed = doc.at("seed").get<std::uint64_t>();

        const bool has_input = doc.contains("input");
        const bool has_synth = doc.contains("synth");
        if (has_input == has_synth) {
            throw ConfigError("config: exactly one of 'input' and 'synth' must be present");
        }

        if (has_input) {
            for (const json& entry : doc.at("input")) {
                reject_unknown_keys(entry, {"csv", "alias", "age_unit"}, "input entry");
                SourceSpec src;
                src.csv_path = entry.at("csv").get<std::string>();
                if (entry.contains("alias")) src.alias_path = entry.at("alias").get<std::string>();
                if (entry.contains("age_unit")) {
                    src.age_unit = age_unit_from_string(entry.at("age_unit").get<std::string>());
                }
                cfg.sources.push_back(std::move(src));
            }
            if (cfg.sources.empty()) throw ConfigError("config: 'input' must not be empty");
        } else {
            const json& s = doc.at("synth");
            reject_unknown_keys(s,
                                {"n", "a_prevalence", "age_min_months", "age_max_months", "sex",
                                 "ethnicity", "jaundice", "family_asd", "who_completed",
                                 "class_rule_threshold"},
                                "synth");
            SynthSpec spec;
            spec.n = s.at("n").get<std::size_t>();
            if (s.contains("a_prevalence")) {
                const auto p = s.at("a_prevalence").get<std::vector<double>>();
                if (p.size() != 10) throw ConfigError("config: a_prevalence needs 10 entries");
                std::copy(p.begin(), p.end(), spec.a_prevalence.begin());
            }
            if (s.contains("age_min_months")) spec.age_min_months = s.at("age_min_months").get<int>();
            if (s.contains("age_max_months")) spec.age_max_months = s.at("age_max_months").get<int>();
            if (s.contains("sex")) spec.sex = vocab_from_json(s.at("sex"), "synth.sex");
            if (s.contains("ethnicity")) {
                spec.ethnicity = vocab_from_json(s.at("ethnicity"), "synth.ethnicity");
            }
            if (s.contains("jaundice")) {
                spec.jaundice = vocab_from_json(s.at("jaundice"), "synth.jaundice");
            }
            if (s.contains("family_asd")) {
                spec.family_asd = vocab_from_json(s.at("family_asd"), "synth.family_asd");
            }
            if (s.contains("who_completed")) {
                spec.who_completed = vocab_from_json(s.at("who_completed"), "synth.who_completed");
            }
            if (s.contains("class_rule_threshold")) {
                spec.class_rule_threshold = s.at("class_rule_threshold").get<int>();
            }
            cfg.synth = std::move(spec);
        }

        if (doc.contains("feature_columns")) {
            cfg.feature_columns = doc.at("feature_columns").get<std::vector<std::string>>();
            if (cfg.feature_columns.empty()) {
                throw ConfigError("config: feature_columns must not be empty");
            }
        }
        if (doc.contains("scale_columns")) {
            if (!doc.at("scale_columns").is_null()) {
                cfg.scale_columns = doc.at("scale_columns").get<std::vector<std::string>>();
            }
        }
        if (doc.contains("rules")) {
            const std::string r = doc.at("rules").get<std::string>();
            if (r != "builtin") cfg.rules_path = r;
        }

        if (doc.contains("split")) {
            const json& s = doc.at("split");
            reject_unknown_keys(s, {"test_fraction", "stratified"}, "split");
            if (s.contains("test_fraction")) {
                cfg.split.test_fraction = s.at("test_fraction").get<double>();
            }
            if (s.contains("stratified")) cfg.split.stratified = s.at("stratified").get<bool>();
        }

        if (doc.contains("models")) {
            const json& m = doc.at("models");
            reject_unknown_keys(m, {"naive_bayes", "decision_tree", "random_forest", "knn"},
                                "models");
            if (m.contains("naive_bayes")) {
                const json& nb = m.at("naive_bayes");
                reject_unknown_keys(nb, {"epsilon_factor"}, "models.naive_bayes");
                if (nb.contains("epsilon_factor")) {
                    cfg.models.nb_epsilon_factor = nb.at("epsilon_factor").get<double>();
                }
            }
            if (m.contains("decision_tree")) {
                const json& dt = m.at("decision_tree");
                reject_unknown_keys(dt, {"min_samples_split", "max_depth"}, "models.decision_tree");
                if (dt.contains("min_samples_split")) {
                    cfg.models.tree.min_samples_split = dt.at("min_samples_split").get<int>();
                }
                if (dt.contains("max_depth") && !dt.at("max_depth").is_null()) {
                    cfg.models.tree.max_depth = dt.at("max_depth").get<int>();
                }
            }
            if (m.contains("random_forest")) {
                const json& rf = m.at("random_forest");
                reject_unknown_keys(
                    rf, {"n_trees", "features_per_split", "bootstrap", "min_samples_split",
                         "max_depth"},
                    "models.random_forest");
                if (rf.contains("n_trees")) cfg.models.forest.n_trees = rf.at("n_trees").get<int>();
                if (rf.contains("features_per_split")) {
                    cfg.models.forest.features_per_split = rf.at("features_per_split").get<int>();
                }
                if (rf.contains("bootstrap")) {
                    cfg.models.forest.bootstrap = rf.at("bootstrap").get<bool>();
                }
                if (rf.contains("min_samples_split")) {
                    cfg.models.forest.tree.min_samples_split =
                        rf.at("min_samples_split").get<int>();
                }
                if (rf.contains("max_depth") && !rf.at("max_depth").is_null()) {
                    cfg.models.forest.tree.max_depth = rf.at("max_depth").get<int>();
                }
            }
            if (m.contains("knn")) {
                const json& knn = m.at("knn");
                reject_unknown_keys(knn, {"k"}, "models.knn");
                if (knn.contains("k")) cfg.models.knn_k = knn.at("k").get<int>();
            }
        }

        if (doc.contains("averaging")) {
            const std::string a = doc.at("averaging").get<std::string>();
            if (a == "macro") {
                cfg.averaging = Averaging::Macro;
            } else if (a == "weighted") {
                cfg.averaging = Averaging::Weighted;
            } else {
                throw ConfigError("config: averaging must be 'macro' or 'weighted'");
            }
        }
        if (doc.contains("output_dir")) cfg.output_dir = doc.at("output_dir").get<std::string>();
        if (doc.contains("report_formats")) {
            cfg.report_formats = doc.at("report_formats").get<std::vector<std::string>>();
            for (const std::string& f : cfg.report_formats) {
                if (f != "text" && f != "json" && f != "csv") {
                    throw ConfigError("config: unknown report format '" + f + "'");
                }
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid value: ") + e.what());
    }

    if (cfg.synth) cfg.synth->seed = cfg.seed;
    return cfg;
}

PipelineConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse_config(in);
}

std::string canonical_config(const PipelineConfig& cfg) {
    json doc;
    doc["seed"] = cfg.seed;
    if (cfg.synth) {
        const SynthSpec& s = *cfg.synth;
        doc["synth"] = {{"n", s.n},
                        {"a_prevalence", s.a_prevalence},
                        {"age_min_months", s.age_min_months},
                        {"age_max_months", s.age_max_months},
                        {"sex", vocab_to_json(s.sex)},
                        {"ethnicity", vocab_to_json(s.ethnicity)},
                        {"jaundice", vocab_to_json(s.jaundice)},
                        {"family_asd", vocab_to_json(s.family_asd)},
                        {"who_completed", vocab_to_json(s.who_completed)},
                        {"class_rule_threshold", s.class_rule_threshold}};
    } else {
        json inputs = json::array();
        for (const SourceSpec& src : cfg.sources) {
            json entry = {{"csv", src.csv_path}};
            if (!src.alias_path.empty()) entry["alias"] = src.alias_path;
            if (src.age_unit) {
                entry["age_unit"] = *src.age_unit == AgeUnit::Years ? "years" : "months";
            }
            inputs.push_back(std::move(entry));
        }
        doc["input"] = std::move(inputs);
    }
    doc["feature_columns"] = cfg.feature_columns;
    if (cfg.scale_columns) {
        doc["scale_columns"] = *cfg.scale_columns;
    } else {
        doc["scale_columns"] = nullptr;
    }
    doc["rules"] = cfg.rules_path.empty() ? "builtin" : cfg.rules_path;
    doc["split"] = {{"test_fraction", cfg.split.test_fraction},
                    {"stratified", cfg.split.stratified}};
    json tree_cfg = {{"min_samples_split", cfg.models.tree.min_samples_split},
                     {"max_depth", nullptr}};
    if (cfg.models.tree.max_depth) tree_cfg["max_depth"] = *cfg.models.tree.max_depth;
    json forest_cfg = {{"n_trees", cfg.models.forest.n_trees},
                       {"features_per_split", cfg.models.forest.features_per_split},
                       {"bootstrap", cfg.models.forest.bootstrap},
                       {"min_samples_split", cfg.models.forest.tree.min_samples_split},
                       {"max_depth", nullptr}};
    if (cfg.models.forest.tree.max_depth) {
        forest_cfg["max_depth"] = *cfg.models.forest.tree.max_depth;
    }
    doc["models"] = {{"naive_bayes", {{"epsilon_factor", cfg.models.nb_epsilon_factor}}},
                     {"decision_tree", std::move(tree_cfg)},
                     {"random_forest", std::move(forest_cfg)},
                     {"knn", {{"k", cfg.models.knn_k}}}};
    doc["averaging"] = to_string(cfg.averaging);
    doc["output_dir"] = cfg.output_dir;
    doc["report_formats"] = cfg.report_formats;
    return doc.dump();
}

std::string config_hash(const PipelineConfig& cfg) {
    const std::string s = canonical_config(cfg);
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a 64
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

Dataset acquire_data(const PipelineConfig& cfg, ValidationReport& load_report) {
    if (cfg.synth) {
        return stage("synth", [&] {
            SynthSpec spec = *cfg.synth;
            spec.seed = cfg.seed;  // the master seed always drives generation
            return generate(spec);
        });
    }
    std::vector<Dataset> parts;
    for (const SourceSpec& src : cfg.sources) {
        stage("load", [&] {
            AliasMap aliases;
            if (!src.alias_path.empty()) aliases = load_alias_file(src.alias_path);
            AgeUnit unit = AgeUnit::Months;
            if (auto it = aliases.find("__age_unit"); it != aliases.end()) {
                unit = age_unit_from_string(it->second);
                aliases.erase(it);
            }
            if (src.age_unit) unit = *src.age_unit;
            LoadResult loaded = load_dataset_file(src.csv_path, canonical_schema(unit), aliases);
            load_report.rows_accepted += loaded.report.rows_accepted;
            load_report.rows_rejected += loaded.report.rows_rejected;
            for (const RowError& e : loaded.report.row_errors) {
                load_report.row_errors.push_back(e);
            }
            for (const std::string& w : loaded.report.warnings) {
                load_report.warnings.push_back(src.csv_path + ": " + w);
            }
            parts.push_back(std::move(loaded.dataset));
            return 0;
        });
    }
    return stage("merge", [&] { return merge_datasets(parts); });
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write: " + path.string());
    out << content;
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& cfg) {
    if (cfg.feature_columns.empty()) {
        throw ConfigError("config: feature_columns must not be empty");
    }
    if (cfg.synth.has_value() == !cfg.sources.empty()) {
        throw ConfigError("config: exactly one of 'input' and 'synth' must be present");
    }
    PipelineResult result;
    result.seed = cfg.seed;
    result.config_echo = canonical_config(cfg);
    result.hash = config_hash(cfg);
    result.averaging = cfg.averaging;

    ValidationReport load_report;
    Dataset data = acquire_data(cfg, load_report);
    result.provenance = data.provenance;

    result.validation = stage("validate", [&] {
        ValidationReport r = validate(data);
        r.rows_rejected += load_report.rows_rejected;
        for (const RowError& e : load_report.row_errors) r.row_errors.push_back(e);
        for (const std::string& w : load_report.warnings) r.warnings.push_back(w);
        return r;
    });

    const RuleSet rules = stage("label", [&] {
        return cfg.rules_path.empty() ? canonical_rules() : load_rules_file(cfg.rules_path);
    });
    const Dataset labeled = stage("label", [&] { return label_dataset(data, rules); });
    result.summary = summarize(labeled);
    result.n_rows = labeled.rows.size();

    std::vector<int> y;
    y.reserve(labeled.rows.size());
    for (const Record& r : labeled.rows) y.push_back(*r.preferred_education);

    const EncoderMap encoder = stage("encode", [&] {
        std::vector<std::string> cats;
        for (const std::string& c : categorical_columns()) {
            if (std::find(cfg.feature_columns.begin(), cfg.feature_columns.end(), c) !=
                cfg.feature_columns.end()) {
                cats.push_back(c);
            }
        }
        return fit_label_encoders(labeled, cats);
    });
    const FeatureMatrix x =
        stage("encode", [&] { return apply_encoders(labeled, encoder, cfg.feature_columns); });
    result.feature_names = x.feature_names();

    SplitSpec split_spec = cfg.split;
    split_spec.seed = cfg.seed;
    const Split split = stage("split", [&] { return train_test_split(x, y, split_spec); });
    result.n_train = split.train_indices.size();
    result.n_test = split.test_indices.size();

    const ScalerParams scaler = stage("scale", [&] {
        const std::vector<std::string>& cols =
            cfg.scale_columns ? *cfg.scale_columns : cfg.feature_columns;
        return fit_scaler(split.train_x, cols);
    });
    const FeatureMatrix train_x = stage("scale", [&] { return apply_scaler(split.train_x, scaler); });
    const FeatureMatrix test_x = stage("scale", [&] { return apply_scaler(split.test_x, scaler); });

    std::vector<int> vocabulary;
    {
        std::set<int> distinct(y.begin(), y.end());
        vocabulary.assign(distinct.begin(), distinct.end());
    }

    stage("train", [&] {
        for (const ModelNaming& naming : kModelOrder) {
            TrainedModel tm;
            tm.encoder = encoder;
            tm.scaler = scaler;
            tm.feature_names = x.feature_names();
            tm.label_vocabulary = vocabulary;
            tm.seed = cfg.seed;
            const std::string id = naming.id;
            if (id == "naive_bayes") {
                tm.model = fit_gaussian_nb(train_x, split.train_y, cfg.models.nb_epsilon_factor);
            } else if (id == "decision_tree") {
                tm.model = fit_decision_tree(train_x, split.train_y, cfg.models.tree);
            } else if (id == "random_forest") {
                tm.model = fit_random_forest(train_x, split.train_y, cfg.models.forest, cfg.seed);
            } else {
                tm.model = fit_knn(train_x, split.train_y, cfg.models.knn_k);
            }
            result.trained.push_back(std::move(tm));
        }
        return 0;
    });

    stage("evaluate", [&] {
        for (std::size_t i = 0; i < result.trained.size(); ++i) {
            ModelEvaluation eval;
            eval.id = kModelOrder[i].id;
            eval.name = kModelOrder[i].display;
            eval.test_predictions = predict(result.trained[i], test_x);
            eval.cm = confusion_matrix(split.test_y, eval.test_predictions, vocabulary);
            eval.macro = metrics(eval.cm, Averaging::Macro);
            eval.weighted = metrics(eval.cm, Averaging::Weighted);
            result.models.push_back(std::move(eval));
        }
        return 0;
    });

    stage("rank", [&] {
        std::vector<RankEntry> entries;
        for (const ModelEvaluation& eval : result.models) {
            entries.push_back(
                {eval.name, cfg.averaging == Averaging::Macro ? eval.macro : eval.weighted});
        }
        result.ranking = rank_models(entries);
        return 0;
    });

    if (!cfg.output_dir.empty()) {
        const fs::path run_dir =
            fs::path(cfg.output_dir) /
            ("run-" + result.hash + "-seed" + std::to_string(cfg.seed));
        result.run_dir = run_dir.string();
        try {
            stage("report", [&] {
                fs::create_directories(run_dir);
                const auto& formats = cfg.report_formats;
                auto wants = [&](const char* f) {
                    return std::find(formats.begin(), formats.end(), f) != formats.end();
                };
                if (wants("text")) {
                    std::ostringstream os;
                    write_text_report(result, os);
                    write_file(run_dir / "report.txt", os.str());
                }
                if (wants("json")) {
                    write_file(run_dir / "report.json", json_report(result));
                }
                if (wants("csv")) {
                    write_file(run_dir / "metrics_macro.csv",
                               metrics_csv(result, Averaging::Macro));
                    write_file(run_dir / "metrics_weighted.csv",
                               metrics_csv(result, Averaging::Weighted));
                    for (const ModelEvaluation& eval : result.models) {
                        write_file(run_dir / ("confusion_" + eval.id + ".csv"),
                                   confusion_csv(eval));
                    }
                }
                for (std::size_t i = 0; i < result.trained.size(); ++i) {
                    save_model_file(result.trained[i],
                                    (run_dir / ("model_" + result.models[i].id + ".json")).string());
                }
                return 0;
            });
        } catch (...) {
            std::error_code ec;
            fs::remove_all(run_dir, ec);  // do not leave partial outputs behind
            throw;
        }
    }
    return result;
}

void write_text_report(const PipelineResult& result, std::ostream& out) {
    out << "teachml pipeline report\n";
    out << "=======================\n";
    out << "seed:        " << result.seed << "\n";
    out << "config hash: " << result.hash << "\n";
    out << "data:        " << result.n_rows << " rows";
    if (!result.provenance.empty()) {
        out << " (";
        for (std::size_t i = 0; i < result.provenance.size(); ++i) {
            if (i) out << ", ";
            out << result.provenance[i];
        }
        out << ")";
    }
    out << "\n";
    out << "train/test:  " << result.n_train << " / " << result.n_test << "\n";
    out << "features:    " << result.feature_names.size() << "\n";
    out << "averaging:   " << to_string(result.averaging) << "\n";
    out << "labels:      ";
    bool first = true;
    for (const auto& [code, count] : result.summary.label_counts) {
        if (!first) out << "  ";
        out << code << ":" << count;
        first = false;
    }
    out << "\n";
    out << "validation:  " << result.validation.rows_accepted << " accepted, "
        << result.validation.rows_rejected << " rejected, "
        << result.validation.warnings.size() << " warnings\n";

    struct Table {
        const char* title;
        double MetricSet::* field;
    };
    const Table tables[] = {{"accuracy", &MetricSet::accuracy},
                            {"precision", &MetricSet::precision},
                            {"recall", &MetricSet::recall},
                            {"f1", &MetricSet::f1}};
    for (const Table& t : tables) {
        out << "\n" << t.title << " (" << to_string(result.averaging) << ")\n";
        out << std::string(std::string(t.title).size() + 3 +
                               std::string(to_string(result.averaging)).size(),
                           '-')
            << "\n";
        for (const ModelEvaluation& eval : result.models) {
            const MetricSet& ms =
                result.averaging == Averaging::Macro ? eval.macro : eval.weighted;
            out << "  " << std::left << std::setw(22) << eval.name << std::right
                << std::setw(8) << pct(ms.*(t.field)) << "\n";
        }
    }

    out << "\nranking\n-------\n";
    for (std::size_t i = 0; i < result.ranking.ordered.size(); ++i) {
        const RankEntry& e = result.ranking.ordered[i];
        out << "  " << (i + 1) << ". " << std::left << std::setw(22) << e.name << std::right
            << " accuracy " << pct(e.metric_set.accuracy) << ", f1 " << pct(e.metric_set.f1)
            << "\n";
    }
    out << "winner: " << result.ranking.winner << "\n";

    out << "\nconfusion matrices (rows = true, columns = predicted)\n";
    out << "------------------------------------------------------\n";
    for (const ModelEvaluation& eval : result.models) {
        out << eval.name << ":\n";
        out << "      ";
        for (int cls : eval.cm.classes) out << std::setw(6) << cls;
        out << "\n";
        for (std::size_t i = 0; i < eval.cm.counts.size(); ++i) {
            out << "  " << std::setw(4) << eval.cm.classes[i];
            for (long c : eval.cm.counts[i]) out << std::setw(6) << c;
            out << "\n";
        }
        out << "\n";
    }

    std::vector<std::string> warnings = result.validation.warnings;
    for (const ModelEvaluation& eval : result.models) {
        const MetricSet& ms = result.averaging == Averaging::Macro ? eval.macro : eval.weighted;
        for (const std::string& w : ms.warnings) warnings.push_back(eval.name + ": " + w);
    }
    if (!warnings.empty()) {
        out << "warnings\n--------\n";
        for (const std::string& w : warnings) out << "  " << w << "\n";
    }
}

std::string json_report(const PipelineResult& result) {
    json doc;
    doc["seed"] = result.seed;
    doc["config"] = json::parse(result.config_echo);
    doc["config_hash"] = result.hash;
    doc["data"] = {{"rows", result.n_rows},
                   {"provenance", result.provenance},
                   {"rows_accepted", result.validation.rows_accepted},
                   {"rows_rejected", result.validation.rows_rejected},
                   {"warnings", result.validation.warnings}};
    json label_counts = json::object();
    for (const auto& [code, count] : result.summary.label_counts) {
        label_counts[std::to_string(code)] = count;
    }
    doc["data"]["label_counts"] = std::move(label_counts);
    doc["split"] = {{"train", result.n_train}, {"test", result.n_test}};
    doc["features"] = result.feature_names;
    doc["averaging"] = to_string(result.averaging);

    json models = json::array();
    for (const ModelEvaluation& eval : result.models) {
        auto metric_json = [](const MetricSet& ms) {
            return json{{"accuracy", ms.accuracy},
                        {"precision", ms.precision},
                        {"recall", ms.recall},
                        {"f1", ms.f1},
                        {"warnings", ms.warnings}};
        };
        models.push_back({{"id", eval.id},
                          {"name", eval.name},
                          {"confusion", {{"classes", eval.cm.classes}, {"counts", eval.cm.counts}}},
                          {"macro", metric_json(eval.macro)},
                          {"weighted", metric_json(eval.weighted)}});
    }
    doc["models"] = std::move(models);

    json ranking = json::array();
    for (const RankEntry& e : result.ranking.ordered) ranking.push_back(e.name);
    doc["ranking"] = std::move(ranking);
    doc["winner"] = result.ranking.winner;
    return doc.dump(2) + "\n";
}

std::string metrics_csv(const PipelineResult& result, Averaging averaging) {
    std::string out = "model,accuracy,precision,recall,f1\n";
    for (const ModelEvaluation& eval : result.models) {
        const MetricSet& ms = averaging == Averaging::Macro ? eval.macro : eval.weighted;
        out += eval.id;
        out += "," + fixed6(ms.accuracy);
        out += "," + fixed6(ms.precision);
        out += "," + fixed6(ms.recall);
        out += "," + fixed6(ms.f1);
        out += "\n";
    }
    return out;
}

std::string confusion_csv(const ModelEvaluation& eval) {
    std::string out = "true\\pred";
    for (int cls : eval.cm.classes) out += "," + std::to_string(cls);
    out += "\n";
    for (std::size_t i = 0; i < eval.cm.counts.size(); ++i) {
        out += std::to_string(eval.cm.classes[i]);
        for (long c : eval.cm.counts[i]) out += "," + std::to_string(c);
        out += "\n";
    }
    return out;
}

}  // namespace teachml
