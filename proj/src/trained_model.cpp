#include "teachml/trained_model.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "teachml/errors.hpp"
#include "teachml/rule_labeling.hpp"

namespace teachml {

using nlohmann::json;

namespace {

json tree_to_json(const TreeModel& t) {
    json nodes = json::array();
    for (const TreeNode& n : t.nodes) {
        nodes.push_back({n.feature, n.threshold, n.left, n.right, n.label});
    }
    json j = {
        {"n_features", t.n_features},
        {"min_samples_split", t.params.min_samples_split},
        {"max_depth", nullptr},
        {"nodes", std::move(nodes)},
    };
    if (t.params.max_depth) j["max_depth"] = *t.params.max_depth;
    return j;
}

TreeModel tree_from_json(const json& j) {
    TreeModel t;
    t.n_features = j.at("n_features").get<int>();
    t.params.min_samples_split = j.at("min_samples_split").get<int>();
    if (!j.at("max_depth").is_null()) t.params.max_depth = j.at("max_depth").get<int>();
    for (const json& row : j.at("nodes")) {
        TreeNode n;
        n.feature = row.at(0).get<int>();
        n.threshold = row.at(1).get<double>();
        n.left = row.at(2).get<int>();
        n.right = row.at(3).get<int>();
        n.label = row.at(4).get<int>();
        t.nodes.push_back(n);
    }
    if (t.nodes.empty()) throw DataError("model file: tree has no nodes");
    return t;
}

json payload_to_json(const TrainedModel& m) {
    json j;
    if (const auto* nb = std::get_if<NBModel>(&m.model)) {
        j = {{"classes", nb->classes},     {"priors", nb->priors},
             {"means", nb->means},         {"variances", nb->variances},
             {"epsilon", nb->epsilon}};
    } else if (const auto* tree = std::get_if<TreeModel>(&m.model)) {
        j = tree_to_json(*tree);
    } else if (const auto* forest = std::get_if<ForestModel>(&m.model)) {
        json trees = json::array();
        for (const TreeModel& t : forest->trees) trees.push_back(tree_to_json(t));
        j = {{"n_trees", forest->params.n_trees},
             {"features_per_split", forest->params.features_per_split},
             {"bootstrap", forest->params.bootstrap},
             {"master_seed", forest->master_seed},
             {"trees", std::move(trees)}};
    } else {
        const auto& knn = std::get<KNNModel>(m.model);
        json rows = json::array();
        for (std::size_t r = 0; r < knn.stored_x.rows(); ++r) {
            json row = json::array();
            for (std::size_t c = 0; c < knn.stored_x.cols(); ++c) {
                row.push_back(knn.stored_x.at(r, c));
            }
            rows.push_back(std::move(row));
        }
        j = {{"k", knn.k}, {"x", std::move(rows)}, {"y", knn.stored_y}};
    }
    return j;
}

void payload_from_json(const json& j, const std::string& type, TrainedModel& m) {
    if (type == "naive_bayes") {
        NBModel nb;
        nb.classes = j.at("classes").get<std::vector<int>>();
        nb.priors = j.at("priors").get<std::vector<double>>();
        nb.means = j.at("means").get<std::vector<std::vector<double>>>();
        nb.variances = j.at("variances").get<std::vector<std::vector<double>>>();
        nb.epsilon = j.at("epsilon").get<double>();
        m.model = std::move(nb);
    } else if (type == "decision_tree") {
        m.model = tree_from_json(j);
    } else if (type == "random_forest") {
        ForestModel f;
        f.params.n_trees = j.at("n_trees").get<int>();
        f.params.features_per_split = j.at("features_per_split").get<int>();
        f.params.bootstrap = j.at("bootstrap").get<bool>();
        f.master_seed = j.at("master_seed").get<std::uint64_t>();
        for (const json& t : j.at("trees")) f.trees.push_back(tree_from_json(t));
        if (f.trees.empty()) throw DataError("model file: forest has no trees");
        m.model = std::move(f);
    } else if (type == "knn") {
        KNNModel knn;
        knn.k = j.at("k").get<int>();
        knn.stored_y = j.at("y").get<std::vector<int>>();
        const json& rows = j.at("x");
        FeatureMatrix x(rows.size(), m.feature_names);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const json& row = rows.at(r);
            if (row.size() != m.feature_names.size()) {
                throw DataError("model file: knn row width mismatch");
            }
            for (std::size_t c = 0; c < row.size(); ++c) x.at(r, c) = row.at(c).get<double>();
        }
        knn.stored_x = std::move(x);
        m.model = std::move(knn);
    } else {
        throw DataError("model file: unknown model_type '" + type + "'");
    }
}

std::vector<int> predict_dispatch(const NBModel& m, const FeatureMatrix& x) {
    return predict_nb(m, x);
}
std::vector<int> predict_dispatch(const TreeModel& m, const FeatureMatrix& x) {
    return predict_tree(m, x);
}
std::vector<int> predict_dispatch(const ForestModel& m, const FeatureMatrix& x) {
    return predict_forest(m, x);
}
std::vector<int> predict_dispatch(const KNNModel& m, const FeatureMatrix& x) {
    return predict_knn(m, x);
}

}  // namespace

std::string model_type_name(const TrainedModel& m) {
    switch (m.model.index()) {
        case 0: return "naive_bayes";
        case 1: return "decision_tree";
        case 2: return "random_forest";
        default: return "knn";
    }
}

std::vector<int> predict(const TrainedModel& m, const FeatureMatrix& x) {
    if (x.feature_names() != m.feature_names) {
        throw DataError("predict: feature names do not match the trained model");
    }
    return std::visit([&](const auto& model) { return predict_dispatch(model, x); },
                      m.model);
}

FeatureMatrix features_for(const TrainedModel& m, const Dataset& ds) {
    FeatureMatrix raw = apply_encoders(ds, m.encoder, m.feature_names);
    return apply_scaler(raw, m.scaler);
}

int predict_record(const TrainedModel& m, const Record& r, const DatasetSchema& schema) {
    Dataset one;
    one.schema = schema;
    one.rows.push_back(r);
    return predict(m, features_for(m, one)).front();
}

void save_model(const TrainedModel& m, std::ostream& out) {
    json vocab = json::array();
    for (int code : m.label_vocabulary) {
        const bool named = code >= 0 && code < kNumMethodLabels;
        vocab.push_back({{"code", code},
                         {"name", named ? std::string(method_name(code))
                                        : "class " + std::to_string(code)}});
    }

    json enc_codes = json::object();
    for (const auto& [column, table] : m.encoder.codes) {
        json t = json::object();
        for (const auto& [value, code] : table) t[value] = code;
        enc_codes[column] = std::move(t);
    }

    const json doc = {
        {"format_version", kModelFormatVersion},
        {"model_type", model_type_name(m)},
        {"seed", m.seed},
        {"feature_names", m.feature_names},
        {"label_vocabulary", std::move(vocab)},
        {"encoder", {{"column_order", m.encoder.column_order}, {"codes", std::move(enc_codes)}}},
        {"scaler", {{"mean", m.scaler.mean}, {"std", m.scaler.stddev}}},
        {"payload", payload_to_json(m)},
    };
    out << doc.dump(2) << '\n';
}

void save_model_file(const TrainedModel& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write model file: " + path);
    save_model(m, out);
}

TrainedModel load_model(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw DataError(std::string("model file: malformed JSON: ") + e.what());
    }

    try {
        const int version = doc.at("format_version").get<int>();
        if (version != kModelFormatVersion) {
            throw DataError("model file: unsupported format_version " +
                            std::to_string(version));
        }
        TrainedModel m;
        m.seed = doc.at("seed").get<std::uint64_t>();
        m.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
        for (const json& entry : doc.at("label_vocabulary")) {
            m.label_vocabulary.push_back(entry.at("code").get<int>());
        }
        m.encoder.column_order =
            doc.at("encoder").at("column_order").get<std::vector<std::string>>();
        for (const auto& [column, table] : doc.at("encoder").at("codes").items()) {
            for (const auto& [value, code] : table.items()) {
                m.encoder.codes[column][value] = code.get<int>();
            }
        }
        m.scaler.mean = doc.at("scaler").at("mean").get<std::vector<double>>();
        m.scaler.stddev = doc.at("scaler").at("std").get<std::vector<double>>();
        m.scaler.feature_names = m.feature_names;
        if (m.scaler.mean.size() != m.feature_names.size() ||
            m.scaler.stddev.size() != m.feature_names.size()) {
            throw DataError("model file: scaler size mismatch");
        }
        payload_from_json(doc.at("payload"), doc.at("model_type").get<std::string>(), m);
        return m;
    } catch (const json::exception& e) {
        throw DataError(std::string("model file: missing or invalid field: ") + e.what());
    }
}

TrainedModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open model file: " + path);
    return load_model(in);
}

}  // namespace teachml
