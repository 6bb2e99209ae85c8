#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "teachml/data_model.hpp"
#include "teachml/knn.hpp"
#include "teachml/naive_bayes.hpp"
#include "teachml/preprocessing.hpp"
#include "teachml/random_forest.hpp"

namespace teachml {

inline constexpr int kModelFormatVersion = 1;

// Persistence envelope: one fitted classifier plus everything needed to turn
// raw records into model inputs again.
struct TrainedModel {
    std::variant<NBModel, TreeModel, ForestModel, KNNModel> model;
    EncoderMap encoder;
    ScalerParams scaler;
    std::vector<std::string> feature_names;
    std::vector<int> label_vocabulary;  // ascending class codes seen at fit time
    std::uint64_t seed = 0;
};

// "naive_bayes", "decision_tree", "random_forest" or "knn".
std::string model_type_name(const TrainedModel& m);

// Predicts on an already-encoded, already-scaled matrix. The matrix feature
// names must match the model's training feature names exactly.
std::vector<int> predict(const TrainedModel& m, const FeatureMatrix& x);

// Encodes and scales raw records with the persisted preprocessing state.
FeatureMatrix features_for(const TrainedModel& m, const Dataset& ds);

// Single-record convenience for the CLI; throws DataError on unseen values.
int predict_record(const TrainedModel& m, const Record& r, const DatasetSchema& schema);

void save_model(const TrainedModel& m, std::ostream& out);
void save_model_file(const TrainedModel& m, const std::string& path);

// Throws DataError on malformed content or a format_version mismatch.
TrainedModel load_model(std::istream& in);
TrainedModel load_model_file(const std::string& path);

}  // namespace teachml
