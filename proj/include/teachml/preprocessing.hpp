#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "teachml/data_model.hpp"

namespace teachml {

// Dense numeric matrix fed to the models, row-major, with column names.
class FeatureMatrix {
public:
    FeatureMatrix() = default;
    FeatureMatrix(std::size_t rows, std::vector<std::string> feature_names);

    double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::span<const double> row(std::size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<std::string>& feature_names() const { return names_; }

    bool all_finite() const;

    // New matrix containing the given rows in the given order.
    FeatureMatrix take_rows(const std::vector<std::size_t>& indices) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::string> names_;
    std::vector<double> data_;
};

// Fitted label encoding: per categorical column, value -> dense code assigned
// in ascending lexicographic order of the value strings.
struct EncoderMap {
    std::map<std::string, std::map<std::string, int>> codes;
    std::vector<std::string> column_order;
};

// The 17 model inputs: A1..A10, Qchat-10-Score, Age_Mons, Sex, Ethnicity,
// Jaundice, Family_mem_with_ASD, Class_ASD_Traits.
const std::vector<std::string>& default_feature_columns();

// The categorical members of the canonical schema (encoder targets).
const std::vector<std::string>& categorical_columns();

// Throws DataError when a named column is not categorical.
EncoderMap fit_label_encoders(const Dataset& ds, const std::vector<std::string>& columns);

// Builds the numeric matrix, columns ordered as `feature_columns`. Binary and
// integer columns pass through; categorical columns go through `enc`.
// Throws DataError naming value and column on an unseen categorical value.
FeatureMatrix apply_encoders(const Dataset& ds, const EncoderMap& enc,
                             const std::vector<std::string>& feature_columns);

// Per-feature z-score parameters (population std, divide by n). Columns not
// fitted keep identity params (mean 0, std 1).
struct ScalerParams {
    std::vector<double> mean;
    std::vector<double> stddev;
    std::vector<std::string> feature_names;
};

ScalerParams fit_scaler(const FeatureMatrix& train,
                        const std::vector<std::string>& scale_columns);

// out = (x - mean) / std per column; a zero-std column maps to all zeros.
FeatureMatrix apply_scaler(const FeatureMatrix& m, const ScalerParams& s);

struct SplitSpec {
    double test_fraction = 0.05;
    std::uint64_t seed = 0;
    bool stratified = false;
};

struct Split {
    FeatureMatrix train_x;
    std::vector<int> train_y;
    FeatureMatrix test_x;
    std::vector<int> test_y;
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> test_indices;
};

// Deterministic shuffled split. Test size = round(n * fraction), clamped to
// [1, n-1]. Stratified mode keeps per-class test counts within one row of
// the proportional share (largest-remainder apportionment).
Split train_test_split(const FeatureMatrix& m, const std::vector<int>& y,
                       const SplitSpec& spec);

}  // namespace teachml
