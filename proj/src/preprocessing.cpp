#include "teachml/preprocessing.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "teachml/errors.hpp"
#include "teachml/rng.hpp"

namespace teachml {

FeatureMatrix::FeatureMatrix(std::size_t rows, std::vector<std::string> feature_names)
    : rows_(rows),
      cols_(feature_names.size()),
      names_(std::move(feature_names)),
      data_(rows * names_.size(), 0.0) {}

bool FeatureMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](double v) { return std::isfinite(v); });
}

FeatureMatrix FeatureMatrix::take_rows(const std::vector<std::size_t>& indices) const {
    FeatureMatrix out(indices.size(), names_);
    for (std::size_t r = 0; r < indices.size(); ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out.at(r, c) = at(indices[r], c);
        }
    }
    return out;
}

const std::vector<std::string>& default_feature_columns() {
    static const std::vector<std::string> cols = {
        "A1",  "A2",  "A3",  "A4", "A5", "A6", "A7", "A8", "A9", "A10",
        "Qchat-10-Score", "Age_Mons", "Sex", "Ethnicity", "Jaundice",
        "Family_mem_with_ASD", "Class_ASD_Traits"};
    return cols;
}

const std::vector<std::string>& categorical_columns() {
    static const std::vector<std::string> cols = {
        "Sex", "Ethnicity", "Jaundice", "Family_mem_with_ASD",
        "Who_completed_the_test", "Class_ASD_Traits"};
    return cols;
}

namespace {

bool is_categorical(const std::string& column) {
    const auto& cats = categorical_columns();
    return std::find(cats.begin(), cats.end(), column) != cats.end();
}

// Accessor for a categorical column of a record; throws for other names.
const std::string& categorical_value(const Record& r, const std::string& column) {
    if (column == "Sex") return r.sex;
    if (column == "Ethnicity") return r.ethnicity;
    if (column == "Jaundice") return r.jaundice;
    if (column == "Family_mem_with_ASD") return r.family_asd;
    if (column == "Who_completed_the_test") return r.who_completed;
    if (column == "Class_ASD_Traits") return r.class_asd;
    throw DataError("not a categorical column: " + column);
}

double numeric_value(const Record& r, const std::string& column) {
    if (column.size() >= 2 && column.size() <= 3 && column[0] == 'A' &&
        std::all_of(column.begin() + 1, column.end(), [](char c) { return std::isdigit(c); })) {
        const int idx = std::stoi(column.substr(1));
        if (idx >= 1 && idx <= 10) return r.a[static_cast<std::size_t>(idx - 1)];
    }
    if (column == "Qchat-10-Score") return r.qchat_score;
    if (column == "Age_Mons") return r.age_months;
    if (column == "Case_No") return static_cast<double>(r.case_no);
    throw DataError("unknown feature column: " + column);
}

}  // namespace

EncoderMap fit_label_encoders(const Dataset& ds, const std::vector<std::string>& columns) {
    EncoderMap enc;
    enc.column_order = columns;
    for (const std::string& column : columns) {
        if (!is_categorical(column)) {
            throw DataError("fit_label_encoders: column '" + column + "' is not categorical");
        }
        std::set<std::string> values;
        for (const Record& r : ds.rows) values.insert(categorical_value(r, column));
        // std::set iterates in ascending lexicographic order, giving dense
        // codes 0..k-1 deterministic for a given value set.
        int code = 0;
        auto& table = enc.codes[column];
        for (const std::string& v : values) table[v] = code++;
    }
    return enc;
}

FeatureMatrix apply_encoders(const Dataset& ds, const EncoderMap& enc,
                             const std::vector<std::string>& feature_columns) {
    FeatureMatrix m(ds.rows.size(), feature_columns);
    for (std::size_t r = 0; r < ds.rows.size(); ++r) {
        const Record& rec = ds.rows[r];
        for (std::size_t c = 0; c < feature_columns.size(); ++c) {
            const std::string& column = feature_columns[c];
            if (is_categorical(column)) {
                auto table = enc.codes.find(column);
                if (table == enc.codes.end()) {
                    throw DataError("no encoder fitted for column '" + column + "'");
                }
                const std::string& value = categorical_value(rec, column);
                auto it = table->second.find(value);
                if (it == table->second.end()) {
                    throw DataError("unseen categorical value '" + value + "' in column '" +
                                    column + "'");
                }
                m.at(r, c) = it->second;
            } else {
                m.at(r, c) = numeric_value(rec, column);
            }
        }
    }
    return m;
}

ScalerParams fit_scaler(const FeatureMatrix& train,
                        const std::vector<std::string>& scale_columns) {
    if (train.rows() == 0) throw DataError("fit_scaler: empty training matrix");

    ScalerParams params;
    params.feature_names = train.feature_names();
    params.mean.assign(train.cols(), 0.0);
    params.stddev.assign(train.cols(), 1.0);

    const std::set<std::string> wanted(scale_columns.begin(), scale_columns.end());
    const double n = static_cast<double>(train.rows());

    for (std::size_t c = 0; c < train.cols(); ++c) {
        if (!wanted.count(train.feature_names()[c])) continue;
        double sum = 0;
        for (std::size_t r = 0; r < train.rows(); ++r) sum += train.at(r, c);
        const double mean = sum / n;
        double ss = 0;
        for (std::size_t r = 0; r < train.rows(); ++r) {
            const double d = train.at(r, c) - mean;
            ss += d * d;
        }
        params.mean[c] = mean;
        params.stddev[c] = std::sqrt(ss / n);
    }
    return params;
}

FeatureMatrix apply_scaler(const FeatureMatrix& m, const ScalerParams& s) {
    if (m.cols() != s.mean.size() || m.feature_names() != s.feature_names) {
        throw DataError("apply_scaler: matrix does not match scaler params");
    }
    FeatureMatrix out(m.rows(), m.feature_names());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out.at(r, c) =
                s.stddev[c] == 0.0 ? 0.0 : (m.at(r, c) - s.mean[c]) / s.stddev[c];
        }
    }
    return out;
}

namespace {

std::vector<std::size_t> shuffled_indices(std::size_t n, Rng& rng) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) {  // Fisher-Yates
        std::swap(idx[i - 1], idx[rng.bounded(i)]);
    }
    return idx;
}

}  // namespace

Split train_test_split(const FeatureMatrix& m, const std::vector<int>& y,
                       const SplitSpec& spec) {
    const std::size_t n = m.rows();
    if (n != y.size()) throw DataError("train_test_split: x/y length mismatch");
    if (n < 2) throw DataError("train_test_split: need at least 2 rows");
    if (!(spec.test_fraction > 0.0 && spec.test_fraction < 1.0)) {
        throw DataError("train_test_split: test_fraction must be in (0,1)");
    }

    std::size_t test_size = static_cast<std::size_t>(
        std::llround(static_cast<double>(n) * spec.test_fraction));
    test_size = std::clamp<std::size_t>(test_size, 1, n - 1);

    Rng rng(spec.seed);
    Split split;

    if (!spec.stratified) {
        std::vector<std::size_t> idx = shuffled_indices(n, rng);
        split.test_indices.assign(idx.begin(), idx.begin() + static_cast<long>(test_size));
        split.train_indices.assign(idx.begin() + static_cast<long>(test_size), idx.end());
    } else {
        // Largest-remainder apportionment of the test budget over classes.
        std::map<int, std::vector<std::size_t>> by_class;
        for (std::size_t i = 0; i < n; ++i) by_class[y[i]].push_back(i);

        std::vector<int> classes;
        std::vector<std::size_t> quota_floor;
        std::vector<double> remainder;
        std::size_t assigned = 0;
        for (const auto& [cls, members] : by_class) {
            const double quota = static_cast<double>(members.size()) * spec.test_fraction;
            const auto base = static_cast<std::size_t>(quota);
            classes.push_back(cls);
            quota_floor.push_back(base);
            remainder.push_back(quota - static_cast<double>(base));
            assigned += base;
        }
        std::vector<std::size_t> order(classes.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (remainder[a] != remainder[b]) return remainder[a] > remainder[b];
            return classes[a] < classes[b];
        });
        for (std::size_t k = 0; assigned < test_size && k < order.size(); ++k) {
            const std::size_t ci = order[k];
            if (quota_floor[ci] < by_class[classes[ci]].size()) {
                ++quota_floor[ci];
                ++assigned;
            }
        }

        for (std::size_t ci = 0; ci < classes.size(); ++ci) {
            std::vector<std::size_t>& members = by_class[classes[ci]];
            std::vector<std::size_t> perm = shuffled_indices(members.size(), rng);
            for (std::size_t k = 0; k < members.size(); ++k) {
                const std::size_t row = members[perm[k]];
                if (k < quota_floor[ci]) {
                    split.test_indices.push_back(row);
                } else {
                    split.train_indices.push_back(row);
                }
            }
        }
        std::sort(split.test_indices.begin(), split.test_indices.end());
        std::sort(split.train_indices.begin(), split.train_indices.end());
    }

    split.train_x = m.take_rows(split.train_indices);
    split.test_x = m.take_rows(split.test_indices);
    split.train_y.reserve(split.train_indices.size());
    for (std::size_t i : split.train_indices) split.train_y.push_back(y[i]);
    split.test_y.reserve(split.test_indices.size());
    for (std::size_t i : split.test_indices) split.test_y.push_back(y[i]);
    return split;
}

}  // namespace teachml
