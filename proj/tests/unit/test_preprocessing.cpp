#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "teachml/errors.hpp"
#include "teachml/preprocessing.hpp"
#include "teachml/synthetic.hpp"
#include "test_helpers.hpp"

using namespace teachml;
using testutil::make_matrix;

namespace {

Dataset tiny_dataset() {
    SynthSpec spec;
    spec.n = 6;
    spec.seed = 17;
    return generate(spec);
}

}  // namespace

TEST_CASE("encoder assigns dense lexicographic codes") {
    Dataset ds = tiny_dataset();
    ds.rows[0].sex = "m";
    ds.rows[1].sex = "f";
    ds.rows[2].sex = "m";
    EncoderMap enc = fit_label_encoders(ds, {"Sex"});
    CHECK(enc.codes.at("Sex").at("f") == 0);
    CHECK(enc.codes.at("Sex").at("m") == 1);
}

TEST_CASE("encoder codes follow sorted value order") {
    Dataset ds = tiny_dataset();
    ds.rows[0].ethnicity = "white";
    ds.rows[1].ethnicity = "asian";
    ds.rows[2].ethnicity = "black";
    ds.rows[3].ethnicity = "asian";
    ds.rows[4].ethnicity = "white";
    ds.rows[5].ethnicity = "black";
    EncoderMap enc = fit_label_encoders(ds, {"Ethnicity"});

    // oracle: sort the distinct values, codes must match positions
    std::set<std::string> distinct;
    for (const Record& r : ds.rows) distinct.insert(r.ethnicity);
    int code = 0;
    for (const std::string& v : distinct) {
        CHECK(enc.codes.at("Ethnicity").at(v) == code++);
    }
    CHECK(enc.codes.at("Ethnicity").size() == 3);
}

TEST_CASE("single-valued column encodes to zero") {
    Dataset ds = tiny_dataset();
    for (Record& r : ds.rows) r.jaundice = "yes";
    EncoderMap enc = fit_label_encoders(ds, {"Jaundice"});
    CHECK(enc.codes.at("Jaundice").size() == 1);
    CHECK(enc.codes.at("Jaundice").at("yes") == 0);
}

TEST_CASE("encoding a non-categorical column is an error") {
    CHECK_THROWS_AS(fit_label_encoders(tiny_dataset(), {"Age_Mons"}), DataError);
}

TEST_CASE("encoder codes are injective per column") {
    Dataset ds = tiny_dataset();
    EncoderMap enc = fit_label_encoders(ds, categorical_columns());
    for (const auto& [column, table] : enc.codes) {
        std::set<int> codes;
        for (const auto& [value, code] : table) codes.insert(code);
        CHECK(codes.size() == table.size());  // distinct values, distinct codes
        CHECK(*codes.begin() == 0);
        CHECK(*codes.rbegin() == static_cast<int>(table.size()) - 1);
    }
}

TEST_CASE("default feature set has the 17 model inputs") {
    Dataset ds = tiny_dataset();
    EncoderMap enc = fit_label_encoders(ds, categorical_columns());
    FeatureMatrix m = apply_encoders(ds, enc, default_feature_columns());
    CHECK(m.cols() == 17);
    CHECK(m.rows() == ds.rows.size());
    CHECK(m.all_finite());
    CHECK(m.feature_names()[0] == "A1");
    CHECK(m.feature_names()[16] == "Class_ASD_Traits");
}

TEST_CASE("binary columns pass through unchanged") {
    Dataset ds = tiny_dataset();
    EncoderMap enc;  // not consulted for numeric columns
    std::vector<std::string> a_cols = {"A1", "A2", "A3", "A4", "A5",
                                       "A6", "A7", "A8", "A9", "A10"};
    FeatureMatrix m = apply_encoders(ds, enc, a_cols);
    for (std::size_t r = 0; r < ds.rows.size(); ++r) {
        for (std::size_t c = 0; c < 10; ++c) {
            CHECK(m.at(r, c) == static_cast<double>(ds.rows[r].a[c]));
        }
    }
}

TEST_CASE("unseen categorical value is a hard error naming value and column") {
    Dataset ds = tiny_dataset();
    EncoderMap enc = fit_label_encoders(ds, categorical_columns());
    ds.rows[0].ethnicity = "unseen ethnicity";
    CHECK_THROWS_WITH_AS(apply_encoders(ds, enc, default_feature_columns()),
                         doctest::Contains("unseen ethnicity"), DataError);
}

TEST_CASE("scaler computes population statistics") {
    FeatureMatrix m = make_matrix({{1}, {2}, {3}}, {"x"});
    ScalerParams s = fit_scaler(m, {"x"});
    CHECK(s.mean[0] == doctest::Approx(2.0));
    CHECK(s.stddev[0] == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
    CHECK(s.stddev[0] == doctest::Approx(0.8165).epsilon(1e-4));
}

TEST_CASE("constant column has zero std and scales to zero") {
    FeatureMatrix m = make_matrix({{5}, {5}}, {"x"});
    ScalerParams s = fit_scaler(m, {"x"});
    CHECK(s.mean[0] == doctest::Approx(5.0));
    CHECK(s.stddev[0] == 0.0);
    FeatureMatrix scaled = apply_scaler(m, s);
    CHECK(scaled.at(0, 0) == 0.0);
    CHECK(scaled.at(1, 0) == 0.0);
}

TEST_CASE("columns not named keep identity params") {
    FeatureMatrix m = make_matrix({{1, 9}, {2, 11}}, {"x", "y"});
    ScalerParams s = fit_scaler(m, {"x"});
    CHECK(s.mean[1] == 0.0);
    CHECK(s.stddev[1] == 1.0);
    FeatureMatrix scaled = apply_scaler(m, s);
    CHECK(scaled.at(0, 1) == 9.0);
    CHECK(scaled.at(1, 1) == 11.0);
}

TEST_CASE("scaling [1,2,3] by its own fit") {
    FeatureMatrix m = make_matrix({{1}, {2}, {3}}, {"x"});
    FeatureMatrix scaled = apply_scaler(m, fit_scaler(m, {"x"}));
    CHECK(scaled.at(0, 0) == doctest::Approx(-1.2247).epsilon(1e-4));
    CHECK(scaled.at(1, 0) == doctest::Approx(0.0));
    CHECK(scaled.at(2, 0) == doctest::Approx(1.2247).epsilon(1e-4));
}

TEST_CASE("identity params leave the matrix unchanged") {
    FeatureMatrix m = make_matrix({{3, 4}, {5, 6}});
    ScalerParams s = fit_scaler(m, {});
    FeatureMatrix scaled = apply_scaler(m, s);
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) CHECK(scaled.at(r, c) == m.at(r, c));
    }
}

TEST_CASE("scaler rejects mismatched matrices") {
    FeatureMatrix m = make_matrix({{1, 2}});
    ScalerParams s = fit_scaler(make_matrix({{1}}), {});
    CHECK_THROWS_AS(apply_scaler(m, s), DataError);
    CHECK_THROWS_AS(fit_scaler(FeatureMatrix(0, {"x"}), {"x"}), DataError);
}

TEST_CASE("self-scaled columns have mean 0 and population std 1") {
    SynthSpec spec;
    spec.n = 200;
    spec.seed = 5;
    Dataset ds = generate(spec);
    EncoderMap enc = fit_label_encoders(ds, categorical_columns());
    FeatureMatrix m = apply_encoders(ds, enc, default_feature_columns());
    FeatureMatrix scaled = apply_scaler(m, fit_scaler(m, default_feature_columns()));

    for (std::size_t c = 0; c < scaled.cols(); ++c) {
        double sum = 0;
        for (std::size_t r = 0; r < scaled.rows(); ++r) sum += scaled.at(r, c);
        const double mean = sum / static_cast<double>(scaled.rows());
        double ss = 0;
        for (std::size_t r = 0; r < scaled.rows(); ++r) {
            ss += (scaled.at(r, c) - mean) * (scaled.at(r, c) - mean);
        }
        const double stddev = std::sqrt(ss / static_cast<double>(scaled.rows()));
        // constant columns scale to all zeros instead
        bool constant = true;
        for (std::size_t r = 1; r < m.rows() && constant; ++r) {
            constant = m.at(r, c) == m.at(0, c);
        }
        if (constant) {
            CHECK(stddev == 0.0);
        } else {
            CHECK(mean == doctest::Approx(0.0).epsilon(1e-9));
            CHECK(stddev == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("scaler params depend only on the training matrix") {
    FeatureMatrix train = make_matrix({{1, 2}, {3, 4}, {5, 6}});
    ScalerParams before = fit_scaler(train, train.feature_names());
    // corrupt a would-be test matrix; params from the same train fit are identical
    FeatureMatrix test = make_matrix({{100, 200}});
    for (std::size_t c = 0; c < test.cols(); ++c) test.at(0, c) *= 7;
    ScalerParams after = fit_scaler(train, train.feature_names());
    CHECK(before.mean == after.mean);
    CHECK(before.stddev == after.stddev);
}

TEST_CASE("split sizes follow round(n * fraction)") {
    SplitSpec spec;
    spec.test_fraction = 0.05;
    spec.seed = 1;
    FeatureMatrix m(3043, {"x"});
    std::vector<int> y(3043, 0);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = static_cast<int>(i % 3);
    Split split = train_test_split(m, y, spec);
    CHECK(split.test_indices.size() == 152);
    CHECK(split.train_indices.size() == 2891);
}

TEST_CASE("degenerate two-row split keeps one row on each side") {
    SplitSpec spec;
    spec.test_fraction = 0.05;
    spec.seed = 1;
    Split split = train_test_split(make_matrix({{1}, {2}}), {0, 1}, spec);
    CHECK(split.test_indices.size() == 1);
    CHECK(split.train_indices.size() == 1);
}

TEST_CASE("same seed reproduces the same partition") {
    FeatureMatrix m(100, {"x"});
    std::vector<int> y(100, 0);
    SplitSpec spec;
    spec.seed = 77;
    Split a = train_test_split(m, y, spec);
    Split b = train_test_split(m, y, spec);
    CHECK(a.test_indices == b.test_indices);
    CHECK(a.train_indices == b.train_indices);

    spec.seed = 78;
    Split c = train_test_split(m, y, spec);
    CHECK(a.test_indices != c.test_indices);
}

TEST_CASE("split rejects a bad fraction") {
    FeatureMatrix m(10, {"x"});
    std::vector<int> y(10, 0);
    SplitSpec spec;
    spec.test_fraction = 0.0;
    CHECK_THROWS_AS(train_test_split(m, y, spec), DataError);
    spec.test_fraction = 1.0;
    CHECK_THROWS_AS(train_test_split(m, y, spec), DataError);
}

TEST_CASE("split needs at least two rows") {
    SplitSpec spec;
    spec.seed = 1;
    CHECK_THROWS_AS(train_test_split(make_matrix({{1}}), {0}, spec), DataError);
}

TEST_CASE("split partitions the index set") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const std::size_t n = 137;
        FeatureMatrix m(n, {"x"});
        std::vector<int> y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = static_cast<int>(i % 5);
        SplitSpec spec;
        spec.seed = seed;
        spec.test_fraction = 0.2;
        for (bool stratified : {false, true}) {
            spec.stratified = stratified;
            Split split = train_test_split(m, y, spec);
            std::set<std::size_t> all(split.train_indices.begin(), split.train_indices.end());
            for (std::size_t i : split.test_indices) {
                CHECK(all.insert(i).second);  // no overlap
            }
            CHECK(all.size() == n);
        }
    }
}

TEST_CASE("stratified split keeps class proportions within one row") {
    const std::size_t n = 200;
    FeatureMatrix m(n, {"x"});
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = i < 140 ? 0 : (i < 180 ? 1 : 2);
    SplitSpec spec;
    spec.seed = 5;
    spec.test_fraction = 0.1;
    spec.stratified = true;
    Split split = train_test_split(m, y, spec);
    CHECK(split.test_indices.size() == 20);

    std::map<int, int> test_counts;
    for (int label : split.test_y) test_counts[label]++;
    CHECK(std::abs(test_counts[0] - 14) <= 1);
    CHECK(std::abs(test_counts[1] - 4) <= 1);
    CHECK(std::abs(test_counts[2] - 2) <= 1);
}
