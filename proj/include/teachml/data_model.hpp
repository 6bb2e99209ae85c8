#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace teachml {

// The ten binary screening answers A1..A10.
using AVector = std::array<int, 10>;

enum class ColumnKind { Binary, Integer, Categorical, ClassFlag };

enum class AgeUnit { Months, Years };

struct Column {
    std::string name;
    ColumnKind kind;
};

// Column census of a source file. All loaded datasets are normalized to the
// canonical 19-column schema; `age_unit` controls unit conversion at load time.
struct DatasetSchema {
    std::vector<Column> columns;
    AgeUnit age_unit = AgeUnit::Months;

    bool has_column(const std::string& name) const;
};

// Canonical schema: Case_No, A1..A10, Age_Mons, Qchat-10-Score, Sex, Ethnicity,
// Jaundice, Family_mem_with_ASD, Who_completed_the_test, Class_ASD_Traits.
DatasetSchema canonical_schema(AgeUnit age_unit = AgeUnit::Months);

// Name of the synthesized target column added by rule labeling.
inline constexpr const char* kLabelColumn = "Preferred_Education";

struct Record {
    long case_no = 0;
    AVector a{};
    int qchat_score = 0;
    int age_months = 0;
    std::string sex;
    std::string ethnicity;
    std::string jaundice;
    std::string family_asd;
    std::string who_completed;
    std::string class_asd;
    // Present once rule labeling has run (or when loaded from a labeled CSV).
    std::optional<int> preferred_education;

    bool operator==(const Record&) const = default;
};

struct Dataset {
    DatasetSchema schema;
    std::vector<Record> rows;
    std::vector<std::string> provenance;

    bool labeled() const;
};

struct RowError {
    std::size_t row;  // 1-based data row index (header not counted)
    std::string column;
    std::string message;
};

struct ValidationReport {
    std::vector<RowError> row_errors;
    std::vector<std::string> warnings;
    std::size_t rows_accepted = 0;
    std::size_t rows_rejected = 0;

    bool clean() const { return row_errors.empty() && warnings.empty(); }
};

struct LoadResult {
    Dataset dataset;
    ValidationReport report;
};

// Maps source column names to canonical ones. The special key "__age_unit"
// ("months"/"years") may be carried in an alias file.
using AliasMap = std::map<std::string, std::string>;

AliasMap load_alias_file(std::istream& in);
AliasMap load_alias_file(const std::string& path);

// Reads a CSV with a mandatory header row. Rows that fail domain validation
// are rejected and reported, never silently dropped. Ages are converted to
// months when schema.age_unit is Years.
//
// Throws DataError when the stream is empty or a mandatory column is missing.
LoadResult load_dataset(std::istream& in, const DatasetSchema& schema,
                        const AliasMap& aliases = {},
                        const std::string& source_name = "<stream>");
LoadResult load_dataset_file(const std::string& path, const DatasetSchema& schema,
                             const AliasMap& aliases = {});

// Concatenates datasets sharing the canonical column set. Case numbers are
// reassigned sequentially from 1; provenance lists are concatenated.
// Throws DataError listing the column delta on schema mismatch.
Dataset merge_datasets(const std::vector<Dataset>& parts);

// Report-only re-check of an in-memory dataset: out-of-range values are
// errors, a Q-chat score that is not the sum of A1..A10 is a warning.
ValidationReport validate(const Dataset& ds);

struct SummaryStats {
    std::size_t n_rows = 0;
    std::map<std::string, std::map<std::string, long>> categorical_counts;
    double class_balance = 0.0;  // fraction of rows with Class_ASD_Traits == "Yes"
    std::array<double, 10> a_prevalence{};
    std::array<long, 11> qchat_histogram{};
    int age_min = 0;
    int age_max = 0;
    double age_mean = 0.0;
    std::map<int, long> label_counts;  // empty unless labeled
};

SummaryStats summarize(const Dataset& ds);

// Canonical CSV form; includes the Preferred_Education column when labeled.
void write_csv(const Dataset& ds, std::ostream& out);
void write_csv_file(const Dataset& ds, const std::string& path);

}  // namespace teachml
