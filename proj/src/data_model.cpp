#include "teachml/data_model.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "teachml/csv.hpp"
#include "teachml/errors.hpp"

namespace teachml {

namespace {

const std::array<const char*, 10> kAColumns = {"A1", "A2", "A3", "A4", "A5",
                                               "A6", "A7", "A8", "A9", "A10"};

bool parse_long(const std::string& s, long& out) {
    const std::string t = csv::trim(s);
    if (t.empty()) return false;
    std::size_t pos = 0;
    try {
        out = std::stol(t, &pos);
    } catch (const std::exception&) {
        return false;
    }
    return pos == t.size();
}

}  // namespace

bool DatasetSchema::has_column(const std::string& name) const {
    return std::any_of(columns.begin(), columns.end(),
                       [&](const Column& c) { return c.name == name; });
}

DatasetSchema canonical_schema(AgeUnit age_unit) {
    DatasetSchema s;
    s.age_unit = age_unit;
    s.columns.push_back({"Case_No", ColumnKind::Integer});
    for (const char* a : kAColumns) s.columns.push_back({a, ColumnKind::Binary});
    s.columns.push_back({"Age_Mons", ColumnKind::Integer});
    s.columns.push_back({"Qchat-10-Score", ColumnKind::Integer});
    s.columns.push_back({"Sex", ColumnKind::Categorical});
    s.columns.push_back({"Ethnicity", ColumnKind::Categorical});
    s.columns.push_back({"Jaundice", ColumnKind::Categorical});
    s.columns.push_back({"Family_mem_with_ASD", ColumnKind::Categorical});
    s.columns.push_back({"Who_completed_the_test", ColumnKind::Categorical});
    s.columns.push_back({"Class_ASD_Traits", ColumnKind::ClassFlag});
    return s;
}

bool Dataset::labeled() const {
    return !rows.empty() &&
           std::all_of(rows.begin(), rows.end(),
                       [](const Record& r) { return r.preferred_education.has_value(); });
}

AliasMap load_alias_file(std::istream& in) {
    AliasMap aliases;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = csv::trim(line);
        if (t.empty() || t[0] == '#') continue;
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw DataError("alias file: expected key=value, got '" + t + "'");
        }
        aliases[csv::trim(t.substr(0, eq))] = csv::trim(t.substr(eq + 1));
    }
    return aliases;
}

AliasMap load_alias_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open alias file: " + path);
    return load_alias_file(in);
}

LoadResult load_dataset(std::istream& in, const DatasetSchema& schema,
                        const AliasMap& aliases, const std::string& source_name) {
    std::string header_line;
    if (!std::getline(in, header_line)) {
        throw DataError(source_name + ": empty file");
    }

    // Map header fields to canonical names via the alias table.
    std::vector<std::string> header = csv::split_line(header_line);
    std::map<std::string, std::size_t> position;  // canonical name -> field index
    for (std::size_t i = 0; i < header.size(); ++i) {
        std::string name = csv::trim(header[i]);
        auto it = aliases.find(name);
        if (it != aliases.end()) name = it->second;
        position.emplace(name, i);
    }

    for (const Column& col : schema.columns) {
        if (!position.count(col.name)) {
            throw DataError(source_name + ": missing mandatory column '" + col.name + "'");
        }
    }
    const bool has_label_column = position.count(kLabelColumn) > 0;

    LoadResult result;
    result.dataset.schema = schema;
    result.dataset.schema.age_unit = AgeUnit::Months;  // normalized below
    result.dataset.provenance.push_back(source_name);

    std::set<std::string> known;
    for (const Column& col : schema.columns) known.insert(col.name);
    known.insert(kLabelColumn);
    for (const auto& [name, idx] : position) {
        if (!known.count(name)) {
            result.report.warnings.push_back("ignored column '" + name + "'");
        }
    }

    std::string line;
    std::size_t row_no = 0;
    while (std::getline(in, line)) {
        if (csv::trim(line).empty()) continue;
        ++row_no;
        std::vector<std::string> fields = csv::split_line(line);

        bool ok = true;
        auto reject = [&](const std::string& column, const std::string& msg) {
            result.report.row_errors.push_back({row_no, column, msg});
            ok = false;
        };
        auto cell = [&](const std::string& canonical) -> std::string {
            const std::size_t idx = position.at(canonical);
            if (idx >= fields.size()) return "";
            return csv::trim(fields[idx]);
        };

        Record rec;
        long v = 0;

        if (!parse_long(cell("Case_No"), v)) {
            reject("Case_No", "not an integer");
        } else {
            rec.case_no = v;
        }

        for (std::size_t i = 0; i < kAColumns.size(); ++i) {
            const std::string s = cell(kAColumns[i]);
            if (!parse_long(s, v) || (v != 0 && v != 1)) {
                reject(kAColumns[i], "not binary");
            } else {
                rec.a[i] = static_cast<int>(v);
            }
        }

        if (!parse_long(cell("Age_Mons"), v)) {
            reject("Age_Mons", "not an integer");
        } else {
            if (schema.age_unit == AgeUnit::Years) v *= 12;
            if (v <= 0) {
                reject("Age_Mons", "age must be positive");
            } else {
                rec.age_months = static_cast<int>(v);
            }
        }

        if (!parse_long(cell("Qchat-10-Score"), v) || v < 0 || v > 10) {
            reject("Qchat-10-Score", "not in [0,10]");
        } else {
            rec.qchat_score = static_cast<int>(v);
        }

        // Categorical values are taken verbatim (open vocabulary); only
        // missing cells are rejected.
        struct CatField {
            const char* column;
            std::string Record::* member;
        };
        static const CatField cat_fields[] = {
            {"Sex", &Record::sex},
            {"Ethnicity", &Record::ethnicity},
            {"Jaundice", &Record::jaundice},
            {"Family_mem_with_ASD", &Record::family_asd},
            {"Who_completed_the_test", &Record::who_completed},
            {"Class_ASD_Traits", &Record::class_asd},
        };
        for (const CatField& f : cat_fields) {
            const std::string s = cell(f.column);
            if (s.empty()) {
                reject(f.column, "missing value");
            } else {
                rec.*(f.member) = s;
            }
        }

        if (has_label_column) {
            const std::string s = cell(kLabelColumn);
            if (!s.empty()) {
                if (!parse_long(s, v) || v < 0 || v > 6) {
                    reject(kLabelColumn, "not a method code 0-6");
                } else {
                    rec.preferred_education = static_cast<int>(v);
                }
            }
        }

        if (ok) {
            result.dataset.rows.push_back(std::move(rec));
            ++result.report.rows_accepted;
        } else {
            ++result.report.rows_rejected;
        }
    }

    if (result.dataset.rows.empty()) {
        throw DataError(source_name + ": no valid rows (" +
                        std::to_string(result.report.rows_rejected) + " rejected)");
    }
    return result;
}

LoadResult load_dataset_file(const std::string& path, const DatasetSchema& schema,
                             const AliasMap& aliases) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open dataset: " + path);
    return load_dataset(in, schema, aliases, path);
}

Dataset merge_datasets(const std::vector<Dataset>& parts) {
    if (parts.empty()) throw DataError("merge: no datasets given");

    auto column_names = [](const Dataset& ds) {
        std::set<std::string> names;
        for (const Column& c : ds.schema.columns) names.insert(c.name);
        return names;
    };

    const std::set<std::string> base = column_names(parts.front());
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const std::set<std::string> other = column_names(parts[i]);
        if (other == base) continue;
        std::string delta;
        for (const std::string& n : base) {
            if (!other.count(n)) delta += " -" + n;
        }
        for (const std::string& n : other) {
            if (!base.count(n)) delta += " +" + n;
        }
        throw DataError("merge: schema mismatch in part " + std::to_string(i + 1) +
                        " (delta:" + delta + ")");
    }

    Dataset merged;
    merged.schema = parts.front().schema;
    merged.schema.age_unit = AgeUnit::Months;
    long next_case = 1;
    for (const Dataset& part : parts) {
        for (const Record& r : part.rows) {
            merged.rows.push_back(r);
            merged.rows.back().case_no = next_case++;
        }
        merged.provenance.insert(merged.provenance.end(), part.provenance.begin(),
                                 part.provenance.end());
    }
    return merged;
}

ValidationReport validate(const Dataset& ds) {
    ValidationReport report;
    std::size_t row_no = 0;
    for (const Record& r : ds.rows) {
        ++row_no;
        bool ok = true;
        auto flag = [&](const std::string& column, const std::string& msg) {
            report.row_errors.push_back({row_no, column, msg});
            ok = false;
        };

        for (std::size_t i = 0; i < r.a.size(); ++i) {
            if (r.a[i] != 0 && r.a[i] != 1) flag("A" + std::to_string(i + 1), "not binary");
        }
        if (r.qchat_score < 0 || r.qchat_score > 10) flag("Qchat-10-Score", "not in [0,10]");
        if (r.age_months <= 0) flag("Age_Mons", "age must be positive");
        if (r.preferred_education && (*r.preferred_education < 0 || *r.preferred_education > 6)) {
            flag(kLabelColumn, "not a method code 0-6");
        }

        int sum = 0;
        for (int a : r.a) sum += a;
        if (r.qchat_score != sum) {
            report.warnings.push_back("row " + std::to_string(row_no) +
                                      ": score/answer mismatch (Qchat-10-Score " +
                                      std::to_string(r.qchat_score) + ", sum of A1..A10 " +
                                      std::to_string(sum) + ")");
        }

        if (ok) {
            ++report.rows_accepted;
        } else {
            ++report.rows_rejected;
        }
    }
    return report;
}

SummaryStats summarize(const Dataset& ds) {
    SummaryStats stats;
    stats.n_rows = ds.rows.size();
    if (ds.rows.empty()) return stats;

    long yes = 0;
    std::array<long, 10> a_counts{};
    long age_sum = 0;
    stats.age_min = ds.rows.front().age_months;
    stats.age_max = ds.rows.front().age_months;

    for (const Record& r : ds.rows) {
        stats.categorical_counts["Sex"][r.sex]++;
        stats.categorical_counts["Ethnicity"][r.ethnicity]++;
        stats.categorical_counts["Jaundice"][r.jaundice]++;
        stats.categorical_counts["Family_mem_with_ASD"][r.family_asd]++;
        stats.categorical_counts["Who_completed_the_test"][r.who_completed]++;
        stats.categorical_counts["Class_ASD_Traits"][r.class_asd]++;
        if (r.class_asd == "Yes") ++yes;
        for (std::size_t i = 0; i < r.a.size(); ++i) a_counts[i] += r.a[i];
        if (r.qchat_score >= 0 && r.qchat_score <= 10) stats.qchat_histogram[r.qchat_score]++;
        age_sum += r.age_months;
        stats.age_min = std::min(stats.age_min, r.age_months);
        stats.age_max = std::max(stats.age_max, r.age_months);
        if (r.preferred_education) stats.label_counts[*r.preferred_education]++;
    }

    const double n = static_cast<double>(stats.n_rows);
    stats.class_balance = yes / n;
    for (std::size_t i = 0; i < a_counts.size(); ++i) stats.a_prevalence[i] = a_counts[i] / n;
    stats.age_mean = age_sum / n;
    return stats;
}

void write_csv(const Dataset& ds, std::ostream& out) {
    std::vector<std::string> header;
    for (const Column& c : ds.schema.columns) header.push_back(c.name);
    const bool labeled = ds.labeled();
    if (labeled) header.push_back(kLabelColumn);
    csv::write_row(out, header);

    for (const Record& r : ds.rows) {
        std::vector<std::string> fields;
        fields.push_back(std::to_string(r.case_no));
        for (int a : r.a) fields.push_back(std::to_string(a));
        fields.push_back(std::to_string(r.age_months));
        fields.push_back(std::to_string(r.qchat_score));
        fields.push_back(r.sex);
        fields.push_back(r.ethnicity);
        fields.push_back(r.jaundice);
        fields.push_back(r.family_asd);
        fields.push_back(r.who_completed);
        fields.push_back(r.class_asd);
        if (labeled) fields.push_back(std::to_string(*r.preferred_education));
        csv::write_row(out, fields);
    }
}

void write_csv_file(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write: " + path);
    write_csv(ds, out);
}

}  // namespace teachml
