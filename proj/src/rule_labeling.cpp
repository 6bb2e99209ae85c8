#include "teachml/rule_labeling.hpp"

#include <fstream>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "teachml/csv.hpp"
#include "teachml/errors.hpp"

namespace teachml {

namespace {

const std::array<std::string_view, kNumMethodLabels> kMethodNames = {
    "None",
    "Technology-aided Instruction",
    "Antecedent-based Intervention",
    "Pivotal Response Training",
    "Peer-mediated Instruction and Intervention",
    "Picture Exchange Communication",
    "Task Analysis",
};

void check_rule(const Rule& rule) {
    if (rule.label < 1 || rule.label > 6) {
        throw DataError("rule label must be 1-6, got " + std::to_string(rule.label));
    }
    if (rule.conditions.empty()) {
        throw DataError("rule " + std::to_string(rule.label) + " has no conditions");
    }
    std::set<int> seen;
    for (const Condition& c : rule.conditions) {
        if (c.a_index < 1 || c.a_index > 10) {
            throw DataError("rule " + std::to_string(rule.label) + ": A index out of range");
        }
        if (c.required != 0 && c.required != 1) {
            throw DataError("rule " + std::to_string(rule.label) + ": value must be 0 or 1");
        }
        if (!seen.insert(c.a_index).second) {
            throw DataError("rule " + std::to_string(rule.label) + ": duplicate A" +
                            std::to_string(c.a_index));
        }
    }
}

}  // namespace

std::string_view method_name(int code) {
    if (code < 0 || code >= kNumMethodLabels) {
        throw std::invalid_argument("method code out of range: " + std::to_string(code));
    }
    return kMethodNames[static_cast<std::size_t>(code)];
}

const RuleSet& canonical_rules() {
    static const RuleSet rs = [] {
        RuleSet r;
        r.rules = {
            {1, {{5, 1}, {9, 1}, {10, 0}}},
            {2, {{6, 1}}},
            {3, {{1, 1}, {8, 1}}},
            {4, {{5, 1}, {4, 1}, {3, 1}}},
            {5, {{2, 1}, {9, 1}}},
            {6, {{7, 1}}},
        };
        return r;
    }();
    return rs;
}

int assign_label(const AVector& a, const RuleSet& rs) {
    for (const Rule& rule : rs.rules) {
        bool holds = true;
        for (const Condition& c : rule.conditions) {
            if (a[static_cast<std::size_t>(c.a_index - 1)] != c.required) {
                holds = false;
                break;
            }
        }
        if (holds) return rule.label;
    }
    return rs.default_label;
}

Dataset label_dataset(const Dataset& ds, const RuleSet& rs) {
    Dataset out = ds;
    for (Record& r : out.rows) {
        r.preferred_education = assign_label(r.a, rs);
    }
    return out;
}

long CoverageTable::total() const {
    return std::accumulate(counts.begin(), counts.end(), 0L);
}

CoverageTable rule_coverage(const RuleSet& rs) {
    CoverageTable table;
    for (int bits = 0; bits < 1024; ++bits) {
        AVector a{};
        for (int i = 0; i < 10; ++i) a[static_cast<std::size_t>(i)] = (bits >> i) & 1;
        table.counts[static_cast<std::size_t>(assign_label(a, rs))]++;
    }
    return table;
}

RuleSet parse_rules(std::istream& in) {
    RuleSet rs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = csv::trim(line);
        const std::size_t hash = t.find('#');
        if (hash != std::string::npos) t = csv::trim(t.substr(0, hash));
        if (t.empty()) continue;

        const std::size_t colon = t.find(':');
        if (colon == std::string::npos) {
            throw DataError("rules line " + std::to_string(line_no) +
                            ": expected '<label>: A<i>=<v> ...'");
        }

        Rule rule;
        try {
            rule.label = std::stoi(csv::trim(t.substr(0, colon)));
        } catch (const std::exception&) {
            throw DataError("rules line " + std::to_string(line_no) + ": bad label");
        }

        std::string clauses = t.substr(colon + 1);
        for (char& c : clauses) {
            if (c == ',') c = ' ';
        }
        std::istringstream cs(clauses);
        std::string clause;
        while (cs >> clause) {
            const std::size_t eq = clause.find('=');
            if (eq == std::string::npos || clause.empty() ||
                (clause[0] != 'A' && clause[0] != 'a')) {
                throw DataError("rules line " + std::to_string(line_no) + ": bad clause '" +
                                clause + "'");
            }
            Condition cond;
            try {
                cond.a_index = std::stoi(clause.substr(1, eq - 1));
                cond.required = std::stoi(clause.substr(eq + 1));
            } catch (const std::exception&) {
                throw DataError("rules line " + std::to_string(line_no) + ": bad clause '" +
                                clause + "'");
            }
            rule.conditions.push_back(cond);
        }
        check_rule(rule);
        rs.rules.push_back(std::move(rule));
    }
    if (rs.rules.empty()) throw DataError("rules file: no rules found");
    return rs;
}

RuleSet load_rules_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open rules file: " + path);
    return parse_rules(in);
}

std::string format_rules(const RuleSet& rs) {
    std::string out;
    for (const Rule& rule : rs.rules) {
        out += std::to_string(rule.label) + ":";
        for (const Condition& c : rule.conditions) {
            out += " A" + std::to_string(c.a_index) + "=" + std::to_string(c.required);
        }
        out += "\n";
    }
    return out;
}

}  // namespace teachml
