#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "teachml/data_model.hpp"

namespace teachml {

// Method codes 0..6. 0 means no special education method; 1..6 are the six
// teaching methods, in rule-table column order.
inline constexpr int kNumMethodLabels = 7;

// Human-readable name for a method code. Throws std::invalid_argument for
// codes outside 0..6.
std::string_view method_name(int code);

struct Condition {
    int a_index = 0;  // 1-based, A1..A10
    int required = 0; // 0 or 1
};

struct Rule {
    int label = 0;  // 1..6
    std::vector<Condition> conditions;
};

// Ordered rule list; position is priority (first match wins). Label 0 is
// assigned when no rule fires.
struct RuleSet {
    std::vector<Rule> rules;
    int default_label = 0;
};

// The built-in rules:
//   1: A5=1 A9=1 A10=0    Technology-aided Instruction
//   2: A6=1               Antecedent-based Intervention
//   3: A1=1 A8=1          Pivotal Response Training
//   4: A5=1 A4=1 A3=1     Peer-mediated Instruction and Intervention
//   5: A2=1 A9=1          Picture Exchange Communication
//   6: A7=1               Task Analysis
const RuleSet& canonical_rules();

// First rule (in priority order) whose conditions all hold; default when none.
int assign_label(const AVector& a, const RuleSet& rs);

// Copy of `ds` with the Preferred_Education column (re)computed row-wise.
Dataset label_dataset(const Dataset& ds, const RuleSet& rs);

// Label counts over all 2^10 answer vectors; counts sum to 1024.
struct CoverageTable {
    std::array<long, kNumMethodLabels> counts{};
    long total() const;
};

CoverageTable rule_coverage(const RuleSet& rs);

// Declarative rule file, one rule per line in priority order:
//   <label>: A<i>=<v> A<i>=<v> ...
// Clauses may be separated by spaces or commas; '#' starts a comment.
RuleSet parse_rules(std::istream& in);
RuleSet load_rules_file(const std::string& path);
std::string format_rules(const RuleSet& rs);

}  // namespace teachml
