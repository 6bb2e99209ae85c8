#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "teachml/data_model.hpp"

namespace teachml {

// Weighted vocabulary for one categorical column.
using WeightedVocab = std::vector<std::pair<std::string, double>>;

// Everything the generator needs; fully determines the dataset together with
// the seed. The default item prevalence models a trait-prevalent screened
// population (most answers flagged), which keeps every rule label populated
// and the four models separated the way they are on real screening tables.
struct SynthSpec {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::array<double, 10> a_prevalence = {0.8, 0.8, 0.8, 0.8, 0.8,
                                           0.8, 0.8, 0.8, 0.8, 0.8};
    int age_min_months = 12;
    int age_max_months = 48;
    WeightedVocab sex = {{"f", 1}, {"m", 1}};
    WeightedVocab ethnicity = {{"asian", 2},          {"black", 1},
                               {"hispanic", 1},       {"latino", 1},
                               {"middle eastern", 2}, {"others", 1},
                               {"white european", 3}};
    WeightedVocab jaundice = {{"no", 7}, {"yes", 3}};
    WeightedVocab family_asd = {{"no", 8}, {"yes", 2}};
    WeightedVocab who_completed = {{"family member", 6},
                                   {"health care professional", 2},
                                   {"others", 1},
                                   {"self", 1}};
    int class_rule_threshold = 4;  // Class_ASD_Traits = Yes iff qchat >= this
};

// Deterministic schema-conformant dataset. Every generated row satisfies
// qchat = sum(A1..A10), so the validator reports it clean.
// Throws std::invalid_argument on an invalid spec.
Dataset generate(const SynthSpec& spec);

}  // namespace teachml
