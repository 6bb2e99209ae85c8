#include "teachml/synthetic.hpp"

#include <stdexcept>

#include "teachml/rng.hpp"

namespace teachml {

namespace {

void check_vocab(const WeightedVocab& vocab, const char* what) {
    if (vocab.empty()) {
        throw std::invalid_argument(std::string("synth spec: empty vocabulary for ") + what);
    }
    for (const auto& [value, weight] : vocab) {
        if (weight <= 0) {
            throw std::invalid_argument(std::string("synth spec: non-positive weight for ") +
                                        what + " value '" + value + "'");
        }
    }
}

const std::string& weighted_pick(const WeightedVocab& vocab, Rng& rng) {
    double total = 0;
    for (const auto& [value, weight] : vocab) total += weight;
    double x = rng.next_double() * total;
    for (const auto& [value, weight] : vocab) {
        x -= weight;
        if (x < 0) return value;
    }
    return vocab.back().first;
}

}  // namespace

Dataset generate(const SynthSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("synth spec: n must be >= 1");
    for (double p : spec.a_prevalence) {
        if (p < 0.0 || p > 1.0) {
            throw std::invalid_argument("synth spec: prevalence must be in [0,1]");
        }
    }
    if (spec.age_min_months < 1 || spec.age_max_months < spec.age_min_months) {
        throw std::invalid_argument("synth spec: bad age range");
    }
    check_vocab(spec.sex, "Sex");
    check_vocab(spec.ethnicity, "Ethnicity");
    check_vocab(spec.jaundice, "Jaundice");
    check_vocab(spec.family_asd, "Family_mem_with_ASD");
    check_vocab(spec.who_completed, "Who_completed_the_test");

    Dataset ds;
    ds.schema = canonical_schema();
    ds.provenance.push_back("synthetic(n=" + std::to_string(spec.n) +
                            ",seed=" + std::to_string(spec.seed) + ")");
    ds.rows.reserve(spec.n);

    Rng rng(spec.seed);
    for (std::size_t i = 0; i < spec.n; ++i) {
        Record r;
        r.case_no = static_cast<long>(i) + 1;
        int qchat = 0;
        for (std::size_t j = 0; j < r.a.size(); ++j) {
            r.a[j] = rng.bernoulli(spec.a_prevalence[j]) ? 1 : 0;
            qchat += r.a[j];
        }
        r.qchat_score = qchat;
        r.age_months = static_cast<int>(rng.uniform_int(spec.age_min_months, spec.age_max_months));
        r.sex = weighted_pick(spec.sex, rng);
        r.ethnicity = weighted_pick(spec.ethnicity, rng);
        r.jaundice = weighted_pick(spec.jaundice, rng);
        r.family_asd = weighted_pick(spec.family_asd, rng);
        r.who_completed = weighted_pick(spec.who_completed, rng);
        r.class_asd = qchat >= spec.class_rule_threshold ? "Yes" : "No";
        ds.rows.push_back(std::move(r));
    }
    return ds;
}

}  // namespace teachml
