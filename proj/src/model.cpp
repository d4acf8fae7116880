#include "mmbn/model.hpp"

#include <algorithm>
#include <set>

namespace mmbn {

void check_assignment(const NetworkStructure& structure, const Assignment& x) {
    require(static_cast<int>(x.size()) == structure.node_count(), ErrorCode::InvalidAssignment,
            "assignment length does not match node count");
    for (int j = 0; j < structure.node_count(); ++j)
        require(x[j] >= 0 && x[j] < structure.arity(j), ErrorCode::InvalidAssignment,
                "value out of range for node " + structure.name(j));
}

std::vector<int> feature_vector(const NetworkStructure& structure, const Assignment& x) {
    check_assignment(structure, x);
    std::vector<int> active;
    active.reserve(structure.node_count());
    for (int j = 0; j < structure.node_count(); ++j)
        active.push_back(structure.feature_index(j, x[j], structure.parent_config_index(j, x)));
    return active;
}

double log_prob(const NetworkStructure& structure, const ParamVector& params, const Assignment& x) {
    double sum = 0.0;
    for (int f : feature_vector(structure, x)) sum += params[f];
    return sum;
}

double class_score(const NetworkStructure& structure, const ParamVector& params,
                   const Assignment& full) {
    double score = 0.0;
    for (int j = 0; j < structure.node_count(); ++j) {
        bool involved = structure.is_class_var(j);
        if (!involved)
            for (int p : structure.parents(j))
                if (structure.is_class_var(p)) { involved = true; break; }
        if (involved)
            score += params[structure.feature_index(j, full[j], structure.parent_config_index(j, full))];
    }
    return score;
}

namespace {

// Variables the decision rule reads: class vars, their parents, their
// children, and the children's other parents.
std::set<int> decision_support(const NetworkStructure& structure) {
    std::set<int> support;
    for (int c : structure.class_vars()) {
        support.insert(c);
        for (int b : markov_blanket(structure, c)) support.insert(b);
    }
    return support;
}

}  // namespace

std::vector<int> predict(const NetworkStructure& structure, const ParamVector& params,
                         const Assignment& evidence, long long label_cap) {
    require(static_cast<int>(evidence.size()) == structure.node_count(), ErrorCode::InvalidAssignment,
            "evidence length does not match node count");
    const auto support = decision_support(structure);
    for (int j : support) {
        if (structure.is_class_var(j)) continue;
        require(evidence[j] != kUnset, ErrorCode::MissingEvidence,
                "evidence missing for blanket variable " + structure.name(j));
        require(evidence[j] >= 0 && evidence[j] < structure.arity(j), ErrorCode::InvalidAssignment,
                "evidence out of range for node " + structure.name(j));
    }
    require(structure.class_space_size(label_cap) <= label_cap, ErrorCode::LabelSpaceTooLarge,
            "joint class space exceeds enumeration cap");

    // Variables outside the decision support never change the argmax;
    // fill them with 0 so class_score sees a full assignment.
    Assignment full = evidence;
    for (int j = 0; j < structure.node_count(); ++j)
        if (full[j] == kUnset) full[j] = 0;

    std::vector<int> best;
    double best_score = 0.0;
    for_each_class_assignment(structure, [&](const std::vector<int>& labels) {
        for (size_t k = 0; k < labels.size(); ++k) full[structure.class_vars()[k]] = labels[k];
        const double score = class_score(structure, params, full);
        if (best.empty() || score > best_score) {
            best = labels;
            best_score = score;
        }
    });
    return best;
}

void for_each_class_assignment(const NetworkStructure& structure,
                               const std::function<void(const std::vector<int>&)>& fn) {
    const auto& cls = structure.class_vars();
    std::vector<int> labels(cls.size(), 0);
    while (true) {
        fn(labels);
        int k = static_cast<int>(labels.size()) - 1;
        while (k >= 0 && labels[k] + 1 == structure.arity(cls[k])) labels[k--] = 0;
        if (k < 0) break;
        ++labels[k];
    }
}

void for_each_assignment(const NetworkStructure& structure,
                         const std::function<void(const Assignment&)>& fn) {
    Assignment x(structure.node_count(), 0);
    while (true) {
        fn(x);
        int j = structure.node_count() - 1;
        while (j >= 0 && x[j] + 1 == structure.arity(j)) x[j--] = 0;
        if (j < 0) break;
        ++x[j];
    }
}

Assignment with_labels(const NetworkStructure& structure, const Assignment& evidence,
                       const std::vector<int>& labels) {
    require(labels.size() == structure.class_vars().size(), ErrorCode::InvalidLabelVector,
            "label vector length does not match class variable count");
    Assignment full = evidence;
    for (size_t k = 0; k < labels.size(); ++k) full[structure.class_vars()[k]] = labels[k];
    return full;
}

}  // namespace mmbn
