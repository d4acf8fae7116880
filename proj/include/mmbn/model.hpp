#ifndef MMBN_MODEL_HPP
#define MMBN_MODEL_HPP

#include <functional>
#include <vector>

#include "mmbn/params.hpp"
#include "mmbn/structure.hpp"

namespace mmbn {

// One value per node, each in [0, arity).
using Assignment = std::vector<int>;

// Partial assignment: -1 marks an unset variable.
inline constexpr int kUnset = -1;

void check_assignment(const NetworkStructure& structure, const Assignment& x);

// Active flat feature indices of the indicator map phi(x): exactly one
// per node, at (j, a = x_j, b = config of x's parents). Sorted.
std::vector<int> feature_vector(const NetworkStructure& structure, const Assignment& x);

// phi(x) . w; equals log P(x) when w is normalized.
double log_prob(const NetworkStructure& structure, const ParamVector& params, const Assignment& x);

// Joint class-assignment score used by the decision rule: the sum of w
// over the local functions that involve a class variable (the class
// variables' own CPTs and their children's). Only these terms differ
// across class labels, so the argmax matches the full phi(x,y) . w rule.
double class_score(const NetworkStructure& structure, const ParamVector& params,
                   const Assignment& full);

// argmax over joint class assignments of phi(x, y) . w given evidence on
// the non-class variables. Evidence must cover the Markov blanket of the
// class variables; values outside the blanket are accepted and ignored.
// Ties break to the lexicographically smallest class assignment.
std::vector<int> predict(const NetworkStructure& structure, const ParamVector& params,
                         const Assignment& evidence, long long label_cap = 4096);

// Enumerates joint class assignments in lexicographic order (declared
// class-variable order, first variable most significant).
void for_each_class_assignment(const NetworkStructure& structure,
                               const std::function<void(const std::vector<int>&)>& fn);

// Enumerates all full assignments in lexicographic node order.
void for_each_assignment(const NetworkStructure& structure,
                         const std::function<void(const Assignment&)>& fn);

// Fills class variables of `evidence` with `labels` and returns the full
// assignment (evidence itself is not modified).
Assignment with_labels(const NetworkStructure& structure, const Assignment& evidence,
                       const std::vector<int>& labels);

}  // namespace mmbn

#endif
