#ifndef MMBN_RENORMALIZE_HPP
#define MMBN_RENORMALIZE_HPP

#include <optional>
#include <vector>

#include "mmbn/params.hpp"
#include "mmbn/structure.hpp"

namespace mmbn {

// A child of the target whose parent pair is not connected by an edge
// in either direction, blocking renormalization.
struct ViolatingPair {
    int child = -1;
    int parent_a = -1;
    int parent_b = -1;
};

struct RenormCheck {
    bool renormalizable = false;
    std::vector<ViolatingPair> violations;
};

struct RenormReport {
    bool renormalizable = false;
    std::vector<ViolatingPair> violations;
    std::optional<ParamVector> normalized_params;
    // Max |P(y|x) before - after| over all evidence configurations;
    // NaN when the evidence space is too large to enumerate.
    double max_decision_deviation = 0.0;
};

// A subnormalized model can be renormalized without changing P(y|x)
// exactly when the parents of every child of y are moralized (pairwise
// adjacent); equivalently, when the children could be eliminated
// without adding edges.
RenormCheck check_renormalizable(const NetworkStructure& structure, int target);

// Converts a subnormalized parameter vector into proper CPTs without
// changing the decision function P(y|x).
//
// Non-target local functions are processed in reverse topological
// order. Normalizing node c's column for parent configuration z frees a
// factor rho_z = sum_a e^{w(a,z)}; the joint is preserved by folding
// ln rho_z into a covering function whose family contains all of z
// (for moralized parents the last such parent in topological order
// always qualifies). When several functions cover z the one processed
// latest is chosen, so factors flow toward the target. A function whose
// parents include no class variable may lose its factor outright when
// nothing covers it: a factor over evidence variables only cancels in
// P(y|x). Finally the target's own function is normalized by its joint
// column mass, which changes P(x) but not P(y|x).
ParamVector renormalize(const NetworkStructure& structure, const ParamVector& params, int target);

// Exact max over evidence configurations x and class assignments y of
// |P(y|x, w_before) - P(y|x, w_after)| by full enumeration.
double verify_decision_preserved(const NetworkStructure& structure, const ParamVector& before,
                                 const ParamVector& after, int target,
                                 long long evidence_cap = 1LL << 16);

// check + renormalize + (when enumerable) verify, in one record.
RenormReport renormalize_with_report(const NetworkStructure& structure, const ParamVector& params,
                                     int target, long long evidence_cap = 1LL << 16);

}  // namespace mmbn

#endif
