#ifndef MMBN_MULTIVARIATE_HPP
#define MMBN_MULTIVARIATE_HPP

#include <vector>

#include "mmbn/barrier.hpp"
#include "mmbn/dataset.hpp"
#include "mmbn/margin.hpp"

namespace mmbn {

// Chain-structured class variables y_1 -> ... -> y_L with per-position
// observation children. Requirements checked by analyze():
//   - class variables form a single simple directed chain (class parents
//     only along chain edges; the root may have none);
//   - the chain root has no class parents, later positions exactly one;
//   - every non-class node has at most one class parent (its position);
//   - class variables may additionally have evidence parents.
// Under these, phi(x, y) . w decomposes into per-position unary scores
// and chain-edge pairwise scores, which is what Viterbi needs.
struct ChainLabelModel {
    std::vector<int> positions;                    // class vars in chain order
    std::vector<std::vector<int>> children_at;     // observation children per position
    std::vector<int> constant_nodes;               // families without class vars

    static ChainLabelModel analyze(const NetworkStructure& structure);
    int length() const { return static_cast<int>(positions.size()); }
};

// Number of differing positions.
int hamming_margin(const std::vector<int>& y_true, const std::vector<int>& y);

// gamma * delta_(i,y) - eps_i - Delta(i,y) . w; positive means the
// constraint for labeling y of example i is violated.
double violation_score(const NetworkStructure& structure, const DiscreteDataset& data, int i,
                       const std::vector<int>& labels, const Eigen::VectorXd& w, double gamma,
                       double eps_i);

enum class GenerationMethod { Viterbi, Exhaustive };

// Most violated labeling for example i: argmax_y of
// gamma * delta_(i,y) + phi(x^i, y) . w (the eps_i and true-label terms
// are constant in y). Ties break to the lexicographically smallest
// label vector. Viterbi requires a chain label structure; exhaustive
// enumerates label spaces up to 2^20.
std::vector<int> generate_constraint(const NetworkStructure& structure, const DiscreteDataset& data,
                                     int i, const Eigen::VectorXd& w, double gamma,
                                     GenerationMethod method);

// MAP labeling of example i's class chain given its evidence
// (generate_constraint at gamma = 0).
std::vector<int> map_labels(const NetworkStructure& structure, const DiscreteDataset& data, int i,
                            const Eigen::VectorXd& w, GenerationMethod method);

struct PoolEntry {
    int example = 0;
    std::vector<int> labels;
    double violation_at_add = 0.0;
    int round_added = 0;
};

struct ConstraintPool {
    std::vector<PoolEntry> entries;  // no duplicate (example, labels) pairs

    bool contains(int example, const std::vector<int>& labels) const;
    std::string dump() const;  // one line per entry
};

struct CuttingPlaneConfig {
    double violation_tol = 1e-6;
    int max_rounds = 60;
    int constraints_per_example = 1;  // >1 uses exhaustive top-k generation
    GenerationMethod method = GenerationMethod::Viterbi;
    double warm_start_padding = 1e-3;
};

struct CuttingPlaneResult {
    Solution solution;
    ConstraintPool pool;
    MarginProblem restricted;  // the pooled problem the solution solves
    int rounds = 0;
    bool max_rounds_exceeded = false;
};

// Constraint generation for the exponential label space: start from the
// zero rows (i, y^i), alternate barrier solves on the active pool with
// one most-violated labeling per example per round, stop when nothing
// violates by more than violation_tol.
CuttingPlaneResult cutting_plane_solve(const NetworkStructure& structure,
                                       const DiscreteDataset& data, double reg,
                                       const BarrierConfig& config,
                                       const CuttingPlaneConfig& cp_config = {});

}  // namespace mmbn

#endif
