#ifndef MMBN_STRUCTURE_HPP
#define MMBN_STRUCTURE_HPP

#include <string>
#include <vector>

#include "mmbn/errors.hpp"

namespace mmbn {

struct VariableSpec {
    std::string name;
    int arity = 2;
};

// One CPT cell: node j, child value a, parent configuration b.
// Parent configurations are indexed row-major over the declared parent
// order (first parent varies slowest, last parent fastest).
struct CptIndex {
    int node = 0;
    int value = 0;
    int parent_config = 0;
};

// Directed acyclic model over discrete variables. Immutable after
// construction; the constructor validates acyclicity, arities, parent
// indices and class variables, and precomputes the flat CPT indexing
// used by every feature operation:
//
//   flat(j, a, b) = offset(j) + b * arity(j) + a
//
// so that the `arity(j)` cells of one parent configuration (one CPT
// column, the unit of normalization) are contiguous.
class NetworkStructure {
public:
    NetworkStructure(std::vector<VariableSpec> variables,
                     std::vector<std::vector<int>> parents,
                     std::vector<int> class_vars);

    int node_count() const { return static_cast<int>(variables_.size()); }
    const std::string& name(int j) const { return variables_[j].name; }
    int arity(int j) const { return variables_[j].arity; }
    const std::vector<int>& parents(int j) const { return parents_[j]; }
    const std::vector<int>& children(int j) const { return children_[j]; }
    const std::vector<int>& class_vars() const { return class_vars_; }
    bool is_class_var(int j) const { return is_class_[j]; }
    const std::vector<int>& topological_order() const { return topo_order_; }

    // Flat feature indexing.
    int feature_dim() const { return feature_dim_; }
    int feature_offset(int j) const { return offsets_[j]; }
    int parent_config_count(int j) const { return parent_configs_[j]; }
    int column_count() const { return column_count_; }
    int feature_index(int j, int a, int b) const { return offsets_[j] + b * arity(j) + a; }
    CptIndex unflatten(int flat) const;

    // Parent configuration index of node j under a full assignment.
    int parent_config_index(int j, const std::vector<int>& assignment) const;

    // -1 when no variable has that name.
    int find_node(const std::string& name) const;

    // Number of joint class assignments (product of class arities),
    // saturating at `cap + 1` to keep the product from overflowing.
    long long class_space_size(long long cap = 1LL << 40) const;

private:
    std::vector<VariableSpec> variables_;
    std::vector<std::vector<int>> parents_;
    std::vector<std::vector<int>> children_;
    std::vector<int> class_vars_;
    std::vector<char> is_class_;
    std::vector<int> topo_order_;
    std::vector<int> offsets_;
    std::vector<int> parent_configs_;
    int feature_dim_ = 0;
    int column_count_ = 0;
};

// Checks the structural invariants and returns a topological order
// (deterministic: among ready nodes, lowest index first). Throws
// CycleDetected, BadArity, BadParentIndex or BadClassVar.
std::vector<int> validate_structure(const std::vector<VariableSpec>& variables,
                                    const std::vector<std::vector<int>>& parents,
                                    const std::vector<int>& class_vars);
std::vector<int> validate_structure(const NetworkStructure& structure);

// Parents, children and children's other parents of `target`.
// Sorted, does not contain `target` itself.
std::vector<int> markov_blanket(const NetworkStructure& structure, int target);

}  // namespace mmbn

#endif
