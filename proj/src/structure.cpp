#include "mmbn/structure.hpp"

#include <algorithm>
#include <set>

namespace mmbn {

std::vector<int> validate_structure(const std::vector<VariableSpec>& variables,
                                    const std::vector<std::vector<int>>& parents,
                                    const std::vector<int>& class_vars) {
    const int n = static_cast<int>(variables.size());
    require(parents.size() == variables.size(), ErrorCode::BadParentIndex,
            "parent list count does not match node count");
    for (int j = 0; j < n; ++j) {
        require(variables[j].arity >= 2, ErrorCode::BadArity,
                "node " + variables[j].name + " has arity " + std::to_string(variables[j].arity));
        std::set<int> seen;
        for (int p : parents[j]) {
            require(p >= 0 && p < n, ErrorCode::BadParentIndex,
                    "node " + variables[j].name + " has parent index " + std::to_string(p));
            require(p != j, ErrorCode::BadParentIndex,
                    "node " + variables[j].name + " is its own parent");
            require(seen.insert(p).second, ErrorCode::BadParentIndex,
                    "node " + variables[j].name + " lists a parent twice");
        }
    }
    require(!class_vars.empty(), ErrorCode::BadClassVar, "no class variable designated");
    std::set<int> cls;
    for (int c : class_vars) {
        require(c >= 0 && c < n, ErrorCode::BadClassVar, "class index " + std::to_string(c));
        require(cls.insert(c).second, ErrorCode::BadClassVar, "duplicate class variable");
    }

    // Kahn's algorithm, lowest ready index first for determinism.
    std::vector<int> remaining(n);
    for (int j = 0; j < n; ++j) remaining[j] = static_cast<int>(parents[j].size());
    std::vector<std::vector<int>> children(n);
    for (int j = 0; j < n; ++j)
        for (int p : parents[j]) children[p].push_back(j);

    std::set<int> ready;
    for (int j = 0; j < n; ++j)
        if (remaining[j] == 0) ready.insert(j);

    std::vector<int> order;
    order.reserve(n);
    while (!ready.empty()) {
        int j = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(j);
        for (int c : children[j])
            if (--remaining[c] == 0) ready.insert(c);
    }
    require(static_cast<int>(order.size()) == n, ErrorCode::CycleDetected,
            "parent relation contains a directed cycle");
    return order;
}

std::vector<int> validate_structure(const NetworkStructure& structure) {
    return structure.topological_order();
}

NetworkStructure::NetworkStructure(std::vector<VariableSpec> variables,
                                   std::vector<std::vector<int>> parents,
                                   std::vector<int> class_vars)
    : variables_(std::move(variables)),
      parents_(std::move(parents)),
      class_vars_(std::move(class_vars)) {
    topo_order_ = validate_structure(variables_, parents_, class_vars_);

    const int n = node_count();
    children_.assign(n, {});
    for (int j = 0; j < n; ++j)
        for (int p : parents_[j]) children_[p].push_back(j);
    for (auto& c : children_) std::sort(c.begin(), c.end());

    is_class_.assign(n, 0);
    for (int c : class_vars_) is_class_[c] = 1;

    offsets_.resize(n);
    parent_configs_.resize(n);
    for (int j = 0; j < n; ++j) {
        int configs = 1;
        for (int p : parents_[j]) configs *= arity(p);
        parent_configs_[j] = configs;
        offsets_[j] = feature_dim_;
        feature_dim_ += configs * arity(j);
        column_count_ += configs;
    }
}

CptIndex NetworkStructure::unflatten(int flat) const {
    int j = node_count() - 1;
    while (offsets_[j] > flat) --j;
    const int local = flat - offsets_[j];
    return CptIndex{j, local % arity(j), local / arity(j)};
}

int NetworkStructure::parent_config_index(int j, const std::vector<int>& assignment) const {
    int b = 0;
    for (int p : parents_[j]) b = b * arity(p) + assignment[p];
    return b;
}

int NetworkStructure::find_node(const std::string& name) const {
    for (int j = 0; j < node_count(); ++j)
        if (variables_[j].name == name) return j;
    return -1;
}

long long NetworkStructure::class_space_size(long long cap) const {
    long long size = 1;
    for (int c : class_vars_) {
        size *= arity(c);
        if (size > cap) return cap + 1;
    }
    return size;
}

std::vector<int> markov_blanket(const NetworkStructure& structure, int target) {
    require(target >= 0 && target < structure.node_count(), ErrorCode::BadClassVar,
            "blanket target out of range");
    std::set<int> blanket(structure.parents(target).begin(), structure.parents(target).end());
    for (int c : structure.children(target)) {
        blanket.insert(c);
        for (int p : structure.parents(c)) blanket.insert(p);
    }
    blanket.erase(target);
    return std::vector<int>(blanket.begin(), blanket.end());
}

}  // namespace mmbn
