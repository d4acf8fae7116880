#ifndef MMBN_DATASET_HPP
#define MMBN_DATASET_HPP

#include <string>
#include <vector>

#include "mmbn/model.hpp"

namespace mmbn {

// Complete discrete assignments over named columns.
struct DiscreteDataset {
    std::vector<std::string> columns;
    std::vector<Assignment> rows;

    int count() const { return static_cast<int>(rows.size()); }
};

// Column names must match the structure's node names (same order) and
// every cell must lie in [0, arity). Throws SchemaMismatch or
// InvalidAssignment.
void check_dataset(const NetworkStructure& structure, const DiscreteDataset& data);

// Strict CSV: header row of variable names, integer cells. Any
// out-of-range or non-integer cell is a load error once bound to a
// structure via check_dataset; parsing itself rejects non-integers.
DiscreteDataset load_dataset_csv(const std::string& path);
void save_dataset_csv(const DiscreteDataset& data, const std::string& path);

// Rows [begin, begin + count) of a pool, wrapping modulo the pool size
// only when the pool is exhausted.
DiscreteDataset take_block(const DiscreteDataset& pool, int begin, int count);

}  // namespace mmbn

#endif
