#ifndef MMBN_IO_HPP
#define MMBN_IO_HPP

#include <string>

#include "mmbn/params.hpp"
#include "mmbn/structure.hpp"

namespace mmbn {

// Network file, line oriented:
//   nodes N
//   <name> <arity> <parent names...>     (`-` when the node has no parents)
//   ...
//   class <name list>
NetworkStructure load_structure(const std::string& path);
void save_structure(const NetworkStructure& structure, const std::string& path);

// Parameter file: one line per CPT column,
//   <node_name> <b_index> <theta_0> ... <theta_{arity-1}>
// Values are probabilities; the loader converts to w = ln theta, clamping
// zeros at kLogZeroClamp. Lines starting with '#' are comments; the
// writer marks files whose columns do not sum to 1 with `# unnormalized`.
ParamVector load_params(const NetworkStructure& structure, const std::string& path);
void save_params(const NetworkStructure& structure, const ParamVector& params,
                 const std::string& path);

}  // namespace mmbn

#endif
