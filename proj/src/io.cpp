#include "mmbn/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace mmbn {

namespace {

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

}  // namespace

NetworkStructure load_structure(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), ErrorCode::BadFile, "cannot open " + path);

    std::string line;
    require(static_cast<bool>(std::getline(in, line)), ErrorCode::BadFile, "empty network file");
    auto header = tokens(line);
    require(header.size() == 2 && header[0] == "nodes", ErrorCode::BadFile,
            "network file must start with 'nodes N'");
    const int n = std::stoi(header[1]);
    require(n > 0, ErrorCode::BadFile, "node count must be positive");

    std::vector<VariableSpec> variables;
    std::vector<std::vector<std::string>> parent_names;
    for (int j = 0; j < n; ++j) {
        require(static_cast<bool>(std::getline(in, line)), ErrorCode::BadFile, "truncated network file");
        auto toks = tokens(line);
        require(toks.size() >= 2, ErrorCode::BadFile, "bad node line: " + line);
        VariableSpec var;
        var.name = toks[0];
        var.arity = std::stoi(toks[1]);
        variables.push_back(var);
        std::vector<std::string> pnames(toks.begin() + 2, toks.end());
        if (pnames.size() == 1 && pnames[0] == "-") pnames.clear();
        parent_names.push_back(std::move(pnames));
    }

    require(static_cast<bool>(std::getline(in, line)), ErrorCode::BadFile, "missing class footer");
    auto footer = tokens(line);
    require(footer.size() >= 2 && footer[0] == "class", ErrorCode::BadFile,
            "network file must end with 'class <names>'");

    auto find = [&](const std::string& name) {
        for (int j = 0; j < n; ++j)
            if (variables[j].name == name) return j;
        fail(ErrorCode::BadFile, "unknown variable name " + name);
    };

    std::vector<std::vector<int>> parents(n);
    for (int j = 0; j < n; ++j)
        for (const auto& pname : parent_names[j]) parents[j].push_back(find(pname));
    std::vector<int> class_vars;
    for (size_t k = 1; k < footer.size(); ++k) class_vars.push_back(find(footer[k]));

    return NetworkStructure(std::move(variables), std::move(parents), std::move(class_vars));
}

void save_structure(const NetworkStructure& structure, const std::string& path) {
    std::ofstream out(path);
    require(out.good(), ErrorCode::BadFile, "cannot write " + path);
    out << "nodes " << structure.node_count() << "\n";
    for (int j = 0; j < structure.node_count(); ++j) {
        out << structure.name(j) << " " << structure.arity(j);
        if (structure.parents(j).empty()) {
            out << " -";
        } else {
            for (int p : structure.parents(j)) out << " " << structure.name(p);
        }
        out << "\n";
    }
    out << "class";
    for (int c : structure.class_vars()) out << " " << structure.name(c);
    out << "\n";
}

ParamVector load_params(const NetworkStructure& structure, const std::string& path) {
    std::ifstream in(path);
    require(in.good(), ErrorCode::BadFile, "cannot open " + path);

    Eigen::VectorXd theta = Eigen::VectorXd::Constant(structure.feature_dim(), -1.0);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto toks = tokens(line);
        require(toks.size() >= 3, ErrorCode::BadFile, "bad parameter line: " + line);
        const int j = structure.find_node(toks[0]);
        require(j >= 0, ErrorCode::BadFile, "unknown node " + toks[0]);
        const int b = std::stoi(toks[1]);
        require(b >= 0 && b < structure.parent_config_count(j), ErrorCode::BadFile,
                "parent configuration out of range on line: " + line);
        require(static_cast<int>(toks.size()) == 2 + structure.arity(j), ErrorCode::BadFile,
                "wrong value count for node " + toks[0]);
        for (int a = 0; a < structure.arity(j); ++a)
            theta[structure.feature_index(j, a, b)] = std::stod(toks[2 + a]);
    }
    require((theta.array() >= 0.0).all(), ErrorCode::BadFile, "parameter file has missing columns");
    return ParamVector::from_theta(theta);
}

void save_params(const NetworkStructure& structure, const ParamVector& params,
                 const std::string& path) {
    std::ofstream out(path);
    require(out.good(), ErrorCode::BadFile, "cannot write " + path);
    if (!is_normalized(structure, params, 1e-9)) out << "# unnormalized\n";
    out << std::setprecision(17);
    for (int j = 0; j < structure.node_count(); ++j) {
        for (int b = 0; b < structure.parent_config_count(j); ++b) {
            out << structure.name(j) << " " << b;
            for (int a = 0; a < structure.arity(j); ++a)
                out << " " << std::exp(params[structure.feature_index(j, a, b)]);
            out << "\n";
        }
    }
}

}  // namespace mmbn
