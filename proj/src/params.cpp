#include "mmbn/params.hpp"

#include <cmath>

namespace mmbn {

ParamVector ParamVector::from_theta(const Eigen::VectorXd& theta) {
    Eigen::VectorXd w(theta.size());
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
        require(theta[i] >= 0.0 && std::isfinite(theta[i]), ErrorCode::BadFile,
                "theta entries must be finite and nonnegative");
        w[i] = theta[i] > 0.0 ? std::max(std::log(theta[i]), kLogZeroClamp) : kLogZeroClamp;
    }
    return ParamVector(std::move(w));
}

ParamVector ParamVector::uniform(const NetworkStructure& structure) {
    Eigen::VectorXd w(structure.feature_dim());
    for (int j = 0; j < structure.node_count(); ++j) {
        const double v = std::log(1.0 / structure.arity(j));
        for (int b = 0; b < structure.parent_config_count(j); ++b)
            for (int a = 0; a < structure.arity(j); ++a)
                w[structure.feature_index(j, a, b)] = v;
    }
    return ParamVector(std::move(w));
}

Eigen::VectorXd normalization_residuals(const NetworkStructure& structure, const ParamVector& params) {
    Eigen::VectorXd residuals(structure.column_count());
    int col = 0;
    for (int j = 0; j < structure.node_count(); ++j) {
        for (int b = 0; b < structure.parent_config_count(j); ++b, ++col) {
            double sum = 0.0;
            for (int a = 0; a < structure.arity(j); ++a)
                sum += std::exp(params[structure.feature_index(j, a, b)]);
            residuals[col] = sum - 1.0;
        }
    }
    return residuals;
}

bool is_normalized(const NetworkStructure& structure, const ParamVector& params, double tol) {
    return normalization_residuals(structure, params).cwiseAbs().maxCoeff() <= tol;
}

bool is_subnormalized(const NetworkStructure& structure, const ParamVector& params, double tol) {
    return normalization_residuals(structure, params).maxCoeff() <= tol;
}

}  // namespace mmbn
