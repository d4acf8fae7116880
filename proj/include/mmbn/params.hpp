#ifndef MMBN_PARAMS_HPP
#define MMBN_PARAMS_HPP

#include <Eigen/Dense>

#include "mmbn/structure.hpp"

namespace mmbn {

// Deterministic CPT cells (theta = 0) are clamped here; e^-30 is
// negligible probabilistically while keeping all arithmetic finite.
inline constexpr double kLogZeroClamp = -30.0;

// Log-space CPT weights w indexed by the structure's flat (j, a, b)
// scheme. theta = e^w is the probability view.
class ParamVector {
public:
    ParamVector() = default;
    explicit ParamVector(Eigen::VectorXd w) : w_(std::move(w)) {}

    static ParamVector from_theta(const Eigen::VectorXd& theta);
    static ParamVector uniform(const NetworkStructure& structure);

    const Eigen::VectorXd& w() const { return w_; }
    Eigen::VectorXd& w() { return w_; }
    Eigen::VectorXd theta() const { return w_.array().exp(); }
    int dim() const { return static_cast<int>(w_.size()); }
    double operator[](int flat) const { return w_[flat]; }

    bool all_finite() const { return w_.allFinite(); }

private:
    Eigen::VectorXd w_;
};

// One entry per CPT column (j, b), ordered by flat column index
// (node order, then parent configuration): sum_a e^{w_{j,ab}} - 1.
Eigen::VectorXd normalization_residuals(const NetworkStructure& structure, const ParamVector& params);

// Every column sums to 1 within tol.
bool is_normalized(const NetworkStructure& structure, const ParamVector& params, double tol = 1e-10);
// Every column sums to at most 1 + tol.
bool is_subnormalized(const NetworkStructure& structure, const ParamVector& params, double tol = 1e-10);

}  // namespace mmbn

#endif
