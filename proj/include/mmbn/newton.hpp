#ifndef MMBN_NEWTON_HPP
#define MMBN_NEWTON_HPP

#include <Eigen/Dense>

#include "mmbn/errors.hpp"

namespace mmbn {

// Smooth strictly convex objective over an open feasible set. The
// barrier objective implements this; tests hook simple quadratics.
class NewtonObjective {
public:
    virtual ~NewtonObjective() = default;
    virtual int dim() const = 0;
    virtual bool strictly_feasible(const Eigen::VectorXd& z) const = 0;
    virtual double value(const Eigen::VectorXd& z) const = 0;
    virtual void derivatives(const Eigen::VectorXd& z, Eigen::VectorXd& grad,
                             Eigen::MatrixXd& hess) const = 0;
};

struct NewtonOptions {
    double grad_tol = 1e-8;
    int max_iters = 20;
    double backtrack_shrink = 0.5;
    double sufficient_decrease = 1e-4;
};

struct NewtonResult {
    Eigen::VectorXd z;
    double value = 0.0;
    double grad_norm = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Damped Newton with backtracking line search. Steps that leave the
// strict interior are rejected by the line search; accepted steps never
// increase the objective. The Hessian solve falls back to diagonal
// regularization (add 1e-10 I, retried up to 3 times) before reporting
// LinearSolveFailure.
NewtonResult newton_minimize(const NewtonObjective& objective, Eigen::VectorXd start,
                             const NewtonOptions& options);

}  // namespace mmbn

#endif
