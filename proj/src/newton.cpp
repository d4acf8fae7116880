#include "mmbn/newton.hpp"

#include <cmath>

namespace mmbn {

namespace {

// LDLT with escalating diagonal regularization. The barrier Hessian is
// positive definite on the strict interior, so regularization only
// engages when rounding near the boundary destroys definiteness.
Eigen::VectorXd solve_newton_system(Eigen::MatrixXd hess, const Eigen::VectorXd& grad) {
    double shift = 1e-10;
    for (int attempt = 0; attempt < 4; ++attempt) {
        if (attempt > 0) {
            hess.diagonal().array() += shift;
            shift *= 100.0;
        }
        Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
        if (ldlt.info() != Eigen::Success) continue;
        Eigen::VectorXd step = ldlt.solve(-grad);
        if (!step.allFinite()) continue;
        // Definiteness check: a Newton step must be a descent direction.
        if (grad.dot(step) < 0.0 || grad.norm() == 0.0) return step;
    }
    fail(ErrorCode::LinearSolveFailure, "Hessian factorization failed after regularization");
}

}  // namespace

NewtonResult newton_minimize(const NewtonObjective& objective, Eigen::VectorXd start,
                             const NewtonOptions& options) {
    require(objective.strictly_feasible(start), ErrorCode::InfeasiblePoint,
            "Newton start is not strictly feasible");

    NewtonResult result;
    result.z = std::move(start);
    result.value = objective.value(result.z);

    Eigen::VectorXd grad(objective.dim());
    Eigen::MatrixXd hess(objective.dim(), objective.dim());

    for (int iter = 0; iter <= options.max_iters; ++iter) {
        objective.derivatives(result.z, grad, hess);
        result.grad_norm = grad.norm();
        if (result.grad_norm <= options.grad_tol) {
            result.converged = true;
            return result;
        }
        if (iter == options.max_iters) break;

        const Eigen::VectorXd step = solve_newton_system(hess, grad);
        const double directional = grad.dot(step);

        double t = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 64; ++bt) {
            Eigen::VectorXd candidate = result.z + t * step;
            if (objective.strictly_feasible(candidate)) {
                const double candidate_value = objective.value(candidate);
                if (candidate_value <= result.value + options.sufficient_decrease * t * directional) {
                    result.z = std::move(candidate);
                    result.value = candidate_value;
                    accepted = true;
                    break;
                }
            }
            t *= options.backtrack_shrink;
        }
        ++result.iterations;
        if (!accepted) {
            // Line search exhausted: we are at numerical stationarity for
            // this scale. Report the current gradient norm honestly.
            objective.derivatives(result.z, grad, hess);
            result.grad_norm = grad.norm();
            result.converged = result.grad_norm <= options.grad_tol;
            return result;
        }
    }
    objective.derivatives(result.z, grad, hess);
    result.grad_norm = grad.norm();
    result.converged = result.grad_norm <= options.grad_tol;
    return result;
}

}  // namespace mmbn
