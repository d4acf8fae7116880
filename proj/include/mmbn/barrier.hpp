#ifndef MMBN_BARRIER_HPP
#define MMBN_BARRIER_HPP

#include <limits>
#include <string>
#include <vector>

#include "mmbn/margin.hpp"
#include "mmbn/newton.hpp"
#include "mmbn/params.hpp"

namespace mmbn {

// Which normalization constraint accompanies the margin constraints:
// per-column subnormalization sum_a e^{w_jab} <= 1 (the Bayesian
// problem) or the single Euclidean ball w'w <= 1 (the Markov baseline).
enum class ConstraintSet { Subnormalization, EuclideanBall };

inline constexpr double kNoFloor = -std::numeric_limits<double>::infinity();

struct BarrierConfig {
    double mu_initial = 1.0;
    double mu_shrink = 10.0;  // divisor per outer iteration
    int outer_iters = 7;
    double newton_tol = 1e-8;
    int max_newton_iters = 20;
    double backtrack_shrink = 0.5;
    double sufficient_decrease = 1e-4;
    // Lower box w >= w_floor, enforced by extra barrier terms. Degenerate
    // separable instances otherwise drive w to -inf under subnormalization;
    // e^-30 keeps the bound probabilistically irrelevant. Only applied to
    // the subnormalization set (the ball already bounds w). Set to kNoFloor
    // to disable.
    double w_floor = -30.0;
    // Optional early stop on the barrier duality-gap estimate m * mu.
    bool gap_stop = false;
    double gap_tol = 1e-8;

    void check() const {
        require(mu_initial > 0.0, ErrorCode::BadPlan, "mu_initial must be positive");
        require(mu_shrink > 1.0, ErrorCode::BadPlan, "mu_shrink must exceed 1");
        require(outer_iters >= 1, ErrorCode::BadPlan, "need at least one outer iteration");
        require(!std::isfinite(w_floor) || w_floor < 0.0, ErrorCode::BadPlan,
                "w_floor must be negative");
    }
};

// Current iterate of the interior-point method.
struct SolverState {
    Eigen::VectorXd w;
    double gamma = 0.0;
    Eigen::VectorXd eps;
    double mu = 1.0;
};

struct OuterRound {
    double mu = 0.0;
    int newton_iters = 0;
    double objective = 0.0;          // true objective 1/(2 gamma^2) + B eps'e
    double barrier_value = 0.0;
    double grad_norm = 0.0;
    double max_margin_violation = 0.0;
    double max_subnorm_residual = 0.0;
    bool newton_converged = false;
};

struct Solution {
    Eigen::VectorXd w;
    double gamma = 0.0;
    Eigen::VectorXd eps;
    double objective = 0.0;
    Eigen::VectorXd margin_violations;   // gamma*delta - eps_i - Delta w, per row
    Eigen::VectorXd norm_residuals;      // column sums - 1 (subnorm) or w'w - 1 (ball)
    std::vector<OuterRound> rounds;
    int outer_iterations = 0;
    int total_newton_iterations = 0;
    bool converged = false;

    std::string report() const;
};

// The log-barrier objective of the relaxed soft-margin problem:
//   1/(2 gamma^2) + B eps'e
//   - mu sum_rows log(Delta w - gamma delta + eps_i)
//   - mu sum_cols log(1 - sum_a e^{w_jab})      [subnormalization]
//     ... or - mu log(1 - w'w)                  [euclidean ball]
//   - mu log gamma
//   - mu sum_d log(w_d - w_floor)               [only when the floor is finite]
// exposed as a NewtonObjective over the stacked variables [w; gamma; eps].
class BarrierObjective : public NewtonObjective {
public:
    BarrierObjective(const MarginProblem& problem, const NetworkStructure& structure,
                     ConstraintSet constraint_set, double mu, double w_floor = kNoFloor);

    int dim() const override { return dim_; }
    bool strictly_feasible(const Eigen::VectorXd& z) const override;
    double value(const Eigen::VectorXd& z) const override;
    void derivatives(const Eigen::VectorXd& z, Eigen::VectorXd& grad,
                     Eigen::MatrixXd& hess) const override;

    Eigen::VectorXd pack(const SolverState& state) const;
    SolverState unpack(const Eigen::VectorXd& z, double mu) const;

    double mu() const { return mu_; }
    void set_mu(double mu) { mu_ = mu; }
    int constraint_count() const;

private:
    const MarginProblem& problem_;
    const NetworkStructure& structure_;
    ConstraintSet constraint_set_;
    double mu_;
    double w_floor_;
    int num_features_;
    int num_examples_;
    int dim_;
    std::vector<std::pair<int, int>> columns_;  // (first flat index, arity) per CPT column
};

// Direct evaluation of the barrier objective at a state. Throws
// InfeasiblePoint when any barrier argument is nonpositive.
double barrier_objective(const SolverState& state, const MarginProblem& problem,
                         const NetworkStructure& structure, ConstraintSet constraint_set,
                         double w_floor = kNoFloor);

// Analytic gradient and Hessian over the stacked (w, gamma, eps) block.
void barrier_gradient_hessian(const SolverState& state, const MarginProblem& problem,
                              const NetworkStructure& structure, ConstraintSet constraint_set,
                              Eigen::VectorXd& grad, Eigen::MatrixXd& hess,
                              double w_floor = kNoFloor);

// Strictly feasible start: subnormalized-uniform w (or zero w for the
// ball), small gamma, eps padded so every margin slack is at least 1.
SolverState initial_point(const MarginProblem& problem, const NetworkStructure& structure,
                          const BarrierConfig& config,
                          ConstraintSet constraint_set = ConstraintSet::Subnormalization);

// One inner Newton run at the state's mu.
SolverState newton_solve(const SolverState& state, const MarginProblem& problem,
                         const NetworkStructure& structure, const BarrierConfig& config,
                         ConstraintSet constraint_set, int* iterations_used = nullptr,
                         bool* converged = nullptr);

// Full path following: outer_iters rounds of Newton, dividing mu by
// mu_shrink between rounds and warm starting from the previous iterate.
Solution solve(const MarginProblem& problem, const NetworkStructure& structure,
               const BarrierConfig& config,
               ConstraintSet constraint_set = ConstraintSet::Subnormalization);

// Convenience: solve from a caller-provided strictly feasible state.
Solution solve_from(SolverState state, const MarginProblem& problem,
                    const NetworkStructure& structure, const BarrierConfig& config,
                    ConstraintSet constraint_set);

}  // namespace mmbn

#endif
