#include "mmbn/barrier.hpp"

#include <cmath>
#include <sstream>

namespace mmbn {

BarrierObjective::BarrierObjective(const MarginProblem& problem, const NetworkStructure& structure,
                                   ConstraintSet constraint_set, double mu, double w_floor)
    : problem_(problem),
      structure_(structure),
      constraint_set_(constraint_set),
      mu_(mu),
      w_floor_(w_floor),
      num_features_(problem.feature_dim),
      num_examples_(problem.num_examples),
      dim_(problem.feature_dim + 1 + problem.num_examples) {
    require(structure.feature_dim() == problem.feature_dim, ErrorCode::DimensionMismatch,
            "margin problem was built for a different structure");
    for (int j = 0; j < structure.node_count(); ++j)
        for (int b = 0; b < structure.parent_config_count(j); ++b)
            columns_.emplace_back(structure.feature_index(j, 0, b), structure.arity(j));
}

int BarrierObjective::constraint_count() const {
    int m = static_cast<int>(problem_.rows.size()) + 1;  // margin rows + gamma
    m += constraint_set_ == ConstraintSet::Subnormalization ? static_cast<int>(columns_.size()) : 1;
    if (std::isfinite(w_floor_)) m += num_features_;
    return m;
}

Eigen::VectorXd BarrierObjective::pack(const SolverState& state) const {
    Eigen::VectorXd z(dim_);
    z.head(num_features_) = state.w;
    z[num_features_] = state.gamma;
    z.tail(num_examples_) = state.eps;
    return z;
}

SolverState BarrierObjective::unpack(const Eigen::VectorXd& z, double mu) const {
    SolverState state;
    state.w = z.head(num_features_);
    state.gamma = z[num_features_];
    state.eps = z.tail(num_examples_);
    state.mu = mu;
    return state;
}

bool BarrierObjective::strictly_feasible(const Eigen::VectorXd& z) const {
    if (!z.allFinite()) return false;
    const auto w = z.head(num_features_);
    const double gamma = z[num_features_];
    const auto eps = z.tail(num_examples_);
    if (gamma <= 0.0) return false;

    for (const auto& row : problem_.rows) {
        double slack = eps[row.example] - gamma * row.margin_scale;
        for (const auto& [f, v] : row.entries) slack += v * w[f];
        if (slack <= 0.0) return false;
    }
    if (constraint_set_ == ConstraintSet::Subnormalization) {
        for (const auto& [first, arity] : columns_) {
            double sum = 0.0;
            for (int a = 0; a < arity; ++a) sum += std::exp(w[first + a]);
            if (sum >= 1.0) return false;
        }
    } else {
        if (w.squaredNorm() >= 1.0) return false;
    }
    if (std::isfinite(w_floor_)) {
        for (int d = 0; d < num_features_; ++d)
            if (w[d] <= w_floor_) return false;
    }
    return true;
}

double BarrierObjective::value(const Eigen::VectorXd& z) const {
    const auto w = z.head(num_features_);
    const double gamma = z[num_features_];
    const auto eps = z.tail(num_examples_);
    require(gamma > 0.0, ErrorCode::InfeasiblePoint, "gamma must be positive");

    double total = 0.5 / (gamma * gamma) + problem_.reg * eps.sum() - mu_ * std::log(gamma);

    for (const auto& row : problem_.rows) {
        double slack = eps[row.example] - gamma * row.margin_scale;
        for (const auto& [f, v] : row.entries) slack += v * w[f];
        require(slack > 0.0, ErrorCode::InfeasiblePoint, "margin slack is not positive");
        total -= mu_ * std::log(slack);
    }
    if (constraint_set_ == ConstraintSet::Subnormalization) {
        for (const auto& [first, arity] : columns_) {
            double sum = 0.0;
            for (int a = 0; a < arity; ++a) sum += std::exp(w[first + a]);
            require(sum < 1.0, ErrorCode::InfeasiblePoint, "subnormalization slack is not positive");
            total -= mu_ * std::log(1.0 - sum);
        }
    } else {
        const double slack = 1.0 - w.squaredNorm();
        require(slack > 0.0, ErrorCode::InfeasiblePoint, "Euclidean ball slack is not positive");
        total -= mu_ * std::log(slack);
    }
    if (std::isfinite(w_floor_)) {
        for (int d = 0; d < num_features_; ++d) {
            require(w[d] > w_floor_, ErrorCode::InfeasiblePoint, "w is at the box floor");
            total -= mu_ * std::log(w[d] - w_floor_);
        }
    }
    return total;
}

void BarrierObjective::derivatives(const Eigen::VectorXd& z, Eigen::VectorXd& grad,
                                   Eigen::MatrixXd& hess) const {
    const auto w = z.head(num_features_);
    const double gamma = z[num_features_];
    const auto eps = z.tail(num_examples_);
    const int gi = num_features_;  // gamma index in the stacked block

    grad.setZero(dim_);
    hess.setZero(dim_, dim_);

    // Smooth objective terms.
    grad[gi] += -1.0 / (gamma * gamma * gamma) - mu_ / gamma;
    hess(gi, gi) += 3.0 / (gamma * gamma * gamma * gamma) + mu_ / (gamma * gamma);
    for (int i = 0; i < num_examples_; ++i) grad[gi + 1 + i] += problem_.reg;

    // Margin rows: slack is linear in z with sparse normal vector
    // [Delta_r; -delta_r; e_{example}].
    std::vector<std::pair<int, double>> normal;
    for (const auto& row : problem_.rows) {
        double slack = eps[row.example] - gamma * row.margin_scale;
        for (const auto& [f, v] : row.entries) slack += v * w[f];
        require(slack > 0.0, ErrorCode::InfeasiblePoint, "margin slack is not positive");
        const double inv = mu_ / slack;
        const double inv2 = inv / slack;

        normal.clear();
        normal.reserve(row.entries.size() + 2);
        for (const auto& [f, v] : row.entries) normal.emplace_back(f, v);
        if (row.margin_scale != 0.0) normal.emplace_back(gi, -row.margin_scale);
        normal.emplace_back(gi + 1 + row.example, 1.0);

        for (const auto& [d1, v1] : normal) {
            grad[d1] -= inv * v1;
            for (const auto& [d2, v2] : normal) hess(d1, d2) += inv2 * v1 * v2;
        }
    }

    if (constraint_set_ == ConstraintSet::Subnormalization) {
        for (const auto& [first, arity] : columns_) {
            double sum = 0.0;
            for (int a = 0; a < arity; ++a) sum += std::exp(w[first + a]);
            const double c = 1.0 - sum;
            require(c > 0.0, ErrorCode::InfeasiblePoint, "subnormalization slack is not positive");
            for (int a = 0; a < arity; ++a) {
                const double ea = std::exp(w[first + a]);
                grad[first + a] += mu_ * ea / c;
                hess(first + a, first + a) += mu_ * ea / c;
                for (int a2 = 0; a2 < arity; ++a2)
                    hess(first + a, first + a2) += mu_ * ea * std::exp(w[first + a2]) / (c * c);
            }
        }
    } else {
        const double c = 1.0 - w.squaredNorm();
        require(c > 0.0, ErrorCode::InfeasiblePoint, "Euclidean ball slack is not positive");
        grad.head(num_features_) += (2.0 * mu_ / c) * w;
        hess.topLeftCorner(num_features_, num_features_) +=
            (4.0 * mu_ / (c * c)) * (w * w.transpose());
        hess.topLeftCorner(num_features_, num_features_).diagonal().array() += 2.0 * mu_ / c;
    }

    if (std::isfinite(w_floor_)) {
        for (int d = 0; d < num_features_; ++d) {
            const double slack = w[d] - w_floor_;
            require(slack > 0.0, ErrorCode::InfeasiblePoint, "w is at the box floor");
            grad[d] -= mu_ / slack;
            hess(d, d) += mu_ / (slack * slack);
        }
    }
}

double barrier_objective(const SolverState& state, const MarginProblem& problem,
                         const NetworkStructure& structure, ConstraintSet constraint_set,
                         double w_floor) {
    BarrierObjective objective(problem, structure, constraint_set, state.mu, w_floor);
    return objective.value(objective.pack(state));
}

void barrier_gradient_hessian(const SolverState& state, const MarginProblem& problem,
                              const NetworkStructure& structure, ConstraintSet constraint_set,
                              Eigen::VectorXd& grad, Eigen::MatrixXd& hess, double w_floor) {
    BarrierObjective objective(problem, structure, constraint_set, state.mu, w_floor);
    objective.derivatives(objective.pack(state), grad, hess);
}

SolverState initial_point(const MarginProblem& problem, const NetworkStructure& structure,
                          const BarrierConfig& config, ConstraintSet constraint_set) {
    SolverState state;
    state.mu = config.mu_initial;
    state.gamma = 1e-3;

    if (constraint_set == ConstraintSet::Subnormalization) {
        // Column sums arity/(arity+1) < 1 leave a uniform margin.
        state.w.resize(structure.feature_dim());
        for (int j = 0; j < structure.node_count(); ++j) {
            const double v = std::log(1.0 / (structure.arity(j) + 1.0));
            for (int b = 0; b < structure.parent_config_count(j); ++b)
                for (int a = 0; a < structure.arity(j); ++a)
                    state.w[structure.feature_index(j, a, b)] = v;
        }
    } else {
        state.w = Eigen::VectorXd::Zero(structure.feature_dim());
    }

    // Pad eps so every margin slack starts at exactly 1.
    state.eps = Eigen::VectorXd::Zero(problem.num_examples);
    Eigen::VectorXd min_slack =
        Eigen::VectorXd::Constant(problem.num_examples, std::numeric_limits<double>::infinity());
    for (const auto& row : problem.rows) {
        const double base = row.dot(state.w) - state.gamma * row.margin_scale;
        min_slack[row.example] = std::min(min_slack[row.example], base);
    }
    for (int i = 0; i < problem.num_examples; ++i) {
        const double base = std::isfinite(min_slack[i]) ? min_slack[i] : 0.0;
        state.eps[i] = std::max(0.0, -base) + 1.0;
    }

    const double floor = constraint_set == ConstraintSet::Subnormalization ? config.w_floor : kNoFloor;
    BarrierObjective objective(problem, structure, constraint_set, state.mu, floor);
    require(objective.strictly_feasible(objective.pack(state)), ErrorCode::NoFeasibleStart,
            "constructed initial point is not strictly feasible");
    return state;
}

SolverState newton_solve(const SolverState& state, const MarginProblem& problem,
                         const NetworkStructure& structure, const BarrierConfig& config,
                         ConstraintSet constraint_set, int* iterations_used, bool* converged) {
    const double floor = constraint_set == ConstraintSet::Subnormalization ? config.w_floor : kNoFloor;
    BarrierObjective objective(problem, structure, constraint_set, state.mu, floor);
    NewtonOptions options{config.newton_tol, config.max_newton_iters, config.backtrack_shrink,
                          config.sufficient_decrease};
    NewtonResult result = newton_minimize(objective, objective.pack(state), options);
    if (iterations_used) *iterations_used = result.iterations;
    if (converged) *converged = result.converged;
    return objective.unpack(result.z, state.mu);
}

namespace {

void fill_residuals(Solution& solution, const MarginProblem& problem,
                    const NetworkStructure& structure, ConstraintSet constraint_set) {
    solution.margin_violations.resize(static_cast<Eigen::Index>(problem.rows.size()));
    for (size_t r = 0; r < problem.rows.size(); ++r) {
        const auto& row = problem.rows[r];
        solution.margin_violations[static_cast<Eigen::Index>(r)] =
            solution.gamma * row.margin_scale - solution.eps[row.example] - row.dot(solution.w);
    }
    if (constraint_set == ConstraintSet::Subnormalization) {
        solution.norm_residuals = normalization_residuals(structure, ParamVector(solution.w));
    } else {
        solution.norm_residuals.resize(1);
        solution.norm_residuals[0] = solution.w.squaredNorm() - 1.0;
    }
}

}  // namespace

Solution solve_from(SolverState state, const MarginProblem& problem,
                    const NetworkStructure& structure, const BarrierConfig& config,
                    ConstraintSet constraint_set) {
    config.check();
    require(problem.num_examples >= 1, ErrorCode::BadSize, "margin problem is empty");

    const double floor = constraint_set == ConstraintSet::Subnormalization ? config.w_floor : kNoFloor;
    BarrierObjective objective(problem, structure, constraint_set, config.mu_initial, floor);
    NewtonOptions options{config.newton_tol, config.max_newton_iters, config.backtrack_shrink,
                          config.sufficient_decrease};

    Eigen::VectorXd z = objective.pack(state);
    require(objective.strictly_feasible(z), ErrorCode::NoFeasibleStart,
            "solve_from start is not strictly feasible");

    Solution solution;
    double mu = config.mu_initial;
    bool last_converged = false;
    for (int round = 0; round < config.outer_iters; ++round) {
        objective.set_mu(mu);
        NewtonResult result = newton_minimize(objective, z, options);
        z = result.z;
        last_converged = result.converged;

        SolverState s = objective.unpack(z, mu);
        OuterRound record;
        record.mu = mu;
        record.newton_iters = result.iterations;
        record.objective = 0.5 / (s.gamma * s.gamma) + problem.reg * s.eps.sum();
        record.barrier_value = result.value;
        record.grad_norm = result.grad_norm;
        record.newton_converged = result.converged;
        record.max_margin_violation = margin_feasibility(problem, s.w, s.gamma, s.eps);
        if (constraint_set == ConstraintSet::Subnormalization) {
            record.max_subnorm_residual =
                normalization_residuals(structure, ParamVector(s.w)).maxCoeff();
        } else {
            record.max_subnorm_residual = s.w.squaredNorm() - 1.0;
        }
        solution.rounds.push_back(record);
        solution.total_newton_iterations += result.iterations;
        ++solution.outer_iterations;

        if (config.gap_stop && objective.constraint_count() * mu <= config.gap_tol) break;
        mu /= config.mu_shrink;
    }

    SolverState final_state = objective.unpack(z, solution.rounds.back().mu);
    solution.w = final_state.w;
    solution.gamma = final_state.gamma;
    solution.eps = final_state.eps;
    solution.objective = 0.5 / (final_state.gamma * final_state.gamma) + problem.reg * final_state.eps.sum();
    solution.converged = last_converged;
    fill_residuals(solution, problem, structure, constraint_set);
    return solution;
}

Solution solve(const MarginProblem& problem, const NetworkStructure& structure,
               const BarrierConfig& config, ConstraintSet constraint_set) {
    return solve_from(initial_point(problem, structure, config, constraint_set), problem, structure,
                      config, constraint_set);
}

std::string Solution::report() const {
    std::ostringstream out;
    out << "outer  mu            newton  objective       max_margin_viol  max_norm_resid\n";
    for (size_t k = 0; k < rounds.size(); ++k) {
        const auto& r = rounds[k];
        out << k + 1 << "      " << r.mu << "  " << r.newton_iters << "  " << r.objective << "  "
            << r.max_margin_violation << "  " << r.max_subnorm_residual << "\n";
    }
    out << (converged ? "converged" : "not converged") << ", objective " << objective << "\n";
    return out.str();
}

}  // namespace mmbn
