#include "mmbn/multivariate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace mmbn {

ChainLabelModel ChainLabelModel::analyze(const NetworkStructure& structure) {
    const auto& cls = structure.class_vars();
    std::set<int> class_set(cls.begin(), cls.end());

    // Chain edges: class parent -> class child, at most one each way.
    std::vector<int> class_parent(structure.node_count(), -1);
    std::vector<int> class_child(structure.node_count(), -1);
    for (int c : cls) {
        for (int p : structure.parents(c)) {
            if (!class_set.count(p)) continue;
            require(class_parent[c] == -1, ErrorCode::NotAChain,
                    structure.name(c) + " has two class parents");
            require(class_child[p] == -1, ErrorCode::NotAChain,
                    structure.name(p) + " has two class children");
            class_parent[c] = p;
            class_child[p] = c;
        }
    }
    int root = -1;
    for (int c : cls) {
        if (class_parent[c] != -1) continue;
        require(root == -1, ErrorCode::NotAChain, "class variables split into several chains");
        root = c;
    }
    require(root != -1, ErrorCode::NotAChain, "class variables contain a cycle");

    ChainLabelModel model;
    for (int c = root; c != -1; c = class_child[c]) model.positions.push_back(c);
    require(model.positions.size() == cls.size(), ErrorCode::NotAChain,
            "class variables split into several chains");

    std::vector<int> position_of(structure.node_count(), -1);
    for (size_t k = 0; k < model.positions.size(); ++k) position_of[model.positions[k]] = static_cast<int>(k);

    model.children_at.resize(model.positions.size());
    for (int j = 0; j < structure.node_count(); ++j) {
        if (class_set.count(j)) continue;
        int pos = -1;
        for (int p : structure.parents(j)) {
            if (!class_set.count(p)) continue;
            require(pos == -1, ErrorCode::NotAChain,
                    structure.name(j) + " observes more than one class variable");
            pos = position_of[p];
        }
        if (pos >= 0)
            model.children_at[pos].push_back(j);
        else
            model.constant_nodes.push_back(j);
    }
    return model;
}

int hamming_margin(const std::vector<int>& y_true, const std::vector<int>& y) {
    require(y_true.size() == y.size(), ErrorCode::DimensionMismatch,
            "label vectors differ in length");
    int diffs = 0;
    for (size_t k = 0; k < y.size(); ++k) diffs += (y[k] != y_true[k]) ? 1 : 0;
    return diffs;
}

double violation_score(const NetworkStructure& structure, const DiscreteDataset& data, int i,
                       const std::vector<int>& labels, const Eigen::VectorXd& w, double gamma,
                       double eps_i) {
    require(i >= 0 && i < data.count(), ErrorCode::BadSize, "example index out of range");
    require(labels.size() == structure.class_vars().size(), ErrorCode::InvalidLabelVector,
            "label vector length does not match class variable count");
    for (size_t k = 0; k < labels.size(); ++k)
        require(labels[k] >= 0 && labels[k] < structure.arity(structure.class_vars()[k]),
                ErrorCode::InvalidLabelVector, "label value out of range");

    const auto row = make_delta_row(structure, data.rows[i], i, labels, MarginKind::Hamming);
    return gamma * row.margin_scale - eps_i - row.dot(w);
}

namespace {

// score(y) = phi(x^i, y) . w + gamma * sum_k 1(y_k != y_k^i), decomposed
// for the chain DP. eps and the true-label phi term are constant in y
// and omitted; callers that need the full violation re-evaluate via
// violation_score.
struct ChainScores {
    int length = 0;
    int max_arity = 0;
    std::vector<int> arity;                 // per position
    std::vector<std::vector<double>> unary; // [k][y_k]
    // [k][y_prev * arity_k + y_k] for k >= 1: the chain CPT term.
    std::vector<std::vector<double>> pairwise;
    double constant = 0.0;
};

ChainScores build_chain_scores(const NetworkStructure& structure, const ChainLabelModel& model,
                               const Assignment& example_row, const std::vector<int>& y_true,
                               const Eigen::VectorXd& w, double gamma) {
    ChainScores scores;
    scores.length = model.length();
    Assignment full = example_row;

    for (int n : model.constant_nodes)
        scores.constant += w[structure.feature_index(
            n, full[n], structure.parent_config_index(n, full))];

    scores.arity.resize(scores.length);
    scores.unary.resize(scores.length);
    scores.pairwise.resize(scores.length);
    for (int k = 0; k < scores.length; ++k) {
        const int yk = model.positions[k];
        const int A = structure.arity(yk);
        scores.arity[k] = A;
        scores.max_arity = std::max(scores.max_arity, A);
        scores.unary[k].assign(A, 0.0);

        for (int v = 0; v < A; ++v) {
            double u = (v != y_true[k]) ? gamma : 0.0;
            full[yk] = v;
            // Observation children of position k (their parents may
            // include evidence variables but only this class variable).
            for (int c : model.children_at[k])
                u += w[structure.feature_index(c, full[c], structure.parent_config_index(c, full))];
            // The position's own CPT: unary only for the root (its
            // parents are evidence); pairwise otherwise.
            if (k == 0)
                u += w[structure.feature_index(yk, v, structure.parent_config_index(yk, full))];
            scores.unary[k][v] = u;
        }

        if (k > 0) {
            const int prev = model.positions[k - 1];
            const int Aprev = structure.arity(prev);
            scores.pairwise[k].assign(Aprev * A, 0.0);
            for (int vp = 0; vp < Aprev; ++vp) {
                full[prev] = vp;
                for (int v = 0; v < A; ++v) {
                    full[yk] = v;
                    scores.pairwise[k][vp * A + v] =
                        w[structure.feature_index(yk, v, structure.parent_config_index(yk, full))];
                }
            }
        }
        full[yk] = example_row[yk];
    }
    return scores;
}

// Max-product DP that tracks, per state, the lexicographically smallest
// optimal prefix, so exact score ties resolve to the lexicographically
// smallest full label vector.
std::vector<int> viterbi_decode(const ChainScores& scores) {
    const int L = scores.length;
    std::vector<std::vector<double>> value(L);
    std::vector<std::vector<std::vector<int>>> prefix(L);

    value[0].resize(scores.arity[0]);
    prefix[0].resize(scores.arity[0]);
    for (int v = 0; v < scores.arity[0]; ++v) {
        value[0][v] = scores.unary[0][v];
        prefix[0][v] = {v};
    }
    for (int k = 1; k < L; ++k) {
        const int A = scores.arity[k];
        const int Aprev = scores.arity[k - 1];
        value[k].resize(A);
        prefix[k].resize(A);
        for (int v = 0; v < A; ++v) {
            int best_prev = -1;
            double best = 0.0;
            for (int vp = 0; vp < Aprev; ++vp) {
                const double cand = value[k - 1][vp] + scores.pairwise[k][vp * A + v];
                if (best_prev < 0 || cand > best ||
                    (cand == best && prefix[k - 1][vp] < prefix[k - 1][best_prev])) {
                    best_prev = vp;
                    best = cand;
                }
            }
            value[k][v] = best + scores.unary[k][v];
            prefix[k][v] = prefix[k - 1][best_prev];
            prefix[k][v].push_back(v);
        }
    }

    int best_state = 0;
    for (int v = 1; v < scores.arity[L - 1]; ++v) {
        if (value[L - 1][v] > value[L - 1][best_state] ||
            (value[L - 1][v] == value[L - 1][best_state] &&
             prefix[L - 1][v] < prefix[L - 1][best_state]))
            best_state = v;
    }
    return prefix[L - 1][best_state];
}

std::vector<int> true_label_vector(const NetworkStructure& structure, const Assignment& row) {
    std::vector<int> y;
    y.reserve(structure.class_vars().size());
    for (int c : structure.class_vars()) y.push_back(row[c]);
    return y;
}

std::vector<int> exhaustive_argmax(const NetworkStructure& structure, const DiscreteDataset& data,
                                   int i, const Eigen::VectorXd& w, double gamma) {
    require(structure.class_space_size(1LL << 20) <= (1LL << 20), ErrorCode::LabelSpaceTooLarge,
            "label space exceeds the exhaustive cap");
    std::vector<int> best;
    double best_score = 0.0;
    for_each_class_assignment(structure, [&](const std::vector<int>& labels) {
        // eps enters every labeling identically; 0 keeps the argmax.
        const double score = violation_score(structure, data, i, labels, w, gamma, 0.0);
        if (best.empty() || score > best_score) {
            best = labels;
            best_score = score;
        }
    });
    return best;
}

}  // namespace

std::vector<int> generate_constraint(const NetworkStructure& structure, const DiscreteDataset& data,
                                     int i, const Eigen::VectorXd& w, double gamma,
                                     GenerationMethod method) {
    require(i >= 0 && i < data.count(), ErrorCode::BadSize, "example index out of range");
    if (method == GenerationMethod::Exhaustive) return exhaustive_argmax(structure, data, i, w, gamma);

    const auto model = ChainLabelModel::analyze(structure);
    const auto y_true = true_label_vector(structure, data.rows[i]);
    const auto scores = build_chain_scores(structure, model, data.rows[i], y_true, w, gamma);
    const auto chain_labels = viterbi_decode(scores);

    // The chain order may differ from the declared class order; report
    // labels in declared order to match every other label interface.
    std::vector<int> labels(structure.class_vars().size());
    for (int k = 0; k < model.length(); ++k) {
        const auto& cls = structure.class_vars();
        const auto it = std::find(cls.begin(), cls.end(), model.positions[k]);
        labels[it - cls.begin()] = chain_labels[k];
    }
    return labels;
}

std::vector<int> map_labels(const NetworkStructure& structure, const DiscreteDataset& data, int i,
                            const Eigen::VectorXd& w, GenerationMethod method) {
    return generate_constraint(structure, data, i, w, 0.0, method);
}

bool ConstraintPool::contains(int example, const std::vector<int>& labels) const {
    for (const auto& e : entries)
        if (e.example == example && e.labels == labels) return true;
    return false;
}

std::string ConstraintPool::dump() const {
    std::ostringstream out;
    for (const auto& e : entries) {
        out << e.example << " ";
        for (size_t k = 0; k < e.labels.size(); ++k) out << (k ? "," : "") << e.labels[k];
        out << " " << e.violation_at_add << " " << e.round_added << "\n";
    }
    return out.str();
}

CuttingPlaneResult cutting_plane_solve(const NetworkStructure& structure,
                                       const DiscreteDataset& data, double reg,
                                       const BarrierConfig& config,
                                       const CuttingPlaneConfig& cp_config) {
    check_dataset(structure, data);
    require(data.count() >= 1, ErrorCode::BadSize, "training data is empty");
    require(reg > 0.0, ErrorCode::BadPlan, "regularization constant must be positive");
    if (cp_config.method == GenerationMethod::Viterbi)
        ChainLabelModel::analyze(structure);  // fail fast on non-chains
    require(cp_config.constraints_per_example >= 1, ErrorCode::BadPlan,
            "need at least one constraint per example per round");

    CuttingPlaneResult result;
    MarginProblem& problem = result.restricted;
    problem.feature_dim = structure.feature_dim();
    problem.num_examples = data.count();
    problem.reg = reg;

    // Zero rows (i, y^i): they assert eps_i >= 0 and make the first
    // restricted problem trivially feasible.
    for (int i = 0; i < data.count(); ++i) {
        const auto y_true = true_label_vector(structure, data.rows[i]);
        problem.rows.push_back(make_delta_row(structure, data.rows[i], i, y_true, MarginKind::Hamming));
        result.pool.entries.push_back({i, y_true, 0.0, 0});
    }

    SolverState state = initial_point(problem, structure, config, ConstraintSet::Subnormalization);
    Solution solution;
    for (int round = 1; round <= cp_config.max_rounds; ++round) {
        solution = solve_from(state, problem, structure, config, ConstraintSet::Subnormalization);
        result.rounds = round;

        int added = 0;
        for (int i = 0; i < data.count(); ++i) {
            std::vector<std::vector<int>> candidates;
            if (cp_config.constraints_per_example == 1) {
                candidates.push_back(
                    generate_constraint(structure, data, i, solution.w, solution.gamma, cp_config.method));
            } else {
                // Batch mode: top-k by violation via explicit enumeration.
                std::vector<std::pair<double, std::vector<int>>> scored;
                for_each_class_assignment(structure, [&](const std::vector<int>& labels) {
                    scored.emplace_back(
                        violation_score(structure, data, i, labels, solution.w, solution.gamma,
                                        solution.eps[i]),
                        labels);
                });
                std::stable_sort(scored.begin(), scored.end(),
                                 [](const auto& a, const auto& b) { return a.first > b.first; });
                for (int k = 0; k < cp_config.constraints_per_example &&
                                k < static_cast<int>(scored.size()); ++k)
                    candidates.push_back(scored[k].second);
            }
            for (const auto& labels : candidates) {
                const double violation = violation_score(structure, data, i, labels, solution.w,
                                                         solution.gamma, solution.eps[i]);
                if (violation <= cp_config.violation_tol) continue;
                if (result.pool.contains(i, labels)) continue;
                problem.rows.push_back(make_delta_row(structure, data.rows[i], i, labels, MarginKind::Hamming));
                result.pool.entries.push_back({i, labels, violation, round});
                ++added;
            }
        }
        if (added == 0) {
            result.solution = std::move(solution);
            return result;
        }

        // Deterministic row order contract: (example, labels) lexicographic.
        std::sort(problem.rows.begin(), problem.rows.end(), [](const DeltaRow& a, const DeltaRow& b) {
            return a.example != b.example ? a.example < b.example : a.labels < b.labels;
        });

        // Warm start: keep (w, gamma), pad eps until every pool row has
        // slack at least warm_start_padding.
        state.w = solution.w;
        state.gamma = solution.gamma;
        state.eps = solution.eps;
        state.mu = config.mu_initial;
        for (int i = 0; i < data.count(); ++i) {
            double min_slack = std::numeric_limits<double>::infinity();
            for (const auto& row : problem.rows) {
                if (row.example != i) continue;
                min_slack = std::min(min_slack,
                                     row.dot(state.w) - state.gamma * row.margin_scale + state.eps[i]);
            }
            if (min_slack < cp_config.warm_start_padding)
                state.eps[i] += cp_config.warm_start_padding - min_slack;
        }
    }

    result.solution = std::move(solution);
    result.max_rounds_exceeded = true;
    return result;
}

}  // namespace mmbn
