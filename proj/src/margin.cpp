#include "mmbn/margin.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace mmbn {

namespace {

std::vector<int> true_labels(const NetworkStructure& structure, const Assignment& row) {
    std::vector<int> labels;
    labels.reserve(structure.class_vars().size());
    for (int c : structure.class_vars()) labels.push_back(row[c]);
    return labels;
}

double scale_for(MarginKind kind, const std::vector<int>& y_true, const std::vector<int>& y) {
    int diffs = 0;
    for (size_t k = 0; k < y.size(); ++k) diffs += (y[k] != y_true[k]) ? 1 : 0;
    if (kind == MarginKind::Multiclass) return diffs > 0 ? 1.0 : 0.0;
    return static_cast<double>(diffs);
}

}  // namespace

DeltaRow make_delta_row(const NetworkStructure& structure, const Assignment& example_row,
                        int example_index, const std::vector<int>& labels, MarginKind kind) {
    const auto y_true = true_labels(structure, example_row);
    DeltaRow row;
    row.example = example_index;
    row.labels = labels;
    row.margin_scale = scale_for(kind, y_true, labels);

    std::map<int, double> net;
    for (int f : feature_vector(structure, example_row)) net[f] += 1.0;
    for (int f : feature_vector(structure, with_labels(structure, example_row, labels))) net[f] -= 1.0;
    for (const auto& [f, v] : net)
        if (v != 0.0) row.entries.emplace_back(f, v);
    return row;
}

MarginProblem build_delta(const NetworkStructure& structure, const DiscreteDataset& data,
                          MarginKind kind, double reg, long long label_cap) {
    check_dataset(structure, data);
    require(data.count() >= 1, ErrorCode::BadSize, "training data is empty");
    require(reg > 0.0, ErrorCode::BadPlan, "regularization constant must be positive");
    if (kind == MarginKind::Multiclass)
        require(structure.class_vars().size() == 1, ErrorCode::BadPlan,
                "multiclass margin requires a single class variable");
    require(structure.class_space_size(label_cap) <= label_cap, ErrorCode::LabelSpaceTooLarge,
            "explicit row enumeration would exceed the per-example cap");

    MarginProblem problem;
    problem.feature_dim = structure.feature_dim();
    problem.num_examples = data.count();
    problem.reg = reg;
    for (int i = 0; i < data.count(); ++i) {
        for_each_class_assignment(structure, [&](const std::vector<int>& labels) {
            problem.rows.push_back(make_delta_row(structure, data.rows[i], i, labels, kind));
        });
    }
    return problem;
}

double mclr(const NetworkStructure& structure, const ParamVector& params,
            const DiscreteDataset& data, long long label_cap) {
    check_dataset(structure, data);
    require(data.count() >= 1, ErrorCode::BadSize, "mclr needs at least one example");
    require(structure.class_space_size(label_cap) <= label_cap, ErrorCode::LabelSpaceTooLarge,
            "joint class space exceeds enumeration cap");

    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < data.count(); ++i) {
        const auto row = data.rows[i];
        const auto y_true = true_labels(structure, row);
        for_each_class_assignment(structure, [&](const std::vector<int>& labels) {
            if (labels == y_true) return;
            const auto delta = make_delta_row(structure, row, i, labels, MarginKind::Multiclass);
            best = std::min(best, delta.dot(params.w()));
        });
    }
    return best;
}

std::pair<Eigen::VectorXd, double> slack_convert(double gamma, const Eigen::VectorXd& slacks,
                                                 double constant, SlackDirection direction) {
    require(gamma > 0.0, ErrorCode::NonpositiveGamma, "slack conversion needs gamma > 0");
    if (direction == SlackDirection::XiToEps)
        return {gamma * slacks, constant / gamma};
    return {slacks / gamma, constant * gamma};
}

double margin_feasibility(const MarginProblem& problem, const Eigen::VectorXd& w, double gamma,
                          const Eigen::VectorXd& eps) {
    require(eps.size() == problem.num_examples, ErrorCode::DimensionMismatch,
            "eps length must equal the example count");
    require(w.size() == problem.feature_dim, ErrorCode::DimensionMismatch,
            "w length must equal the feature dimension");
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& row : problem.rows)
        worst = std::max(worst, gamma * row.margin_scale - eps[row.example] - row.dot(w));
    return worst;
}

}  // namespace mmbn
