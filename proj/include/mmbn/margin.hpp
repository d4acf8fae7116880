#ifndef MMBN_MARGIN_HPP
#define MMBN_MARGIN_HPP

#include <utility>
#include <vector>

#include "mmbn/dataset.hpp"
#include "mmbn/model.hpp"

namespace mmbn {

enum class MarginKind {
    Multiclass,  // delta = 1 when the label differs
    Hamming,     // delta = number of differing class positions
};

// One margin constraint row: Delta(i, y) = phi(x^i, y^i) - phi(x^i, y),
// stored as its nonzero entries. Indicators of local functions that do
// not involve a class variable cancel, so a row has at most 2n nonzeros.
struct DeltaRow {
    int example = 0;                              // the paper's S map: row -> example
    std::vector<int> labels;                      // class assignment y of this row
    std::vector<std::pair<int, double>> entries;  // (flat feature, +1/-1), net of cancellations
    double margin_scale = 0.0;                    // delta_(i,y)

    double dot(const Eigen::VectorXd& w) const {
        double s = 0.0;
        for (const auto& [f, v] : entries) s += v * w[f];
        return s;
    }
};

struct MarginProblem {
    int feature_dim = 0;
    int num_examples = 0;
    std::vector<DeltaRow> rows;  // sorted by (example, labels) lexicographic
    double reg = 1.0;            // B for the subnormalized problem, C for the Markov baseline
};

// Builds Delta(i, y) over an explicit row (i, y) enumeration. Enforces
// label_cap rows per example (large label spaces belong to the
// cutting-plane path).
MarginProblem build_delta(const NetworkStructure& structure, const DiscreteDataset& data,
                          MarginKind kind, double reg, long long label_cap = 4096);

// A single row for one (example, labels) pair; the zero row when labels
// equal the example's true labels.
DeltaRow make_delta_row(const NetworkStructure& structure, const Assignment& example_row,
                        int example_index, const std::vector<int>& labels, MarginKind kind);

// Minimum conditional likelihood ratio in log form: the smallest
// Delta(i,y) . w over nonzero rows, equal to
// min_{i, y != y^i} [log P(x^i, y^i) - log P(x^i, y)].
double mclr(const NetworkStructure& structure, const ParamVector& params,
            const DiscreteDataset& data, long long label_cap = 4096);

enum class SlackDirection { XiToEps, EpsToXi };

// The slack equivalence: eps = gamma * xi with B = C / gamma, and its
// inverse. Returns the converted slack vector and constant.
std::pair<Eigen::VectorXd, double> slack_convert(double gamma, const Eigen::VectorXd& slacks,
                                                 double constant, SlackDirection direction);

// max over rows of gamma * delta_(i,y) - eps_i - Delta(i,y) . w.
// Nonpositive means every margin constraint holds.
double margin_feasibility(const MarginProblem& problem, const Eigen::VectorXd& w, double gamma,
                          const Eigen::VectorXd& eps);

}  // namespace mmbn

#endif
