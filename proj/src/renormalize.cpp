#include "mmbn/renormalize.hpp"

#include <algorithm>
#include <cmath>

#include "mmbn/model.hpp"

namespace mmbn {

namespace {

bool adjacent(const NetworkStructure& structure, int a, int b) {
    const auto& pa = structure.parents(a);
    const auto& pb = structure.parents(b);
    return std::find(pa.begin(), pa.end(), b) != pa.end() ||
           std::find(pb.begin(), pb.end(), a) != pb.end();
}

}  // namespace

RenormCheck check_renormalizable(const NetworkStructure& structure, int target) {
    require(target >= 0 && target < structure.node_count(), ErrorCode::BadClassVar,
            "renormalization target out of range");
    RenormCheck check;
    for (int c : structure.children(target)) {
        const auto& parents = structure.parents(c);
        for (size_t i = 0; i < parents.size(); ++i)
            for (size_t k = i + 1; k < parents.size(); ++k)
                if (!adjacent(structure, parents[i], parents[k]))
                    check.violations.push_back({c, parents[i], parents[k]});
    }
    check.renormalizable = check.violations.empty();
    return check;
}

namespace {

// Distributes ln rho (one value per parent configuration of `source`)
// over the CPT cells of `cover`, whose family contains all of
// source's parents.
void fold_into(const NetworkStructure& structure, Eigen::VectorXd& w, int source, int cover,
               const std::vector<double>& log_rho) {
    const auto& sources = structure.parents(source);
    const auto& cover_parents = structure.parents(cover);

    // Position of each source parent inside cover's family.
    std::vector<int> in_cover(sources.size(), -1);  // -1: is cover itself
    for (size_t k = 0; k < sources.size(); ++k) {
        if (sources[k] == cover) continue;
        auto it = std::find(cover_parents.begin(), cover_parents.end(), sources[k]);
        require(it != cover_parents.end(), ErrorCode::NotRenormalizable,
                "covering function does not contain all parents");
        in_cover[k] = static_cast<int>(it - cover_parents.begin());
    }

    std::vector<int> parent_values(cover_parents.size(), 0);
    for (int b = 0; b < structure.parent_config_count(cover); ++b) {
        // Decode b row-major over cover's parents.
        int rem = b;
        for (int p = static_cast<int>(cover_parents.size()) - 1; p >= 0; --p) {
            parent_values[p] = rem % structure.arity(cover_parents[p]);
            rem /= structure.arity(cover_parents[p]);
        }
        for (int a = 0; a < structure.arity(cover); ++a) {
            int z = 0;
            for (size_t k = 0; k < sources.size(); ++k) {
                const int value = in_cover[k] < 0 ? a : parent_values[in_cover[k]];
                z = z * structure.arity(sources[k]) + value;
            }
            w[structure.feature_index(cover, a, b)] += log_rho[z];
        }
    }
}

}  // namespace

ParamVector renormalize(const NetworkStructure& structure, const ParamVector& params, int target) {
    const auto check = check_renormalizable(structure, target);
    require(check.renormalizable, ErrorCode::NotRenormalizable,
            "a child of the target has non-moralized parents");
    require(is_subnormalized(structure, params, 1e-10), ErrorCode::NotSubnormalized,
            "parameters exceed subnormalization");
    for (int p : structure.parents(target))
        require(!structure.is_class_var(p), ErrorCode::NotRenormalizable,
                "target has a class-variable parent; renormalize the chain root instead");

    // Processing order: reverse topological with the target forced last.
    std::vector<int> order;
    const auto& topo = structure.topological_order();
    for (auto it = topo.rbegin(); it != topo.rend(); ++it)
        if (*it != target) order.push_back(*it);
    order.push_back(target);
    std::vector<int> position(structure.node_count());
    for (size_t k = 0; k < order.size(); ++k) position[order[k]] = static_cast<int>(k);

    Eigen::VectorXd w = params.w();
    std::vector<double> log_rho;
    for (size_t step = 0; step + 1 < order.size(); ++step) {
        const int c = order[step];
        log_rho.assign(structure.parent_config_count(c), 0.0);
        for (int b = 0; b < structure.parent_config_count(c); ++b) {
            double mass = 0.0;
            for (int a = 0; a < structure.arity(c); ++a)
                mass += std::exp(w[structure.feature_index(c, a, b)]);
            const double lr = std::log(mass);
            log_rho[b] = lr;
            for (int a = 0; a < structure.arity(c); ++a)
                w[structure.feature_index(c, a, b)] -= lr;
        }
        if (structure.parents(c).empty()) {
            // Scalar factor: fold into the target's function so the joint
            // is preserved until the final normalization absorbs it.
            for (int b = 0; b < structure.parent_config_count(target); ++b)
                for (int a = 0; a < structure.arity(target); ++a)
                    w[structure.feature_index(target, a, b)] += log_rho[0];
            continue;
        }

        // Latest-processed function whose family covers all of c's parents.
        int cover = -1;
        for (size_t k = step + 1; k < order.size(); ++k) {
            const int d = order[k];
            bool covers = true;
            for (int p : structure.parents(c)) {
                if (p == d) continue;
                const auto& dp = structure.parents(d);
                if (std::find(dp.begin(), dp.end(), p) == dp.end()) { covers = false; break; }
            }
            if (covers) cover = d;
        }
        if (cover >= 0) {
            fold_into(structure, w, c, cover, log_rho);
            continue;
        }

        // No covering function. The factor depends on c's parents only;
        // dropping it is safe for the decision exactly when no class
        // variable is involved.
        bool touches_class = false;
        for (int p : structure.parents(c))
            if (structure.is_class_var(p)) { touches_class = true; break; }
        require(!touches_class, ErrorCode::NotRenormalizable,
                "no covering function for a class-adjacent factor");
    }

    // Final normalization of the target's function by joint column mass.
    for (int b = 0; b < structure.parent_config_count(target); ++b) {
        double mass = 0.0;
        for (int a = 0; a < structure.arity(target); ++a)
            mass += std::exp(w[structure.feature_index(target, a, b)]);
        const double lr = std::log(mass);
        for (int a = 0; a < structure.arity(target); ++a)
            w[structure.feature_index(target, a, b)] -= lr;
    }
    return ParamVector(std::move(w));
}

namespace {

// P(y|x) for every joint class assignment, by log-sum-exp over class
// scores. Works for unnormalized parameter vectors as well (it is the
// conditional of the measure the weights define).
Eigen::VectorXd class_posterior(const NetworkStructure& structure, const ParamVector& params,
                                Assignment& full) {
    std::vector<double> scores;
    for_each_class_assignment(structure, [&](const std::vector<int>& labels) {
        for (size_t k = 0; k < labels.size(); ++k) full[structure.class_vars()[k]] = labels[k];
        scores.push_back(log_prob(structure, params, full));
    });
    const double top = *std::max_element(scores.begin(), scores.end());
    double total = 0.0;
    for (double s : scores) total += std::exp(s - top);
    Eigen::VectorXd posterior(static_cast<Eigen::Index>(scores.size()));
    for (size_t k = 0; k < scores.size(); ++k)
        posterior[static_cast<Eigen::Index>(k)] = std::exp(scores[k] - top) / total;
    return posterior;
}

}  // namespace

double verify_decision_preserved(const NetworkStructure& structure, const ParamVector& before,
                                 const ParamVector& after, int target, long long evidence_cap) {
    require(target >= 0 && target < structure.node_count() && structure.is_class_var(target),
            ErrorCode::BadClassVar, "verification target must be a class variable");
    long long evidence_space = 1;
    std::vector<int> evidence_vars;
    for (int j = 0; j < structure.node_count(); ++j) {
        if (structure.is_class_var(j)) continue;
        evidence_vars.push_back(j);
        evidence_space *= structure.arity(j);
        require(evidence_space <= evidence_cap, ErrorCode::EvidenceSpaceTooLarge,
                "evidence space exceeds the enumeration cap");
    }

    Assignment full(structure.node_count(), 0);
    double worst = 0.0;
    while (true) {
        worst = std::max(worst, (class_posterior(structure, before, full) -
                                 class_posterior(structure, after, full))
                                    .cwiseAbs()
                                    .maxCoeff());
        // Advance the evidence configuration.
        size_t k = evidence_vars.size();
        while (k > 0 && full[evidence_vars[k - 1]] + 1 == structure.arity(evidence_vars[k - 1]))
            full[evidence_vars[--k]] = 0;
        if (k == 0) break;
        ++full[evidence_vars[k - 1]];
    }
    return worst;
}

RenormReport renormalize_with_report(const NetworkStructure& structure, const ParamVector& params,
                                     int target, long long evidence_cap) {
    RenormReport report;
    const auto check = check_renormalizable(structure, target);
    report.renormalizable = check.renormalizable;
    report.violations = check.violations;
    if (!check.renormalizable) return report;

    report.normalized_params = renormalize(structure, params, target);
    try {
        report.max_decision_deviation =
            verify_decision_preserved(structure, params, *report.normalized_params, target, evidence_cap);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::EvidenceSpaceTooLarge) throw;
        report.max_decision_deviation = std::numeric_limits<double>::quiet_NaN();
    }
    return report;
}

}  // namespace mmbn
