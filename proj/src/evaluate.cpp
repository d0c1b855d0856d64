#include "robustrate/evaluate.hpp"

#include <cmath>
#include <stdexcept>

namespace robustrate {

std::string method_name(Method m) {
    switch (m) {
        case Method::ours: return "ours";
        case Method::averaging: return "averaging";
        case Method::majority: return "majority";
    }
    return "unknown";
}

double rms_diff(const ListScores& before, const ListScores& after) {
    if (before.size() != after.size()) throw DimensionMismatch("score vectors cover different list sets");
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t l = 0; l < before.size(); ++l) {
        if (!before[l] || !after[l]) continue;
        const double d = *after[l] - *before[l];
        sum += d * d;
        ++count;
    }
    if (count == 0) throw EmptyComparison("no list is scored in both score vectors");
    return std::sqrt(sum / static_cast<double>(count));
}

ScoreRun method_scores(const VoteGraph& graph, Method method, const EngineParams& params, ScoreMethod score_method) {
    ScoreRun out;
    out.scores.assign(graph.num_lists(), std::nullopt);
    if (method == Method::ours) {
        const RunResult result = run(graph, params);
        out.converged = result.converged;
        out.iterations = result.iterations;
        for (Index l = 0; l < graph.num_lists(); ++l) {
            if (!graph.has_votes(l)) continue;
            out.scores[l] = credibility_score(result.rho.list(l), score_method, params.p_exponent);
        }
        return out;
    }
    for (Index l = 0; l < graph.num_lists(); ++l) {
        if (!graph.has_votes(l)) continue;
        out.scores[l] = method == Method::averaging ? average_baseline(graph, l)
                                                    : static_cast<double>(majority_baseline(graph, l));
    }
    return out;
}

SweepReport attack_sweep(const VoteGraph& graph, const AttackPlan& plan_template, std::span<const double> fractions,
                         const std::set<Method>& methods, const EngineParams& params, std::uint64_t seed,
                         ScoreMethod score_method) {
    if (fractions.empty() || fractions.front() != 0.0) throw std::invalid_argument("fractions must start at 0");
    for (std::size_t k = 1; k < fractions.size(); ++k)
        if (!(fractions[k] > fractions[k - 1])) throw std::invalid_argument("fractions must be strictly ascending");

    SweepReport report;
    report.mode = plan_template.mode;
    report.levels.assign(fractions.begin(), fractions.end());
    const std::vector<Index> targets = select_targets(graph, plan_template);
    report.target_count = targets.size();

    std::map<Method, ListScores> clean;
    for (Method m : methods) {
        ScoreRun s = method_scores(graph, m, params, score_method);
        report.all_converged = report.all_converged && s.converged;
        clean[m] = std::move(s.scores);
        report.rms_by_method[method_name(m)].reserve(fractions.size());
    }

    for (std::size_t k = 0; k < fractions.size(); ++k) {
        AttackPlan plan = plan_template;
        plan.fraction = fractions[k];
        std::size_t injected = 0;
        for (Index l : targets) injected += injected_count(graph.votes_on(l), plan.fraction);
        if (injected == 0) {
            for (Method m : methods) report.rms_by_method[method_name(m)].push_back(0.0);
            continue;
        }
        const VoteGraph attacked = inject_attack(graph, plan, targets, seed + k);
        for (Method m : methods) {
            ScoreRun s = method_scores(attacked, m, params, score_method);
            report.all_converged = report.all_converged && s.converged;
            report.rms_by_method[method_name(m)].push_back(rms_diff(clean[m], s.scores));
        }
    }
    return report;
}

}  // namespace robustrate
