#pragma once

// Robustness measurement: how far each rating method's scores move when
// collusive votes are injected, summarised as the RMS change over all lists.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "robustrate/engine.hpp"
#include "robustrate/rating.hpp"
#include "robustrate/simulate.hpp"

namespace robustrate {

class EmptyComparison : public Error {
public:
    using Error::Error;
};

enum class Method { ours, averaging, majority };

std::string method_name(Method m);

/// Per-list score; std::nullopt marks a list without data.
using ListScores = std::vector<std::optional<double>>;

/// sqrt(mean((after - before)^2)) over lists scored in both vectors.
double rms_diff(const ListScores& before, const ListScores& after);

struct ScoreRun {
    ListScores scores;
    bool converged = true;
    std::size_t iterations = 0;
};

/// Scores of every list under one method. `ours` runs the engine and scores
/// with `score_method`; the baselines only look at vote counts.
ScoreRun method_scores(const VoteGraph& graph, Method method, const EngineParams& params,
                       ScoreMethod score_method = ScoreMethod::weighted);

struct SweepReport {
    AttackMode mode = AttackMode::promotion;
    std::vector<double> levels;
    std::map<std::string, std::vector<double>> rms_by_method;
    std::size_t target_count = 0;
    bool all_converged = true;
};

/// For every fraction, injects the attack into a copy of `graph`, re-rates it
/// with each method and reports the RMS change against that method's scores
/// on the clean graph. `fractions` must be ascending and start at 0.
SweepReport attack_sweep(const VoteGraph& graph, const AttackPlan& plan_template, std::span<const double> fractions,
                         const std::set<Method>& methods, const EngineParams& params, std::uint64_t seed,
                         ScoreMethod score_method = ScoreMethod::weighted);

}  // namespace robustrate
