#pragma once

// Turning converged credibilities into product scores, plus the two
// count-based baselines used for comparison. Levels are reported 1-based.

#include <cstddef>
#include <span>
#include <vector>

#include "robustrate/core.hpp"

namespace robustrate {

class NoData : public Error {
public:
    using Error::Error;
};

enum class ScoreMethod { max_credibility, weighted };

struct RatingScore {
    Index list = 0;
    std::size_t max_credibility_level = 0;
    double weighted_score = 0.0;
    double average_score = 0.0;
    std::size_t majority_level = 0;
    bool no_data = true;
};

/// Level with the highest credibility; ties go to the lowest level.
std::size_t max_credibility_score(std::span<const double> rho_l);

/// sum_i rho_i^p * i / sum_j rho_j^p.
double weighted_score(std::span<const double> rho_l, double p);

double average_baseline(const VoteGraph& graph, Index list);

/// Most-voted level; ties go to the lowest level.
std::size_t majority_baseline(const VoteGraph& graph, Index list);

/// Score of one list under `method`, on the 1..n level scale.
double credibility_score(std::span<const double> rho_l, ScoreMethod method, double p);

/// Every score for every list. Lists without votes come back with no_data set.
std::vector<RatingScore> rate_all(const VoteGraph& graph, const CredibilityState& rho, double p);

}  // namespace robustrate
