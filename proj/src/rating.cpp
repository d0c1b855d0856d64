#include "robustrate/rating.hpp"

#include <cmath>
#include <string>

namespace robustrate {

namespace {

bool all_zero(std::span<const double> v) {
    for (double x : v)
        if (x != 0.0) return false;
    return true;
}

void require_votes(const VoteGraph& graph, Index list) {
    if (list >= graph.num_lists()) throw IndexOutOfRange("no list " + std::to_string(list));
    if (!graph.has_votes(list)) throw NoData("list " + std::to_string(list) + " has no votes");
}

}  // namespace

std::size_t max_credibility_score(std::span<const double> rho_l) {
    if (rho_l.empty() || all_zero(rho_l)) throw NoData("credibility vector is empty or all zero");
    std::size_t best = 0;
    for (std::size_t i = 1; i < rho_l.size(); ++i)
        if (rho_l[i] > rho_l[best]) best = i;
    return best + 1;
}

double weighted_score(std::span<const double> rho_l, double p) {
    if (rho_l.empty() || all_zero(rho_l)) throw NoData("credibility vector is empty or all zero");
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < rho_l.size(); ++i) {
        const double w = std::pow(rho_l[i], p);
        num += w * static_cast<double>(i + 1);
        den += w;
    }
    return num / den;
}

double average_baseline(const VoteGraph& graph, Index list) {
    require_votes(graph, list);
    const std::size_t offset = graph.item_offset(list);
    std::size_t weighted = 0;
    for (std::size_t i = 0; i < graph.items_on(list); ++i) weighted += (i + 1) * graph.voters_of(offset + i).size();
    return static_cast<double>(weighted) / static_cast<double>(graph.votes_on(list));
}

std::size_t majority_baseline(const VoteGraph& graph, Index list) {
    require_votes(graph, list);
    const std::size_t offset = graph.item_offset(list);
    std::size_t best = 0;
    std::size_t best_count = graph.voters_of(offset).size();
    for (std::size_t i = 1; i < graph.items_on(list); ++i) {
        const std::size_t c = graph.voters_of(offset + i).size();
        if (c > best_count) {
            best = i;
            best_count = c;
        }
    }
    return best + 1;
}

double credibility_score(std::span<const double> rho_l, ScoreMethod method, double p) {
    return method == ScoreMethod::weighted ? weighted_score(rho_l, p)
                                           : static_cast<double>(max_credibility_score(rho_l));
}

std::vector<RatingScore> rate_all(const VoteGraph& graph, const CredibilityState& rho, double p) {
    std::vector<RatingScore> out(graph.num_lists());
    for (Index l = 0; l < graph.num_lists(); ++l) {
        RatingScore& s = out[l];
        s.list = l;
        if (!graph.has_votes(l) || !rho.has_data(l) || all_zero(rho.list(l))) continue;
        s.no_data = false;
        s.max_credibility_level = max_credibility_score(rho.list(l));
        s.weighted_score = weighted_score(rho.list(l), p);
        s.average_score = average_baseline(graph, l);
        s.majority_level = majority_baseline(graph, l);
    }
    return out;
}

}  // namespace robustrate
