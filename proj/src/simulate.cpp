#include "robustrate/simulate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "robustrate/rating.hpp"

namespace robustrate {

namespace {

// Scenario 1 ballots, [list][voter] -> 1-based level.
constexpr std::array<std::array<int, 5>, 6> kScenario1 = {{
    {1, 1, 1, 2, 2},
    {1, 2, 2, 3, 2},
    {3, 4, 4, 4, 2},
    {1, 3, 3, 3, 1},
    {2, 2, 2, 1, 1},
    {1, 2, 2, 1, 1},
}};

// Level profiles (percent) for the planted corpus; pluralities stay below a
// quarter of the votes.
constexpr std::array<double, 10> kLowProfile = {20, 22, 18, 14, 10, 7, 4, 3, 1, 1};
constexpr std::array<double, 10> kHighProfile = {1, 1, 3, 4, 7, 10, 14, 18, 22, 20};

// Largest-remainder apportionment of `total` over `weights`; ties on the
// remainder go to the lower level.
std::vector<std::size_t> apportion(std::span<const double> weights, std::size_t total) {
    const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    std::vector<std::size_t> counts(weights.size());
    std::vector<double> rem(weights.size());
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double exact = static_cast<double>(total) * weights[i] / sum;
        counts[i] = static_cast<std::size_t>(std::floor(exact));
        rem[i] = exact - static_cast<double>(counts[i]);
        assigned += counts[i];
    }
    while (assigned < total) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < rem.size(); ++i)
            if (rem[i] > rem[best]) best = i;
        ++counts[best];
        rem[best] = -1.0;
        ++assigned;
    }
    return counts;
}

}  // namespace

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below(0)");
    // Rejection sampling over the largest multiple of n.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

AttackPlan AttackPlan::promotion(std::size_t levels, double fraction) {
    AttackPlan p;
    p.mode = AttackMode::promotion;
    p.fraction = fraction;
    p.inject_level = levels;
    return p;
}

AttackPlan AttackPlan::demotion(double fraction) {
    AttackPlan p;
    p.mode = AttackMode::demotion;
    p.fraction = fraction;
    p.inject_level = 1;
    return p;
}

VoteGraph gen_scenario1() {
    std::vector<Vote> votes;
    for (Index l = 0; l < kScenario1.size(); ++l)
        for (Index r = 0; r < kScenario1[l].size(); ++r)
            votes.push_back({r, l, static_cast<Index>(kScenario1[l][r] - 1)});
    return VoteGraph::build(5, std::vector<std::size_t>(6, 5), votes);
}

VoteGraph gen_scenario2(std::uint64_t seed) {
    constexpr std::size_t kVoters = 60;
    constexpr std::size_t kLists = 7;
    constexpr std::size_t kItems = 8;
    Rng rng(seed);
    std::vector<Vote> votes;
    for (Index r = 0; r < kScenario2Honest; ++r) {
        for (Index l = 0; l < kScenario1.size(); ++l) votes.push_back({r, l, static_cast<Index>(kScenario1[l][r % 5] - 1)});
        votes.push_back({r, 6, 0});
    }
    for (Index r = kScenario2Honest; r < kVoters; ++r) {
        for (Index l = 0; l < kLists - 1; ++l) votes.push_back({r, l, static_cast<Index>(rng.below(kItems))});
        votes.push_back({r, 6, 4});
    }
    return VoteGraph::build(kVoters, std::vector<std::size_t>(kLists, kItems), votes);
}

VoteGraph gen_corpus(const CorpusParams& params, std::uint64_t seed) {
    if (params.levels != 10) throw std::invalid_argument("planted corpus uses a 10-level scale");
    if (params.low_lists + params.high_lists > params.num_lists)
        throw std::invalid_argument("more planted lists than lists");
    if (params.lists_per_voter > params.num_lists) throw std::invalid_argument("lists_per_voter exceeds num_lists");

    Rng rng(seed);

    // Who rates what: each voter draws distinct lists by partial Fisher-Yates.
    std::vector<std::vector<Index>> raters(params.num_lists);
    std::vector<Index> order(params.num_lists);
    for (Index r = 0; r < params.num_voters; ++r) {
        std::iota(order.begin(), order.end(), Index{0});
        for (std::size_t k = 0; k < params.lists_per_voter; ++k) {
            const std::size_t j = k + rng.below(order.size() - k);
            std::swap(order[k], order[j]);
            raters[order[k]].push_back(r);
        }
    }

    std::vector<Vote> votes;
    votes.reserve(params.num_voters * params.lists_per_voter);
    std::array<double, 10> mid{};
    for (Index l = 0; l < params.num_lists; ++l) {
        std::span<const double> profile;
        if (l < params.low_lists) {
            profile = kLowProfile;
        } else if (l < params.low_lists + params.high_lists) {
            profile = kHighProfile;
        } else {
            const double center = 4.0 + 3.0 * rng.unit();
            for (std::size_t i = 0; i < mid.size(); ++i) {
                const double d = static_cast<double>(i + 1) - center;
                mid[i] = std::exp(-d * d / 8.0);
            }
            profile = mid;
        }
        const auto counts = apportion(profile, raters[l].size());
        std::vector<Index> levels;
        levels.reserve(raters[l].size());
        for (std::size_t i = 0; i < counts.size(); ++i) levels.insert(levels.end(), counts[i], static_cast<Index>(i));
        rng.shuffle(levels);
        for (std::size_t k = 0; k < raters[l].size(); ++k) votes.push_back({raters[l][k], l, levels[k]});
    }
    return VoteGraph::build(params.num_voters, std::vector<std::size_t>(params.num_lists, params.levels), votes);
}

std::vector<Index> select_targets(const VoteGraph& graph, const AttackPlan& plan) {
    std::vector<Index> out;
    for (Index l = 0; l < graph.num_lists(); ++l) {
        if (!graph.has_votes(l)) continue;
        const std::size_t majority = majority_baseline(graph, l);
        const bool hit = plan.mode == AttackMode::promotion ? majority < plan.promote_below
                                                            : majority > plan.demote_above;
        if (hit) out.push_back(l);
    }
    return out;
}

std::size_t injected_count(std::size_t existing, double fraction) {
    if (!(fraction >= 0.0)) throw std::invalid_argument("attack fraction must be >= 0");
    // The slack absorbs representation error such as 0.1 * 30 = 3.0000000000000004.
    const double exact = fraction * static_cast<double>(existing);
    return static_cast<std::size_t>(std::ceil(exact - 1e-9 * std::max(1.0, exact)));
}

VoteGraph inject_attack(const VoteGraph& graph, const AttackPlan& plan, const std::vector<Index>& targets,
                        std::uint64_t seed) {
    if (!(plan.fraction >= 0.0)) throw std::invalid_argument("attack fraction must be >= 0");
    std::vector<std::uint8_t> is_target(graph.num_lists(), 0);
    for (Index l : targets) {
        if (l >= graph.num_lists()) throw IndexOutOfRange("target list " + std::to_string(l) + " out of range");
        if (plan.inject_level < 1 || plan.inject_level > graph.items_on(l))
            throw IndexOutOfRange("inject level " + std::to_string(plan.inject_level) + " not on list " +
                                  std::to_string(l));
        is_target[l] = 1;
    }
    std::vector<Index> others;
    for (Index l = 0; l < graph.num_lists(); ++l)
        if (!is_target[l]) others.push_back(l);

    Rng rng(seed);
    std::vector<Vote> votes = graph.edges();
    auto next_voter = static_cast<Index>(graph.num_voters());
    const auto level = static_cast<Index>(plan.inject_level - 1);
    for (Index l : targets) {
        const std::size_t count = injected_count(graph.votes_on(l), plan.fraction);
        for (std::size_t k = 0; k < count; ++k) {
            const Index voter = next_voter++;
            votes.push_back({voter, l, level});
            if (plan.history != ColluderHistory::random) continue;
            const std::size_t n = std::min(plan.history_lists, others.size());
            for (std::size_t j = 0; j < n; ++j) {
                const std::size_t pick = j + rng.below(others.size() - j);
                std::swap(others[j], others[pick]);
                const Index h = others[j];
                votes.push_back({voter, h, static_cast<Index>(rng.below(graph.items_on(h)))});
            }
        }
    }
    return VoteGraph::build(next_voter, graph.items_per_list(), votes);
}

}  // namespace robustrate
