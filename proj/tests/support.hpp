#pragma once

// Test-only helpers: random small instances and oracles computed straight
// from the edge list, independent of the graph indexes and kernels.

#include <cmath>
#include <vector>

#include "robustrate/core.hpp"
#include "robustrate/engine.hpp"
#include "robustrate/simulate.hpp"

namespace robustrate::testing {

struct Instance {
    std::size_t voters = 0;
    std::vector<std::size_t> items;
    std::vector<Vote> votes;
    VoteGraph graph;
};

/// At most 6 voters, 3 lists and 4 items per list; at least one vote.
inline Instance random_instance(Rng& rng) {
    Instance in;
    in.voters = 1 + rng.below(6);
    in.items.resize(1 + rng.below(3));
    for (auto& n : in.items) n = 1 + rng.below(4);
    while (in.votes.empty()) {
        for (Index r = 0; r < in.voters; ++r)
            for (Index l = 0; l < in.items.size(); ++l)
                if (rng.below(4) != 0) in.votes.push_back({r, l, static_cast<Index>(rng.below(in.items[l]))});
    }
    in.graph = VoteGraph::build(in.voters, in.items, in.votes);
    return in;
}

inline std::size_t flat_index(const std::vector<std::size_t>& items, const Vote& v) {
    std::size_t offset = 0;
    for (Index l = 0; l < v.list; ++l) offset += items[l];
    return offset + v.item;
}

/// sum_r (sum of rho over r's votes)^(alpha+1), straight from the edge list,
/// in extended precision so finite differences are not swamped by rounding.
inline long double brute_objective(const Instance& in, const std::vector<double>& rho, double alpha) {
    std::vector<long double> trust(in.voters, 0.0L);
    for (const Vote& v : in.votes) trust[v.voter] += rho[flat_index(in.items, v)];
    long double f = 0.0L;
    for (long double t : trust) f += std::pow(t, static_cast<long double>(alpha) + 1.0L);
    return f;
}

/// Central differences of brute_objective with step h.
inline std::vector<double> fd_gradient(const Instance& in, std::vector<double> rho, double alpha, double h) {
    std::vector<double> g(rho.size());
    for (std::size_t k = 0; k < rho.size(); ++k) {
        const double x = rho[k];
        // x +- h are rounded to doubles; divide by the step actually taken.
        const double hi = x + h;
        const double lo = x - h;
        rho[k] = hi;
        const long double up = brute_objective(in, rho, alpha);
        rho[k] = lo;
        const long double down = brute_objective(in, rho, alpha);
        rho[k] = x;
        g[k] = static_cast<double>((up - down) / (static_cast<long double>(hi) - lo));
    }
    return g;
}

/// Random point on the constraint set: unit 2-norm per voted list, positive entries.
inline std::vector<double> random_feasible(Rng& rng, const Instance& in) {
    std::vector<double> rho(in.graph.num_items(), 0.0);
    for (Index l = 0; l < in.items.size(); ++l) {
        if (!in.graph.has_votes(l)) continue;
        const std::size_t off = in.graph.item_offset(l);
        double sq = 0.0;
        for (std::size_t i = 0; i < in.items[l]; ++i) {
            rho[off + i] = 0.05 + rng.unit();
            sq += rho[off + i] * rho[off + i];
        }
        for (std::size_t i = 0; i < in.items[l]; ++i) rho[off + i] /= std::sqrt(sq);
    }
    return rho;
}

inline CredibilityState state_from(const VoteGraph& graph, const std::vector<double>& flat) {
    CredibilityState rho(graph);
    for (std::size_t k = 0; k < flat.size(); ++k) rho[k] = flat[k];
    for (Index l = 0; l < graph.num_lists(); ++l) rho.set_has_data(l, graph.has_votes(l));
    return rho;
}

}  // namespace robustrate::testing
