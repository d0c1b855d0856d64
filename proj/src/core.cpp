#include "robustrate/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace robustrate {

namespace {

std::string vote_text(const Vote& v) {
    return "(voter " + std::to_string(v.voter) + ", list " + std::to_string(v.list) + ", item " +
           std::to_string(v.item) + ")";
}

}  // namespace

VoteGraph VoteGraph::build(std::size_t num_voters, std::vector<std::size_t> items_per_list,
                           std::span<const Vote> votes) {
    VoteGraph g;
    const std::size_t num_lists = items_per_list.size();

    g.list_offsets_.assign(num_lists + 1, 0);
    for (std::size_t l = 0; l < num_lists; ++l)
        g.list_offsets_[l + 1] = g.list_offsets_[l] + items_per_list[l];
    const std::size_t num_items = g.list_offsets_.back();

    g.item_list_.resize(num_items);
    for (std::size_t l = 0; l < num_lists; ++l)
        std::fill(g.item_list_.begin() + static_cast<std::ptrdiff_t>(g.list_offsets_[l]),
                  g.item_list_.begin() + static_cast<std::ptrdiff_t>(g.list_offsets_[l + 1]),
                  static_cast<Index>(l));

    for (const Vote& v : votes) {
        if (v.voter >= num_voters || v.list >= num_lists || v.item >= items_per_list[v.list])
            throw IndexOutOfRange("vote index out of range " + vote_text(v));
    }

    // Sorting by (voter, list) puts any duplicate (voter, list) pair next to
    // each other and yields the voter-major adjacency directly.
    std::vector<Vote> sorted(votes.begin(), votes.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 1; k < sorted.size(); ++k) {
        if (sorted[k].voter == sorted[k - 1].voter && sorted[k].list == sorted[k - 1].list)
            throw DuplicateVote("voter " + std::to_string(sorted[k].voter) +
                                " voted more than once on list " + std::to_string(sorted[k].list));
    }

    g.voter_offsets_.assign(num_voters + 1, 0);
    g.voter_items_.resize(sorted.size());
    g.list_vote_counts_.assign(num_lists, 0);
    std::vector<std::size_t> item_counts(num_items, 0);
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        const Vote& v = sorted[k];
        const std::size_t flat_item = g.list_offsets_[v.list] + v.item;
        ++g.voter_offsets_[v.voter + 1];
        g.voter_items_[k] = flat_item;
        ++g.list_vote_counts_[v.list];
        ++item_counts[flat_item];
    }
    std::partial_sum(g.voter_offsets_.begin(), g.voter_offsets_.end(), g.voter_offsets_.begin());

    g.item_voter_offsets_.assign(num_items + 1, 0);
    std::partial_sum(item_counts.begin(), item_counts.end(), g.item_voter_offsets_.begin() + 1);
    g.item_voters_.resize(sorted.size());
    std::vector<std::size_t> cursor(g.item_voter_offsets_.begin(), g.item_voter_offsets_.end() - 1);
    // Voter-major traversal fills every item bucket in ascending voter order.
    for (const Vote& v : sorted)
        g.item_voters_[cursor[g.list_offsets_[v.list] + v.item]++] = v.voter;

    return g;
}

std::size_t VoteGraph::flat(Index list, Index item) const {
    if (list >= num_lists() || item >= items_on(list))
        throw IndexOutOfRange("no item " + std::to_string(item) + " on list " + std::to_string(list));
    return list_offsets_[list] + item;
}

std::span<const Index> VoteGraph::voters_for(Index list, Index item) const {
    return voters_of(flat(list, item));
}

std::vector<std::size_t> VoteGraph::items_per_list() const {
    std::vector<std::size_t> out(num_lists());
    for (std::size_t l = 0; l < out.size(); ++l) out[l] = items_on(static_cast<Index>(l));
    return out;
}

std::vector<Vote> VoteGraph::edges() const {
    std::vector<Vote> out;
    out.reserve(num_votes());
    for (Index r = 0; r < num_voters(); ++r) {
        for (std::size_t k : items_of(r)) {
            const Index l = item_list_[k];
            out.push_back({r, l, static_cast<Index>(k - list_offsets_[l])});
        }
    }
    return out;
}

CredibilityState::CredibilityState(const VoteGraph& graph)
    : values_(graph.num_items(), 0.0),
      offsets_(graph.list_offsets().begin(), graph.list_offsets().end()),
      has_data_(graph.num_lists(), 0) {}

void CredibilityState::check_shape(const VoteGraph& graph) const {
    const auto expected = graph.list_offsets();
    if (offsets_.size() != expected.size() || !std::equal(offsets_.begin(), offsets_.end(), expected.begin()))
        throw DimensionMismatch("credibility layout does not match the vote graph");
}

double residual_norm(const CredibilityState& a, const CredibilityState& b) {
    if (a.size() != b.size() || a.num_lists() != b.num_lists())
        throw DimensionMismatch("credibility states have different layouts");
    double sum = 0.0;
    for (Index l = 0; l < a.num_lists(); ++l) {
        if (!a.has_data(l) && !b.has_data(l)) continue;
        const auto x = a.list(l);
        const auto y = b.list(l);
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double d = x[i] - y[i];
            sum += d * d;
        }
    }
    return std::sqrt(sum);
}

}  // namespace robustrate
