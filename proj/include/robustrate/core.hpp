#pragma once

// Domain types shared by every part of the rating engine: the immutable
// voter/list/item incidence graph and the per-iteration state vectors.
//
// All identifiers are dense zero-based indices. A "list" is the election
// attached to one product, its "items" are the rating levels, and item i of a
// list corresponds to rating level i + 1.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace robustrate {

using Index = std::uint32_t;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DuplicateVote : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// One cast vote: `voter` chose `item` on `list`.
struct Vote {
    Index voter = 0;
    Index list = 0;
    Index item = 0;

    friend bool operator==(const Vote&, const Vote&) = default;
    friend auto operator<=>(const Vote&, const Vote&) = default;
};

/// Sparse bipartite record of who voted for what.
///
/// Items of all lists are laid out in one flat index space of size
/// `num_items()`: item i of list l has flat index `item_offset(l) + i`.
/// Two compressed adjacency indexes are kept, item -> voters (ascending voter
/// index) and voter -> items (ascending list index). The graph is immutable
/// once built.
class VoteGraph {
public:
    VoteGraph() = default;

    /// Throws DuplicateVote if a voter votes twice on one list and
    /// IndexOutOfRange for any index outside the declared shape.
    static VoteGraph build(std::size_t num_voters, std::vector<std::size_t> items_per_list,
                           std::span<const Vote> votes);

    std::size_t num_voters() const { return voter_offsets_.size() - 1; }
    std::size_t num_lists() const { return list_offsets_.size() - 1; }
    std::size_t num_items() const { return item_list_.size(); }
    std::size_t num_votes() const { return item_voters_.size(); }

    std::size_t items_on(Index list) const { return list_offsets_[list + 1] - list_offsets_[list]; }
    std::size_t item_offset(Index list) const { return list_offsets_[list]; }
    std::span<const std::size_t> list_offsets() const { return list_offsets_; }

    Index list_of(std::size_t flat_item) const { return item_list_[flat_item]; }
    std::size_t flat(Index list, Index item) const;

    /// Voters who chose the given flat item, ascending.
    std::span<const Index> voters_of(std::size_t flat_item) const {
        return {item_voters_.data() + item_voter_offsets_[flat_item],
                item_voters_.data() + item_voter_offsets_[flat_item + 1]};
    }

    /// Voters who chose `item` on `list`; throws IndexOutOfRange.
    std::span<const Index> voters_for(Index list, Index item) const;

    /// Flat items the voter chose, ascending by list.
    std::span<const std::size_t> items_of(Index voter) const {
        return {voter_items_.data() + voter_offsets_[voter],
                voter_items_.data() + voter_offsets_[voter + 1]};
    }

    std::size_t votes_on(Index list) const { return list_vote_counts_[list]; }
    bool has_votes(Index list) const { return list_vote_counts_[list] > 0; }

    std::vector<std::size_t> items_per_list() const;

    /// All votes, ordered by (voter, list).
    std::vector<Vote> edges() const;

private:
    std::vector<std::size_t> list_offsets_{0};
    std::vector<Index> item_list_;
    std::vector<std::size_t> item_voter_offsets_{0};
    std::vector<Index> item_voters_;
    std::vector<std::size_t> voter_offsets_{0};
    std::vector<std::size_t> voter_items_;
    std::vector<std::size_t> list_vote_counts_;
};

/// Per-list credibility vectors stored over the graph's flat item space.
/// Lists without votes stay all-zero and report `has_data(l) == false`.
class CredibilityState {
public:
    CredibilityState() = default;
    explicit CredibilityState(const VoteGraph& graph);

    std::size_t size() const { return values_.size(); }
    std::size_t num_lists() const { return offsets_.size() - 1; }

    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }

    std::span<double> list(Index l) {
        return {values_.data() + offsets_[l], values_.data() + offsets_[l + 1]};
    }
    std::span<const double> list(Index l) const {
        return {values_.data() + offsets_[l], values_.data() + offsets_[l + 1]};
    }

    double& operator[](std::size_t flat_item) { return values_[flat_item]; }
    double operator[](std::size_t flat_item) const { return values_[flat_item]; }

    bool has_data(Index l) const { return has_data_[l] != 0; }
    void set_has_data(Index l, bool v) { has_data_[l] = v ? 1 : 0; }

    /// Throws DimensionMismatch when the layout differs from the graph.
    void check_shape(const VoteGraph& graph) const;

    friend bool operator==(const CredibilityState&, const CredibilityState&) = default;

private:
    std::vector<double> values_;
    std::vector<std::size_t> offsets_{0};
    std::vector<std::uint8_t> has_data_;
};

/// Per-voter trustworthiness.
struct TrustState {
    std::vector<double> t;

    std::size_t size() const { return t.size(); }
    double operator[](std::size_t r) const { return t[r]; }

    friend bool operator==(const TrustState&, const TrustState&) = default;
};

/// Euclidean distance between two states over voted lists only, summed
/// list by list then item by item.
double residual_norm(const CredibilityState& a, const CredibilityState& b);

}  // namespace robustrate
