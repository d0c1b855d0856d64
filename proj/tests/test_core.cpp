#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "robustrate/core.hpp"
#include "robustrate/simulate.hpp"

using namespace robustrate;

namespace {

std::vector<Index> as_vector(std::span<const Index> s) { return {s.begin(), s.end()}; }

// Random valid vote set: each voter votes on a random subset of lists.
std::vector<Vote> random_votes(Rng& rng, std::size_t voters, const std::vector<std::size_t>& items) {
    std::vector<Vote> votes;
    for (Index r = 0; r < voters; ++r)
        for (Index l = 0; l < items.size(); ++l)
            if (rng.below(3) != 0) votes.push_back({r, l, static_cast<Index>(rng.below(items[l]))});
    return votes;
}

}  // namespace

TEST_CASE("single edge graph") {
    const std::vector<Vote> votes = {{0, 0, 0}};
    const VoteGraph g = VoteGraph::build(1, {1}, votes);
    CHECK(g.num_votes() == 1);
    CHECK(as_vector(g.voters_for(0, 0)) == std::vector<Index>{0});
    CHECK(g.votes_on(0) == 1);
}

TEST_CASE("scenario 1 graph shape and lookups") {
    const VoteGraph g = gen_scenario1();
    CHECK(g.num_voters() == 5);
    CHECK(g.num_lists() == 6);
    CHECK(g.num_votes() == 30);
    for (Index l = 0; l < 6; ++l) CHECK(g.items_on(l) == 5);

    CHECK(as_vector(g.voters_for(0, 0)) == std::vector<Index>{0, 1, 2});
    CHECK(g.voters_for(0, 4).empty());
    CHECK(as_vector(g.voters_for(5, 1)) == std::vector<Index>{1, 2});
}

TEST_CASE("duplicate vote on one list is rejected") {
    const std::vector<Vote> votes = {{0, 0, 0}, {0, 0, 1}};
    CHECK_THROWS_AS(VoteGraph::build(1, {2}, votes), DuplicateVote);
}

TEST_CASE("out of range indices are rejected") {
    CHECK_THROWS_AS(VoteGraph::build(1, {2}, std::vector<Vote>{{0, 0, 2}}), IndexOutOfRange);
    CHECK_THROWS_AS(VoteGraph::build(1, {2}, std::vector<Vote>{{0, 1, 0}}), IndexOutOfRange);
    CHECK_THROWS_AS(VoteGraph::build(1, {2}, std::vector<Vote>{{1, 0, 0}}), IndexOutOfRange);
    const VoteGraph g = gen_scenario1();
    CHECK_THROWS_AS(g.voters_for(6, 0), IndexOutOfRange);
    CHECK_THROWS_AS(g.voters_for(0, 5), IndexOutOfRange);
}

TEST_CASE("lists without votes are allowed") {
    const VoteGraph g = VoteGraph::build(2, {3, 2}, std::vector<Vote>{{0, 0, 1}, {1, 0, 1}});
    CHECK(g.has_votes(0));
    CHECK_FALSE(g.has_votes(1));
    const CredibilityState rho(g);
    CHECK_FALSE(rho.has_data(1));
    CHECK(rho.list(1).size() == 2);
}

TEST_CASE("property: edges round trip and the two indexes are inverse") {
    Rng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t voters = 1 + rng.below(8);
        std::vector<std::size_t> items(1 + rng.below(5));
        for (auto& n : items) n = 1 + rng.below(6);
        std::vector<Vote> votes = random_votes(rng, voters, items);
        std::vector<Vote> shuffled = votes;
        rng.shuffle(shuffled);

        const VoteGraph g = VoteGraph::build(voters, items, shuffled);
        std::vector<Vote> back = g.edges();
        std::sort(votes.begin(), votes.end());
        REQUIRE(back == votes);

        // item -> voters and voter -> items describe the same edge set.
        std::set<std::tuple<Index, std::size_t>> from_items, from_voters;
        for (std::size_t k = 0; k < g.num_items(); ++k) {
            const auto vs = g.voters_of(k);
            CHECK(std::is_sorted(vs.begin(), vs.end()));
            for (Index r : vs) from_items.insert({r, k});
        }
        for (Index r = 0; r < voters; ++r)
            for (std::size_t k : g.items_of(r)) from_voters.insert({r, k});
        CHECK(from_items == from_voters);

        for (Index l = 0; l < items.size(); ++l) {
            std::size_t total = 0;
            for (Index i = 0; i < items[l]; ++i) total += g.voters_for(l, i).size();
            CHECK(total == g.votes_on(l));
        }
    }
}

TEST_CASE("residual norm skips lists without data") {
    const VoteGraph g = VoteGraph::build(1, {2, 2}, std::vector<Vote>{{0, 0, 0}});
    CredibilityState a(g), b(g);
    a.set_has_data(0, true);
    b.set_has_data(0, true);
    a[0] = 1.0;
    b[1] = 1.0;
    a[2] = 5.0;  // list 1 has no data and is ignored
    CHECK(residual_norm(a, b) == doctest::Approx(std::sqrt(2.0)));
}
