#include <doctest.h>

#include <cmath>
#include <vector>

#include "robustrate/evaluate.hpp"

using namespace robustrate;

namespace {

// Four voters. List 0 has three votes on level 1 and one on level 2; lists 1
// and 2 are unanimous on level 5, so promotion only targets list 0.
VoteGraph small_election() {
    std::vector<Vote> votes;
    for (Index r = 0; r < 4; ++r) {
        votes.push_back({r, 0, r == 3 ? Index{1} : Index{0}});
        votes.push_back({r, 1, 4});
        votes.push_back({r, 2, 4});
    }
    return VoteGraph::build(4, {10, 10, 10}, votes);
}

const std::set<Method> kAll = {Method::ours, Method::averaging, Method::majority};

}  // namespace

TEST_CASE("rms examples") {
    const ListScores a = {1.0, 2.0, 3.0};
    CHECK(rms_diff(a, a) == 0.0);
    CHECK(rms_diff(ListScores{0.0, 0.0}, ListScores{3.0, 4.0}) == doctest::Approx(std::sqrt(12.5)));
    CHECK(rms_diff(a, ListScores{1.5, 2.5, 3.5}) == doctest::Approx(0.5));
    // Lists missing on either side are skipped.
    CHECK(rms_diff(ListScores{1.0, std::nullopt, 2.0}, ListScores{2.0, 7.0, std::nullopt}) == 1.0);
    CHECK_THROWS_AS(rms_diff(ListScores{std::nullopt}, ListScores{1.0}), EmptyComparison);
    CHECK_THROWS_AS(rms_diff(ListScores{}, ListScores{}), EmptyComparison);
    CHECK_THROWS_AS(rms_diff(ListScores{1.0}, ListScores{1.0, 2.0}), DimensionMismatch);
}

TEST_CASE("rms is symmetric and shift-exact") {
    Rng rng(1);
    for (int trial = 0; trial < 100; ++trial) {
        ListScores a(1 + rng.below(20)), b(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
            a[k] = 10.0 * rng.unit();
            b[k] = 10.0 * rng.unit();
        }
        CHECK(rms_diff(a, b) == doctest::Approx(rms_diff(b, a)));
        const double d = rng.unit();
        ListScores shifted = a;
        for (auto& v : shifted) *v += d;
        CHECK(rms_diff(a, shifted) == doctest::Approx(d));
    }
}

TEST_CASE("sweep on a hand-counted election") {
    const VoteGraph g = small_election();
    const std::vector<double> fractions = {0.0, 0.5, 0.75, 1.0};
    const SweepReport rep = attack_sweep(g, AttackPlan::promotion(10), fractions, kAll, EngineParams{}, 1);
    CHECK(rep.target_count == 1);
    CHECK(rep.levels == fractions);
    CHECK(rep.all_converged);

    // ceil(f * 4) = 2, 3, 4 injected level-10 votes on list 0; lists 1, 2 unchanged.
    const double avg0 = 5.0 / 4.0;
    const auto& avg = rep.rms_by_method.at("averaging");
    for (std::size_t k = 1; k < fractions.size(); ++k) {
        const double n = static_cast<double>(k + 1);
        const double after = (5.0 + 10.0 * n) / (4.0 + n);
        CHECK(avg[k] == doctest::Approx((after - avg0) / std::sqrt(3.0)));
    }
    // Majority holds at 2 and at the 3:3 tie, flips to 10 at 4 injected.
    const auto& maj = rep.rms_by_method.at("majority");
    CHECK(maj[1] == 0.0);
    CHECK(maj[2] == 0.0);
    CHECK(maj[3] == doctest::Approx(9.0 / std::sqrt(3.0)));

    for (const auto& [name, series] : rep.rms_by_method) CHECK(series[0] == 0.0);
}

TEST_CASE("a zero-only sweep reports zeros") {
    const std::vector<double> fractions = {0.0};
    const SweepReport rep = attack_sweep(small_election(), AttackPlan::promotion(10), fractions, kAll, EngineParams{}, 1);
    for (const auto& [name, series] : rep.rms_by_method) CHECK(series == std::vector<double>{0.0});
}

TEST_CASE("averaging rms grows with the injected share") {
    CorpusParams cp;
    cp.num_voters = 500;
    cp.num_lists = 50;
    cp.low_lists = 10;
    cp.high_lists = 10;
    cp.lists_per_voter = 10;
    const VoteGraph g = gen_corpus(cp, 2);
    const std::vector<double> fractions = {0.0, 0.25, 0.5, 1.0, 2.0};
    for (const AttackPlan& plan : {AttackPlan::promotion(10), AttackPlan::demotion()}) {
        const SweepReport rep = attack_sweep(g, plan, fractions, {Method::averaging}, EngineParams{}, 3);
        const auto& avg = rep.rms_by_method.at("averaging");
        for (std::size_t k = 1; k < avg.size(); ++k) CHECK(avg[k] > avg[k - 1]);
    }
}

TEST_CASE("sweeps are deterministic") {
    CorpusParams cp;
    cp.num_voters = 300;
    cp.num_lists = 40;
    cp.low_lists = 8;
    cp.high_lists = 8;
    cp.lists_per_voter = 10;
    const VoteGraph g = gen_corpus(cp, 4);
    AttackPlan plan = AttackPlan::promotion(10);
    plan.history = ColluderHistory::random;
    const std::vector<double> fractions = {0.0, 0.5, 1.5};
    const SweepReport a = attack_sweep(g, plan, fractions, kAll, EngineParams{}, 9);
    const SweepReport b = attack_sweep(g, plan, fractions, kAll, EngineParams{}, 9);
    CHECK(a.rms_by_method == b.rms_by_method);
}

TEST_CASE("fraction grids must start at zero and ascend") {
    const VoteGraph g = small_election();
    const std::vector<double> no_zero = {0.5, 1.0};
    const std::vector<double> descending = {0.0, 1.0, 0.5};
    CHECK_THROWS_AS(attack_sweep(g, AttackPlan::promotion(10), no_zero, kAll, EngineParams{}, 1), std::invalid_argument);
    CHECK_THROWS_AS(attack_sweep(g, AttackPlan::promotion(10), descending, kAll, EngineParams{}, 1),
                    std::invalid_argument);
}

TEST_CASE("method scores skip lists without votes") {
    const VoteGraph g = VoteGraph::build(1, {3, 3}, std::vector<Vote>{{0, 0, 2}});
    for (Method m : kAll) {
        const ScoreRun s = method_scores(g, m, EngineParams{});
        REQUIRE(s.scores.size() == 2);
        CHECK(*s.scores[0] == 3.0);
        CHECK_FALSE(s.scores[1].has_value());
    }
}
