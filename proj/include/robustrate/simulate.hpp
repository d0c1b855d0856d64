#pragma once

// Synthetic vote data: the two small hand-built elections, a larger planted
// corpus for attack sweeps, and the collusion injector.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "robustrate/core.hpp"

namespace robustrate {

/// mt19937_64 with bounded draws that do not depend on the standard
/// library's distribution implementations, so a seed reproduces the same
/// data on every toolchain.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, n).
    std::uint64_t below(std::uint64_t n);
    /// Uniform in [0, 1).
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 engine_;
};

enum class AttackMode { promotion, demotion };
enum class ColluderHistory { none, random };

struct AttackPlan {
    AttackMode mode = AttackMode::promotion;
    double fraction = 0.0;         ///< injected votes per existing vote on a target
    std::size_t inject_level = 0;  ///< 1-based level the colluders choose
    std::size_t promote_below = 3; ///< promotion targets: majority level < this
    std::size_t demote_above = 8;  ///< demotion targets: majority level > this
    ColluderHistory history = ColluderHistory::none;
    std::size_t history_lists = 10;  ///< random prior votes per colluder

    /// Colluders pick the top level of a `levels`-point scale.
    static AttackPlan promotion(std::size_t levels, double fraction = 0.0);
    /// Colluders pick level 1.
    static AttackPlan demotion(double fraction = 0.0);
};

/// Five voters, six lists of five levels each.
VoteGraph gen_scenario1();

/// 15 honest voters (scenario 1 replicated three times, voters 0..14) and 45
/// random voters (15..59) over 7 lists of 8 levels; the last list is the
/// colluded election (honest: level 1, colluders: level 5).
VoteGraph gen_scenario2(std::uint64_t seed);

inline constexpr std::size_t kScenario2Honest = 15;

struct CorpusParams {
    std::size_t num_lists = 200;
    std::size_t num_voters = 2000;
    std::size_t levels = 10;
    std::size_t low_lists = 40;
    std::size_t high_lists = 40;
    std::size_t lists_per_voter = 30;
};

/// Corpus with planted low-rated lists (lists 0 .. low_lists-1, plurality
/// level 2), high-rated lists (next high_lists, plurality level 9) and
/// mid-rated lists. Each voter rates `lists_per_voter` distinct lists and level
/// counts per list follow the list's profile exactly, assigned to voters in a
/// random order. Requires levels == 10.
VoteGraph gen_corpus(const CorpusParams& params, std::uint64_t seed);

/// Lists whose majority level crosses the plan's threshold.
std::vector<Index> select_targets(const VoteGraph& graph, const AttackPlan& plan);

/// Adds ceil(fraction * m_l) votes at the plan's level on every target l, each
/// from a fresh voter appended after the existing ones. Existing votes are
/// kept untouched.
VoteGraph inject_attack(const VoteGraph& graph, const AttackPlan& plan, const std::vector<Index>& targets,
                        std::uint64_t seed);

/// Number of votes injected on a list with `existing` votes.
std::size_t injected_count(std::size_t existing, double fraction);

}  // namespace robustrate
