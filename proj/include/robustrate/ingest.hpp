#pragma once

// Reading rating files (MovieLens layout: user,item,rating[,timestamp]) into a
// vote graph, and writing graphs and identifier tables back out.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "robustrate/core.hpp"

namespace robustrate {

class MalformedRow : public Error {
public:
    MalformedRow(std::size_t row, const std::string& what);
    std::size_t row() const { return row_; }

private:
    std::size_t row_;
};

class OutOfScaleRating : public Error {
public:
    using Error::Error;
};

/// Affine map from a source rating scale onto levels 1..target_levels.
struct LevelMapping {
    double source_min = 1.0;
    double source_max = 10.0;
    double source_step = 1.0;
    std::size_t target_levels = 10;

    /// Source scale 1..levels in unit steps.
    static LevelMapping identity(std::size_t levels);

    /// Number of distinct source values on the step grid.
    std::size_t source_values() const;

    void validate() const;
};

/// Round-half-up of the affine image of `raw` in [1, n].
std::size_t map_level(double raw, const LevelMapping& mapping);

struct LoadedVotes {
    VoteGraph graph;
    std::vector<std::string> voter_ids;  ///< internal voter index -> external id
    std::vector<std::string> list_ids;   ///< internal list index -> external id
};

/// Parses comma-separated rows. A first row whose first field is not numeric
/// is treated as a header. Identifiers are re-indexed densely in order of
/// first appearance. When a timestamp column is present a re-rating replaces
/// the earlier one (latest timestamp wins); without one it is a DuplicateVote.
LoadedVotes parse_votes(std::istream& in, const LevelMapping& mapping);
LoadedVotes load_votes(const std::filesystem::path& path, const LevelMapping& mapping);

/// Rows of "internal_index,external_id".
void write_sidecar(std::ostream& out, const std::vector<std::string>& ids);

/// Rows of "user,item,level" with external identifiers, ordered by voter.
void write_votes(std::ostream& out, const LoadedVotes& votes);

/// Names voters and lists by their 1-based position.
LoadedVotes with_index_ids(VoteGraph graph);

}  // namespace robustrate
