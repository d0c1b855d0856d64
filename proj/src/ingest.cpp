#include "robustrate/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

namespace robustrate {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

bool parse_double(std::string_view s, double& value) {
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(value);
}

class IdTable {
public:
    Index intern(std::string_view id) {
        auto [it, inserted] = index_.try_emplace(std::string(id), static_cast<Index>(ids_.size()));
        if (inserted) ids_.emplace_back(id);
        return it->second;
    }
    std::vector<std::string> release() { return std::move(ids_); }

private:
    std::unordered_map<std::string, Index> index_;
    std::vector<std::string> ids_;
};

struct Row {
    Vote vote;
    double timestamp = 0.0;
    std::size_t line = 0;
};

}  // namespace

MalformedRow::MalformedRow(std::size_t row, const std::string& what)
    : Error("row " + std::to_string(row) + ": " + what), row_(row) {}

LevelMapping LevelMapping::identity(std::size_t levels) {
    return {1.0, static_cast<double>(levels), 1.0, levels};
}

std::size_t LevelMapping::source_values() const {
    return static_cast<std::size_t>(std::llround((source_max - source_min) / source_step)) + 1;
}

void LevelMapping::validate() const {
    if (!(source_max > source_min)) throw std::invalid_argument("rating scale maximum must exceed its minimum");
    if (!(source_step > 0.0)) throw std::invalid_argument("rating scale step must be positive");
    if (target_levels < 2) throw std::invalid_argument("at least two target levels are required");
}

std::size_t map_level(double raw, const LevelMapping& mapping) {
    const double span = mapping.source_max - mapping.source_min;
    const double slack = 1e-9 * span;
    if (!(raw >= mapping.source_min - slack && raw <= mapping.source_max + slack))
        throw OutOfScaleRating("rating " + std::to_string(raw) + " outside [" + std::to_string(mapping.source_min) +
                               ", " + std::to_string(mapping.source_max) + "]");
    const double n = static_cast<double>(mapping.target_levels);
    const double affine = 1.0 + (raw - mapping.source_min) / span * (n - 1.0);
    // Half-up; the slack keeps exact halves from rounding down after representation error.
    const double level = std::floor(affine + 0.5 + 1e-9);
    return static_cast<std::size_t>(std::clamp(level, 1.0, n));
}

LoadedVotes parse_votes(std::istream& in, const LevelMapping& mapping) {
    mapping.validate();
    IdTable voters;
    IdTable lists;
    std::vector<Row> rows;
    std::unordered_map<std::uint64_t, std::size_t> seen;  // (voter, list) -> index into rows
    std::size_t columns = 0;
    std::size_t line_no = 0;
    bool first_content = true;

    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view text = trim(line);
        if (text.empty()) continue;
        const auto fields = split(text);
        double probe = 0.0;
        if (first_content) {
            first_content = false;
            if (!parse_double(fields[0], probe)) continue;  // header
        }
        if (fields.size() < 3 || fields.size() > 4)
            throw MalformedRow(line_no, "expected 3 or 4 columns, found " + std::to_string(fields.size()));
        if (columns == 0) columns = fields.size();
        if (fields.size() != columns)
            throw MalformedRow(line_no, "expected " + std::to_string(columns) + " columns, found " +
                                            std::to_string(fields.size()));
        if (fields[0].empty() || fields[1].empty()) throw MalformedRow(line_no, "empty identifier");

        double raw = 0.0;
        if (!parse_double(fields[2], raw)) throw MalformedRow(line_no, "unparsable rating '" + std::string(fields[2]) + "'");
        double timestamp = 0.0;
        if (columns == 4 && !parse_double(fields[3], timestamp))
            throw MalformedRow(line_no, "unparsable timestamp '" + std::string(fields[3]) + "'");

        std::size_t level = 0;
        try {
            level = map_level(raw, mapping);
        } catch (const OutOfScaleRating& e) {
            throw OutOfScaleRating("row " + std::to_string(line_no) + ": " + e.what());
        }

        const Index voter = voters.intern(fields[0]);
        const Index list = lists.intern(fields[1]);
        Row row{{voter, list, static_cast<Index>(level - 1)}, timestamp, line_no};
        const std::uint64_t key = (std::uint64_t{voter} << 32) | list;
        const auto [it, inserted] = seen.try_emplace(key, rows.size());
        if (inserted) {
            rows.push_back(row);
            continue;
        }
        if (columns != 4)
            throw DuplicateVote("row " + std::to_string(line_no) + ": user '" + std::string(fields[0]) +
                                "' already rated item '" + std::string(fields[1]) + "' on row " +
                                std::to_string(rows[it->second].line));
        if (timestamp >= rows[it->second].timestamp) rows[it->second] = row;
    }

    std::vector<Vote> votes;
    votes.reserve(rows.size());
    for (const Row& r : rows) votes.push_back(r.vote);

    LoadedVotes out;
    out.voter_ids = voters.release();
    out.list_ids = lists.release();
    out.graph = VoteGraph::build(out.voter_ids.size(), std::vector<std::size_t>(out.list_ids.size(), mapping.target_levels),
                                 votes);
    return out;
}

LoadedVotes load_votes(const std::filesystem::path& path, const LevelMapping& mapping) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    return parse_votes(in, mapping);
}

void write_sidecar(std::ostream& out, const std::vector<std::string>& ids) {
    out << "internal_index,external_id\n";
    for (std::size_t i = 0; i < ids.size(); ++i) out << i << ',' << ids[i] << '\n';
}

void write_votes(std::ostream& out, const LoadedVotes& votes) {
    out << "user,item,rating\n";
    for (const Vote& v : votes.graph.edges())
        out << votes.voter_ids[v.voter] << ',' << votes.list_ids[v.list] << ',' << (v.item + 1) << '\n';
}

LoadedVotes with_index_ids(VoteGraph graph) {
    LoadedVotes out;
    out.voter_ids.reserve(graph.num_voters());
    for (std::size_t r = 0; r < graph.num_voters(); ++r) out.voter_ids.push_back(std::to_string(r + 1));
    out.list_ids.reserve(graph.num_lists());
    for (std::size_t l = 0; l < graph.num_lists(); ++l) out.list_ids.push_back(std::to_string(l + 1));
    out.graph = std::move(graph);
    return out;
}

}  // namespace robustrate
