#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "robustrate/ingest.hpp"
#include "robustrate/simulate.hpp"

using namespace robustrate;

namespace {

LevelMapping half_stars() { return {0.5, 5.0, 0.5, 10}; }

LoadedVotes parse(const std::string& text, const LevelMapping& m) {
    std::istringstream in(text);
    return parse_votes(in, m);
}

}  // namespace

TEST_CASE("level mapping examples") {
    CHECK(map_level(4.5, half_stars()) == 9);
    CHECK(map_level(0.5, half_stars()) == 1);
    CHECK(map_level(5.0, half_stars()) == 10);
    CHECK(map_level(3.0, {1.0, 5.0, 1.0, 10}) == 6);  // 5.5 rounds up
    CHECK(map_level(1.0, {1.0, 5.0, 1.0, 10}) == 1);
    CHECK(map_level(7.0, LevelMapping::identity(10)) == 7);
    CHECK_THROWS_AS(map_level(11.0, LevelMapping::identity(10)), OutOfScaleRating);
    CHECK_THROWS_AS(map_level(0.0, half_stars()), OutOfScaleRating);
}

TEST_CASE("half-star grid maps one to one onto ten levels") {
    const LevelMapping m = half_stars();
    CHECK(m.source_values() == 10);
    for (std::size_t k = 0; k < 10; ++k) CHECK(map_level(0.5 + 0.5 * static_cast<double>(k), m) == k + 1);
}

TEST_CASE("level mapping is monotone") {
    Rng rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const double lo = -5.0 + 10.0 * rng.unit();
        const LevelMapping m{lo, lo + 0.5 + 10.0 * rng.unit(), 0.5, 2 + rng.below(20)};
        std::size_t prev = 0;
        for (int s = 0; s <= 200; ++s) {
            const double raw = m.source_min + (m.source_max - m.source_min) * s / 200.0;
            const std::size_t level = map_level(raw, m);
            CHECK(level >= prev);
            CHECK(level >= 1);
            CHECK(level <= m.target_levels);
            prev = level;
        }
        CHECK(prev == m.target_levels);
    }
}

TEST_CASE("invalid mappings are rejected") {
    CHECK_THROWS_AS((LevelMapping{5.0, 1.0, 1.0, 10}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((LevelMapping{1.0, 5.0, 0.0, 10}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((LevelMapping{1.0, 5.0, 1.0, 1}.validate()), std::invalid_argument);
}

TEST_CASE("movielens rows with header, timestamps and CRLF") {
    const LoadedVotes v = parse("userId,movieId,rating,timestamp\r\n"
                                "7,42,4.5,964982703\r\n"
                                "7,43,0.5,964982704\r\n"
                                "\r\n"
                                "9,42,3.0,964982705\r\n",
                                half_stars());
    CHECK(v.graph.num_voters() == 2);
    CHECK(v.graph.num_lists() == 2);
    CHECK(v.graph.num_votes() == 3);
    CHECK(v.voter_ids == std::vector<std::string>{"7", "9"});
    CHECK(v.list_ids == std::vector<std::string>{"42", "43"});
    CHECK(v.graph.voters_for(0, 8).size() == 1);  // 4.5 -> level 9
    CHECK(v.graph.voters_for(1, 0).size() == 1);  // 0.5 -> level 1
    CHECK(v.graph.voters_for(0, 5).size() == 1);  // 3.0 -> level 6
}

TEST_CASE("headerless three-column input") {
    const LoadedVotes v = parse("1,1,3\n2,1,5\n", LevelMapping::identity(5));
    CHECK(v.graph.num_votes() == 2);
    CHECK(v.graph.items_on(0) == 5);
}

TEST_CASE("malformed rows report their line") {
    try {
        (void)parse("user,item,rating\n1,1,3\n1,2\n", LevelMapping::identity(5));
        FAIL("expected MalformedRow");
    } catch (const MalformedRow& e) {
        CHECK(e.row() == 3);
    }
    CHECK_THROWS_AS(parse("1,1,x\n", LevelMapping::identity(5)), MalformedRow);
    CHECK_THROWS_AS(parse("1,1,3,100\n1,2,3\n", LevelMapping::identity(5)), MalformedRow);
    CHECK_THROWS_AS(parse("1,,3\n", LevelMapping::identity(5)), MalformedRow);
    CHECK_THROWS_AS(parse("1,1,9\n", LevelMapping::identity(5)), OutOfScaleRating);
}

TEST_CASE("re-ratings keep the latest timestamp") {
    const LoadedVotes v = parse("u,i,r,t\n1,1,2,200\n1,1,5,300\n1,1,4,100\n", LevelMapping::identity(5));
    CHECK(v.graph.num_votes() == 1);
    CHECK(v.graph.voters_for(0, 4).size() == 1);
}

TEST_CASE("duplicates without timestamps are an error") {
    CHECK_THROWS_AS(parse("1,1,2\n1,1,5\n", LevelMapping::identity(5)), DuplicateVote);
}

TEST_CASE("empty input gives an empty graph") {
    const LoadedVotes v = parse("user,item,rating\n", LevelMapping::identity(5));
    CHECK(v.graph.num_votes() == 0);
    CHECK(v.graph.num_lists() == 0);
}

TEST_CASE("export and reload reproduces the graph") {
    const LoadedVotes original = with_index_ids(gen_scenario2(3));
    std::stringstream buf;
    write_votes(buf, original);
    const LoadedVotes back = parse_votes(buf, LevelMapping::identity(8));
    CHECK(back.graph.edges() == original.graph.edges());
    CHECK(back.voter_ids == original.voter_ids);
    CHECK(back.list_ids == original.list_ids);
}

TEST_CASE("loading from a file and writing a sidecar") {
    const auto path = std::filesystem::temp_directory_path() / "robustrate_ingest_test.csv";
    {
        std::ofstream f(path);
        f << "user,item,rating\nalice,x,4\nbob,x,2\nalice,y,1\n";
    }
    const LoadedVotes v = load_votes(path, LevelMapping::identity(5));
    std::filesystem::remove(path);
    CHECK(v.graph.num_votes() == 3);

    std::ostringstream side;
    write_sidecar(side, v.voter_ids);
    CHECK(side.str() == "internal_index,external_id\n0,alice\n1,bob\n");
    CHECK_THROWS_AS(load_votes(path, LevelMapping::identity(5)), Error);
}
