#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cpspm/oracle.hpp"
#include "support.hpp"

#include <map>
#include <random>

using namespace cpspm;
using cpspm::testing::ids;
using cpspm::testing::sdb1;

TEST_CASE("subsequence test")
{
    const std::vector<Symbol> bccd{2, 3, 3, 4};
    CHECK(oracle::isSubsequence(std::vector<Symbol>{2, 4}, bccd));
    CHECK(oracle::isSubsequence(std::vector<Symbol>{3, 3}, bccd));
    CHECK(oracle::isSubsequence(std::vector<Symbol>{}, bccd));
    CHECK_FALSE(oracle::isSubsequence(std::vector<Symbol>{4, 2}, bccd));
    CHECK_FALSE(oracle::isSubsequence(std::vector<Symbol>{3, 3, 3}, bccd));
    CHECK_FALSE(oracle::isSubsequence(std::vector<Symbol>{1}, std::vector<Symbol>{}));
}

TEST_CASE("a single sequence <AB> has three patterns")
{
    const auto db = testing::fromText("A B\n");
    const auto got = oracle::mine(db, {0, 1, {}});
    CHECK(testing::render(db, got) == "A #SUP: 1\nA B #SUP: 1\nB #SUP: 1\n");
}

TEST_CASE("example database at minsup 2")
{
    const auto db = sdb1(2);
    const auto got = oracle::mine(db, {0, 2, {}});
    CHECK(testing::render(db, got) ==
          "A #SUP: 3\nA B #SUP: 3\nA B C #SUP: 2\nA C #SUP: 2\nB #SUP: 4\nB B #SUP: 2\nB B C #SUP: 2\nB C #SUP: 3\n"
          "C #SUP: 3\n");
}

TEST_CASE("maximum pattern length caps the search")
{
    const auto db = sdb1();
    for (const auto& p : oracle::mine(db, {2, 1, {}}))
        CHECK(p.symbols.size() <= 2);
}

TEST_CASE("constraint filter predicate")
{
    const auto db = sdb1();
    ConstraintSpec spec;
    spec.minSize = 2;
    spec.cardinalities.push_back({"B", 1, 2});
    spec.regex = "A?B+C*";
    const oracle::ConstraintFilter keep(db, spec);
    CHECK(keep(ids(db, "AB")));
    CHECK(keep(ids(db, "BBC")));
    CHECK_FALSE(keep(ids(db, "B")));    // too short
    CHECK_FALSE(keep(ids(db, "ABBB"))); // too many B
    CHECK_FALSE(keep(ids(db, "BA")));   // regex
}

TEST_CASE("oracle output is antimonotone and supports are exact")
{
    std::mt19937_64 rng(31);
    for (int round = 0; round < 100; ++round) {
        const auto raw = testing::randomRaw(rng, 10, 8, 5);
        const int theta = 1 + static_cast<int>(rng() % 3);
        std::optional<SequenceDatabase> built;
        try {
            built = SequenceDatabase::build(raw, theta);
        } catch (const EmptyDatabaseError&) {
            continue;
        }
        const auto& db = *built;
        const auto patterns = oracle::mine(db, {0, theta, {}});
        std::map<std::vector<Symbol>, int> found;
        for (const auto& p : patterns)
            found[p.symbols] = p.support;
        for (const auto& p : patterns) {
            CHECK(p.support >= theta);
            CHECK(p.support == db.support(p.symbols));
            // every prefix and every single-deletion subsequence is present too
            for (std::size_t drop = 0; p.symbols.size() > 1 && drop < p.symbols.size(); ++drop) {
                auto sub = p.symbols;
                sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
                REQUIRE(found.count(sub) == 1);
                CHECK(found[sub] >= p.support);
            }
        }
        // and nothing frequent was missed: try every one-symbol extension
        std::vector<std::vector<Symbol>> frontier{{}};
        for (const auto& [symbols, sup] : found)
            frontier.push_back(symbols);
        for (const auto& base : frontier) {
            for (Symbol b = 1; b <= db.numSymbols(); ++b) {
                auto ext = base;
                ext.push_back(b);
                if (db.support(ext) >= theta)
                    CHECK(found.count(ext) == 1);
            }
        }
    }
}
