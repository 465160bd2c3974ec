#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cpspm/miner.hpp"
#include "cpspm/oracle.hpp"
#include "cpspm/projection.hpp"
#include "support.hpp"

#include <random>
#include <set>

using namespace cpspm;
using cpspm::testing::ids;
using cpspm::testing::sdb1;

namespace {

constexpr PropagatorKind kAllKinds[] = {PropagatorKind::Baseline, PropagatorKind::PPIC, PropagatorKind::PPDC,
                                        PropagatorKind::PPMixed};

struct Rig {
    Rig(const SequenceDatabase& db, int theta, PropagatorKind kind)
        : engine(db.maxLength(), db.numSymbols()), pf(engine.post<ProjectedFrequency>(engine, db, theta, kind))
    {
        engine.trail().pushLevel();
    }

    std::vector<int> windowSids() const
    {
        const auto& p = pf.projection();
        std::vector<int> out;
        for (int k = p.start(); k < p.end(); ++k)
            out.push_back(p.sid(k));
        return out;
    }
    std::vector<int> windowPoss() const
    {
        const auto& p = pf.projection();
        std::vector<int> out;
        for (int k = p.start(); k < p.end(); ++k)
            out.push_back(p.pos(k));
        return out;
    }

    Engine engine;
    ProjectedFrequency& pf;
};

// Number of window sequences whose suffix contains b, for every b.
std::vector<int> recount(const SequenceDatabase& db, const PseudoProjection& p)
{
    std::vector<int> counts(static_cast<std::size_t>(db.numSymbols()) + 1, 0);
    for (int k = p.start(); k < p.end(); ++k) {
        const auto seq = db.sequence(p.sid(k));
        std::set<Symbol> seen(seq.begin() + p.pos(k), seq.end());
        for (Symbol b : seen)
            ++counts[static_cast<std::size_t>(b)];
    }
    counts[0] = 0;
    return counts;
}

} // namespace

TEST_CASE("projection windows on the example database")
{
    const auto db = sdb1();
    for (auto kind : kAllKinds) {
        const std::string label(toString(kind));
        CAPTURE(label);
        Rig rig(db, 1, kind);
        CHECK(rig.pf.projection().start() == 0);
        CHECK(rig.pf.projection().size() == 4);

        CHECK(rig.pf.project(*db.find("A")) == 3);
        CHECK(rig.pf.projection().start() == 4);
        CHECK(rig.pf.projection().size() == 3);
        CHECK(rig.windowSids() == std::vector<int>{0, 1, 2});
        CHECK(rig.windowPoss() == std::vector<int>{1, 2, 1});

        CHECK(rig.pf.project(*db.find("B")) == 3);
        CHECK(rig.pf.projection().start() == 7);
        CHECK(rig.pf.projection().size() == 3);
        CHECK(rig.windowSids() == std::vector<int>{0, 1, 2});
        CHECK(rig.windowPoss() == std::vector<int>{2, 3, 2});

        rig.engine.trail().restoreLevel();
        CHECK(rig.pf.projection().start() == 0);
        CHECK(rig.pf.projection().size() == 4);
    }
}

TEST_CASE("projected frequencies after <A>")
{
    const auto db = sdb1();
    const std::vector<int> expected{0, 0, 3, 2, 0}; // eps A B C D
    for (auto kind : kAllKinds) {
        const std::string label(toString(kind));
        CAPTURE(label);
        Rig rig(db, 1, kind);
        rig.pf.project(*db.find("A"));
        CHECK(rig.pf.frequencies() == expected);
    }
}

TEST_CASE("decrementing counters start from the root supports")
{
    const auto db = sdb1();
    Rig rig(db, 1, PropagatorKind::PPDC);
    CHECK(rig.pf.frequencies() == std::vector<int>{0, 3, 4, 3, 1});
    rig.pf.project(*db.find("A"));
    CHECK(rig.pf.frequencies() == std::vector<int>{0, 0, 3, 2, 0});
    rig.engine.trail().restoreLevel();
    CHECK(rig.pf.frequencies() == std::vector<int>{0, 3, 4, 3, 1});
}

TEST_CASE("projecting on an absent symbol empties the window")
{
    const auto db = sdb1();
    for (auto kind : kAllKinds) {
        Rig rig(db, 1, kind);
        rig.pf.project(*db.find("A"));
        rig.pf.project(*db.find("B"));
        CHECK(rig.pf.project(*db.find("D")) == 0);
    }
}

TEST_CASE("incremental scanning visits fewer positions than the full scan")
{
    const auto single = testing::fromText("A B C B C\n");
    {
        Rig rig(single, 1, PropagatorKind::PPIC);
        rig.pf.project(*single.find("A"));
        // one position to find A, then C(5) and B(4) from the last-position list
        CHECK(rig.pf.counters().positionsVisited == 3);
    }
    {
        Rig rig(single, 1, PropagatorKind::Baseline);
        rig.pf.project(*single.find("A"));
        CHECK(rig.pf.counters().positionsVisited == 5);
    }

    // a sequence without A is skipped in O(1)
    const auto skip = testing::fromText("B C D\nA\n");
    {
        Rig rig(skip, 1, PropagatorKind::PPIC);
        CHECK(rig.pf.project(*skip.find("A")) == 1);
        CHECK(rig.pf.counters().positionsVisited == 1);
    }
    {
        Rig rig(skip, 1, PropagatorKind::Baseline);
        CHECK(rig.pf.project(*skip.find("A")) == 1);
        CHECK(rig.pf.counters().positionsVisited == 4);
    }
}

TEST_CASE("mixed propagator chooses its path from the current counter")
{
    SUBCASE("few supporting sequences take the scratch path")
    {
        const auto db = sdb1();
        Rig rig(db, 1, PropagatorKind::PPMixed);
        rig.pf.project(*db.find("D")); // 2 * 1 < 4
        CHECK(rig.pf.lastProjectionWasScratch());
        CHECK(rig.pf.counters().scratchProjections == 1);
        CHECK(rig.pf.frequencies() == std::vector<int>{0, 0, 0, 0, 0});
    }
    SUBCASE("half the window or more takes the decrement path")
    {
        const auto db = testing::fromText("A B\nA C\nB C\nC\n");
        Rig rig(db, 1, PropagatorKind::PPMixed);
        rig.pf.project(*db.find("A")); // 2 * 2 == 4
        CHECK_FALSE(rig.pf.lastProjectionWasScratch());
        CHECK(rig.pf.counters().decrementProjections == 1);
        CHECK(rig.pf.frequencies() == recount(db, rig.pf.projection()));
    }
    SUBCASE("scratch counts are written back for later decrements")
    {
        const auto db = testing::fromText("A B C\nB C\nC B\nC\nB\n");
        Rig rig(db, 1, PropagatorKind::PPMixed);
        rig.pf.project(*db.find("A")); // 2 * 1 < 5
        REQUIRE(rig.pf.lastProjectionWasScratch());
        CHECK(rig.pf.frequencies() == recount(db, rig.pf.projection()));
        rig.pf.project(*db.find("B")); // 2 * 1 >= 1
        CHECK_FALSE(rig.pf.lastProjectionWasScratch());
        CHECK(rig.pf.frequencies() == recount(db, rig.pf.projection()));
    }
}

TEST_CASE("propagation filters the next pattern variable")
{
    const auto db = sdb1();
    for (auto kind : kAllKinds) {
        const std::string label(toString(kind));
        CAPTURE(label);
        Rig rig(db, 2, kind);
        REQUIRE(rig.engine.propagateAll());
        const Symbol A = *db.find("A"), B = *db.find("B"), C = *db.find("C");
        // the end marker and D (support 1) cannot start a pattern
        CHECK(rig.engine.var(0).sortedValues() == std::vector<int>{A, B, C});

        rig.engine.trail().pushLevel();
        REQUIRE(rig.engine.var(0).assign(A));
        REQUIRE(rig.engine.fixPoint());
        CHECK(rig.engine.var(1).sortedValues() == std::vector<int>{0, B, C});

        rig.engine.trail().pushLevel();
        REQUIRE(rig.engine.var(1).assign(0));
        REQUIRE(rig.engine.fixPoint());
        for (int j = 2; j < rig.engine.numVars(); ++j) {
            CHECK(rig.engine.var(j).bound());
            CHECK(rig.engine.var(j).value() == 0);
        }
        CHECK(rig.pf.processed() == rig.engine.numVars());
        rig.engine.trail().restoreLevel();
        CHECK(rig.pf.processed() == 1);
    }
}

TEST_CASE("an infrequent first symbol fails")
{
    const auto db = sdb1();
    for (auto kind : kAllKinds) {
        const std::string label(toString(kind));
        CAPTURE(label);
        {
            Rig rig(db, 4, kind);
            CHECK(rig.pf.project(*db.find("A")) == 3);
        }
        Rig rig(db, 4, kind);
        REQUIRE(rig.engine.var(0).assign(*db.find("A")));
        CHECK_FALSE(rig.engine.propagateAll());
    }
}

TEST_CASE("all variants agree with a recount along every search branch")
{
    std::mt19937_64 rng(2024);
    for (int round = 0; round < 200; ++round) {
        const auto raw = testing::randomRaw(rng, 12, 10, 6);
        const int theta = 1 + static_cast<int>(rng() % 3);
        std::optional<SequenceDatabase> built;
        try {
            built = SequenceDatabase::build(raw, theta);
        } catch (const EmptyDatabaseError&) {
            continue;
        }
        const auto& db = *built;
        CAPTURE(round);

        struct Step {
            std::vector<int> sids, poss;
            std::vector<int> counts;
            bool operator==(const Step&) const = default;
        };
        std::vector<std::vector<Step>> traces;
        std::vector<std::vector<Pattern>> outputs;
        std::vector<std::uint64_t> visited;

        for (auto kind : kAllKinds) {
            const std::string label(toString(kind));
        CAPTURE(label);
            Miner miner(db, MiningOptions{theta, kind, {}});
            std::vector<Step> trace;
            // starts as the root window
            std::vector<std::int32_t> expectedSids;
            std::vector<std::int32_t> expectedPoss(static_cast<std::size_t>(db.size()), 0);
            for (int sid = 0; sid < db.size(); ++sid)
                expectedSids.push_back(sid);
            bool windowsOk = true, countsOk = true, stackOk = true;

            miner.frequency().setObserver([&](const ProjectedFrequency& pf) {
                const auto& p = pf.projection();
                // ancestors' windows below the current one are untouched
                for (int k = 0; k < p.start(); ++k) {
                    if (p.sid(k) != expectedSids[static_cast<std::size_t>(k)] ||
                        p.pos(k) != expectedPoss[static_cast<std::size_t>(k)])
                        stackOk = false;
                }
                expectedSids.assign(p.sids().begin(), p.sids().end());
                expectedPoss.assign(p.poss().begin(), p.poss().end());

                std::vector<Symbol> prefix;
                for (int j = 0; j < pf.processed(); ++j)
                    prefix.push_back(miner.engine().var(j).value());
                // window = supporting sequences, cursor just past the greedy embedding
                std::vector<int> wantSids, wantPoss;
                for (int sid = 0; sid < db.size(); ++sid) {
                    const auto seq = db.sequence(sid);
                    std::size_t pos = 0, matched = 0;
                    while (pos < seq.size() && matched < prefix.size()) {
                        if (seq[pos] == prefix[matched])
                            ++matched;
                        ++pos;
                    }
                    if (matched == prefix.size()) {
                        wantSids.push_back(sid);
                        wantPoss.push_back(static_cast<int>(pos));
                    }
                }
                Step step;
                for (int k = p.start(); k < p.end(); ++k) {
                    step.sids.push_back(p.sid(k));
                    step.poss.push_back(p.pos(k));
                }
                if (step.sids != wantSids || step.poss != wantPoss)
                    windowsOk = false;
                if (p.size() >= theta) {
                    step.counts = pf.frequencies();
                    if (step.counts != recount(db, p))
                        countsOk = false;
                }
                trace.push_back(std::move(step));
            });

            std::vector<Pattern> found;
            const auto result = miner.run([&](const Pattern& pat) { found.push_back(pat); });
            CHECK(windowsOk);
            CHECK(countsOk);
            CHECK(stackOk);
            CHECK(miner.engine().trail().depth() == 0);
            traces.push_back(std::move(trace));
            outputs.push_back(canonicalize(found));
            visited.push_back(result.scan.positionsVisited);
        }
        for (std::size_t i = 1; i < traces.size(); ++i) {
            CHECK(traces[i] == traces[0]);
            CHECK(outputs[i] == outputs[0]);
        }
        CHECK(visited[1] <= visited[0]); // PPIC never scans more than the baseline
        CHECK(outputs[0] == oracle::mine(db, oracle::Config{0, theta, {}}));
    }
}

TEST_CASE("window storage grows when a branch outgrows the initial capacity")
{
    const auto db = testing::fromText("A A A A A A A A A A\n");
    Rig rig(db, 1, PropagatorKind::PPIC);
    REQUIRE(rig.pf.projection().capacity() == 1);
    for (int i = 0; i < 10; ++i)
        CHECK(rig.pf.project(1) == 1);
    CHECK(rig.pf.projection().capacity() >= 11);
    CHECK(rig.windowPoss() == std::vector<int>{10});
    CHECK(rig.pf.project(1) == 0);
}

TEST_CASE("propagator names round trip")
{
    for (auto kind : kAllKinds) {
        const auto parsed = parsePropagatorKind(toString(kind));
        REQUIRE(parsed.has_value());
        CHECK(static_cast<int>(*parsed) == static_cast<int>(kind));
    }
    CHECK_FALSE(parsePropagatorKind("PPIC"));
    CHECK_FALSE(parsePropagatorKind(""));
}
