#ifndef CPSPM_PROJECTION_HPP
#define CPSPM_PROJECTION_HPP

#include "cpspm/engine.hpp"
#include "cpspm/sdb.hpp"
#include "cpspm/trail.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace cpspm {

enum class PropagatorKind { Baseline, PPIC, PPDC, PPMixed };

std::string_view toString(PropagatorKind kind);
std::optional<PropagatorKind> parsePropagatorKind(std::string_view name);

// Pseudo-projected databases stacked along the current search branch.
//
// The window [start, start + size) of sids/poss is the projection of the
// current prefix: sids holds 0-based sequence indices and poss the 0-based
// index of the first suffix element. Children are written right after the
// parent window; start and size are reversible so backtracking just
// exposes the parent window again.
class PseudoProjection {
public:
    PseudoProjection(Trail& trail, int numSequences);

    int start() const { return start_.get(); }
    int size() const { return size_.get(); }
    int end() const { return start_.get() + size_.get(); }

    std::span<const std::int32_t> sids() const { return {sids_.data(), static_cast<std::size_t>(end())}; }
    std::span<const std::int32_t> poss() const { return {poss_.data(), static_cast<std::size_t>(end())}; }
    std::int32_t sid(int k) const { return sids_[static_cast<std::size_t>(k)]; }
    std::int32_t pos(int k) const { return poss_[static_cast<std::size_t>(k)]; }

    std::size_t capacity() const { return sids_.size(); }

private:
    friend class ProjectedFrequency;

    // Guarantees room for `extra` entries after the current window. Growth
    // copies existing contents and is not trailed.
    void reserveAfterWindow(int extra);
    void put(int k, std::int32_t sid, std::int32_t pos)
    {
        sids_[static_cast<std::size_t>(k)] = sid;
        poss_[static_cast<std::size_t>(k)] = pos;
    }

    std::vector<std::int32_t> sids_;
    std::vector<std::int32_t> poss_;
    ReversibleInt start_;
    ReversibleInt size_;
};

struct ScanCounters {
    // Sequence positions and last-position entries inspected.
    std::uint64_t positionsVisited = 0;
    std::uint64_t projections = 0;
    std::uint64_t scratchProjections = 0;
    std::uint64_t decrementProjections = 0;
};

// Projected-frequency global constraint over pattern variables P1..PL.
//
// Each time the next variable P_i becomes bound it either closes the
// pattern (P_i = 0, the remaining variables are set to 0) or projects the
// database on P_i, fails when fewer than theta sequences remain, and
// removes from D(P_{i+1}) every symbol whose projected frequency is below
// theta.
class ProjectedFrequency : public Propagator {
public:
    // Invoked after every projection; used by tests to recount.
    using ProjectionObserver = std::function<void(const ProjectedFrequency&)>;

    ProjectedFrequency(Engine& engine, const SequenceDatabase& db, int theta, PropagatorKind kind);

    bool propagate() override;
    const char* name() const override { return "projected-frequency"; }

    // Projects the current window on `symbol` with the configured variant and
    // returns the new window size. Exposed for direct testing.
    int project(Symbol symbol);

    PropagatorKind kind() const { return kind_; }
    int theta() const { return theta_; }
    const PseudoProjection& projection() const { return proj_; }
    // Projected frequency of `symbol` in the current window. For baseline and
    // PPIC this is only meaningful right after a projection.
    int frequency(Symbol symbol) const;
    std::vector<int> frequencies() const;
    // Number of leading pattern variables already processed.
    int processed() const { return processed_.get(); }
    const ScanCounters& counters() const { return counters_; }
    // Deepest pattern prefix projected so far.
    int peakDepth() const { return peakDepth_; }
    // Whether the last PPmixed projection took the scratch-counting path.
    bool lastProjectionWasScratch() const { return lastScratch_; }

    void setObserver(ProjectionObserver observer) { observer_ = std::move(observer); }

private:
    int projectBaseline(Symbol a);
    int projectIncremental(Symbol a, bool writeBack);
    int projectDecrement(Symbol a);
    void countIncremental(int from, int to);
    bool filterNext(int next);

    Engine& engine_;
    const SequenceDatabase& db_;
    const int theta_;
    const PropagatorKind kind_;
    PseudoProjection proj_;
    std::vector<ReversibleInt> revCounts_;
    std::vector<int> counts_;
    std::vector<int> rootSupport_;
    std::vector<int> seenStamp_;
    int stamp_ = 0;
    ReversibleInt processed_;
    ScanCounters counters_;
    int peakDepth_ = 0;
    bool lastScratch_ = false;
    ProjectionObserver observer_;
};

} // namespace cpspm

#endif
