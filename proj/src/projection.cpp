#include "cpspm/projection.hpp"

#include <algorithm>
#include <climits>
#include <numeric>

namespace cpspm {

std::string_view toString(PropagatorKind kind)
{
    switch (kind) {
    case PropagatorKind::Baseline: return "baseline";
    case PropagatorKind::PPIC: return "ppic";
    case PropagatorKind::PPDC: return "ppdc";
    case PropagatorKind::PPMixed: return "ppmixed";
    }
    return "?";
}

std::optional<PropagatorKind> parsePropagatorKind(std::string_view name)
{
    for (auto kind : {PropagatorKind::Baseline, PropagatorKind::PPIC, PropagatorKind::PPDC, PropagatorKind::PPMixed}) {
        if (toString(kind) == name)
            return kind;
    }
    return std::nullopt;
}

PseudoProjection::PseudoProjection(Trail& trail, int numSequences)
    : sids_(static_cast<std::size_t>(numSequences)),
      poss_(static_cast<std::size_t>(numSequences), 0),
      start_(trail, 0),
      size_(trail, numSequences)
{
    std::iota(sids_.begin(), sids_.end(), 0);
}

void PseudoProjection::reserveAfterWindow(int extra)
{
    const std::size_t needed = static_cast<std::size_t>(end()) + static_cast<std::size_t>(extra);
    if (needed <= sids_.size())
        return;
    const std::size_t grown = std::max(needed, sids_.size() * 2);
    sids_.resize(grown);
    poss_.resize(grown);
}

ProjectedFrequency::ProjectedFrequency(Engine& engine, const SequenceDatabase& db, int theta, PropagatorKind kind)
    : engine_(engine),
      db_(db),
      theta_(theta),
      kind_(kind),
      proj_(engine.trail(), db.size()),
      counts_(static_cast<std::size_t>(db.numSymbols()) + 1, 0),
      seenStamp_(static_cast<std::size_t>(db.numSymbols()) + 1, 0),
      processed_(engine.trail(), 0)
{
    for (int sid = 0; sid < db.size(); ++sid) {
        for (const LastPos& e : db.lastPosList(sid))
            ++counts_[static_cast<std::size_t>(e.symbol)];
    }
    rootSupport_ = counts_;
    revCounts_.reserve(counts_.size());
    for (int c : counts_)
        revCounts_.emplace_back(engine.trail(), c);
}

int ProjectedFrequency::frequency(Symbol symbol) const
{
    if (kind_ == PropagatorKind::PPDC || kind_ == PropagatorKind::PPMixed)
        return revCounts_[static_cast<std::size_t>(symbol)].get();
    return counts_[static_cast<std::size_t>(symbol)];
}

std::vector<int> ProjectedFrequency::frequencies() const
{
    std::vector<int> out(counts_.size(), 0);
    for (std::size_t b = 1; b < out.size(); ++b)
        out[b] = frequency(static_cast<Symbol>(b));
    return out;
}

bool ProjectedFrequency::propagate()
{
    const int length = engine_.numVars();
    if (processed_.get() == 0) {
        // P1 is never the end marker and only takes supported symbols
        IntVar& first = engine_.var(0);
        for (int k = first.size() - 1; k >= 0; --k) {
            const int b = first.values()[static_cast<std::size_t>(k)];
            if ((b == kEpsilon || rootSupport_[static_cast<std::size_t>(b)] < theta_) && !first.remove(b))
                return false;
        }
    }

    while (processed_.get() < length) {
        const int index = processed_.get();
        IntVar& current = engine_.var(index);
        if (!current.bound())
            break;
        const Symbol a = current.value();
        if (a == kEpsilon) {
            for (int j = index + 1; j < length; ++j) {
                if (!engine_.var(j).assign(kEpsilon))
                    return false;
            }
            processed_.set(length);
            break;
        }
        processed_.set(index + 1);
        if (project(a) < theta_)
            return false;
        peakDepth_ = std::max(peakDepth_, index + 1);
        if (index + 1 < length && !filterNext(index + 1))
            return false;
    }
    return true;
}

bool ProjectedFrequency::filterNext(int next)
{
    IntVar& v = engine_.var(next);
    // backwards so swap-removal only moves already visited values
    for (int k = v.size() - 1; k >= 0; --k) {
        const int b = v.values()[static_cast<std::size_t>(k)];
        if (b != kEpsilon && frequency(b) < theta_) {
            if (!v.remove(b))
                return false;
        }
    }
    return true;
}

int ProjectedFrequency::project(Symbol symbol)
{
    ++counters_.projections;
    int size = 0;
    switch (kind_) {
    case PropagatorKind::Baseline:
        size = projectBaseline(symbol);
        break;
    case PropagatorKind::PPIC:
        size = projectIncremental(symbol, false);
        break;
    case PropagatorKind::PPDC:
        size = projectDecrement(symbol);
        break;
    case PropagatorKind::PPMixed:
        lastScratch_ = 2 * revCounts_[static_cast<std::size_t>(symbol)].get() < proj_.size();
        size = lastScratch_ ? projectIncremental(symbol, true) : projectDecrement(symbol);
        break;
    }
    if (observer_)
        observer_(*this);
    return size;
}

int ProjectedFrequency::projectBaseline(Symbol a)
{
    const int from = proj_.start();
    const int to = proj_.end();
    proj_.reserveAfterWindow(proj_.size());
    int out = to;
    for (int k = from; k < to; ++k) {
        const std::int32_t sid = proj_.sid(k);
        const auto seq = db_.sequence(sid);
        const auto len = static_cast<std::int32_t>(seq.size());
        std::int32_t pos = proj_.pos(k);
        while (pos < len) {
            ++counters_.positionsVisited;
            if (seq[static_cast<std::size_t>(pos)] == a)
                break;
            ++pos;
        }
        if (pos < len)
            proj_.put(out++, sid, pos + 1);
    }
    const int size = out - to;

    std::fill(counts_.begin(), counts_.end(), 0);
    if (size >= theta_) {
        for (int k = to; k < out; ++k) {
            if (stamp_ == INT_MAX) {
                std::fill(seenStamp_.begin(), seenStamp_.end(), 0);
                stamp_ = 0;
            }
            ++stamp_;
            const auto seq = db_.sequence(proj_.sid(k));
            for (std::size_t p = static_cast<std::size_t>(proj_.pos(k)); p < seq.size(); ++p) {
                ++counters_.positionsVisited;
                const auto b = static_cast<std::size_t>(seq[p]);
                if (seenStamp_[b] != stamp_) {
                    seenStamp_[b] = stamp_;
                    ++counts_[b];
                }
            }
        }
    }
    proj_.start_.set(to);
    proj_.size_.set(size);
    return size;
}

void ProjectedFrequency::countIncremental(int from, int to)
{
    std::fill(counts_.begin(), counts_.end(), 0);
    for (int k = from; k < to; ++k) {
        const std::int32_t start = proj_.pos(k);
        for (const LastPos& e : db_.lastPosList(proj_.sid(k))) {
            if (e.pos <= start)
                break;
            ++counters_.positionsVisited;
            ++counts_[static_cast<std::size_t>(e.symbol)];
        }
    }
}

int ProjectedFrequency::projectIncremental(Symbol a, bool writeBack)
{
    ++counters_.scratchProjections;
    const int from = proj_.start();
    const int to = proj_.end();
    proj_.reserveAfterWindow(proj_.size());
    int out = to;
    for (int k = from; k < to; ++k) {
        const std::int32_t sid = proj_.sid(k);
        std::int32_t pos = proj_.pos(k);
        // 1-based last position vs 0-based cursor
        if (db_.lastPos(sid, a) - 1 < pos)
            continue;
        const auto seq = db_.sequence(sid);
        while (seq[static_cast<std::size_t>(pos)] != a) {
            ++counters_.positionsVisited;
            ++pos;
        }
        ++counters_.positionsVisited;
        proj_.put(out++, sid, pos + 1);
    }
    const int size = out - to;

    if (size >= theta_) {
        countIncremental(to, out);
        if (writeBack) {
            for (std::size_t b = 1; b < counts_.size(); ++b)
                revCounts_[b].set(counts_[b]);
        }
    } else {
        std::fill(counts_.begin(), counts_.end(), 0);
    }
    proj_.start_.set(to);
    proj_.size_.set(size);
    return size;
}

int ProjectedFrequency::projectDecrement(Symbol a)
{
    ++counters_.decrementProjections;
    const int from = proj_.start();
    const int to = proj_.end();
    proj_.reserveAfterWindow(proj_.size());
    int out = to;
    for (int k = from; k < to; ++k) {
        const std::int32_t sid = proj_.sid(k);
        const std::int32_t start = proj_.pos(k);
        if (db_.lastPos(sid, a) - 1 >= start) {
            const auto seq = db_.sequence(sid);
            std::int32_t pos = start;
            for (;;) {
                ++counters_.positionsVisited;
                const Symbol b = seq[static_cast<std::size_t>(pos)];
                // the suffix no longer contains b once we pass its last position
                if (db_.lastPos(sid, b) - 1 == pos)
                    revCounts_[static_cast<std::size_t>(b)].decrement();
                if (b == a)
                    break;
                ++pos;
            }
            proj_.put(out++, sid, pos + 1);
        } else {
            for (const LastPos& e : db_.lastPosList(sid)) {
                if (e.pos <= start)
                    break;
                ++counters_.positionsVisited;
                revCounts_[static_cast<std::size_t>(e.symbol)].decrement();
            }
        }
    }
    const int size = out - to;
    proj_.start_.set(to);
    proj_.size_.set(size);
    return size;
}

} // namespace cpspm
