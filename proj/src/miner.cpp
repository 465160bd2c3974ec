#include "cpspm/miner.hpp"

#include <algorithm>
#include <chrono>

namespace cpspm {

ResolvedConstraints resolveConstraints(const SequenceDatabase& db, const ConstraintSpec& spec)
{
    ResolvedConstraints out;
    if (spec.minSize || spec.maxSize) {
        LengthBounds bounds;
        bounds.minLen = spec.minSize.value_or(1);
        bounds.maxLen = spec.maxSize.value_or(kUnbounded);
        if (bounds.minLen < 1)
            throw ConstraintError("minimum pattern size must be at least 1");
        if (bounds.maxLen < bounds.minLen)
            throw ConstraintError("maximum pattern size is below the minimum");
        out.length = bounds;
    }
    for (const auto& c : spec.cardinalities) {
        SymbolCardinality card;
        if (auto id = db.find(c.token))
            card.symbol = *id;
        else if (!db.wasDropped(c.token))
            throw ConstraintError("unknown symbol '" + c.token + "'");
        if (c.atLeast < 0 || c.atMost < c.atLeast)
            throw ConstraintError("invalid cardinality bounds for '" + c.token + "'");
        card.atLeast = c.atLeast;
        card.atMost = c.atMost;
        out.cardinalities.push_back(card);
    }
    if (spec.regex) {
        try {
            out.dfa = compileRegex(*spec.regex, resolverFor(db), db.numSymbols());
        } catch (const RegexError& e) {
            throw ConstraintError(e.what());
        }
    }
    return out;
}

std::string formatPattern(const SequenceDatabase& db, const Pattern& p)
{
    std::string line;
    for (Symbol s : p.symbols) {
        line += db.name(s);
        line += ' ';
    }
    line += "#SUP: ";
    line += std::to_string(p.support);
    return line;
}

Miner::Miner(const SequenceDatabase& db, MiningOptions options)
    : db_(db), options_(std::move(options)), engine_(std::make_unique<Engine>(db.maxLength(), db.numSymbols()))
{
    if (options_.theta < 1)
        throw std::invalid_argument("minimum support must be at least 1");
    auto resolved = resolveConstraints(db_, options_.constraints);
    if (resolved.dfa)
        engine_->post<RegularConstraint>(*engine_, std::move(*resolved.dfa));
    if (resolved.length)
        engine_->post<LengthConstraint>(*engine_, *resolved.length);
    for (const auto& card : resolved.cardinalities)
        engine_->post<CardinalityConstraint>(*engine_, card);
    frequency_ = &engine_->post<ProjectedFrequency>(*engine_, db_, options_.theta, options_.kind);
}

MiningResult Miner::run(const PatternSink& sink, const Engine::StopPredicate& stop)
{
    using Clock = std::chrono::steady_clock;
    const auto begin = Clock::now();
    const auto before = frequency_->counters();

    MiningResult result;
    result.search = engine_->solveAll(
        [&](std::span<const int> assignment) {
            scratch_.symbols.clear();
            for (int v : assignment) {
                if (v == kEpsilon)
                    break;
                scratch_.symbols.push_back(v);
            }
            scratch_.support = frequency_->projection().size();
            sink(scratch_);
        },
        stop);

    const auto& after = frequency_->counters();
    result.scan.positionsVisited = after.positionsVisited - before.positionsVisited;
    result.scan.projections = after.projections - before.projections;
    result.scan.scratchProjections = after.scratchProjections - before.scratchProjections;
    result.scan.decrementProjections = after.decrementProjections - before.decrementProjections;
    result.peakDepth = frequency_->peakDepth();
    result.wallMillis = std::chrono::duration<double, std::milli>(Clock::now() - begin).count();
    return result;
}

std::vector<Pattern> mineAll(const SequenceDatabase& db, const MiningOptions& options, MiningResult* result)
{
    std::vector<Pattern> out;
    Miner miner(db, options);
    auto r = miner.run([&](const Pattern& p) { out.push_back(p); });
    if (result != nullptr)
        *result = r;
    return out;
}

std::vector<Pattern> canonicalize(std::vector<Pattern> patterns)
{
    std::sort(patterns.begin(), patterns.end());
    return patterns;
}

} // namespace cpspm
