#ifndef CPSPM_MINER_HPP
#define CPSPM_MINER_HPP

#include "cpspm/constraints.hpp"
#include "cpspm/engine.hpp"
#include "cpspm/projection.hpp"
#include "cpspm/regex.hpp"
#include "cpspm/sdb.hpp"

#include <compare>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpspm {

class ConstraintError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Side constraints in terms of input tokens, shared by the engine and the
// brute-force oracle so both resolve them against the same database.
struct CardinalitySpec {
    std::string token;
    int atLeast = 0;
    int atMost = kUnbounded;
};

struct ConstraintSpec {
    std::optional<int> minSize;
    std::optional<int> maxSize;
    std::vector<CardinalitySpec> cardinalities;
    std::optional<std::string> regex;

    bool empty() const { return !minSize && !maxSize && cardinalities.empty() && !regex; }
};

struct ResolvedConstraints {
    std::optional<LengthBounds> length;
    std::vector<SymbolCardinality> cardinalities;
    std::optional<Dfa> dfa;
};

// Throws ConstraintError for unknown tokens, bad bounds or regex errors.
ResolvedConstraints resolveConstraints(const SequenceDatabase& db, const ConstraintSpec& spec);

struct Pattern {
    std::vector<Symbol> symbols;
    int support = 0;

    auto operator<=>(const Pattern&) const = default;
};

std::string formatPattern(const SequenceDatabase& db, const Pattern& p);

struct MiningOptions {
    int theta = 1;
    PropagatorKind kind = PropagatorKind::PPIC;
    ConstraintSpec constraints;
};

struct MiningResult {
    SearchStats search;
    ScanCounters scan;
    int peakDepth = 0;
    double wallMillis = 0.0;
};

// Pattern variables P1..PL with L the longest sequence, plus (in this
// order) the regular, length, cardinality and projected-frequency
// constraints.
class Miner {
public:
    using PatternSink = std::function<void(const Pattern&)>;

    Miner(const SequenceDatabase& db, MiningOptions options);

    MiningResult run(const PatternSink& sink, const Engine::StopPredicate& stop = {});

    Engine& engine() { return *engine_; }
    ProjectedFrequency& frequency() { return *frequency_; }
    const SequenceDatabase& database() const { return db_; }

private:
    const SequenceDatabase& db_;
    MiningOptions options_;
    std::unique_ptr<Engine> engine_;
    ProjectedFrequency* frequency_ = nullptr;
    Pattern scratch_;
};

// Patterns in emission order.
std::vector<Pattern> mineAll(const SequenceDatabase& db, const MiningOptions& options, MiningResult* result = nullptr);

// Sorted by symbols, for set comparison.
std::vector<Pattern> canonicalize(std::vector<Pattern> patterns);

} // namespace cpspm

#endif
