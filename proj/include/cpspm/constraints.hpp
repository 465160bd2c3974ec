#ifndef CPSPM_CONSTRAINTS_HPP
#define CPSPM_CONSTRAINTS_HPP

#include "cpspm/engine.hpp"
#include "cpspm/regex.hpp"
#include "cpspm/sdb.hpp"

#include <climits>

namespace cpspm {

inline constexpr int kUnbounded = INT_MAX;

struct LengthBounds {
    int minLen = 1;
    int maxLen = kUnbounded;
};

// Exclusion is {symbol, 0, 0}. symbol == kEpsilon stands for a symbol that
// does not occur in the database.
struct SymbolCardinality {
    Symbol symbol = kEpsilon;
    int atLeast = 0;
    int atMost = kUnbounded;
};

// Base for side constraints that react to the pattern prefix growing one
// bound variable at a time, left to right.
class PrefixConstraint : public Propagator {
public:
    bool propagate() final;

protected:
    explicit PrefixConstraint(Engine& engine);

    // Runs while nothing is bound yet; must be idempotent.
    virtual bool atRoot() = 0;
    // The prefix grew to `length` symbols, the last one being `symbol`.
    virtual bool extend(int length, Symbol symbol) = 0;
    // The pattern ended with `length` symbols.
    virtual bool close(int length) = 0;

    int patternCapacity() const { return engine_.numVars(); }
    // Domain of the variable holding the (length+1)-th symbol.
    IntVar& slot(int length) { return engine_.var(length); }
    // Removes values of slot(length) rejected by `drop`; false on wipe-out.
    template <typename Pred>
    bool prune(int length, Pred drop);

    Engine& engine_;

private:
    ReversibleInt processed_;
};

class LengthConstraint final : public PrefixConstraint {
public:
    LengthConstraint(Engine& engine, LengthBounds bounds);
    const char* name() const override { return "length"; }

private:
    bool atRoot() override;
    bool extend(int length, Symbol symbol) override;
    bool close(int length) override;

    LengthBounds bounds_;
};

class CardinalityConstraint final : public PrefixConstraint {
public:
    CardinalityConstraint(Engine& engine, SymbolCardinality card);
    const char* name() const override { return "cardinality"; }

private:
    bool atRoot() override;
    bool extend(int length, Symbol symbol) override;
    bool close(int length) override;

    SymbolCardinality card_;
    ReversibleInt occurrences_;
};

// Anchored regular-language membership of the pattern. Tracks the DFA state
// of the prefix and prunes the next symbol when the reached state cannot
// accept within the remaining pattern capacity.
class RegularConstraint final : public PrefixConstraint {
public:
    RegularConstraint(Engine& engine, Dfa dfa);
    const char* name() const override { return "regular"; }

    int state() const { return state_.get(); }

private:
    bool atRoot() override;
    bool extend(int length, Symbol symbol) override;
    bool close(int length) override;
    bool pruneFrom(int length, int state);

    Dfa dfa_;
    ReversibleInt state_;
};

template <typename Pred>
bool PrefixConstraint::prune(int length, Pred drop)
{
    IntVar& v = slot(length);
    for (int k = v.size() - 1; k >= 0; --k) {
        const int b = v.values()[static_cast<std::size_t>(k)];
        if (drop(b) && !v.remove(b))
            return false;
    }
    return true;
}

} // namespace cpspm

#endif
