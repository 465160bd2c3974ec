#include "cpspm/constraints.hpp"

namespace cpspm {

PrefixConstraint::PrefixConstraint(Engine& engine) : engine_(engine), processed_(engine.trail(), 0) {}

bool PrefixConstraint::propagate()
{
    const int capacity = patternCapacity();
    if (processed_.get() == 0 && !atRoot())
        return false;
    while (processed_.get() < capacity) {
        const int index = processed_.get();
        const IntVar& v = engine_.var(index);
        if (!v.bound())
            break;
        if (v.value() == kEpsilon) {
            processed_.set(capacity);
            return close(index);
        }
        processed_.set(index + 1);
        if (!extend(index + 1, v.value()))
            return false;
    }
    return true;
}

LengthConstraint::LengthConstraint(Engine& engine, LengthBounds bounds) : PrefixConstraint(engine), bounds_(bounds) {}

bool LengthConstraint::atRoot()
{
    if (bounds_.minLen > patternCapacity() || bounds_.maxLen < 1 || bounds_.minLen > bounds_.maxLen)
        return false;
    return prune(0, [](int b) { return b == kEpsilon; });
}

bool LengthConstraint::extend(int length, Symbol)
{
    if (length > bounds_.maxLen)
        return false;
    if (length == patternCapacity())
        return length >= bounds_.minLen;
    if (length == bounds_.maxLen)
        return prune(length, [](int b) { return b != kEpsilon; });
    if (length < bounds_.minLen)
        return prune(length, [](int b) { return b == kEpsilon; });
    return true;
}

bool LengthConstraint::close(int length)
{
    return length >= bounds_.minLen && length <= bounds_.maxLen;
}

CardinalityConstraint::CardinalityConstraint(Engine& engine, SymbolCardinality card)
    : PrefixConstraint(engine), card_(card), occurrences_(engine.trail(), 0)
{
}

bool CardinalityConstraint::atRoot()
{
    if (card_.atLeast > card_.atMost)
        return false;
    if (card_.symbol == kEpsilon)
        return card_.atLeast == 0;
    if (card_.atLeast > patternCapacity())
        return false;
    const Symbol sym = card_.symbol;
    const bool exclude = card_.atMost == 0;
    // P1 never takes 0, so the lower bound needs no root pruning
    return prune(0, [sym, exclude](int b) { return exclude && b == sym; });
}

bool CardinalityConstraint::extend(int length, Symbol symbol)
{
    if (card_.symbol == kEpsilon)
        return true;
    if (symbol == card_.symbol)
        occurrences_.increment();
    const int occ = occurrences_.get();
    if (occ > card_.atMost)
        return false;
    if (occ + (patternCapacity() - length) < card_.atLeast)
        return false;
    if (length == patternCapacity())
        return true;
    const Symbol sym = card_.symbol;
    const bool full = occ == card_.atMost;
    const bool needMore = occ < card_.atLeast;
    return prune(length, [sym, full, needMore](int b) { return (full && b == sym) || (needMore && b == kEpsilon); });
}

bool CardinalityConstraint::close(int)
{
    return occurrences_.get() >= card_.atLeast;
}

RegularConstraint::RegularConstraint(Engine& engine, Dfa dfa)
    : PrefixConstraint(engine), dfa_(std::move(dfa)), state_(engine.trail(), dfa_.start())
{
}

bool RegularConstraint::pruneFrom(int length, int state)
{
    const int remaining = patternCapacity() - length;
    const bool canStop = dfa_.accepting(state);
    return prune(length, [&](int b) {
        if (b == kEpsilon)
            return !canStop;
        const int next = dfa_.next(state, b);
        return next == Dfa::kReject || dfa_.minStepsToAccept(next) >= remaining;
    });
}

bool RegularConstraint::atRoot()
{
    if (dfa_.start() == Dfa::kReject)
        return false;
    return pruneFrom(0, dfa_.start());
}

bool RegularConstraint::extend(int length, Symbol symbol)
{
    const int next = dfa_.next(state_.get(), symbol);
    if (next == Dfa::kReject)
        return false;
    state_.set(next);
    if (length == patternCapacity())
        return dfa_.accepting(next);
    return pruneFrom(length, next);
}

bool RegularConstraint::close(int)
{
    return dfa_.accepting(state_.get());
}

} // namespace cpspm
