#ifndef CPSPM_REGEX_HPP
#define CPSPM_REGEX_HPP

#include "cpspm/sdb.hpp"

#include <climits>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cpspm {

class RegexError : public std::runtime_error {
public:
    RegexError(const std::string& what, std::size_t position)
        : std::runtime_error("regex error at position " + std::to_string(position) + ": " + what), position_(position)
    {
    }
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// Surface syntax: single-character literals or <NAME> for longer tokens,
// grouping (), alternation |, postfix * + ?, implicit concatenation.
// Whitespace separates nothing and is ignored.
struct RegexToken {
    enum class Kind { Literal, Open, Close, Alt, Star, Plus, Optional };
    Kind kind;
    std::string text; // literal name
    std::size_t position;
};

std::vector<RegexToken> tokenizeRegex(std::string_view expr);

// Maps a literal to a symbol id. nullopt rejects the literal as unknown;
// kEpsilon marks a known literal that no pattern symbol can match.
using SymbolResolver = std::function<std::optional<Symbol>(std::string_view)>;

SymbolResolver resolverFor(const SequenceDatabase& db);

// Minimal complete DFA over symbols 1..N. The rejecting sink is not a
// state: transitions into it yield kReject, and every state can still
// reach acceptance.
class Dfa {
public:
    static constexpr int kReject = -1;
    static constexpr int kUnreachable = INT_MAX;

    Dfa(int numSymbols, int start, std::vector<char> accepting, std::vector<int> delta);

    int numStates() const { return static_cast<int>(accepting_.size()); }
    int numSymbols() const { return numSymbols_; }
    int start() const { return start_; }

    int next(int state, Symbol symbol) const
    {
        if (state == kReject || symbol <= 0 || symbol > numSymbols_)
            return kReject;
        return delta_[static_cast<std::size_t>(state) * stride() + static_cast<std::size_t>(symbol)];
    }
    bool accepting(int state) const { return state != kReject && accepting_[static_cast<std::size_t>(state)] != 0; }
    // Fewest further symbols needed to reach an accepting state.
    int minStepsToAccept(int state) const
    {
        return state == kReject ? kUnreachable : minSteps_[static_cast<std::size_t>(state)];
    }

    bool accepts(std::span<const Symbol> word) const;

private:
    std::size_t stride() const { return static_cast<std::size_t>(numSymbols_) + 1; }

    int numSymbols_;
    int start_;
    std::vector<char> accepting_;
    std::vector<int> delta_;
    std::vector<int> minSteps_;
};

// Regex -> syntax tree -> Thompson NFA -> subset construction -> Moore
// minimization. The match is anchored at both ends.
Dfa compileRegex(std::string_view expr, const SymbolResolver& resolve, int numSymbols);

} // namespace cpspm

#endif
