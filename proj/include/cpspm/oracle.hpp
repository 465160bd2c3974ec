#ifndef CPSPM_ORACLE_HPP
#define CPSPM_ORACLE_HPP

#include "cpspm/miner.hpp"
#include "cpspm/sdb.hpp"

#include <memory>
#include <span>
#include <vector>

// Brute-force reference miner for differential testing. Apart from the regex
// tokenizer it shares no code with the propagators or the DFA compiler:
// regexes are matched with std::wregex.
namespace cpspm::oracle {

// Greedy left-to-right embedding test.
bool isSubsequence(std::span<const Symbol> pattern, std::span<const Symbol> sequence);

struct Config {
    int maxPatternLen = 0; // 0 means the longest sequence
    int theta = 1;
    ConstraintSpec constraints;
};

// Every frequent pattern up to maxPatternLen that satisfies the side
// constraints, in canonical order. Patterns are grown breadth-first and
// only frequent ones are extended.
std::vector<Pattern> mine(const SequenceDatabase& db, const Config& config);

// Predicate form of the side constraints, checked pattern by pattern.
class ConstraintFilter {
public:
    ConstraintFilter(const SequenceDatabase& db, const ConstraintSpec& spec);
    ~ConstraintFilter();
    ConstraintFilter(ConstraintFilter&&) noexcept;

    bool operator()(std::span<const Symbol> pattern) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace cpspm::oracle

#endif
