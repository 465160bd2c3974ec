#ifndef CPSPM_TESTS_SUPPORT_HPP
#define CPSPM_TESTS_SUPPORT_HPP

#include "cpspm/miner.hpp"
#include "cpspm/sdb.hpp"

#include <random>
#include <string>
#include <vector>

namespace cpspm::testing {

// The four-sequence example database: <ABCBC>, <BABC>, <AB>, <BCD>.
inline constexpr const char* kSdb1 = "A B C B C\nB A B C\nA B\nB C D\n";

inline SequenceDatabase sdb1(int minsup = 1)
{
    return SequenceDatabase::build(parseDataset(kSdb1, InputFormat::Plain), minsup);
}

inline SequenceDatabase fromText(const std::string& text, int minsup = 1)
{
    return SequenceDatabase::build(parseDataset(text, InputFormat::Plain), minsup);
}

inline std::string letter(int i) { return std::string(1, static_cast<char>('A' + i)); }

// Between 1 and maxSequences sequences of length 1..maxLength over an
// alphabet of 1..maxAlphabet letters.
inline RawDataset randomRaw(std::mt19937_64& rng, int maxSequences, int maxLength, int maxAlphabet)
{
    std::uniform_int_distribution<int> count(1, maxSequences);
    std::uniform_int_distribution<int> length(1, maxLength);
    std::uniform_int_distribution<int> alphabet(1, maxAlphabet);
    const int sigma = alphabet(rng);
    std::uniform_int_distribution<int> symbol(0, sigma - 1);
    RawDataset raw;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
        auto& seq = raw.sequences.emplace_back();
        const int len = length(rng);
        for (int p = 0; p < len; ++p)
            seq.push_back(letter(symbol(rng)));
    }
    return raw;
}

// Symbol ids of a pattern given by single-letter names.
inline std::vector<Symbol> ids(const SequenceDatabase& db, const std::string& letters)
{
    std::vector<Symbol> out;
    for (char c : letters) {
        if (c != ' ')
            out.push_back(*db.find(std::string(1, c)));
    }
    return out;
}

inline std::string render(const SequenceDatabase& db, const std::vector<Pattern>& patterns)
{
    std::string out;
    for (const auto& p : patterns)
        out += formatPattern(db, p) + "\n";
    return out;
}

} // namespace cpspm::testing

#endif
