#ifndef CPSPM_SDB_HPP
#define CPSPM_SDB_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace cpspm {

// Symbol ids are 1..N; 0 is reserved for the end-of-pattern marker.
using Symbol = std::int32_t;
inline constexpr Symbol kEpsilon = 0;

enum class InputFormat { Plain, Spmf };

class DatasetError : public std::runtime_error {
public:
    DatasetError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    // 1-based source line, 0 when not tied to a line.
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class EmptyDatabaseError : public DatasetError {
public:
    EmptyDatabaseError() : DatasetError("database is empty after removing infrequent symbols") {}
};

// Tokenized sequences as they appear in the input, before any filtering.
struct RawDataset {
    std::vector<std::vector<std::string>> sequences;
};

RawDataset parseDataset(std::istream& in, InputFormat format);
RawDataset parseDataset(std::string_view text, InputFormat format);

struct LastPos {
    Symbol symbol;
    std::int32_t pos; // 1-based

    bool operator==(const LastPos&) const = default;
};

// Last-position list (decreasing pos) and a dense map symbol -> last 1-based
// position (0 when absent) for a single sequence over symbols 1..numSymbols.
struct LastPositions {
    std::vector<LastPos> list;
    std::vector<std::int32_t> map;
};

LastPositions computeLastPositions(std::span<const Symbol> sequence, int numSymbols);

class SequenceDatabase {
public:
    static constexpr std::size_t kDenseMapLimit = std::size_t{1} << 26;

    // Removes symbols whose sequence-support is below minsup, remaps the
    // remaining ones to 1..N by first appearance and drops emptied
    // sequences. Throws EmptyDatabaseError when nothing survives.
    static SequenceDatabase build(const RawDataset& raw, int minsup);
    static SequenceDatabase load(std::istream& in, InputFormat format, int minsup);

    // Number of sequences after filtering.
    int size() const { return static_cast<int>(sequences_.size()); }
    // Number of sequences in the input, including dropped ones.
    int originalSize() const { return originalSize_; }
    int numSymbols() const { return static_cast<int>(names_.size()) - 1; }
    int maxLength() const { return maxLength_; }
    int minsup() const { return minsup_; }

    std::span<const Symbol> sequence(int sid) const { return sequences_[static_cast<std::size_t>(sid)]; }
    std::span<const LastPos> lastPosList(int sid) const { return lastPosLists_[static_cast<std::size_t>(sid)]; }
    // 1-based last position of `symbol` in sequence `sid`, 0 when absent.
    std::int32_t lastPos(int sid, Symbol symbol) const
    {
        if (!lastPosMap_.empty())
            return lastPosMap_[static_cast<std::size_t>(sid) * stride_ + static_cast<std::size_t>(symbol)];
        return sparseLastPos(sid, symbol);
    }

    const std::string& name(Symbol symbol) const { return names_[static_cast<std::size_t>(symbol)]; }
    // Id of a surviving token.
    std::optional<Symbol> find(std::string_view token) const;
    // True for tokens present in the input but removed as infrequent.
    bool wasDropped(std::string_view token) const;

    // Number of sequences containing the pattern as a subsequence.
    int support(std::span<const Symbol> pattern) const;

    // One line per sequence, tokens separated by a single space.
    void writePlain(std::ostream& out) const;

    bool operator==(const SequenceDatabase& other) const
    {
        return sequences_ == other.sequences_ && names_ == other.names_;
    }

private:
    SequenceDatabase() = default;
    std::int32_t sparseLastPos(int sid, Symbol symbol) const;
    void index();

    std::vector<std::vector<Symbol>> sequences_;
    std::vector<std::vector<LastPos>> lastPosLists_;
    // Dense #SDB x (N+1) table, or empty when that would exceed
    // kDenseMapLimit entries; then bySymbol_ holds each lastPosList
    // sorted by symbol.
    std::vector<std::int32_t> lastPosMap_;
    std::vector<std::vector<LastPos>> bySymbol_;
    std::size_t stride_ = 1;
    std::vector<std::string> names_{""};
    std::unordered_map<std::string, Symbol> ids_;
    std::unordered_set<std::string> dropped_;
    int originalSize_ = 0;
    int maxLength_ = 0;
    int minsup_ = 1;
};

} // namespace cpspm

#endif
