#include "cpspm/sdb.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace cpspm {

namespace {

std::vector<std::string_view> splitWhitespace(std::string_view line)
{
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        const std::size_t begin = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r')
            ++i;
        if (i > begin)
            tokens.push_back(line.substr(begin, i - begin));
    }
    return tokens;
}

std::vector<std::string> parseSpmfLine(const std::vector<std::string_view>& tokens, std::size_t lineNo)
{
    std::vector<std::string> sequence;
    int pending = 0;
    bool terminated = false;
    for (std::string_view token : tokens) {
        if (terminated)
            throw DatasetError("token after sequence terminator -2", lineNo);
        long long value = 0;
        const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || end != token.data() + token.size())
            throw DatasetError("not an integer: '" + std::string(token) + "'", lineNo);
        if (value == -1) {
            if (pending == 0)
                throw DatasetError("empty itemset", lineNo);
            pending = 0;
        } else if (value == -2) {
            if (pending != 0)
                throw DatasetError("itemset not terminated by -1", lineNo);
            terminated = true;
        } else if (value < 0) {
            throw DatasetError("negative item " + std::string(token), lineNo);
        } else {
            if (pending != 0)
                throw DatasetError("itemset with more than one item", lineNo);
            sequence.push_back(std::to_string(value));
            ++pending;
        }
    }
    if (!terminated)
        throw DatasetError("missing sequence terminator -2", lineNo);
    if (sequence.empty())
        throw DatasetError("empty sequence", lineNo);
    return sequence;
}

} // namespace

RawDataset parseDataset(std::istream& in, InputFormat format)
{
    RawDataset raw;
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        const auto tokens = splitWhitespace(line);
        if (tokens.empty())
            continue;
        if (format == InputFormat::Plain) {
            raw.sequences.emplace_back(tokens.begin(), tokens.end());
            continue;
        }
        // SPMF metadata and comment lines
        const char lead = tokens.front().front();
        if (lead == '@' || lead == '#' || lead == '%')
            continue;
        raw.sequences.push_back(parseSpmfLine(tokens, lineNo));
    }
    if (in.bad())
        throw DatasetError("read error");
    return raw;
}

RawDataset parseDataset(std::string_view text, InputFormat format)
{
    std::istringstream in{std::string(text)};
    return parseDataset(in, format);
}

LastPositions computeLastPositions(std::span<const Symbol> sequence, int numSymbols)
{
    LastPositions out;
    out.map.assign(static_cast<std::size_t>(numSymbols) + 1, 0);
    for (std::size_t p = sequence.size(); p-- > 0;) {
        const Symbol a = sequence[p];
        if (out.map[static_cast<std::size_t>(a)] == 0) {
            out.map[static_cast<std::size_t>(a)] = static_cast<std::int32_t>(p + 1);
            out.list.push_back({a, static_cast<std::int32_t>(p + 1)});
        }
    }
    return out;
}

SequenceDatabase SequenceDatabase::build(const RawDataset& raw, int minsup)
{
    if (minsup < 1)
        throw std::invalid_argument("minsup must be at least 1");

    std::unordered_map<std::string_view, int> support;
    for (const auto& seq : raw.sequences) {
        std::unordered_set<std::string_view> seen;
        for (const auto& token : seq) {
            if (seen.insert(token).second)
                ++support[token];
        }
    }

    SequenceDatabase db;
    db.originalSize_ = static_cast<int>(raw.sequences.size());
    db.minsup_ = minsup;
    for (const auto& seq : raw.sequences) {
        std::vector<Symbol> filtered;
        for (const auto& token : seq) {
            if (support[token] < minsup) {
                db.dropped_.insert(token);
                continue;
            }
            auto [it, inserted] = db.ids_.try_emplace(token, static_cast<Symbol>(db.names_.size()));
            if (inserted)
                db.names_.push_back(token);
            filtered.push_back(it->second);
        }
        if (!filtered.empty())
            db.sequences_.push_back(std::move(filtered));
    }
    if (db.sequences_.empty())
        throw EmptyDatabaseError();
    db.index();
    return db;
}

void SequenceDatabase::index()
{
    const int n = numSymbols();
    stride_ = static_cast<std::size_t>(n) + 1;
    const bool dense = sequences_.size() * stride_ <= kDenseMapLimit;
    if (dense)
        lastPosMap_.assign(sequences_.size() * stride_, 0);
    maxLength_ = 0;
    for (std::size_t sid = 0; sid < sequences_.size(); ++sid) {
        maxLength_ = std::max(maxLength_, static_cast<int>(sequences_[sid].size()));
        auto lp = computeLastPositions(sequences_[sid], n);
        if (dense) {
            std::copy(lp.map.begin(), lp.map.end(), lastPosMap_.begin() + static_cast<std::ptrdiff_t>(sid * stride_));
        } else {
            auto sorted = lp.list;
            std::sort(sorted.begin(), sorted.end(), [](const LastPos& a, const LastPos& b) { return a.symbol < b.symbol; });
            bySymbol_.push_back(std::move(sorted));
        }
        lastPosLists_.push_back(std::move(lp.list));
    }
}

std::int32_t SequenceDatabase::sparseLastPos(int sid, Symbol symbol) const
{
    const auto& entries = bySymbol_[static_cast<std::size_t>(sid)];
    const auto it = std::lower_bound(entries.begin(), entries.end(), symbol,
                                     [](const LastPos& e, Symbol s) { return e.symbol < s; });
    return it != entries.end() && it->symbol == symbol ? it->pos : 0;
}

SequenceDatabase SequenceDatabase::load(std::istream& in, InputFormat format, int minsup)
{
    return build(parseDataset(in, format), minsup);
}

std::optional<Symbol> SequenceDatabase::find(std::string_view token) const
{
    const auto it = ids_.find(std::string(token));
    if (it == ids_.end())
        return std::nullopt;
    return it->second;
}

bool SequenceDatabase::wasDropped(std::string_view token) const
{
    return dropped_.count(std::string(token)) != 0;
}

int SequenceDatabase::support(std::span<const Symbol> pattern) const
{
    int count = 0;
    for (const auto& seq : sequences_) {
        std::size_t k = 0;
        for (std::size_t p = 0; p < seq.size() && k < pattern.size(); ++p) {
            if (seq[p] == pattern[k])
                ++k;
        }
        if (k == pattern.size())
            ++count;
    }
    return count;
}

void SequenceDatabase::writePlain(std::ostream& out) const
{
    for (const auto& seq : sequences_) {
        for (std::size_t p = 0; p < seq.size(); ++p) {
            if (p > 0)
                out << ' ';
            out << name(seq[p]);
        }
        out << '\n';
    }
}

} // namespace cpspm
