#include "cpspm/oracle.hpp"

#include <algorithm>
#include <regex>

namespace cpspm::oracle {

bool isSubsequence(std::span<const Symbol> pattern, std::span<const Symbol> sequence)
{
    std::size_t k = 0;
    for (std::size_t p = 0; p < sequence.size() && k < pattern.size(); ++p) {
        if (sequence[p] == pattern[k])
            ++k;
    }
    return k == pattern.size();
}

namespace {

// Symbols are encoded as private-use code points so the standard library
// regex engine can match patterns directly.
constexpr wchar_t kSymbolBase = 0xF0000;

wchar_t encode(Symbol s) { return static_cast<wchar_t>(kSymbolBase + s); }

std::wstring translateRegex(const SequenceDatabase& db, const std::string& expr)
{
    using Kind = RegexToken::Kind;
    std::wstring out;
    for (const RegexToken& tok : tokenizeRegex(expr)) {
        switch (tok.kind) {
        case Kind::Literal: {
            if (auto id = db.find(tok.text))
                out += encode(*id);
            else if (db.wasDropped(tok.text))
                out += encode(kEpsilon);
            else
                throw ConstraintError("unknown literal '" + tok.text + "'");
            break;
        }
        case Kind::Open: out += L'('; break;
        case Kind::Close: out += L')'; break;
        case Kind::Alt: out += L'|'; break;
        case Kind::Star: out += L'*'; break;
        case Kind::Plus: out += L'+'; break;
        case Kind::Optional: out += L'?'; break;
        }
    }
    return out;
}

} // namespace

struct ConstraintFilter::Impl {
    int minSize = 1;
    int maxSize = kUnbounded;
    struct Card {
        Symbol symbol;
        int atLeast;
        int atMost;
    };
    std::vector<Card> cards;
    std::optional<std::wregex> regex;
};

ConstraintFilter::ConstraintFilter(const SequenceDatabase& db, const ConstraintSpec& spec) : impl_(std::make_unique<Impl>())
{
    impl_->minSize = spec.minSize.value_or(1);
    impl_->maxSize = spec.maxSize.value_or(kUnbounded);
    for (const auto& c : spec.cardinalities) {
        Symbol id = kEpsilon;
        if (auto found = db.find(c.token))
            id = *found;
        else if (!db.wasDropped(c.token))
            throw ConstraintError("unknown symbol '" + c.token + "'");
        impl_->cards.push_back({id, c.atLeast, c.atMost});
    }
    if (spec.regex) {
        try {
            impl_->regex.emplace(translateRegex(db, *spec.regex), std::regex::ECMAScript);
        } catch (const std::regex_error& e) {
            throw ConstraintError(std::string("regex: ") + e.what());
        }
    }
}

ConstraintFilter::~ConstraintFilter() = default;
ConstraintFilter::ConstraintFilter(ConstraintFilter&&) noexcept = default;

bool ConstraintFilter::operator()(std::span<const Symbol> pattern) const
{
    const auto len = static_cast<int>(pattern.size());
    if (len < impl_->minSize || len > impl_->maxSize)
        return false;
    for (const auto& c : impl_->cards) {
        const auto n = static_cast<int>(std::count(pattern.begin(), pattern.end(), c.symbol));
        if (n < c.atLeast || n > c.atMost)
            return false;
    }
    if (impl_->regex) {
        std::wstring word;
        for (Symbol s : pattern)
            word += encode(s);
        if (!std::regex_match(word, *impl_->regex))
            return false;
    }
    return true;
}

std::vector<Pattern> mine(const SequenceDatabase& db, const Config& config)
{
    const int maxLen = config.maxPatternLen > 0 ? config.maxPatternLen : db.maxLength();
    const ConstraintFilter accept(db, config.constraints);

    struct Candidate {
        std::vector<Symbol> symbols;
        std::vector<int> cover;
    };
    std::vector<Candidate> level{{{}, {}}};
    for (int sid = 0; sid < db.size(); ++sid)
        level.front().cover.push_back(sid);

    std::vector<Pattern> out;
    for (int len = 1; len <= maxLen && !level.empty(); ++len) {
        std::vector<Candidate> next;
        for (const Candidate& parent : level) {
            for (Symbol b = 1; b <= db.numSymbols(); ++b) {
                Candidate child{parent.symbols, {}};
                child.symbols.push_back(b);
                // antimonotone: only sequences covering the parent can cover the child
                for (int sid : parent.cover) {
                    if (isSubsequence(child.symbols, db.sequence(sid)))
                        child.cover.push_back(sid);
                }
                if (static_cast<int>(child.cover.size()) < config.theta)
                    continue;
                if (accept(child.symbols))
                    out.push_back({child.symbols, static_cast<int>(child.cover.size())});
                next.push_back(std::move(child));
            }
        }
        level = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace cpspm::oracle
