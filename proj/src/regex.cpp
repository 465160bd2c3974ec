#include "cpspm/regex.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace cpspm {

std::vector<RegexToken> tokenizeRegex(std::string_view expr)
{
    using Kind = RegexToken::Kind;
    std::vector<RegexToken> tokens;
    for (std::size_t i = 0; i < expr.size(); ++i) {
        const char c = expr[i];
        switch (c) {
        case ' ':
        case '\t':
        case '\n':
        case '\r': break;
        case '(': tokens.push_back({Kind::Open, {}, i}); break;
        case ')': tokens.push_back({Kind::Close, {}, i}); break;
        case '|': tokens.push_back({Kind::Alt, {}, i}); break;
        case '*': tokens.push_back({Kind::Star, {}, i}); break;
        case '+': tokens.push_back({Kind::Plus, {}, i}); break;
        case '?': tokens.push_back({Kind::Optional, {}, i}); break;
        case '>': throw RegexError("unexpected '>'", i);
        case '<': {
            const std::size_t close = expr.find('>', i + 1);
            if (close == std::string_view::npos)
                throw RegexError("unterminated '<'", i);
            if (close == i + 1)
                throw RegexError("empty <> literal", i);
            tokens.push_back({Kind::Literal, std::string(expr.substr(i + 1, close - i - 1)), i});
            i = close;
            break;
        }
        default: tokens.push_back({Kind::Literal, std::string(1, c), i}); break;
        }
    }
    return tokens;
}

SymbolResolver resolverFor(const SequenceDatabase& db)
{
    return [&db](std::string_view token) -> std::optional<Symbol> {
        if (auto id = db.find(token))
            return id;
        if (db.wasDropped(token))
            return kEpsilon;
        return std::nullopt;
    };
}

namespace {

struct Nfa {
    struct State {
        std::vector<int> eps;
        Symbol symbol = -1;
        int target = -1;
    };
    std::vector<State> states;

    int add()
    {
        states.emplace_back();
        return static_cast<int>(states.size()) - 1;
    }
    void epsilon(int from, int to) { states[static_cast<std::size_t>(from)].eps.push_back(to); }
};

struct Fragment {
    int start;
    int accept;
};

// Recursive-descent parser emitting Thompson fragments directly.
class Parser {
public:
    Parser(const std::vector<RegexToken>& tokens, const SymbolResolver& resolve, std::size_t exprLength, Nfa& nfa)
        : tokens_(tokens), resolve_(resolve), end_(exprLength), nfa_(nfa)
    {
    }

    Fragment parse()
    {
        Fragment f = alternation();
        if (pos_ < tokens_.size())
            throw RegexError("unexpected token", tokens_[pos_].position);
        return f;
    }

    std::vector<Symbol> literals;

private:
    using Kind = RegexToken::Kind;

    bool peek(Kind k) const { return pos_ < tokens_.size() && tokens_[pos_].kind == k; }

    Fragment alternation()
    {
        Fragment left = concatenation();
        while (peek(Kind::Alt)) {
            ++pos_;
            Fragment right = concatenation();
            const int s = nfa_.add();
            const int t = nfa_.add();
            nfa_.epsilon(s, left.start);
            nfa_.epsilon(s, right.start);
            nfa_.epsilon(left.accept, t);
            nfa_.epsilon(right.accept, t);
            left = {s, t};
        }
        return left;
    }

    Fragment concatenation()
    {
        std::optional<Fragment> acc;
        while (peek(Kind::Literal) || peek(Kind::Open)) {
            Fragment f = repetition();
            if (acc) {
                nfa_.epsilon(acc->accept, f.start);
                acc->accept = f.accept;
            } else {
                acc = f;
            }
        }
        if (acc)
            return *acc;
        const int s = nfa_.add();
        const int t = nfa_.add();
        nfa_.epsilon(s, t);
        return {s, t};
    }

    Fragment repetition()
    {
        Fragment f = atom();
        while (peek(Kind::Star) || peek(Kind::Plus) || peek(Kind::Optional)) {
            const Kind op = tokens_[pos_++].kind;
            const int s = nfa_.add();
            const int t = nfa_.add();
            nfa_.epsilon(s, f.start);
            nfa_.epsilon(f.accept, t);
            if (op != Kind::Plus)
                nfa_.epsilon(s, t);
            if (op != Kind::Optional)
                nfa_.epsilon(f.accept, f.start);
            f = {s, t};
        }
        return f;
    }

    Fragment atom()
    {
        const RegexToken& tok = tokens_[pos_];
        if (tok.kind == Kind::Open) {
            ++pos_;
            Fragment f = alternation();
            if (!peek(Kind::Close))
                throw RegexError("missing ')'", pos_ < tokens_.size() ? tokens_[pos_].position : end_);
            ++pos_;
            return f;
        }
        ++pos_;
        const auto symbol = resolve_(tok.text);
        if (!symbol)
            throw RegexError("unknown literal '" + tok.text + "'", tok.position);
        const int s = nfa_.add();
        const int t = nfa_.add();
        nfa_.states[static_cast<std::size_t>(s)].symbol = *symbol;
        nfa_.states[static_cast<std::size_t>(s)].target = t;
        if (*symbol != kEpsilon)
            literals.push_back(*symbol);
        return {s, t};
    }

    const std::vector<RegexToken>& tokens_;
    const SymbolResolver& resolve_;
    std::size_t end_;
    Nfa& nfa_;
    std::size_t pos_ = 0;
};

std::vector<int> closure(const Nfa& nfa, std::vector<int> seeds)
{
    std::vector<char> in(nfa.states.size(), 0);
    std::vector<int> out;
    while (!seeds.empty()) {
        const int s = seeds.back();
        seeds.pop_back();
        if (in[static_cast<std::size_t>(s)])
            continue;
        in[static_cast<std::size_t>(s)] = 1;
        out.push_back(s);
        for (int t : nfa.states[static_cast<std::size_t>(s)].eps)
            seeds.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

Dfa::Dfa(int numSymbols, int start, std::vector<char> accepting, std::vector<int> delta)
    : numSymbols_(numSymbols), start_(start), accepting_(std::move(accepting)), delta_(std::move(delta))
{
    const std::size_t n = accepting_.size();
    std::vector<std::vector<int>> reverse(n);
    for (std::size_t q = 0; q < n; ++q) {
        for (int b = 1; b <= numSymbols_; ++b) {
            const int t = delta_[q * stride() + static_cast<std::size_t>(b)];
            if (t != kReject)
                reverse[static_cast<std::size_t>(t)].push_back(static_cast<int>(q));
        }
    }
    minSteps_.assign(n, kUnreachable);
    std::deque<int> queue;
    for (std::size_t q = 0; q < n; ++q) {
        if (accepting_[q]) {
            minSteps_[q] = 0;
            queue.push_back(static_cast<int>(q));
        }
    }
    while (!queue.empty()) {
        const auto q = static_cast<std::size_t>(queue.front());
        queue.pop_front();
        for (int p : reverse[q]) {
            if (minSteps_[static_cast<std::size_t>(p)] == kUnreachable) {
                minSteps_[static_cast<std::size_t>(p)] = minSteps_[q] + 1;
                queue.push_back(p);
            }
        }
    }
}

bool Dfa::accepts(std::span<const Symbol> word) const
{
    int q = start_;
    for (Symbol b : word) {
        q = next(q, b);
        if (q == kReject)
            return false;
    }
    return accepting(q);
}

Dfa compileRegex(std::string_view expr, const SymbolResolver& resolve, int numSymbols)
{
    const auto tokens = tokenizeRegex(expr);
    Nfa nfa;
    Parser parser(tokens, resolve, expr.size(), nfa);
    const Fragment root = parser.parse();

    std::vector<Symbol> alphabet = parser.literals;
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
    for (Symbol b : alphabet) {
        if (b < 1 || b > numSymbols)
            throw RegexError("literal outside the symbol range", 0);
    }
    const std::size_t width = alphabet.size();

    // subset construction; state 0 is the empty set
    std::map<std::vector<int>, int> index;
    std::vector<std::vector<int>> sets;
    std::vector<int> trans;
    auto intern = [&](std::vector<int> set) {
        auto [it, inserted] = index.try_emplace(set, static_cast<int>(sets.size()));
        if (inserted)
            sets.push_back(std::move(set));
        return it->second;
    };
    intern({});
    const int startSet = intern(closure(nfa, {root.start}));
    for (std::size_t d = 0; d < sets.size(); ++d) {
        for (Symbol b : alphabet) {
            std::vector<int> seeds;
            for (int s : sets[d]) {
                const auto& st = nfa.states[static_cast<std::size_t>(s)];
                if (st.symbol == b)
                    seeds.push_back(st.target);
            }
            trans.push_back(seeds.empty() ? 0 : intern(closure(nfa, std::move(seeds))));
        }
    }
    const std::size_t numSets = sets.size();
    auto target = [&](std::size_t d, std::size_t r) { return static_cast<std::size_t>(trans[d * width + r]); };

    std::vector<int> cls(numSets);
    for (std::size_t d = 0; d < numSets; ++d)
        cls[d] = std::binary_search(sets[d].begin(), sets[d].end(), root.accept) ? 1 : 0;

    // Moore refinement
    std::size_t numClasses = 0;
    for (;;) {
        std::map<std::vector<int>, int> signatures;
        std::vector<int> refined(numSets);
        for (std::size_t d = 0; d < numSets; ++d) {
            std::vector<int> sig{cls[d]};
            for (std::size_t r = 0; r < width; ++r)
                sig.push_back(cls[target(d, r)]);
            refined[d] = signatures.try_emplace(std::move(sig), static_cast<int>(signatures.size())).first->second;
        }
        cls = std::move(refined);
        if (signatures.size() == numClasses)
            break;
        numClasses = signatures.size();
    }

    // classes that cannot reach acceptance collapse into the reject sink
    std::vector<char> live(numSets, 0);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t d = 0; d < numSets; ++d) {
            if (live[d])
                continue;
            bool ok = std::binary_search(sets[d].begin(), sets[d].end(), root.accept);
            for (std::size_t r = 0; r < width && !ok; ++r)
                ok = live[target(d, r)] != 0;
            if (ok) {
                live[d] = 1;
                changed = true;
            }
        }
    }

    // number live classes in breadth-first order from the start
    std::vector<int> finalId(numClasses, Dfa::kReject);
    std::vector<std::size_t> representative;
    std::deque<std::size_t> queue;
    if (live[static_cast<std::size_t>(startSet)]) {
        finalId[static_cast<std::size_t>(cls[static_cast<std::size_t>(startSet)])] = 0;
        representative.push_back(static_cast<std::size_t>(startSet));
        queue.push_back(static_cast<std::size_t>(startSet));
    }
    while (!queue.empty()) {
        const std::size_t d = queue.front();
        queue.pop_front();
        for (std::size_t r = 0; r < width; ++r) {
            const std::size_t t = target(d, r);
            auto& id = finalId[static_cast<std::size_t>(cls[t])];
            if (live[t] && id == Dfa::kReject) {
                id = static_cast<int>(representative.size());
                representative.push_back(t);
                queue.push_back(t);
            }
        }
    }

    const std::size_t stride = static_cast<std::size_t>(numSymbols) + 1;
    std::vector<char> accepting(representative.size(), 0);
    std::vector<int> delta(representative.size() * stride, Dfa::kReject);
    for (std::size_t q = 0; q < representative.size(); ++q) {
        const std::size_t d = representative[q];
        accepting[q] = std::binary_search(sets[d].begin(), sets[d].end(), root.accept) ? 1 : 0;
        for (std::size_t r = 0; r < width; ++r) {
            const std::size_t t = target(d, r);
            if (live[t])
                delta[q * stride + static_cast<std::size_t>(alphabet[r])] = finalId[static_cast<std::size_t>(cls[t])];
        }
    }
    const int start = representative.empty() ? Dfa::kReject : 0;
    return Dfa(numSymbols, start, std::move(accepting), std::move(delta));
}

} // namespace cpspm
