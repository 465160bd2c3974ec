#include "cpspm/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>

namespace cpspm {

std::string generatedSymbolName(int index, int alphabet)
{
    if (alphabet <= 26)
        return std::string(1, static_cast<char>('A' + index));
    return "s" + std::to_string(index + 1);
}

RawDataset generateDataset(const GeneratorParams& params)
{
    if (params.sequences < 1 || params.alphabet < 1 || !(params.meanLength >= 1.0))
        throw GeneratorError("sequence count, alphabet size and mean length must be positive");

    const long lo = std::max(1L, std::lround(params.meanLength * 0.75));
    const long hi = std::max(lo, std::lround(2.0 * params.meanLength) - lo);

    if (params.sparsity) {
        const double s = *params.sparsity;
        if (!(s >= 1.0))
            throw GeneratorError("sparsity must be at least 1");
        if (s > params.meanLength)
            throw GeneratorError("sparsity cannot exceed the mean sequence length");
        if (static_cast<double>(hi) / s > params.alphabet + 0.5)
            throw GeneratorError("alphabet too small for the requested length and sparsity");
    }

    std::mt19937_64 rng(params.seed);
    std::uniform_int_distribution<long> lengthDist(lo, hi);
    std::vector<int> symbols(static_cast<std::size_t>(params.alphabet));
    std::iota(symbols.begin(), symbols.end(), 0);

    RawDataset out;
    out.sequences.reserve(static_cast<std::size_t>(params.sequences));
    for (int n = 0; n < params.sequences; ++n) {
        const auto len = static_cast<std::size_t>(lengthDist(rng));
        std::vector<int> seq;
        seq.reserve(len);
        if (params.sparsity) {
            const auto want = std::lround(static_cast<double>(len) / *params.sparsity);
            const auto distinct = static_cast<std::size_t>(
                std::clamp<long>(want, 1, static_cast<long>(std::min<std::size_t>(len, symbols.size()))));
            std::shuffle(symbols.begin(), symbols.end(), rng);
            seq.assign(symbols.begin(), symbols.begin() + static_cast<std::ptrdiff_t>(distinct));
            std::uniform_int_distribution<std::size_t> pick(0, distinct - 1);
            while (seq.size() < len)
                seq.push_back(symbols[pick(rng)]);
            std::shuffle(seq.begin(), seq.end(), rng);
        } else {
            std::uniform_int_distribution<int> pick(0, params.alphabet - 1);
            for (std::size_t p = 0; p < len; ++p)
                seq.push_back(pick(rng));
        }
        auto& tokens = out.sequences.emplace_back();
        for (int s : seq)
            tokens.push_back(generatedSymbolName(s, params.alphabet));
    }
    return out;
}

double measureSparsity(const RawDataset& data)
{
    if (data.sequences.empty())
        return 0.0;
    double total = 0.0;
    for (const auto& seq : data.sequences) {
        const std::unordered_set<std::string> distinct(seq.begin(), seq.end());
        total += static_cast<double>(seq.size()) / static_cast<double>(distinct.size());
    }
    return total / static_cast<double>(data.sequences.size());
}

} // namespace cpspm
