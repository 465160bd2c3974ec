#ifndef CPSPM_GENERATOR_HPP
#define CPSPM_GENERATOR_HPP

#include "cpspm/sdb.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace cpspm {

class GeneratorError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct GeneratorParams {
    int sequences = 100;
    int alphabet = 10;
    double meanLength = 10.0;
    // Target mean of (#s / distinct symbols in s); unset draws symbols
    // independently and uniformly.
    std::optional<double> sparsity;
    std::uint64_t seed = 1;
};

// Sequence lengths are uniform in [0.75, 1.25] x meanLength. With a target
// sparsity each sequence draws round(#s / sparsity) distinct symbols, uses
// each at least once and fills the rest from that subset. Throws
// GeneratorError for infeasible parameters.
RawDataset generateDataset(const GeneratorParams& params);

// Mean over sequences of length / distinct-symbol count.
double measureSparsity(const RawDataset& data);

// "A".."Z" for alphabets up to 26 symbols, "s1".."sN" otherwise.
std::string generatedSymbolName(int index, int alphabet);

} // namespace cpspm

#endif
