#ifndef CPSPM_APP_HPP
#define CPSPM_APP_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace cpspm::app {

enum ExitCode : int {
    kOk = 0,
    kInconsistent = 1,
    kUsage = 2,
    kDataset = 3,
    kTimeout = 4,
};

// Entry point shared by the executable and tests. `args` excludes the
// program name and starts with the subcommand (mine, bench, gen).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Absolute threshold from a --minsup value: integers >= 1 are absolute,
// fractions in (0,1) are ceil(f * sequenceCount). Throws
// std::invalid_argument otherwise.
int resolveMinsup(const std::string& value, int sequenceCount);

struct BenchRow {
    std::string propagator;
    int minsup = 0;
    double wallTimeMillis = 0.0;
    std::uint64_t searchNodes = 0;
    std::uint64_t positionsVisited = 0;
    std::uint64_t solutionCount = 0;
    bool timedOut = false;
};

// True when all completed rows sharing a threshold agree on solutionCount.
bool benchConsistent(std::span<const BenchRow> rows);

} // namespace cpspm::app

#endif
