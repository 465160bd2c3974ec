#include "cpspm/app.hpp"

#include "cpspm/generator.hpp"
#include "cpspm/miner.hpp"
#include "cpspm/oracle.hpp"
#include "cpspm/sdb.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <ostream>

namespace cpspm::app {

int resolveMinsup(const std::string& value, int sequenceCount)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("--minsup: not a number: " + value);
    }
    if (used != value.size() || !std::isfinite(v))
        throw std::invalid_argument("--minsup: not a number: " + value);
    if (v > 0.0 && v < 1.0)
        return std::max(1, static_cast<int>(std::ceil(v * sequenceCount - 1e-9)));
    if (v >= 1.0 && v == std::floor(v) && v <= 2147483647.0)
        return static_cast<int>(v);
    throw std::invalid_argument("--minsup must be an integer >= 1 or a fraction in (0,1): " + value);
}

bool benchConsistent(std::span<const BenchRow> rows)
{
    std::map<int, std::uint64_t> expected;
    for (const BenchRow& row : rows) {
        if (row.timedOut)
            continue;
        auto [it, inserted] = expected.try_emplace(row.minsup, row.solutionCount);
        if (!inserted && it->second != row.solutionCount)
            return false;
    }
    return true;
}

namespace {

struct DataOptions {
    std::string path;
    std::string format = "plain";
};

struct ConstraintOptions {
    std::optional<int> minSize;
    std::optional<int> maxSize;
    std::vector<std::string> contains;
    std::vector<std::string> excludes;
    std::optional<std::string> regex;
};

void addDataOptions(CLI::App& cmd, DataOptions& data)
{
    cmd.add_option("dataset", data.path, "Sequence database file")->required();
    cmd.add_option("--format", data.format, "Input format")->check(CLI::IsMember({"plain", "spmf"}));
}

void addConstraintOptions(CLI::App& cmd, ConstraintOptions& c)
{
    cmd.add_option("--min-size", c.minSize, "Minimum pattern length");
    cmd.add_option("--max-size", c.maxSize, "Maximum pattern length");
    cmd.add_option("--contains", c.contains, "Require a symbol, TOK or TOK:k for at least k occurrences");
    cmd.add_option("--excludes", c.excludes, "Forbid a symbol");
    cmd.add_option("--regex", c.regex, "Pattern must match this regular expression");
}

ConstraintSpec toSpec(const ConstraintOptions& c)
{
    ConstraintSpec spec;
    spec.minSize = c.minSize;
    spec.maxSize = c.maxSize;
    spec.regex = c.regex;
    for (const std::string& item : c.contains) {
        CardinalitySpec card{item, 1, kUnbounded};
        const auto colon = item.rfind(':');
        if (colon != std::string::npos && colon + 1 < item.size() && colon > 0 &&
            std::all_of(item.begin() + static_cast<std::ptrdiff_t>(colon) + 1, item.end(),
                        [](unsigned char ch) { return std::isdigit(ch) != 0; })) {
            card.token = item.substr(0, colon);
            card.atLeast = std::stoi(item.substr(colon + 1));
        }
        spec.cardinalities.push_back(card);
    }
    for (const std::string& item : c.excludes)
        spec.cardinalities.push_back({item, 0, 0});
    return spec;
}

InputFormat toFormat(const std::string& name)
{
    return name == "spmf" ? InputFormat::Spmf : InputFormat::Plain;
}

RawDataset readRaw(const DataOptions& data)
{
    std::ifstream in(data.path);
    if (!in)
        throw DatasetError("cannot open " + data.path);
    return parseDataset(in, toFormat(data.format));
}

// nullopt when no symbol survives the threshold
std::optional<SequenceDatabase> buildDatabase(const RawDataset& raw, int minsup)
{
    try {
        return SequenceDatabase::build(raw, minsup);
    } catch (const EmptyDatabaseError&) {
        return std::nullopt;
    }
}

// Writes to --output when given, stdout otherwise.
class OutputTarget {
public:
    OutputTarget(const std::string& path, std::ostream& fallback)
    {
        if (path.empty()) {
            stream_ = &fallback;
            return;
        }
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_)
            throw std::invalid_argument("cannot open output file " + path);
        stream_ = file_.get();
    }
    std::ostream& stream() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_ = nullptr;
};

Engine::StopPredicate deadlineAfter(double seconds, bool& hit)
{
    using Clock = std::chrono::steady_clock;
    const auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
    return [deadline, &hit]() {
        if (Clock::now() >= deadline)
            hit = true;
        return hit;
    };
}

void writeStats(std::ostream& out, std::string_view propagator, int minsup, const MiningResult& r)
{
    out << "# propagator=" << propagator << '\n'
        << "# minsup=" << minsup << '\n'
        << "# solutionCount=" << r.search.solutions << '\n'
        << "# searchNodes=" << r.search.nodes << '\n'
        << "# failures=" << r.search.failures << '\n'
        << "# positionsVisited=" << r.scan.positionsVisited << '\n'
        << "# wallTimeMillis=" << std::fixed << std::setprecision(3) << r.wallMillis << '\n'
        << "# peakProjectionDepth=" << r.peakDepth << '\n';
    out.unsetf(std::ios::floatfield);
}

struct MineArgs {
    DataOptions data;
    ConstraintOptions constraints;
    std::string minsup;
    std::string propagator = "ppic";
    std::string output;
    bool stats = false;
    double timeout = 3600.0;
};

int mine(const MineArgs& a, std::ostream& out)
{
    const RawDataset raw = readRaw(a.data);
    const int theta = resolveMinsup(a.minsup, static_cast<int>(raw.sequences.size()));
    const auto kind = *parsePropagatorKind(a.propagator);
    const auto db = buildDatabase(raw, theta);
    OutputTarget target(a.output, out);
    std::ostream& os = target.stream();

    MiningResult result;
    bool timedOut = false;
    if (db) {
        MiningOptions options{theta, kind, toSpec(a.constraints)};
        Miner miner(*db, options);
        result = miner.run([&](const Pattern& p) { os << formatPattern(*db, p) << '\n'; }, deadlineAfter(a.timeout, timedOut));
    }
    if (a.stats)
        writeStats(os, a.propagator, theta, result);
    if (timedOut)
        os << "# TIMEOUT\n";
    os.flush();
    return timedOut ? kTimeout : kOk;
}

struct BenchArgs {
    DataOptions data;
    ConstraintOptions constraints;
    std::vector<std::string> minsups;
    std::vector<std::string> propagators{"ppic", "ppdc", "ppmixed", "baseline"};
    std::string output;
    double timeout = 3600.0;
};

int bench(const BenchArgs& a, std::ostream& out, std::ostream& err)
{
    const RawDataset raw = readRaw(a.data);
    std::vector<int> thetas;
    for (const auto& m : a.minsups)
        thetas.push_back(resolveMinsup(m, static_cast<int>(raw.sequences.size())));
    std::vector<PropagatorKind> kinds;
    for (const auto& p : a.propagators) {
        auto kind = parsePropagatorKind(p);
        if (!kind)
            throw std::invalid_argument("unknown propagator " + p);
        kinds.push_back(*kind);
    }

    std::vector<BenchRow> rows;
    bool anyTimeout = false;
    for (int theta : thetas) {
        const auto db = buildDatabase(raw, theta);
        for (PropagatorKind kind : kinds) {
            BenchRow row{std::string(toString(kind)), theta};
            if (db) {
                bool timedOut = false;
                Miner miner(*db, MiningOptions{theta, kind, toSpec(a.constraints)});
                const auto r = miner.run([](const Pattern&) {}, deadlineAfter(a.timeout, timedOut));
                row.wallTimeMillis = r.wallMillis;
                row.searchNodes = r.search.nodes;
                row.positionsVisited = r.scan.positionsVisited;
                row.solutionCount = r.search.solutions;
                row.timedOut = timedOut;
                anyTimeout = anyTimeout || timedOut;
            }
            rows.push_back(row);
        }
    }

    OutputTarget target(a.output, out);
    std::ostream& os = target.stream();
    os << "propagator,minsup,wallTimeMillis,searchNodes,positionsVisited,solutionCount,status\n";
    for (const BenchRow& r : rows) {
        os << r.propagator << ',' << r.minsup << ',' << std::fixed << std::setprecision(3) << r.wallTimeMillis << ','
           << r.searchNodes << ',' << r.positionsVisited << ',' << r.solutionCount << ','
           << (r.timedOut ? "timeout" : "ok") << '\n';
    }
    os.flush();
    if (!benchConsistent(rows)) {
        err << "bench: propagators disagree on the number of solutions\n";
        return kInconsistent;
    }
    return anyTimeout ? kTimeout : kOk;
}

struct GenArgs {
    GeneratorParams params;
    std::optional<double> sparsity;
    std::string output;
};

int gen(GenArgs a, std::ostream& out)
{
    a.params.sparsity = a.sparsity;
    const RawDataset data = generateDataset(a.params);
    OutputTarget target(a.output, out);
    std::ostream& os = target.stream();
    for (const auto& seq : data.sequences) {
        for (std::size_t i = 0; i < seq.size(); ++i)
            os << (i > 0 ? " " : "") << seq[i];
        os << '\n';
    }
    os.flush();
    return kOk;
}

struct OracleArgs {
    DataOptions data;
    ConstraintOptions constraints;
    std::string minsup;
    int maxLen = 0;
};

int runOracle(const OracleArgs& a, std::ostream& out)
{
    const RawDataset raw = readRaw(a.data);
    const int theta = resolveMinsup(a.minsup, static_cast<int>(raw.sequences.size()));
    const auto db = buildDatabase(raw, theta);
    if (!db)
        return kOk;
    for (const Pattern& p : oracle::mine(*db, {a.maxLen, theta, toSpec(a.constraints)}))
        out << formatPattern(*db, p) << '\n';
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Constraint-based sequential pattern miner"};
    app.require_subcommand(1);

    MineArgs mineArgs;
    auto* mineCmd = app.add_subcommand("mine", "Enumerate frequent patterns");
    addDataOptions(*mineCmd, mineArgs.data);
    addConstraintOptions(*mineCmd, mineArgs.constraints);
    mineCmd->add_option("--minsup", mineArgs.minsup, "Absolute count or fraction in (0,1)")->required();
    mineCmd->add_option("--propagator", mineArgs.propagator)->check(CLI::IsMember({"ppic", "ppdc", "ppmixed", "baseline"}));
    mineCmd->add_option("--output", mineArgs.output);
    mineCmd->add_flag("--stats", mineArgs.stats, "Append search statistics");
    mineCmd->add_option("--timeout", mineArgs.timeout, "Seconds")->check(CLI::PositiveNumber);

    BenchArgs benchArgs;
    auto* benchCmd = app.add_subcommand("bench", "Compare propagators over thresholds");
    addDataOptions(*benchCmd, benchArgs.data);
    addConstraintOptions(*benchCmd, benchArgs.constraints);
    benchCmd->add_option("--minsup", benchArgs.minsups, "Comma-separated thresholds")->required()->delimiter(',');
    benchCmd->add_option("--propagators", benchArgs.propagators, "Comma-separated propagators")->delimiter(',');
    benchCmd->add_option("--output", benchArgs.output);
    benchCmd->add_option("--timeout", benchArgs.timeout, "Seconds per run")->check(CLI::PositiveNumber);

    GenArgs genArgs;
    auto* genCmd = app.add_subcommand("gen", "Generate a random plain-format dataset");
    genCmd->add_option("--sequences", genArgs.params.sequences)->required();
    genCmd->add_option("--alphabet", genArgs.params.alphabet)->required();
    genCmd->add_option("--mean-length", genArgs.params.meanLength)->required();
    genCmd->add_option("--sparsity", genArgs.sparsity);
    genCmd->add_option("--seed", genArgs.params.seed);
    genCmd->add_option("--output", genArgs.output);

    OracleArgs oracleArgs;
    auto* oracleCmd = app.add_subcommand("oracle", "Brute-force reference miner");
    oracleCmd->group("");
    addDataOptions(*oracleCmd, oracleArgs.data);
    addConstraintOptions(*oracleCmd, oracleArgs.constraints);
    oracleCmd->add_option("--minsup", oracleArgs.minsup)->required();
    oracleCmd->add_option("--max-len", oracleArgs.maxLen);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e, out, err);
        err << e.what() << '\n';
        return kUsage;
    }

    try {
        if (mineCmd->parsed())
            return mine(mineArgs, out);
        if (benchCmd->parsed())
            return bench(benchArgs, out, err);
        if (genCmd->parsed())
            return gen(genArgs, out);
        return runOracle(oracleArgs, out);
    } catch (const DatasetError& e) {
        err << "dataset error: " << e.what() << '\n';
        return kDataset;
    } catch (const ConstraintError& e) {
        err << "constraint error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

} // namespace cpspm::app
