#ifndef CPSPM_ENGINE_HPP
#define CPSPM_ENGINE_HPP

#include "cpspm/trail.hpp"
#include "cpspm/variable.hpp"

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace cpspm {

class Engine;

// A constraint filter. propagate() returns false to signal failure.
//
// Propagators are re-run by the engine until no variable they watch
// changes, so propagate() must be idempotent at a fix-point.
class Propagator {
public:
    virtual ~Propagator() = default;
    virtual bool propagate() = 0;
    virtual const char* name() const = 0;
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t failures = 0;
    std::uint64_t solutions = 0;
    int maxDepth = 0;
    bool stopped = false;
};

class Engine : private DomainListener {
public:
    // Called with the full assignment of every variable.
    using SolutionSink = std::function<void(std::span<const int>)>;
    // Checked once per search node; returning true aborts the search.
    using StopPredicate = std::function<bool()>;

    // numVars variables, each with initial domain {0..maxValue}.
    Engine(int numVars, int maxValue);

    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    Trail& trail() { return trail_; }
    const Trail& trail() const { return trail_; }

    int numVars() const { return static_cast<int>(vars_.size()); }
    IntVar& var(int i) { return vars_[static_cast<std::size_t>(i)]; }
    const IntVar& var(int i) const { return vars_[static_cast<std::size_t>(i)]; }

    // Registers a propagator that is scheduled whenever any variable
    // changes. Propagators run in registration order.
    template <typename P, typename... Args>
    P& post(Args&&... args)
    {
        auto p = std::make_unique<P>(std::forward<Args>(args)...);
        P& ref = *p;
        addPropagator(std::move(p));
        return ref;
    }
    void addPropagator(std::unique_ptr<Propagator> propagator);

    // Runs the propagation queue to a fix-point. Returns false on failure.
    bool fixPoint();
    // Schedules every propagator, then runs to a fix-point.
    bool propagateAll();

    // Depth-first enumeration of every complete assignment consistent with
    // all propagators. Variables are branched left to right; values are
    // tried in ascending order with 0 last. The trail is restored to its
    // depth at entry before returning.
    SearchStats solveAll(const SolutionSink& sink, const StopPredicate& stop = {});

    std::size_t numPropagators() const { return propagators_.size(); }

private:
    void onDomainChange(int variable) override;
    void schedule(std::size_t propagator);
    void clearQueue();
    // Returns false when the search was stopped.
    bool search(const SolutionSink& sink, const StopPredicate& stop, SearchStats& stats, int depth);

    Trail trail_;
    std::vector<IntVar> vars_;
    std::vector<std::unique_ptr<Propagator>> propagators_;
    std::vector<char> queued_;
    std::deque<std::size_t> queue_;
    std::vector<int> assignment_;
};

} // namespace cpspm

#endif
