#include "cpspm/engine.hpp"

#include <algorithm>

namespace cpspm {

Engine::Engine(int numVars, int maxValue)
{
    vars_.reserve(static_cast<std::size_t>(numVars));
    for (int i = 0; i < numVars; ++i) {
        vars_.emplace_back(trail_, maxValue, i);
    }
    for (auto& v : vars_)
        v.setListener(this);
    assignment_.resize(static_cast<std::size_t>(numVars));
}

void Engine::addPropagator(std::unique_ptr<Propagator> propagator)
{
    propagators_.push_back(std::move(propagator));
    queued_.push_back(0);
}

void Engine::onDomainChange(int)
{
    for (std::size_t p = 0; p < propagators_.size(); ++p)
        schedule(p);
}

void Engine::schedule(std::size_t propagator)
{
    if (queued_[propagator])
        return;
    queued_[propagator] = 1;
    queue_.push_back(propagator);
}

void Engine::clearQueue()
{
    for (std::size_t p : queue_)
        queued_[p] = 0;
    queue_.clear();
}

bool Engine::fixPoint()
{
    while (!queue_.empty()) {
        const std::size_t p = queue_.front();
        queue_.pop_front();
        queued_[p] = 0;
        if (!propagators_[p]->propagate()) {
            clearQueue();
            return false;
        }
    }
    return true;
}

bool Engine::propagateAll()
{
    for (std::size_t p = 0; p < propagators_.size(); ++p)
        schedule(p);
    return fixPoint();
}

SearchStats Engine::solveAll(const SolutionSink& sink, const StopPredicate& stop)
{
    SearchStats stats;
    const int entryDepth = trail_.depth();
    trail_.pushLevel();
    ++stats.nodes;
    if (propagateAll())
        stats.stopped = !search(sink, stop, stats, 0);
    else
        ++stats.failures;
    trail_.restoreToDepth(entryDepth);
    return stats;
}

bool Engine::search(const SolutionSink& sink, const StopPredicate& stop, SearchStats& stats, int depth)
{
    stats.maxDepth = std::max(stats.maxDepth, depth);
    const auto unbound = std::find_if(vars_.begin(), vars_.end(), [](const IntVar& v) { return !v.bound(); });
    if (unbound == vars_.end()) {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            assignment_[i] = vars_[i].value();
        ++stats.solutions;
        sink(assignment_);
        return true;
    }

    std::vector<int> order = unbound->sortedValues();
    if (!order.empty() && order.front() == 0)
        std::rotate(order.begin(), order.begin() + 1, order.end());

    const int varIndex = unbound->index();
    for (int value : order) {
        if (stop && stop())
            return false;
        trail_.pushLevel();
        ++stats.nodes;
        bool ok = var(varIndex).assign(value) && fixPoint();
        if (!ok) {
            clearQueue();
            ++stats.failures;
        }
        const bool keepGoing = !ok || search(sink, stop, stats, depth + 1);
        trail_.restoreLevel();
        if (!keepGoing)
            return false;
    }
    return true;
}

} // namespace cpspm
