#ifndef CPSPM_VARIABLE_HPP
#define CPSPM_VARIABLE_HPP

#include "cpspm/trail.hpp"

#include <span>
#include <vector>

namespace cpspm {

class DomainListener {
public:
    virtual ~DomainListener() = default;
    virtual void onDomainChange(int variable) = 0;
};

// Finite-domain variable over {0..maxValue} stored as a sparse set:
// values_[0..size) is the current domain, removal swaps to the back and
// only the reversible size is trailed.
class IntVar {
public:
    IntVar(Trail& trail, int maxValue, int index = 0);

    IntVar(const IntVar&) = delete;
    IntVar& operator=(const IntVar&) = delete;
    IntVar(IntVar&&) noexcept = default;
    IntVar& operator=(IntVar&&) noexcept = default;

    int index() const { return index_; }
    int maxValue() const { return static_cast<int>(values_.size()) - 1; }
    int size() const { return size_.get(); }
    bool bound() const { return size_.get() == 1; }
    // Only meaningful when bound().
    int value() const { return values_[0]; }

    bool contains(int value) const
    {
        return value >= 0 && value <= maxValue() && positions_[static_cast<std::size_t>(value)] < size_.get();
    }

    // Current domain in unspecified order. Invalidated by any removal.
    std::span<const int> values() const
    {
        return {values_.data(), static_cast<std::size_t>(size_.get())};
    }
    std::vector<int> sortedValues() const;

    // Both return false on failure and leave the domain untouched:
    // assign when the value is not in the domain, remove when it is the
    // last remaining value.
    bool assign(int value);
    bool remove(int value);

    void setListener(DomainListener* listener) { listener_ = listener; }

private:
    void swapPositions(int a, int b);
    void notify()
    {
        if (listener_ != nullptr)
            listener_->onDomainChange(index_);
    }

    std::vector<int> values_;
    std::vector<int> positions_;
    ReversibleInt size_;
    int index_;
    DomainListener* listener_ = nullptr;
};

} // namespace cpspm

#endif
