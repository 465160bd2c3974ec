#include "cpspm/variable.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cpspm {

IntVar::IntVar(Trail& trail, int maxValue, int index)
    : values_(static_cast<std::size_t>(maxValue) + 1),
      positions_(static_cast<std::size_t>(maxValue) + 1),
      size_(trail, maxValue + 1),
      index_(index)
{
    if (maxValue < 0)
        throw std::invalid_argument("IntVar: empty initial domain");
    std::iota(values_.begin(), values_.end(), 0);
    std::iota(positions_.begin(), positions_.end(), 0);
}

std::vector<int> IntVar::sortedValues() const
{
    std::vector<int> out(values().begin(), values().end());
    std::sort(out.begin(), out.end());
    return out;
}

void IntVar::swapPositions(int a, int b)
{
    const int pa = positions_[static_cast<std::size_t>(a)];
    const int pb = positions_[static_cast<std::size_t>(b)];
    values_[static_cast<std::size_t>(pa)] = b;
    values_[static_cast<std::size_t>(pb)] = a;
    positions_[static_cast<std::size_t>(a)] = pb;
    positions_[static_cast<std::size_t>(b)] = pa;
}

bool IntVar::assign(int value)
{
    if (!contains(value))
        return false;
    if (size_.get() == 1)
        return true;
    swapPositions(value, values_[0]);
    size_.set(1);
    notify();
    return true;
}

bool IntVar::remove(int value)
{
    if (!contains(value))
        return true;
    const int last = size_.get() - 1;
    if (last == 0)
        return false;
    swapPositions(value, values_[static_cast<std::size_t>(last)]);
    size_.set(last);
    notify();
    return true;
}

} // namespace cpspm
