#include "cpspm/trail.hpp"

#include <stdexcept>

namespace cpspm {

int Trail::pushLevel()
{
    marks_.push_back(entries_.size());
    stamps_.push_back(stamp_);
    stamp_ = nextStamp_++;
    return static_cast<int>(marks_.size()) - 1;
}

void Trail::restoreLevel()
{
    if (marks_.empty())
        throw std::logic_error("Trail::restoreLevel: no open level");
    const std::size_t mark = marks_.back();
    while (entries_.size() > mark) {
        const Entry& e = entries_.back();
        e.location->value_ = e.value;
        e.location->stamp_ = e.stamp;
        entries_.pop_back();
    }
    marks_.pop_back();
    stamp_ = stamps_.back();
    stamps_.pop_back();
}

void Trail::restoreToDepth(int levels)
{
    while (depth() > levels)
        restoreLevel();
}

void Trail::save(ReversibleInt& location)
{
    // writes made before any level is open are permanent
    if (marks_.empty())
        return;
    entries_.push_back({&location, location.value_, location.stamp_});
    location.stamp_ = stamp_;
}

} // namespace cpspm
