#ifndef CPSPM_TRAIL_HPP
#define CPSPM_TRAIL_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cpspm {

class Trail;

// An integer whose value is saved on the trail the first time it changes
// within a search level, and restored when that level is popped.
//
// The trail keeps raw pointers to saved locations, so an instance must not
// be moved once it has been written under an open level. Containers of
// ReversibleInt are sized once and never grown after search starts.
class ReversibleInt {
public:
    ReversibleInt(Trail& trail, int value = 0) : trail_(&trail), value_(value) {}

    ReversibleInt(const ReversibleInt&) = delete;
    ReversibleInt& operator=(const ReversibleInt&) = delete;
    ReversibleInt(ReversibleInt&&) noexcept = default;
    ReversibleInt& operator=(ReversibleInt&&) noexcept = default;

    int get() const { return value_; }
    operator int() const { return value_; }

    void set(int value);
    ReversibleInt& operator=(int value) {
        set(value);
        return *this;
    }
    void increment() { set(value_ + 1); }
    void decrement() { set(value_ - 1); }

private:
    friend class Trail;

    Trail* trail_;
    int value_;
    std::uint64_t stamp_ = 0;
};

// Undo log of (location, saved value) pairs with one mark per open level.
class Trail {
public:
    Trail() = default;
    Trail(const Trail&) = delete;
    Trail& operator=(const Trail&) = delete;

    // Opens a new level and returns its index (0 for the first level).
    int pushLevel();

    // Undoes every write made since the matching pushLevel.
    // Throws std::logic_error when no level is open.
    void restoreLevel();

    // Restores levels until only `levels` remain open.
    void restoreToDepth(int levels);

    int depth() const { return static_cast<int>(marks_.size()); }
    std::size_t size() const { return entries_.size(); }
    std::size_t mark(int level) const { return marks_.at(static_cast<std::size_t>(level)); }

private:
    friend class ReversibleInt;

    struct Entry {
        ReversibleInt* location;
        int value;
        std::uint64_t stamp;
    };

    void save(ReversibleInt& location);

    std::vector<Entry> entries_;
    std::vector<std::size_t> marks_;
    std::vector<std::uint64_t> stamps_;
    std::uint64_t stamp_ = 0;
    std::uint64_t nextStamp_ = 1;
};

inline void ReversibleInt::set(int value)
{
    if (value == value_)
        return;
    if (stamp_ != trail_->stamp_)
        trail_->save(*this);
    value_ = value;
}

} // namespace cpspm

#endif
