#pragma once

#include "memgne/symbol.hpp"

#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace memgne {

using Count = std::int64_t;

/// Thrown when a count would leave the 64-bit range.
class CountOverflow : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// Finite multiset of objects. Zero counts are never stored.
class Multiset {
public:
    using Map = std::unordered_map<ObjectSymbol, Count>;

    Multiset() = default;
    Multiset(std::initializer_list<std::pair<ObjectSymbol, Count>> items);

    Count count(ObjectSymbol s) const noexcept
    {
        auto it = counts_.find(s);
        return it == counts_.end() ? 0 : it->second;
    }

    void add(ObjectSymbol s, Count n = 1);
    void add(const Multiset& other, Count times = 1);

    /// Removes n copies; throws std::invalid_argument if fewer are present.
    void remove(ObjectSymbol s, Count n = 1);
    void remove(const Multiset& other, Count times = 1);

    /// True iff every count of `other` is available here.
    bool contains(const Multiset& other) const noexcept;

    /// Largest k with k*other ⊆ *this (other must be nonempty).
    Count max_copies(const Multiset& other) const noexcept;

    bool empty() const noexcept { return counts_.empty(); }
    std::size_t distinct() const noexcept { return counts_.size(); }
    Count size() const noexcept;

    /// Copies of the objects whose base name equals `base`; empty filter keeps all.
    Multiset filter_base(std::string_view base) const;

    /// Entries in textual symbol order.
    std::vector<std::pair<ObjectSymbol, Count>> sorted() const;

    Map::const_iterator begin() const noexcept { return counts_.begin(); }
    Map::const_iterator end() const noexcept { return counts_.end(); }

    friend bool operator==(const Multiset& a, const Multiset& b) { return a.counts_ == b.counts_; }

private:
    Map counts_;
};

Count checked_add(Count a, Count b);
Count checked_mul(Count a, Count b);

} // namespace memgne
