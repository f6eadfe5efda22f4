#include "memgne/multiset.hpp"

#include <algorithm>
#include <limits>

namespace memgne {

Count checked_add(Count a, Count b)
{
    Count r{};
    if (__builtin_add_overflow(a, b, &r)) throw CountOverflow("object count overflow");
    return r;
}

Count checked_mul(Count a, Count b)
{
    Count r{};
    if (__builtin_mul_overflow(a, b, &r)) throw CountOverflow("object count overflow");
    return r;
}

Multiset::Multiset(std::initializer_list<std::pair<ObjectSymbol, Count>> items)
{
    for (const auto& [s, n] : items) add(s, n);
}

void Multiset::add(ObjectSymbol s, Count n)
{
    if (n < 0) throw std::invalid_argument("negative multiplicity for " + s.text());
    if (n == 0) return;
    auto& slot = counts_[s];
    slot = checked_add(slot, n);
}

void Multiset::add(const Multiset& other, Count times)
{
    if (times == 0) return;
    for (const auto& [s, n] : other.counts_) add(s, checked_mul(n, times));
}

void Multiset::remove(ObjectSymbol s, Count n)
{
    if (n < 0) throw std::invalid_argument("negative multiplicity for " + s.text());
    if (n == 0) return;
    auto it = counts_.find(s);
    if (it == counts_.end() || it->second < n)
        throw std::invalid_argument("cannot remove " + std::to_string(n) + " x " + s.text());
    it->second -= n;
    if (it->second == 0) counts_.erase(it);
}

void Multiset::remove(const Multiset& other, Count times)
{
    if (times == 0) return;
    for (const auto& [s, n] : other.counts_) remove(s, checked_mul(n, times));
}

bool Multiset::contains(const Multiset& other) const noexcept
{
    return std::all_of(other.counts_.begin(), other.counts_.end(),
                       [this](const auto& e) { return count(e.first) >= e.second; });
}

Count Multiset::max_copies(const Multiset& other) const noexcept
{
    Count k = std::numeric_limits<Count>::max();
    for (const auto& [s, n] : other.counts_) k = std::min(k, count(s) / n);
    return other.empty() ? 0 : k;
}

Count Multiset::size() const noexcept
{
    Count total = 0;
    for (const auto& e : counts_) total += e.second;
    return total;
}

Multiset Multiset::filter_base(std::string_view base) const
{
    Multiset out;
    for (const auto& [s, n] : counts_)
        if (base.empty() || s.base() == base) out.counts_.emplace(s, n);
    return out;
}

std::vector<std::pair<ObjectSymbol, Count>> Multiset::sorted() const
{
    std::vector<std::pair<ObjectSymbol, Count>> v(counts_.begin(), counts_.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return SymbolTextLess{}(a.first, b.first); });
    return v;
}

} // namespace memgne
